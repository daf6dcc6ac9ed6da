//! Seeded sampling of rational test data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{Blade, MultiVector};
use crate::rational::Rational;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Integer in `[-3, 3]`.
    pub fn small_int(&mut self) -> i64 {
        self.rng.gen_range(-3..=3)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let v = self.small_int();
            if v != 0 {
                return v;
            }
        }
    }

    /// Rational with numerator in `[-3, 3]` and denominator in `[1, 4]`.
    pub fn small_rational(&mut self) -> Rational {
        let den = self.rng.gen_range(1..=4);
        Rational::new(self.small_int(), den)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// At most `terms` random blades with random rational coefficients.
    pub fn sparse_multivector(&mut self, n: usize, terms: usize) -> MultiVector {
        let size = 1u32 << n;
        let picked: Vec<(Blade, Rational)> =
            (0..terms).map(|_| (Blade(self.rng.gen_range(0..size) as u16), self.small_rational())).collect();
        MultiVector::from_terms(n, picked)
    }

    /// Pure grade-`k` element with integer coefficients in `[-3, 3]`.
    pub fn form(&mut self, n: usize, k: usize) -> MultiVector {
        let terms: Vec<(Blade, Rational)> =
            (0..1u32 << n).filter(|m| m.count_ones() as usize == k).map(|m| (Blade(m as u16), Rational::from(self.small_int()))).collect();
        MultiVector::from_terms(n, terms)
    }

    pub fn nonzero_form(&mut self, n: usize, k: usize) -> MultiVector {
        loop {
            let f = self.form(n, k);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Rational point of the unit sphere in `R^dim` by inverse stereographic
    /// projection of a small rational point.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<Rational> {
        let t: Vec<Rational> = (0..dim - 1).map(|_| self.small_rational()).collect();
        let s: Rational = t.iter().map(|x| x * x).sum();
        let denom = &s + &Rational::one();
        let two = Rational::from(2);
        let mut out: Vec<Rational> = t.iter().map(|x| &(&two * x) / &denom).collect();
        out.push(&(&s - &Rational::one()) / &denom);
        out
    }

    /// Nonzero vector of `Cl_n` with integer coefficients in `[-3, 3]`.
    pub fn vector(&mut self, n: usize) -> MultiVector {
        self.nonzero_form(n, 1)
    }

    /// Rows of a random permutation matrix.
    pub fn permutation_basis(&mut self, dim: usize) -> Vec<Vec<Rational>> {
        let mut order: Vec<usize> = (0..dim).collect();
        order.shuffle(&mut self.rng);
        order.into_iter().map(|i| (0..dim).map(|j| Rational::from((i == j) as i64)).collect()).collect()
    }

    /// Orthonormal rational basis of `R^dim` (columns of a product of
    /// Householder reflections), returned as rows.
    pub fn orthonormal_basis(&mut self, dim: usize) -> Vec<Vec<Rational>> {
        self.householder_basis(dim, 3, 3)
    }

    /// Cheaper variant: one reflection along a vector with entries in
    /// `{-1, 0, 1}`, after a random signed permutation. Keeps denominators
    /// small, which matters for exact closure computations.
    pub fn light_orthonormal_basis(&mut self, dim: usize) -> Vec<Vec<Rational>> {
        let mut rows = self.householder_basis(dim, 1, 1);
        rows.shuffle(&mut self.rng);
        for r in rows.iter_mut() {
            if self.rng.gen_bool(0.5) {
                r.iter_mut().for_each(|c| *c = -c.clone());
            }
        }
        rows
    }

    fn householder_basis(&mut self, dim: usize, reflections: usize, bound: i64) -> Vec<Vec<Rational>> {
        let mut m: Vec<Vec<Rational>> = (0..dim).map(|i| (0..dim).map(|j| Rational::from((i == j) as i64)).collect()).collect();
        for _ in 0..reflections {
            let v: Vec<Rational> = loop {
                let v: Vec<Rational> = (0..dim).map(|_| Rational::from(self.rng.gen_range(-bound..=bound))).collect();
                if v.iter().any(|x| !x.is_zero()) {
                    break v;
                }
            };
            let vv: Rational = v.iter().map(|x| x * x).sum();
            let scale = &Rational::from(2) / &vv;
            for row in m.iter_mut() {
                let dot: Rational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                let f = &dot * &scale;
                for (r, vi) in row.iter_mut().zip(&v) {
                    *r -= &(&f * vi);
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors_are_unit() {
        let mut s = Sampler::new(1);
        for dim in 2..=16 {
            let v = s.unit_vector(dim);
            let norm: Rational = v.iter().map(|x| x * x).sum();
            assert!(norm.is_one());
        }
    }

    #[test]
    fn bases_are_orthonormal() {
        let mut s = Sampler::new(2);
        let b = s.orthonormal_basis(8);
        for i in 0..8 {
            for j in 0..8 {
                let d: Rational = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                assert_eq!(d, Rational::from((i == j) as i64));
            }
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = Sampler::new(42).sparse_multivector(8, 10);
        let b = Sampler::new(42).sparse_multivector(8, 10);
        assert_eq!(a, b);
    }
}
