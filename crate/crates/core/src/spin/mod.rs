//! Real irreducible spinor modules for `n` in {6, 7, 8}.
//!
//! The coordinates of `S` are chosen so that every basis blade acts by a
//! signed permutation. For `n = 8` the first eight coordinates span `S+`
//! (the `+1` eigenspace of the volume element) and the last eight span `S-`.

mod cache;
mod matrix;

pub use cache::{cache_dir, CACHE_CONVENTION};
pub use matrix::{Matrix, SignedPerm};

use std::sync::OnceLock;

use crate::clifford::{Blade, MultiVector};
use crate::error::SpinError;
use crate::rational::Rational;

pub type Spinor = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinRep {
    n: usize,
    generators: Vec<SignedPerm>,
    blades: Vec<SignedPerm>,
}

fn factor(code: u8) -> SignedPerm {
    match code {
        0 => SignedPerm::identity(2),
        // [[0, 1], [-1, 0]]
        1 => SignedPerm { perm: vec![1, 0], sign: vec![-1, 1] },
        // [[0, 1], [1, 0]]
        2 => SignedPerm { perm: vec![1, 0], sign: vec![1, 1] },
        // diag(1, -1)
        _ => SignedPerm { perm: vec![0, 1], sign: vec![1, -1] },
    }
}

fn factors_anticommute(a: u8, b: u8) -> bool {
    a != 0 && b != 0 && a != b
}

/// Eight mutually anticommuting 16x16 real matrices squaring to `-1`, each a
/// fourfold tensor product of 2x2 signed permutations, with diagonal product.
fn search_generators() -> Option<Vec<[u8; 4]>> {
    let words: Vec<[u8; 4]> = (0..256u32)
        .map(|w| [(w >> 6) as u8 & 3, (w >> 4) as u8 & 3, (w >> 2) as u8 & 3, w as u8 & 3])
        .filter(|w| w.iter().filter(|&&c| c == 1).count() % 2 == 1)
        .collect();
    let anti = |a: &[u8; 4], b: &[u8; 4]| (0..4).filter(|&i| factors_anticommute(a[i], b[i])).count() % 2 == 1;
    // ignoring signs, a factor is determined by its off-diagonal bit (eps and
    // sigma1 carry one); the product is diagonal iff each position has an even
    // count of off-diagonal factors
    let offdiag = |w: &[u8; 4]| -> u8 { (0..4).map(|i| ((w[i] == 1 || w[i] == 2) as u8) << i).fold(0, |a, b| a ^ b) };
    fn go(
        words: &[[u8; 4]],
        start: usize,
        chosen: &mut Vec<[u8; 4]>,
        acc: u8,
        anti: &dyn Fn(&[u8; 4], &[u8; 4]) -> bool,
        offdiag: &dyn Fn(&[u8; 4]) -> u8,
    ) -> bool {
        if chosen.len() == 8 {
            return acc == 0;
        }
        for k in start..words.len() {
            let w = words[k];
            if chosen.iter().all(|c| anti(c, &w)) {
                chosen.push(w);
                if go(words, k + 1, chosen, acc ^ offdiag(&w), anti, offdiag) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if go(&words, 0, &mut chosen, 0, &anti, &offdiag) {
        Some(chosen)
    } else {
        None
    }
}

fn blade_table(generators: &[SignedPerm], dim_s: usize) -> Vec<SignedPerm> {
    let n = generators.len();
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).fold(SignedPerm::identity(dim_s), |acc, i| acc.compose(&generators[i])))
        .collect()
}

fn product(gens: &[SignedPerm]) -> SignedPerm {
    gens.iter().fold(SignedPerm::identity(gens[0].len()), |acc, g| acc.compose(g))
}

impl SpinRep {
    pub fn build(n: usize) -> Result<SpinRep, SpinError> {
        match n {
            8 => Self::build8(),
            7 => Self::build7(),
            6 => {
                let rep7 = Self::build7()?;
                Self::from_generators(6, rep7.generators[..6].to_vec())
            }
            _ => Err(SpinError::UnsupportedN { n }),
        }
    }

    /// Process-wide instance, built on first use.
    pub fn shared(n: usize) -> Result<&'static SpinRep, SpinError> {
        static REPS: [OnceLock<Result<SpinRep, SpinError>>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        if !(6..=8).contains(&n) {
            return Err(SpinError::UnsupportedN { n });
        }
        REPS[n - 6].get_or_init(|| Self::build(n)).as_ref().map_err(|e| e.clone())
    }

    fn build8() -> Result<SpinRep, SpinError> {
        let words = search_generators().ok_or_else(|| SpinError::Construction("no tensor word set found".into()))?;
        let gens: Vec<SignedPerm> =
            words.iter().map(|w| factor(w[0]).tensor(&factor(w[1])).tensor(&factor(w[2])).tensor(&factor(w[3]))).collect();
        let nu = product(&gens);
        if !nu.is_diagonal() {
            return Err(SpinError::Construction("volume element is not diagonal".into()));
        }
        // relabel so the +1 eigenvectors of the volume element come first
        let mut plus: Vec<usize> = (0..16).filter(|&j| nu.sign[j] > 0).collect();
        let minus: Vec<usize> = (0..16).filter(|&j| nu.sign[j] < 0).collect();
        if plus.len() != 8 {
            return Err(SpinError::Construction("volume element has unbalanced eigenspaces".into()));
        }
        plus.extend(minus);
        let mut order = vec![0; 16];
        for (new, &old) in plus.iter().enumerate() {
            order[old] = new;
        }
        let gens = gens.iter().map(|g| g.relabel(&order)).collect();
        Self::from_generators(8, gens)
    }

    fn build7() -> Result<SpinRep, SpinError> {
        let rep8 = Self::shared(8)?;
        let g8 = &rep8.generators[7];
        let mut gens: Vec<SignedPerm> = (0..7)
            .map(|i| {
                rep8.generators[i]
                    .compose(g8)
                    .restrict(8)
                    .ok_or_else(|| SpinError::Construction("even element does not preserve S+".into()))
            })
            .collect::<Result<_, _>>()?;
        let nu = product(&gens);
        if nu == SignedPerm::identity(8).negate() {
            gens[0] = gens[0].negate();
        }
        Self::from_generators(7, gens)
    }

    /// Wraps explicit generators, checking the Clifford relations.
    pub fn from_generators(n: usize, generators: Vec<SignedPerm>) -> Result<SpinRep, SpinError> {
        let dim_s = match n {
            8 => 16,
            6 | 7 => 8,
            _ => return Err(SpinError::UnsupportedN { n }),
        };
        if generators.len() != n || generators.iter().any(|g| g.len() != dim_s) {
            return Err(SpinError::Construction("wrong number or size of generators".into()));
        }
        let minus_id = SignedPerm::identity(dim_s).negate();
        for i in 0..n {
            for j in 0..n {
                let a = generators[i].compose(&generators[j]);
                let b = generators[j].compose(&generators[i]);
                let ok = if i == j { a == minus_id } else { a == b.negate() };
                if !ok {
                    return Err(SpinError::Construction(format!("relation fails for generators {i}, {j}")));
                }
            }
        }
        let blades = blade_table(&generators, dim_s);
        let rep = SpinRep { n, generators, blades };
        if n == 7 && rep.blades[127] != SignedPerm::identity(8) {
            return Err(SpinError::Construction("volume element must act as the identity".into()));
        }
        Ok(rep)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim_s(&self) -> usize {
        self.generators[0].len()
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| g.to_matrix()).collect()
    }

    pub fn blade_action(&self, b: Blade) -> &SignedPerm {
        &self.blades[b.0 as usize]
    }

    pub fn nu_action(&self) -> Matrix {
        self.blades[(1 << self.n) - 1].to_matrix()
    }

    fn check(&self, t: &MultiVector) -> Result<(), SpinError> {
        if t.dim() != self.n {
            return Err(SpinError::DimensionMismatch { rep: self.n, elem: t.dim() });
        }
        Ok(())
    }

    /// Matrix of Clifford multiplication by `t` on `S`.
    pub fn mu_matrix(&self, t: &MultiVector) -> Result<Matrix, SpinError> {
        self.check(t)?;
        let d = self.dim_s();
        let mut m = Matrix::zeros(d, d);
        for (b, c) in t.terms() {
            self.blades[b.0 as usize].accumulate_into(&mut m, c);
        }
        Ok(m)
    }

    /// `mu(t)` applied to a spinor, without forming the matrix.
    pub fn act(&self, t: &MultiVector, x: &[Rational]) -> Result<Spinor, SpinError> {
        self.check(t)?;
        self.check_len(x)?;
        let mut out = vec![Rational::zero(); self.dim_s()];
        for (b, c) in t.terms() {
            let p = &self.blades[b.0 as usize];
            for j in 0..x.len() {
                if x[j].is_zero() {
                    continue;
                }
                if p.sign[j] > 0 {
                    out[p.perm[j]].add_mul(c, &x[j]);
                } else {
                    out[p.perm[j]].sub_mul(c, &x[j]);
                }
            }
        }
        Ok(out)
    }

    fn check_len(&self, x: &[Rational]) -> Result<(), SpinError> {
        if x.len() != self.dim_s() {
            return Err(SpinError::WrongLength { got: x.len(), expected: self.dim_s() });
        }
        Ok(())
    }

    /// Inverse of `mu` for `n = 8`. Blade matrices are orthogonal signed
    /// permutations, pairwise orthogonal for the Frobenius product, so each
    /// coefficient is a single trace.
    pub fn mu_inverse(&self, m: &Matrix) -> Result<MultiVector, SpinError> {
        if self.n != 8 {
            return Err(SpinError::UnsupportedN { n: self.n });
        }
        if m.rows() != 16 || m.cols() != 16 {
            return Err(SpinError::WrongShape { rows: m.rows(), cols: m.cols(), expected: 16 });
        }
        let inv = Rational::new(1, 16);
        Ok(MultiVector::from_terms(8, self.blades.iter().enumerate().map(|(mask, p)| (Blade(mask as u16), &p.frobenius_with(m) * &inv))))
    }

    /// Preimage of `m` in `(1 + nu) Cl_7`, the part of `Cl_7` acting faithfully.
    fn mu_inverse7(&self, m: &Matrix) -> MultiVector {
        let inv = Rational::new(1, 8);
        let even = MultiVector::from_terms(
            7,
            self.blades
                .iter()
                .enumerate()
                .filter(|(mask, _)| mask.count_ones() % 2 == 0)
                .map(|(mask, p)| (Blade(mask as u16), &p.frobenius_with(m) * &inv)),
        );
        let nu = MultiVector::volume(7);
        (&even + &(&nu * &even)).scale(&Rational::new(1, 2))
    }

    /// Rank-one projector `x (x)` viewed as an element of `Cl_n`.
    pub fn spinor_square(&self, x: &[Rational]) -> Result<MultiVector, SpinError> {
        self.check_len(x)?;
        let norm: Rational = x.iter().map(|c| c * c).sum();
        if !norm.is_one() {
            return Err(SpinError::NotUnit { norm_sq: norm.to_string(), expected: "1".into() });
        }
        let m = Matrix::outer(x, x);
        match self.n {
            8 => {
                if !self.in_plus(x) {
                    return Err(SpinError::WrongChirality('+'));
                }
                self.mu_inverse(&m)
            }
            7 => Ok(self.mu_inverse7(&m)),
            n => Err(SpinError::UnsupportedN { n }),
        }
    }

    /// `x ^ y` acting by `psi -> <psi, x> y - <psi, y> x`.
    pub fn spinor_wedge(&self, x: &[Rational], y: &[Rational]) -> Result<MultiVector, SpinError> {
        self.bilinear(x, y, true)
    }

    /// `x . y` acting by `psi -> <psi, x> y + <psi, y> x`.
    pub fn spinor_sym(&self, x: &[Rational], y: &[Rational]) -> Result<MultiVector, SpinError> {
        self.bilinear(x, y, false)
    }

    fn bilinear(&self, x: &[Rational], y: &[Rational], skew: bool) -> Result<MultiVector, SpinError> {
        if self.n != 8 {
            return Err(SpinError::UnsupportedN { n: self.n });
        }
        self.check_len(x)?;
        self.check_len(y)?;
        if skew && !(self.in_plus(x) && self.in_plus(y)) {
            return Err(SpinError::WrongChirality('+'));
        }
        let yx = Matrix::outer(y, x);
        let xy = Matrix::outer(x, y);
        let m = if skew { &yx - &xy } else { &yx + &xy };
        self.mu_inverse(&m)
    }

    /// True when `x` lies in `S+` (n = 8).
    pub fn in_plus(&self, x: &[Rational]) -> bool {
        self.n == 8 && x[8..].iter().all(|c| c.is_zero())
    }

    pub fn in_minus(&self, x: &[Rational]) -> bool {
        self.n == 8 && x[..8].iter().all(|c| c.is_zero())
    }

    /// `beta_hat(x, y) = <nu x, y>` as a matrix (n = 8).
    pub fn beta_hat(&self) -> Result<Matrix, SpinError> {
        if self.n != 8 {
            return Err(SpinError::UnsupportedN { n: self.n });
        }
        Ok(self.nu_action())
    }

    /// Basis spinor `eps_i` (0-based coordinate).
    pub fn basis_spinor(&self, i: usize) -> Spinor {
        let mut v = vec![Rational::zero(); self.dim_s()];
        v[i] = Rational::one();
        v
    }

    /// Embeds 8 coordinates into `S+` (n = 8) or returns them unchanged.
    pub fn plus_spinor(&self, coords: &[Rational]) -> Spinor {
        let mut v = coords.to_vec();
        v.resize(self.dim_s(), Rational::zero());
        v
    }

    /// Embeds 8 coordinates into `S-` (n = 8).
    pub fn minus_spinor(&self, coords: &[Rational]) -> Spinor {
        assert_eq!(self.n, 8);
        let mut v = vec![Rational::zero(); 8];
        v.extend_from_slice(coords);
        v
    }

    /// Dimension of the commutant of the generated matrix algebra.
    pub fn commutant_dim(&self) -> usize {
        let d = self.dim_s();
        // unknown C (d x d, index r*d + c); equations (C g - g C)_{ij} = 0
        let mut rows = Vec::new();
        for g in &self.generators {
            let gm = g.to_matrix();
            for i in 0..d {
                for j in 0..d {
                    let mut row = vec![Rational::zero(); d * d];
                    for k in 0..d {
                        row[i * d + k] += gm.get(k, j);
                        row[k * d + j] -= gm.get(i, k);
                    }
                    rows.push(row);
                }
            }
        }
        d * d - crate::linalg::dense_rank(&rows)
    }
}

/// `kappa` of the squaring identity.
pub fn kappa(n: usize) -> Option<Rational> {
    match n % 8 {
        0 => Some(Rational::from(1i64 << (n / 2))),
        7 => Some(Rational::from(1i64 << n.div_ceil(2))),
        _ => None,
    }
}

pub fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in x.iter().zip(y) {
        acc.add_mul(a, b);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn relations_and_irreducibility() {
        for n in 6..=8 {
            let rep = SpinRep::build(n).unwrap();
            let d = rep.dim_s();
            let gs = rep.generator_matrices();
            for i in 0..n {
                for j in 0..n {
                    let s = &(&gs[i] * &gs[j]) + &(&gs[j] * &gs[i]);
                    let expect = if i == j { Matrix::identity(d).scale(&q(-2)) } else { Matrix::zeros(d, d) };
                    assert_eq!(s, expect);
                }
            }
            assert_eq!(rep.commutant_dim(), 1, "n={n}");
        }
        assert!(matches!(SpinRep::build(9), Err(SpinError::UnsupportedN { n: 9 })));
    }

    #[test]
    fn volume_actions() {
        let r7 = SpinRep::build(7).unwrap();
        assert_eq!(r7.nu_action(), Matrix::identity(8));
        let r8 = SpinRep::build(8).unwrap();
        let nu = r8.nu_action();
        assert!(nu.trace().is_zero());
        assert_eq!(&nu * &nu, Matrix::identity(16));
        for i in 0..16 {
            assert_eq!(*nu.get(i, i), q(if i < 8 { 1 } else { -1 }));
        }
    }

    #[test]
    fn mu_is_bijective_and_multiplicative() {
        let rep = SpinRep::shared(8).unwrap();
        let mats: Vec<Vec<Rational>> = (0..256u16).map(|m| rep.blade_action(Blade(m)).to_matrix().data().to_vec()).collect();
        assert_eq!(crate::linalg::dense_rank(&mats), 256);
        let mut s = Sampler::new(8);
        for _ in 0..10 {
            let a = s.sparse_multivector(8, 8);
            let b = s.sparse_multivector(8, 8);
            assert_eq!(rep.mu_matrix(&(&a * &b)).unwrap(), &rep.mu_matrix(&a).unwrap() * &rep.mu_matrix(&b).unwrap());
            assert_eq!(rep.mu_inverse(&rep.mu_matrix(&a).unwrap()).unwrap(), a);
        }
        assert_eq!(rep.mu_inverse(&Matrix::identity(16)).unwrap(), MultiVector::one(8));
        assert_eq!(rep.mu_inverse(&rep.nu_action()).unwrap(), MultiVector::volume(8));
    }

    #[test]
    fn symmetry_by_grade() {
        for n in 6..=8 {
            let rep = SpinRep::shared(n).unwrap();
            for m in 0..(1u16 << n) {
                let mat = rep.blade_action(Blade(m)).to_matrix();
                match m.count_ones() % 4 {
                    0 | 3 => assert!(mat.is_symmetric()),
                    _ => assert!(mat.is_antisymmetric()),
                }
            }
        }
    }

    #[test]
    fn spinor_square_example() {
        let rep = SpinRep::shared(8).unwrap();
        let mut x = vec![q(0); 16];
        x[0] = Rational::new(3, 5);
        x[1] = Rational::new(4, 5);
        let sq = rep.spinor_square(&x).unwrap();
        assert_eq!(sq.scalar_part(), Rational::new(1, 16));
        assert_eq!(rep.act(&sq, &x).unwrap(), x);
        assert!(sq.grades().iter().all(|k| k % 4 == 0));
        let mut bad = x.clone();
        bad[0] = q(1);
        assert!(matches!(rep.spinor_square(&bad), Err(SpinError::NotUnit { .. })));
        let mut minus = vec![q(0); 16];
        minus[9] = q(1);
        assert!(matches!(rep.spinor_square(&minus), Err(SpinError::WrongChirality('+'))));
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(8), Some(q(16)));
        assert_eq!(kappa(7), Some(q(16)));
        assert_eq!(kappa(6), None);
    }
}
