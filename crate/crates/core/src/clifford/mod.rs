//! Exact model of the Clifford algebra `Cl_n` of a Euclidean space, `1 <= n <= 10`.
//!
//! Elements are stored as sparse maps from basis blades (bitmasks over the
//! orthonormal basis `e_1..e_n`) to exact rational coefficients. Generators
//! square to `-1`, so that `e * phi = e ^ phi - e _| phi` for a vector `e`.

mod serial;

pub use serial::{MultiVectorRecord, TermRecord};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::CliffordError;
use crate::rational::Rational;

pub const MAX_DIM: usize = 10;

/// Basis monomial `e_{i1} e_{i2} ... e_{ik}` with `i1 < i2 < ... < ik`,
/// stored as a bitmask (bit `i-1` set for `e_i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// From 1-based, strictly increasing indices.
    pub fn from_indices(indices: &[usize]) -> Blade {
        let mut mask = 0u16;
        for &i in indices {
            debug_assert!((1..=MAX_DIM).contains(&i));
            mask |= 1 << (i - 1);
        }
        Blade(mask)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

fn sign_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let size = 1usize << MAX_DIM;
        let mut bits = vec![0u64; size * size / 64];
        for a in 0..size {
            for b in 0..size {
                if product_sign_slow(a as u16, b as u16) {
                    let idx = a * size + b;
                    bits[idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        bits
    })
}

/// Transpositions needed to sort `e_A e_B`, plus one per repeated generator.
fn product_sign_slow(a: u16, b: u16) -> bool {
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    (swaps + (a & b).count_ones()) & 1 == 1
}

/// True when `e_A e_B = -e_{A xor B}`.
#[inline]
pub fn product_is_negative(a: Blade, b: Blade) -> bool {
    let idx = ((a.0 as usize) << MAX_DIM) | b.0 as usize;
    sign_table()[idx / 64] >> (idx % 64) & 1 == 1
}

/// True when `e_A` and `e_B` anticommute.
#[inline]
pub fn blades_anticommute(a: Blade, b: Blade) -> bool {
    let ga = a.0.count_ones();
    let gb = b.0.count_ones();
    let common = (a.0 & b.0).count_ones();
    (ga * gb + common) & 1 == 1
}

/// Element of `Cl_n`: sorted sparse blade coefficients, zeros never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiVector {
    n: usize,
    terms: Vec<(Blade, Rational)>,
}

impl MultiVector {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "unsupported dimension {n}");
        MultiVector { n, terms: Vec::new() }
    }

    pub fn scalar(n: usize, c: impl Into<Rational>) -> Self {
        Self::from_terms(n, [(Blade::SCALAR, c.into())])
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    /// The basis vector `e_i`, 1-based.
    pub fn basis_vector(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "basis index {i} out of range for n={n}");
        Self::from_terms(n, [(Blade::from_indices(&[i]), Rational::one())])
    }

    /// The basis blade `e_{i1}...e_{ik}` for strictly increasing 1-based indices.
    pub fn blade(n: usize, indices: &[usize]) -> Self {
        assert!(indices.windows(2).all(|w| w[0] < w[1]), "indices must increase");
        assert!(indices.iter().all(|&i| (1..=n).contains(&i)));
        Self::from_terms(n, [(Blade::from_indices(indices), Rational::one())])
    }

    /// Ordered product `e_{i1} e_{i2} ... e_{ik}` of basis vectors, any order.
    pub fn vector_product(n: usize, indices: &[usize]) -> Self {
        indices.iter().fold(Self::one(n), |acc, &i| &acc * &Self::basis_vector(n, i))
    }

    /// The volume element `e_1 e_2 ... e_n`.
    pub fn volume(n: usize) -> Self {
        Self::from_terms(n, [(Blade(((1u32 << n) - 1) as u16), Rational::one())])
    }

    /// A grade-1 element from its components.
    pub fn vector(n: usize, comps: &[Rational]) -> Self {
        assert_eq!(comps.len(), n);
        Self::from_terms(n, comps.iter().enumerate().map(|(i, c)| (Blade(1 << i), c.clone())))
    }

    /// Sums coefficients of repeated blades and drops zeros.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Blade, Rational)>) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "unsupported dimension {n}");
        let mut v: Vec<(Blade, Rational)> = terms.into_iter().collect();
        let full = ((1u32 << n) - 1) as u16;
        assert!(v.iter().all(|(b, _)| b.0 & !full == 0), "blade outside Cl_{n}");
        v.sort_by_key(|(b, _)| *b);
        let mut out: Vec<(Blade, Rational)> = Vec::with_capacity(v.len());
        for (b, c) in v {
            match out.last_mut() {
                Some((lb, lc)) if *lb == b => *lc += &c,
                _ => out.push((b, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiVector { n, terms: out }
    }

    /// From a dense coefficient vector indexed by blade mask.
    pub fn from_dense(n: usize, coeffs: &[Rational]) -> Self {
        assert_eq!(coeffs.len(), 1 << n);
        MultiVector {
            n,
            terms: coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (Blade(i as u16), c.clone())).collect(),
        }
    }

    fn from_accumulator(n: usize, acc: Vec<Rational>) -> Self {
        MultiVector { n, terms: acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (Blade(i as u16), c)).collect() }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); 1 << self.n];
        for (b, c) in &self.terms {
            out[b.0 as usize] = c.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Blade, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> Rational {
        match self.terms.binary_search_by_key(&blade, |(b, _)| *b) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scalar_part(&self) -> Rational {
        self.coeff(Blade::SCALAR)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiVector { n: self.n, terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect() }
    }

    fn check_same(&self, other: &Self) -> Result<(), CliffordError> {
        if self.n != other.n {
            return Err(CliffordError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiVector { n: self.n, terms: out }
    }

    /// Clifford product. Fails only on mismatched dimensions.
    pub fn geometric_product(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_same(other)?;
        if self.terms.is_empty() || other.terms.is_empty() {
            return Ok(Self::zero(self.n));
        }
        let mut acc = vec![Rational::zero(); 1 << self.n];
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let slot = &mut acc[(a.0 ^ b.0) as usize];
                if product_is_negative(*a, *b) {
                    slot.sub_mul(x, y);
                } else {
                    slot.add_mul(x, y);
                }
            }
        }
        Ok(Self::from_accumulator(self.n, acc))
    }

    /// Commutator `ab - ba`, evaluated blade-pairwise: only anticommuting
    /// blade pairs contribute, each with twice the ordered product.
    pub fn commutator(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut acc = vec![Rational::zero(); 1 << self.n];
        let mut any = false;
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if !blades_anticommute(*a, *b) {
                    continue;
                }
                any = true;
                let slot = &mut acc[(a.0 ^ b.0) as usize];
                if product_is_negative(*a, *b) {
                    slot.sub_mul(x, y);
                } else {
                    slot.add_mul(x, y);
                }
            }
        }
        if !any {
            return Self::zero(self.n);
        }
        let two = Rational::from(2);
        Self::from_accumulator(self.n, acc).scale(&two)
    }

    /// Anticommutator `ab + ba`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut acc = vec![Rational::zero(); 1 << self.n];
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if blades_anticommute(*a, *b) {
                    continue;
                }
                let slot = &mut acc[(a.0 ^ b.0) as usize];
                if product_is_negative(*a, *b) {
                    slot.sub_mul(x, y);
                } else {
                    slot.add_mul(x, y);
                }
            }
        }
        Self::from_accumulator(self.n, acc).scale(&Rational::from(2))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut acc = vec![Rational::zero(); 1 << self.n];
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.0 & b.0 != 0 {
                    continue;
                }
                let slot = &mut acc[(a.0 | b.0) as usize];
                if product_is_negative(*a, *b) {
                    slot.sub_mul(x, y);
                } else {
                    slot.add_mul(x, y);
                }
            }
        }
        Self::from_accumulator(self.n, acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn grade_project(&self, k: usize) -> Self {
        self.filter(|b| b.grade() == k)
    }

    pub fn filter(&self, keep: impl Fn(Blade) -> bool) -> Self {
        MultiVector { n: self.n, terms: self.terms.iter().filter(|(b, _)| keep(*b)).cloned().collect() }
    }

    /// Grades that carry a nonzero component, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.iter().map(|(b, _)| b.grade()).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.iter().all(|(b, _)| b.grade() == k)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|b| b.grade() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|b| b.grade() % 2 == 1)
    }

    fn map_signs(&self, negate: impl Fn(usize) -> bool) -> Self {
        MultiVector { n: self.n, terms: self.terms.iter().map(|(b, c)| (*b, if negate(b.grade()) { -c } else { c.clone() })).collect() }
    }

    /// Reversion anti-automorphism: `(e_1...e_k)^t = e_k...e_1`.
    pub fn transpose(&self) -> Self {
        self.map_signs(|k| (k * k.saturating_sub(1) / 2) % 2 == 1)
    }

    /// Grade automorphism extending `-1` on vectors.
    pub fn alpha(&self) -> Self {
        self.map_signs(|k| k % 2 == 1)
    }

    /// Both involutions at once.
    pub fn involutions(&self) -> (Self, Self) {
        (self.transpose(), self.alpha())
    }

    /// Scalar product in which the blades are orthonormal.
    pub fn inner_product(&self, other: &Self) -> Rational {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut acc = Rational::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, x) = &self.terms[i];
            let (b, y) = &other.terms[j];
            match a.cmp(b) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc.add_mul(x, y);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn norm_sq(&self) -> Rational {
        self.inner_product(self)
    }

    /// Contraction `X _| T = (alpha(T) X - X T) / 2` for a vector `X`.
    pub fn contract_vector(x: &Self, t: &Self) -> Result<Self, CliffordError> {
        x.check_same(t)?;
        if !x.is_homogeneous(1) {
            return Err(CliffordError::NotAVector { grades: x.grades() });
        }
        let lhs = &t.alpha() * x;
        let rhs = x * t;
        Ok((&lhs - &rhs).scale(&Rational::new(1, 2)))
    }

    /// `e_i _| T` for a basis vector, 1-based.
    pub fn contract_basis(&self, i: usize) -> Self {
        Self::contract_vector(&Self::basis_vector(self.n, i), self).expect("basis vector")
    }

    /// `L(T) = sum_i e_i T e_i` over the standard frame.
    pub fn l_operator(&self) -> Self {
        let mut acc = Self::zero(self.n);
        for i in 1..=self.n {
            let e = Self::basis_vector(self.n, i);
            acc = &acc + &(&(&e * self) * &e);
        }
        acc
    }

    /// Hodge star through Clifford multiplication with the volume element,
    /// applied grade by grade.
    pub fn hodge_star(&self) -> Self {
        let nu = Self::volume(self.n);
        let mut acc = Self::zero(self.n);
        for k in self.grades() {
            let part = self.grade_project(k);
            let prod = &part * &nu;
            let sign_negative = (k * (k + 1) / 2) % 2 == 1;
            acc = &acc + &(if sign_negative { -&prod } else { prod });
        }
        acc
    }

    /// Components `(1 +- nu) phi / 2`, defined when `nu^2 = 1`, i.e. `n = 0 (mod 4)`.
    pub fn selfdual_split(&self) -> Result<(Self, Self), CliffordError> {
        if !self.n.is_multiple_of(4) {
            return Err(CliffordError::NoSelfDualSplit { n: self.n });
        }
        let nu_phi = &Self::volume(self.n) * self;
        let half = Rational::new(1, 2);
        Ok(((self + &nu_phi).scale(&half), (self - &nu_phi).scale(&half)))
    }

    /// Coefficients of `self` as `(blade indices, coefficient)` in
    /// lexicographic blade order.
    pub fn lexicographic_terms(&self) -> Vec<(Vec<usize>, Rational)> {
        let mut v: Vec<(Vec<usize>, Rational)> = self.terms.iter().map(|(b, c)| (b.indices(), c.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// `*phi` and the self-dual projection packaged for one dimension.
pub struct HodgeData {
    pub nu: MultiVector,
}

impl HodgeData {
    pub fn new(n: usize) -> Result<Self, CliffordError> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(CliffordError::UnsupportedDimension { n });
        }
        Ok(HodgeData { nu: MultiVector::volume(n) })
    }

    pub fn star(&self, phi: &MultiVector) -> MultiVector {
        phi.hodge_star()
    }

    pub fn selfdual_split(&self, phi: &MultiVector) -> Result<(MultiVector, MultiVector), CliffordError> {
        phi.selfdual_split()
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if b.0 == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({c}){b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}[{}]", self.n, self)
    }
}

impl Add for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        self.merge(rhs, false)
    }
}

impl Sub for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        self.merge(rhs, true)
    }
}

impl Add for MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: MultiVector) -> MultiVector {
        self.merge(&rhs, false)
    }
}

impl Sub for MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: MultiVector) -> MultiVector {
        self.merge(&rhs, true)
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        MultiVector { n: self.n, terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect() }
    }
}

impl Neg for MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        -&self
    }
}

/// Panics on dimension mismatch; use [`MultiVector::geometric_product`] to
/// get an error instead.
impl Mul for &MultiVector {
    type Output = MultiVector;
    fn mul(self, rhs: &MultiVector) -> MultiVector {
        self.geometric_product(rhs).expect("dimension mismatch in Clifford product")
    }
}

impl Mul for MultiVector {
    type Output = MultiVector;
    fn mul(self, rhs: MultiVector) -> MultiVector {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn generator_relations() {
        let e1 = MultiVector::basis_vector(4, 1);
        let e2 = MultiVector::basis_vector(4, 2);
        assert_eq!(&e1 * &e1, MultiVector::scalar(4, -1));
        assert_eq!(&e1 * &e2, MultiVector::blade(4, &[1, 2]));
        assert_eq!(&e2 * &e1, -MultiVector::blade(4, &[1, 2]));
        for n in 1..=MAX_DIM {
            for i in 1..=n {
                for j in 1..=n {
                    let ei = MultiVector::basis_vector(n, i);
                    let ej = MultiVector::basis_vector(n, j);
                    let s = &(&ei * &ej) + &(&ej * &ei);
                    let expect = if i == j { MultiVector::scalar(n, -2) } else { MultiVector::zero(n) };
                    assert_eq!(s, expect);
                }
            }
        }
    }

    #[test]
    fn product_matches_vector_convention() {
        // e * phi = e ^ phi - e _| phi on blades, with the interior product
        // computed by removing e and counting the indices before it.
        for a in 0u16..256 {
            let phi = MultiVector::from_terms(8, [(Blade(a), q(1))]);
            for i in 1..=8 {
                let e = MultiVector::basis_vector(8, i);
                let wedge = e.wedge(&phi);
                let interior = if Blade(a).contains(i) {
                    let before = (a & ((1u16 << (i - 1)) - 1)).count_ones();
                    let c = if before.is_multiple_of(2) { q(1) } else { q(-1) };
                    MultiVector::from_terms(8, [(Blade(a & !(1 << (i - 1))), c)])
                } else {
                    MultiVector::zero(8)
                };
                assert_eq!(&e * &phi, &wedge - &interior);
                assert_eq!(phi.contract_basis(i), interior);
            }
        }
    }

    #[test]
    fn self_dual_pair_square() {
        let t = &MultiVector::blade(8, &[1, 2, 3, 4]) + &MultiVector::blade(8, &[5, 6, 7, 8]);
        let sq = &t * &t;
        let expect = &MultiVector::scalar(8, 2) + &MultiVector::volume(8).scale(&q(2));
        assert_eq!(sq, expect);
        assert_eq!(sq.grade_project(0), MultiVector::scalar(8, 2));
    }

    #[test]
    fn contraction_examples() {
        let t = MultiVector::blade(8, &[1, 2, 3, 4]);
        let e1 = MultiVector::basis_vector(8, 1);
        let e5 = MultiVector::basis_vector(8, 5);
        assert_eq!(MultiVector::contract_vector(&e1, &t).unwrap(), MultiVector::blade(8, &[2, 3, 4]));
        assert!(MultiVector::contract_vector(&e5, &t).unwrap().is_zero());
        let nu = MultiVector::volume(8);
        for i in 1..=8 {
            let x = MultiVector::basis_vector(8, i);
            assert_eq!(MultiVector::contract_vector(&x, &nu).unwrap(), -(&x * &nu));
        }
        let not_vec = MultiVector::blade(8, &[1, 2]);
        assert!(matches!(MultiVector::contract_vector(&not_vec, &t), Err(CliffordError::NotAVector { .. })));
        assert!(matches!(MultiVector::contract_vector(&MultiVector::basis_vector(4, 1), &t), Err(CliffordError::DimensionMismatch { .. })));
    }

    #[test]
    fn involution_examples() {
        let e123 = MultiVector::blade(4, &[1, 2, 3]);
        assert_eq!(e123.transpose(), MultiVector::vector_product(4, &[3, 2, 1]));
        assert_eq!(e123.transpose(), -e123.clone());
        let x = &MultiVector::basis_vector(4, 1) + &MultiVector::blade(4, &[1, 2]);
        let ax = &-MultiVector::basis_vector(4, 1) + &MultiVector::blade(4, &[1, 2]);
        assert_eq!(x.alpha(), ax);
        for n in 1..=MAX_DIM {
            let nu = MultiVector::volume(n);
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(nu.transpose(), nu.scale(&q(sign)));
            let reversed: Vec<usize> = (1..=n).rev().collect();
            assert_eq!(nu.transpose(), MultiVector::vector_product(n, &reversed));
        }
        // n = 7 reverses seven vectors: 21 transpositions, so the sign is -1
        assert_eq!(MultiVector::volume(7).transpose(), -MultiVector::volume(7));
        assert_eq!(MultiVector::volume(8).transpose(), MultiVector::volume(8));
    }

    #[test]
    fn l_operator_examples_and_law() {
        assert_eq!(MultiVector::blade(8, &[1, 2]).l_operator(), MultiVector::blade(8, &[1, 2]).scale(&q(-4)));
        assert_eq!(MultiVector::one(8).l_operator(), MultiVector::scalar(8, -8));
        for n in 1..=MAX_DIM {
            let mut masks: Vec<u16> = (0..(1u32 << n) as u16).collect();
            if n > 7 {
                masks.retain(|m| m % 7 == 0 || m.count_ones() <= 1);
            }
            for m in masks {
                let b = MultiVector::from_terms(n, [(Blade(m), q(1))]);
                let k = m.count_ones() as i64;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(b.l_operator(), b.scale(&q(sign * (2 * k - n as i64))), "n={n} blade={m:b}");
            }
        }
    }

    #[test]
    fn hodge_examples() {
        let nu = MultiVector::volume(8);
        assert_eq!(&nu * &nu, MultiVector::one(8));
        assert_eq!(MultiVector::blade(8, &[1, 2, 3, 4]).hodge_star(), MultiVector::blade(8, &[5, 6, 7, 8]));
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let phi = s.sparse_multivector(8, 12).even_part();
            assert_eq!(&phi * &nu, &nu * &phi);
        }
        assert!(matches!(MultiVector::one(6).selfdual_split(), Err(CliffordError::NoSelfDualSplit { n: 6 })));
    }

    #[test]
    fn hodge_defining_relation() {
        // a ^ *b = <a, b> nu on basis blades
        for n in [4usize, 5, 6] {
            let nu = MultiVector::volume(n);
            for a in 0..(1u16 << n) {
                for b in 0..(1u16 << n) {
                    if a.count_ones() != b.count_ones() {
                        continue;
                    }
                    let ma = MultiVector::from_terms(n, [(Blade(a), q(1))]);
                    let mb = MultiVector::from_terms(n, [(Blade(b), q(1))]);
                    let lhs = ma.wedge(&mb.hodge_star());
                    assert_eq!(lhs, nu.scale(&ma.inner_product(&mb)), "n={n}");
                }
            }
        }
    }

    #[test]
    fn selfdual_split_properties() {
        let mut s = Sampler::new(11);
        let nu = MultiVector::volume(8);
        for _ in 0..10 {
            let phi = s.sparse_multivector(8, 16);
            let (p, m) = phi.selfdual_split().unwrap();
            assert_eq!(&p + &m, phi);
            assert_eq!(&nu * &p, p);
            assert_eq!(&nu * &m, -m.clone());
            assert_eq!(p.selfdual_split().unwrap().0, p);
            assert!(m.selfdual_split().unwrap().0.is_zero());
        }
    }

    #[test]
    fn commutator_matches_products() {
        let mut s = Sampler::new(5);
        for n in [4usize, 6, 8] {
            for _ in 0..20 {
                let a = s.sparse_multivector(n, 10);
                let b = s.sparse_multivector(n, 10);
                assert_eq!(a.commutator(&b), &(&a * &b) - &(&b * &a));
                assert_eq!(a.anticommutator(&b), &(&a * &b) + &(&b * &a));
            }
        }
    }
}
