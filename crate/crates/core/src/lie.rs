//! Lie subalgebras of `(Cl_n, [ , ])`: closure, structure constants,
//! derived algebra, center, invariant forms and classification.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::MultiVector;
use crate::error::LieError;
use crate::linalg::{self, RowSpace, SparseVec};
use crate::rational::{common_denominator, Rational};
use crate::subspace::{to_sparse, Subspace};

/// Smallest commutator-closed subspace containing `generators`.
///
/// Only brackets with generators are formed: the span of right-normed
/// iterated brackets of generators is already a subalgebra.
pub fn close_span(n: usize, generators: &[MultiVector]) -> Subspace {
    let mut space = Subspace::zero(n);
    let gens: Vec<&MultiVector> = generators.iter().filter(|g| !g.is_zero()).collect();
    let mut queue: Vec<MultiVector> = Vec::new();
    for g in &gens {
        assert_eq!(g.dim(), n, "dimension mismatch");
        if space.insert(g) {
            queue.push((*g).clone());
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        let brackets: Vec<MultiVector> = gens.par_iter().map(|g| g.commutator(&x)).collect();
        for b in brackets {
            if !b.is_zero() && space.insert(&b) {
                queue.push(b);
            }
        }
    }
    space
}

/// The model algebra `A = {phi : phi^t = -phi}` and its parity parts.
pub struct ModelAlgebra {
    pub a: Subspace,
    pub even: Subspace,
    pub odd: Subspace,
}

impl ModelAlgebra {
    pub fn new(n: usize) -> Self {
        let anti = |k: usize| (k * k.saturating_sub(1) / 2) % 2 == 1;
        ModelAlgebra {
            a: Subspace::blades(n, |b| anti(b.grade())),
            even: Subspace::blades(n, |b| anti(b.grade()) && b.grade() % 2 == 0),
            odd: Subspace::blades(n, |b| anti(b.grade()) && b.grade() % 2 == 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl From<(usize, usize, usize)> for Signature {
    fn from((positive, negative, zero): (usize, usize, usize)) -> Self {
        Signature { positive, negative, zero }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LieLabel {
    Zero,
    Abelian(usize),
    /// `so(p, q)` with `p >= q`.
    So(usize, usize),
    /// `su(p, q)` with `p >= q`, used when no `so` label fits.
    Su(usize, usize),
    Unknown,
}

impl fmt::Display for LieLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieLabel::Zero => write!(f, "zero"),
            LieLabel::Abelian(d) => write!(f, "abelian({d})"),
            LieLabel::So(p, 0) => write!(f, "so({p})"),
            LieLabel::So(p, q) => write!(f, "so({p},{q})"),
            LieLabel::Su(p, 0) => write!(f, "su({p})"),
            LieLabel::Su(p, q) => write!(f, "su({p},{q})"),
            LieLabel::Unknown => write!(f, "unknown"),
        }
    }
}

impl std::str::FromStr for LieLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("unrecognized label `{s}`");
        if s == "zero" {
            return Ok(LieLabel::Zero);
        }
        if s == "unknown" {
            return Ok(LieLabel::Unknown);
        }
        if let Some(inner) = s.strip_prefix("abelian(").and_then(|r| r.strip_suffix(')')) {
            return inner.parse().map(LieLabel::Abelian).map_err(|_| bad());
        }
        for (prefix, make) in [("so(", LieLabel::So as fn(usize, usize) -> LieLabel), ("su(", LieLabel::Su)] {
            if let Some(inner) = s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
                let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                let nums: Vec<usize> = parts.iter().map(|p| p.parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
                return match nums[..] {
                    [p] => Ok(make(p, 0)),
                    [p, q] => Ok(make(p.max(q), p.min(q))),
                    _ => Err(bad()),
                };
            }
        }
        Err(bad())
    }
}

impl Serialize for LieLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LieLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDescriptor {
    pub dim: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub beta_signature: Signature,
    pub killing_signature: Signature,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub label: LieLabel,
}

impl LieDescriptor {
    pub fn is_perfect(&self) -> bool {
        self.derived_dim == self.dim
    }
}

/// Label from dimension, derived dimension and Killing inertia.
pub fn label_for(dim: usize, derived_dim: usize, killing: Signature) -> LieLabel {
    if dim == 0 {
        return LieLabel::Zero;
    }
    if derived_dim == 0 {
        return LieLabel::Abelian(dim);
    }
    if killing.zero != 0 {
        return LieLabel::Unknown;
    }
    if let Some(m) = (3..64).find(|m| m * (m - 1) / 2 == dim) {
        let matches: Vec<(usize, usize)> = (m.div_ceil(2)..=m)
            .map(|p| (p, m - p))
            .filter(|&(p, q)| killing.positive == p * q && killing.negative == p * (p - 1) / 2 + q * q.saturating_sub(1) / 2)
            .collect();
        if let [(p, q)] = matches[..] {
            return LieLabel::So(p, q);
        }
    }
    // compact part u(p) + u(q) minus the center, noncompact part C^(pq)
    if let Some(m) = (2..64).find(|m| m * m - 1 == dim) {
        let matches: Vec<(usize, usize)> = (m.div_ceil(2)..=m)
            .map(|p| (p, m - p))
            .filter(|&(p, q)| killing.positive == 2 * p * q && killing.negative == p * p + q * q - 1)
            .collect();
        if let [(p, q)] = matches[..] {
            return LieLabel::Su(p, q);
        }
    }
    LieLabel::Unknown
}

/// Commutator-closed subspace with its structure constants.
pub struct LieAlgebra {
    n: usize,
    space: Subspace,
    basis: Vec<MultiVector>,
    /// `consts[i][j]`: coordinates of `[b_i, b_j]`.
    consts: Vec<Vec<SparseVec>>,
}

impl LieAlgebra {
    /// Computes all brackets of basis elements; fails if one leaves the span.
    pub fn new(space: Subspace) -> Result<LieAlgebra, LieError> {
        let n = space.dim_n();
        let basis = space.basis();
        let d = basis.len();
        let rows = space.row_space();
        let pivots = rows.pivots();
        let upper: Vec<Result<Vec<SparseVec>, LieError>> = (0..d)
            .into_par_iter()
            .map(|i| {
                (i + 1..d)
                    .map(|j| {
                        let br = basis[i].commutator(&basis[j]);
                        coordinates_in(rows, &pivots, &to_sparse(&br)).ok_or(LieError::NotClosed)
                    })
                    .collect()
            })
            .collect();
        let mut consts = vec![vec![Vec::new(); d]; d];
        for (i, row) in upper.into_iter().enumerate() {
            for (off, c) in row?.into_iter().enumerate() {
                let j = i + 1 + off;
                consts[j][i] = c.iter().map(|(k, x)| (*k, -x)).collect();
                consts[i][j] = c;
            }
        }
        Ok(LieAlgebra { n, space, basis, consts })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[MultiVector] {
        &self.basis
    }

    pub fn bracket_coords(&self, i: usize, j: usize) -> &SparseVec {
        &self.consts[i][j]
    }

    /// `[g, g]`.
    pub fn derived(&self) -> Subspace {
        let d = self.dim();
        let mut coords = RowSpace::new(d);
        'outer: for i in 0..d {
            for j in i + 1..d {
                if !self.consts[i][j].is_empty() {
                    coords.insert(self.consts[i][j].clone());
                    if coords.dim() == d {
                        break 'outer;
                    }
                }
            }
        }
        let elems: Vec<MultiVector> = coords.rows().iter().map(|r| self.space.combine(&linalg::sparse_to_dense(r, d))).collect();
        Subspace::span(self.n, &elems)
    }

    /// `{z : [z, g] = 0}`.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let rows: Vec<SparseVec> = (0..d)
            .map(|i| {
                let mut v: SparseVec = Vec::new();
                for j in 0..d {
                    v.extend(self.consts[i][j].iter().map(|(k, x)| (j * d + k, x.clone())));
                }
                v
            })
            .collect();
        let rel = linalg::linear_relations(&rows, d * d);
        let elems: Vec<MultiVector> = rel.iter().map(|c| self.space.combine(c)).collect();
        Subspace::span(self.n, &elems)
    }

    /// `K_ij = Tr(ad b_i ad b_j)` in the canonical basis.
    pub fn killing_matrix(&self) -> Vec<Vec<Rational>> {
        killing_integer(&self.consts).unwrap_or_else(|| killing_rational(&self.consts))
    }

    /// `beta(b_i, b_j) = <b_i, alpha(b_j)>`.
    pub fn beta_matrix(&self) -> Vec<Vec<Rational>> {
        let alphas: Vec<MultiVector> = self.basis.iter().map(|b| b.alpha()).collect();
        self.basis.iter().map(|b| alphas.iter().map(|a| b.inner_product(a)).collect()).collect()
    }

    pub fn descriptor(&self) -> LieDescriptor {
        let d = self.dim();
        let even = self.space.kernel_of(|x| vec![x.odd_part()]).dim();
        let odd = self.space.kernel_of(|x| vec![x.even_part()]).dim();
        let derived_dim = self.derived().dim();
        let center_dim = self.center().dim();
        let killing: Signature = linalg::symmetric_signature(&self.killing_matrix()).into();
        let beta: Signature = linalg::symmetric_signature(&self.beta_matrix()).into();
        LieDescriptor {
            dim: d,
            dim_even: even,
            dim_odd: odd,
            beta_signature: beta,
            killing_signature: killing,
            center_dim,
            derived_dim,
            label: label_for(d, derived_dim, killing),
        }
    }
}

/// Coordinates of `v` in the row space, or `None` if it is not a member.
fn coordinates_in(rows: &RowSpace, pivots: &[usize], v: &SparseVec) -> Option<SparseVec> {
    let coords: SparseVec = pivots.iter().enumerate().filter_map(|(k, p)| linalg::sparse_get(v, *p).map(|x| (k, x.clone()))).collect();
    let mut residual = v.clone();
    for (k, c) in &coords {
        residual = linalg::sparse_sub_scaled(&residual, c, &rows.rows()[*k]);
    }
    residual.is_empty().then_some(coords)
}

fn killing_rational(consts: &[Vec<SparseVec>]) -> Vec<Vec<Rational>> {
    let d = consts.len();
    // dense[j][k][l] = coefficient of b_l in [b_j, b_k]
    let mut dense = vec![Rational::zero(); d * d * d];
    for j in 0..d {
        for k in 0..d {
            for (l, x) in &consts[j][k] {
                dense[(j * d + k) * d + l] = x.clone();
            }
        }
    }
    let rows: Vec<Vec<Rational>> = (0..d)
        .into_par_iter()
        .map(|i| {
            (0..d)
                .map(|j| {
                    // sum_{l,k} c_{i l}^k c_{j k}^l
                    let mut acc = Rational::zero();
                    for l in 0..d {
                        for (k, x) in &consts[i][l] {
                            let y = &dense[(j * d + k) * d + l];
                            if !y.is_zero() {
                                acc.add_mul(x, y);
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    rows
}

/// Same as [`killing_rational`] on integers after clearing denominators;
/// `None` if the scaled constants do not fit comfortably in `i64`.
fn killing_integer(consts: &[Vec<SparseVec>]) -> Option<Vec<Vec<Rational>>> {
    let d = consts.len();
    let den = common_denominator(consts.iter().flatten().flatten().map(|(_, x)| x));
    let den_i = den.to_i64()?;
    let limit = 1i64 << 30;
    let mut dense = vec![0i64; d * d * d];
    let mut sparse: Vec<Vec<Vec<(usize, i64)>>> = vec![vec![Vec::new(); d]; d];
    for j in 0..d {
        for k in 0..d {
            for (l, x) in &consts[j][k] {
                let (num, xd) = x.as_small()?;
                let v = num.checked_mul(den_i / xd)?;
                if v.abs() >= limit {
                    return None;
                }
                dense[(j * d + k) * d + l] = v;
                sparse[j][k].push((*l, v));
            }
        }
    }
    let rows: Vec<Vec<i128>> = (0..d)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![0i128; d];
            for (j, slot) in out.iter_mut().enumerate() {
                let mut acc = 0i128;
                for l in 0..d {
                    for (k, x) in &sparse[i][l] {
                        let y = dense[(j * d + k) * d + l];
                        if y != 0 {
                            acc += (*x as i128) * (y as i128);
                        }
                    }
                }
                *slot = acc;
            }
            out
        })
        .collect();
    let den_sq = BigInt::from(den_i) * BigInt::from(den_i);
    Some(rows.into_iter().map(|r| r.into_iter().map(|v| Rational::from_bigints(BigInt::from(v), den_sq.clone())).collect()).collect())
}

/// Closure of `generators` followed by classification.
pub fn classify_generated(n: usize, generators: &[MultiVector]) -> Result<(LieAlgebra, LieDescriptor), LieError> {
    let g = LieAlgebra::new(close_span(n, generators))?;
    let d = g.descriptor();
    Ok((g, d))
}

/// Classification of a subspace; fails if it is not commutator-closed.
pub fn classify(space: &Subspace) -> Result<LieDescriptor, LieError> {
    Ok(LieAlgebra::new(space.clone())?.descriptor())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so3_in_cl4() {
        let gens = [MultiVector::blade(4, &[1, 2]), MultiVector::blade(4, &[1, 3])];
        let g = close_span(4, &gens);
        assert_eq!(g, Subspace::span(4, &[gens[0].clone(), gens[1].clone(), MultiVector::blade(4, &[2, 3])]));
        let alg = LieAlgebra::new(g.clone()).unwrap();
        assert_eq!(alg.derived(), g);
        assert_eq!(alg.center().dim(), 0);
        let d = alg.descriptor();
        assert_eq!(d.label, LieLabel::So(3, 0));
        assert_eq!(d.killing_signature, (0, 3, 0).into());
        assert_eq!(close_span(4, &alg.space().basis()), g);
    }

    #[test]
    fn single_generator_is_abelian() {
        let (alg, d) = classify_generated(4, &[MultiVector::blade(4, &[1, 2])]).unwrap();
        assert_eq!(d.label, LieLabel::Abelian(1));
        assert_eq!(alg.derived().dim(), 0);
        assert_eq!(alg.center(), *alg.space());
    }

    #[test]
    fn zero_subspace() {
        assert_eq!(classify(&Subspace::zero(3)).unwrap().label, LieLabel::Zero);
        assert_eq!(close_span(3, &[]).dim(), 0);
    }

    #[test]
    fn not_closed_is_detected() {
        let s = Subspace::span(4, &[MultiVector::blade(4, &[1, 2]), MultiVector::blade(4, &[1, 3])]);
        assert!(matches!(LieAlgebra::new(s), Err(LieError::NotClosed)));
    }

    #[test]
    fn compact_so8_killing() {
        let l2 = Subspace::blades(8, |b| b.grade() == 2);
        let d = classify(&l2).unwrap();
        assert_eq!(d.dim, 28);
        assert_eq!(d.killing_signature, (0, 28, 0).into());
        assert_eq!(d.label, LieLabel::So(8, 0));
    }

    #[test]
    fn model_algebra_cl8() {
        let m = ModelAlgebra::new(8);
        assert_eq!((m.a.dim(), m.even.dim(), m.odd.dim()), (120, 56, 64));
        let d = classify(&m.a).unwrap();
        assert_eq!(d.beta_signature, (56, 64, 0).into());
        assert_eq!(d.label, LieLabel::So(8, 8));
    }

    #[test]
    fn killing_paths_agree() {
        let l2 = Subspace::blades(5, |b| b.grade() == 2);
        let alg = LieAlgebra::new(l2).unwrap();
        let a = killing_integer(&alg.consts).unwrap();
        let b = killing_rational(&alg.consts);
        assert_eq!(a, b);
    }

    #[test]
    fn labels_parse_and_print() {
        for s in ["so(8,1)", "so(8)", "abelian(7)", "zero", "unknown", "so(6,2)"] {
            assert_eq!(s.parse::<LieLabel>().unwrap().to_string(), s);
        }
        assert_eq!(label_for(6, 6, (3, 3, 0).into()), LieLabel::So(3, 1));
        assert_eq!(label_for(6, 6, (4, 2, 0).into()), LieLabel::So(2, 2));
        assert_eq!(label_for(6, 6, (1, 5, 0).into()), LieLabel::Unknown);
        assert_eq!(label_for(7, 7, (0, 7, 0).into()), LieLabel::Unknown);
        assert_eq!(label_for(24, 24, (8, 16, 0).into()), LieLabel::Su(4, 1));
        assert_eq!(label_for(8, 8, (0, 8, 0).into()), LieLabel::Su(3, 0));
        assert_eq!(label_for(15, 15, (0, 15, 0).into()), LieLabel::So(6, 0));
        assert_eq!("su(1,4)".parse::<LieLabel>(), Ok(LieLabel::Su(4, 1)));
    }
}
