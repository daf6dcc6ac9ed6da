use std::collections::BTreeMap;

use serde::Serialize;

use super::{contractions, in_even_plus, in_lambda4_plus, unipotent_lambda, TorsionForm};
use crate::clifford::{Blade, MultiVector};
use crate::error::TorsionError;
use crate::lie::{close_span, LieAlgebra, LieDescriptor};
use crate::linalg::{self, SparseVec};
use crate::rational::Rational;
use crate::spin::{Matrix, SpinRep, Spinor};
use crate::subspace::Subspace;

/// Fixed spinors `Z_T` and, for `n = 8`, the parts in `S+` and `S-`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedSpinors {
    pub z: Vec<Spinor>,
    pub z_plus: Vec<Spinor>,
    pub z_minus: Vec<Spinor>,
}

impl FixedSpinors {
    pub fn dim(&self) -> usize {
        self.z.len()
    }
}

fn lift(n: usize, offset: usize, v: Vec<Rational>) -> Spinor {
    let mut out = vec![Rational::zero(); if n == 8 { 16 } else { 8 }];
    for (i, c) in v.into_iter().enumerate() {
        out[offset + i] = c;
    }
    out
}

fn column_kernel(mats: &[Matrix], c0: usize, c1: usize) -> Vec<Vec<Rational>> {
    let blocks: Vec<Matrix> = mats.iter().map(|m| m.block(0, m.rows(), c0, c1)).collect();
    Matrix::joint_kernel(&blocks, c1 - c0)
}

/// Joint kernel of `mu(e_i _| T)`.
pub fn fixed_spinors(t: &MultiVector, rep: &SpinRep) -> Result<FixedSpinors, TorsionError> {
    let n = rep.n();
    let mats = contractions(t).iter().map(|g| rep.mu_matrix(g)).collect::<Result<Vec<_>, _>>()?;
    let d = rep.dim_s();
    let z = Matrix::joint_kernel(&mats, d);
    let (z_plus, z_minus) = if n == 8 {
        (
            column_kernel(&mats, 0, 8).into_iter().map(|v| lift(n, 0, v)).collect(),
            column_kernel(&mats, 8, 16).into_iter().map(|v| lift(n, 8, v)).collect(),
        )
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(FixedSpinors { z, z_plus, z_minus })
}

/// Alternative description of the fixed spinors of `T` in `Cl^0 ∩ Cl^+`
/// (`n = 8`): `ker mu(T)` on `S+`, and `{psi in S- : T X psi = 0 for all X}`.
pub fn z1_spaces(t: &MultiVector, rep: &SpinRep) -> Result<(Vec<Spinor>, Vec<Spinor>), TorsionError> {
    if rep.n() != 8 || !in_even_plus(t) {
        return Err(TorsionError::Precondition("needs n = 8 and T in Cl^0 ∩ Cl^+".into()));
    }
    let mt = rep.mu_matrix(t)?;
    let plus = column_kernel(std::slice::from_ref(&mt), 0, 8).into_iter().map(|v| lift(8, 0, v)).collect();
    let txs = (1..=8).map(|i| rep.mu_matrix(&(t * &MultiVector::basis_vector(8, i)))).collect::<Result<Vec<_>, _>>()?;
    let minus = column_kernel(&txs, 8, 16).into_iter().map(|v| lift(8, 8, v)).collect();
    Ok((plus, minus))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvertibilityReport {
    pub invertible_mod_1nu: bool,
    pub inverse: Option<MultiVector>,
    pub unipotent: bool,
    pub lambda: Option<Rational>,
    /// `dim Z_T` when a spinor module is available (`n = 8`).
    pub fixed_spinor_dim: Option<usize>,
}

/// Basis `{b + nu b}` of `Cl^0 ∩ Cl^+` over even blades.
fn even_plus_basis(n: usize) -> Vec<MultiVector> {
    let nu = MultiVector::volume(n);
    let s = Subspace::span(
        n,
        &(0..1u32 << n)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(|m| {
                let b = MultiVector::from_terms(n, [(Blade(m as u16), Rational::one())]);
                &b + &(&nu * &b)
            })
            .collect::<Vec<_>>(),
    );
    s.basis()
}

/// Solves `S T = 1 + nu` for `S` in `Cl^0 ∩ Cl^+`.
pub fn invertibility_report(t: &TorsionForm) -> Result<InvertibilityReport, TorsionError> {
    let v = t.value();
    let n = t.n();
    if !in_even_plus(v) || v.transpose() != *v {
        return Err(TorsionError::Precondition("needs n = 0 mod 4, T in Cl^0 ∩ Cl^+ and T^t = T".into()));
    }
    let basis = even_plus_basis(n);
    let one_nu = &MultiVector::one(n) + &MultiVector::volume(n);
    let mut cols: Vec<SparseVec> = basis.iter().map(|b| crate::subspace::to_sparse(&(b * v))).collect();
    cols.push(crate::subspace::to_sparse(&-&one_nu));
    let rel = linalg::linear_relations(&cols, 1 << n);
    let last = basis.len();
    let inverse = rel.iter().find(|r| !r[last].is_zero()).map(|r| {
        let scale = r[last].recip();
        basis.iter().zip(r).fold(MultiVector::zero(n), |acc, (b, c)| &acc + &b.scale(&(c * &scale)))
    });
    let inverse = inverse.filter(|s| (v * s) == one_nu);
    let lambda = unipotent_lambda(v);
    let fixed_spinor_dim = if n == 8 { Some(fixed_spinors(v, SpinRep::shared(8)?)?.dim()) } else { None };
    Ok(InvertibilityReport { invertible_mod_1nu: inverse.is_some(), inverse, unipotent: lambda.is_some(), lambda, fixed_spinor_dim })
}

/// Fix algebra, holonomy algebra and their descriptors.
#[derive(Debug, Clone)]
pub struct FixAnalysis {
    pub g: Subspace,
    pub h: Subspace,
    pub descriptor: LieDescriptor,
    pub g_even: Subspace,
    pub g_odd: Subspace,
}

pub fn analyze_fix_algebra(t: &MultiVector) -> Result<FixAnalysis, TorsionError> {
    if t.is_zero() {
        return Err(TorsionError::Zero);
    }
    let n = t.dim();
    let g = close_span(n, &contractions(t));
    let alg = LieAlgebra::new(g.clone()).map_err(|e| TorsionError::Invariant(e.to_string()))?;
    let descriptor = alg.descriptor();
    let h = alg.derived();
    let g_even = g.kernel_of(|x| vec![x.odd_part()]);
    let g_odd = g.kernel_of(|x| vec![x.even_part()]);
    Ok(FixAnalysis { g, h, descriptor, g_even, g_odd })
}

/// `span{[a, b] : a in x, b in y}`.
pub fn bracket_span(x: &Subspace, y: &Subspace) -> Subspace {
    let xb = x.basis();
    let yb = y.basis();
    let mut out = Subspace::zero(x.dim_n());
    for a in &xb {
        for b in &yb {
            let c = a.commutator(b);
            if !c.is_zero() {
                out.insert(&c);
            }
        }
    }
    out
}

/// Orthogonal decomposition of the 2-forms on `R^8` attached to a
/// self-dual 4-form with rational spectrum.
#[derive(Debug, Clone)]
pub struct Lambda2Splitting {
    pub spectrum: super::SpectrumData,
    pub iota0: Subspace,
    pub e: Vec<Subspace>,
    /// `(i, j)` with `i <= j`, 0-based.
    pub f: BTreeMap<(usize, usize), Subspace>,
    pub isotropy: Subspace,
}

fn one_plus_nu() -> MultiVector {
    &MultiVector::one(8) + &MultiVector::volume(8)
}

pub fn lambda2() -> Subspace {
    Subspace::blades(8, |b| b.grade() == 2)
}

pub fn lambda2_splitting(t: &TorsionForm) -> Result<Lambda2Splitting, TorsionError> {
    let v = t.value();
    if !in_lambda4_plus(v) {
        return Err(TorsionError::Precondition("splitting needs a self-dual 4-form in dimension 8".into()));
    }
    let spectrum = t.spectrum()?.exact().cloned().ok_or(TorsionError::NonRationalSpectrum)?;
    let l2 = lambda2();
    let opn = one_plus_nu();
    let half = Rational::new(1, 2);
    let iota0 = l2.kernel_of(|a| vec![a * v, v * a]);
    let lambdas: Vec<Rational> = spectrum.eigenvalues().iter().map(|(l, _)| l.clone()).collect();
    let e = lambdas
        .iter()
        .map(|l| {
            let c = l * &half;
            l2.kernel_of(|a| vec![&(v * a) * v, &(&(v * a) + &(a * v)) - &(&opn * a).scale(&c)])
        })
        .collect();
    let mut f = BTreeMap::new();
    for i in 0..lambdas.len() {
        for j in i..lambdas.len() {
            let prod = &(&lambdas[i] * &lambdas[j]) * &half;
            let sum = &(&lambdas[i] + &lambdas[j]) * &half;
            let block =
                l2.kernel_of(|a| vec![&(&(v * a) * v) - &(&opn * a).scale(&prod), &(&(v * a) + &(a * v)) - &(&opn * a).scale(&sum)]);
            f.insert((i, j), block);
        }
    }
    let isotropy = l2.kernel_of(|a| vec![a.commutator(v)]);
    Ok(Lambda2Splitting { spectrum, iota0, e, f, isotropy })
}

impl Lambda2Splitting {
    pub fn d(&self) -> usize {
        self.spectrum.zero_dim()
    }

    fn mult(&self, k: usize) -> usize {
        self.spectrum.eigenvalues()[k].1
    }

    /// Block dimensions in order `iota0, E_1.., F_ij..` (i <= j).
    pub fn dims(&self) -> Vec<usize> {
        let mut out = vec![self.iota0.dim()];
        out.extend(self.e.iter().map(|s| s.dim()));
        out.extend(self.f.values().map(|s| s.dim()));
        out
    }

    pub fn expected_dims(&self) -> Vec<usize> {
        let d = self.d();
        let p = self.e.len();
        let mut out = vec![d * d.saturating_sub(1) / 2];
        out.extend((0..p).map(|k| d * self.mult(k)));
        out.extend(self.f.keys().map(|&(i, j)| if i == j { self.mult(i) * (self.mult(i) - 1) / 2 } else { self.mult(i) * self.mult(j) }));
        out
    }

    pub fn blocks(&self) -> Vec<&Subspace> {
        let mut out = vec![&self.iota0];
        out.extend(self.e.iter());
        out.extend(self.f.values());
        out
    }

    pub fn f_total(&self) -> Subspace {
        self.f.values().fold(Subspace::zero(8), |acc, s| acc.sum(s))
    }

    pub fn e_total(&self) -> Subspace {
        self.e.iter().fold(Subspace::zero(8), |acc, s| acc.sum(s))
    }

    fn f_block(&self, i: usize, j: usize) -> &Subspace {
        &self.f[&(i.min(j), i.max(j))]
    }

    /// Blocks have the predicted dimensions, are pairwise orthogonal and
    /// fill the 28-dimensional space of 2-forms.
    pub fn is_orthogonal_decomposition(&self) -> bool {
        let blocks = self.blocks();
        let orth = blocks
            .iter()
            .enumerate()
            .all(|(i, a)| blocks[..i].iter().all(|b| a.basis().iter().all(|x| b.basis().iter().all(|y| x.inner_product(y).is_zero()))));
        orth && self.dims() == self.expected_dims() && self.dims().iter().sum::<usize>() == 28
    }

    /// The isotropy algebra is `iota0` plus the diagonal `F_kk`.
    pub fn isotropy_matches(&self) -> bool {
        let expect = (0..self.e.len()).fold(self.iota0.clone(), |acc, k| acc.sum(self.f_block(k, k)));
        expect == self.isotropy
    }

    /// Every entry of the bracket table between the blocks, as
    /// `(description, holds)`. Equalities involving `iota0` that need
    /// `dim Z_T` large enough are checked as inclusions below that bound.
    pub fn bracket_table(&self) -> Vec<(String, bool)> {
        let p = self.e.len();
        let d = self.d();
        let zero = Subspace::zero(8);
        let mut out = Vec::new();
        let mut check = |name: String, got: Subspace, expect: Subspace, equal: bool| {
            let ok = if equal { got == expect } else { got.is_subspace_of(&expect) };
            out.push((name, ok));
        };
        let pairs: Vec<(usize, usize)> = self.f.keys().copied().collect();
        if d > 0 {
            check("[i0,i0]=i0".into(), bracket_span(&self.iota0, &self.iota0), self.iota0.clone(), d >= 3);
            for k in 0..p {
                check(format!("[i0,E{k}]=E{k}"), bracket_span(&self.iota0, &self.e[k]), self.e[k].clone(), d >= 2);
            }
            for &(i, j) in &pairs {
                check(format!("[i0,F{i}{j}]=0"), bracket_span(&self.iota0, self.f_block(i, j)), zero.clone(), true);
            }
            for i in 0..p {
                for j in i..p {
                    let expect = if i == j { self.f_block(i, i).sum(&self.iota0) } else { self.f_block(i, j).clone() };
                    check(format!("[E{i},E{j}]"), bracket_span(&self.e[i], &self.e[j]), expect, true);
                }
            }
            for i in 0..p {
                for &(j, k) in &pairs {
                    let got = bracket_span(&self.e[i], self.f_block(j, k));
                    if i != j && i != k {
                        check(format!("[E{i},F{j}{k}]=0"), got, zero.clone(), true);
                    } else if j != k {
                        let other = if i == j { k } else { j };
                        check(format!("[E{i},F{j}{k}]=E{other}"), got, self.e[other].clone(), true);
                    }
                }
            }
        }
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a..] {
                let got = bracket_span(self.f_block(i, j), self.f_block(k, l));
                let shared: Vec<usize> = [i, j].into_iter().filter(|x| *x == k || *x == l).collect();
                if shared.is_empty() {
                    check(format!("[F{i}{j},F{k}{l}]=0"), got, zero.clone(), true);
                } else if (i, j) == (k, l) && i != j {
                    let expect = self.f_block(i, i).sum(self.f_block(j, j));
                    check(format!("[F{i}{j},F{i}{j}]"), got, expect, true);
                } else if i != j && k != l && shared.len() == 1 {
                    let s = shared[0];
                    let x = if i == s { j } else { i };
                    let y = if k == s { l } else { k };
                    check(format!("[F{i}{j},F{k}{l}]=F{x}{y}"), got, self.f_block(x, y).clone(), true);
                } else if (i == j) != (k == l) {
                    // [F_ii, F_ik] = F_ik when m_i >= 2
                    let (s, other) = if i == j { (i, (k, l)) } else { (k, (i, j)) };
                    let target = self.f_block(other.0, other.1).clone();
                    check(format!("[F{s}{s},F{}{}]", other.0, other.1), got, target, self.mult(s) >= 2);
                }
            }
        }
        out
    }

    /// `(1 + nu) F ⊕ (1 - nu) Λ^2`.
    pub fn predicted_even_part(&self) -> Subspace {
        let nu = MultiVector::volume(8);
        let plus = self.f_total().map(|a| a + &(&nu * a));
        let minus = lambda2().map(|a| a - &(&nu * a));
        plus.sum(&minus)
    }
}

/// The odd subspaces attached to `T` in `Λ^4_+`.
#[derive(Debug, Clone)]
pub struct QSpaces {
    pub q: Subspace,
    /// `{phi in A^1 : T phi = phi T = 0}`.
    pub q_strict: Subspace,
    /// Orthogonal complement of `Q` in `A^1`.
    pub q_perp: Subspace,
    pub dim6: Option<Dim6Data>,
}

/// Extra structure when `dim Z_T = 6`.
#[derive(Debug, Clone)]
pub struct Dim6Data {
    pub alpha12: MultiVector,
    pub q1: Subspace,
    pub q2: Subspace,
    /// Algebra generated by the double commutators `[X _| T, Y _| T]`.
    pub g2: Subspace,
    /// `(3 + nu) F ⊕ (1 - nu) iota0`.
    pub g2_predicted: Subspace,
    pub q_in_lambda3: bool,
    /// The three bracket relations between `iota0`, `F_12`, `Q1` and `Q2`.
    pub com6: [bool; 3],
}

pub fn odd_model() -> Subspace {
    Subspace::blades(8, |b| b.grade() == 3 || b.grade() == 7)
}

pub fn q_spaces(t: &TorsionForm, split: Option<&Lambda2Splitting>) -> Result<QSpaces, TorsionError> {
    let v = t.value();
    if !in_lambda4_plus(v) {
        return Err(TorsionError::Precondition("Q spaces need a self-dual 4-form in dimension 8".into()));
    }
    let a1 = odd_model();
    let q = a1.kernel_of(|p| vec![&(v * p) + &(p * v)]);
    let q_strict = a1.kernel_of(|p| vec![v * p, p * v]);
    let q_perp = a1.orthogonal_within(&q);
    let owned;
    let split = match split {
        Some(s) => Some(s),
        None if t.spectrum().ok().and_then(|s| s.exact().map(|e| e.zero_dim())) == Some(6) => {
            owned = lambda2_splitting(t)?;
            Some(&owned)
        }
        None => None,
    };
    let dim6 = match split {
        Some(s) if s.d() == 6 && s.e.len() == 2 => Some(dim6_data(v, s)),
        _ => None,
    };
    Ok(QSpaces { q, q_strict, q_perp, dim6 })
}

fn dim6_data(v: &MultiVector, split: &Lambda2Splitting) -> Dim6Data {
    let nu = MultiVector::volume(8);
    let f12 = split.f_block(0, 1);
    let alpha12 = f12.basis()[0].clone();
    let gens = contractions(v);
    let q1 = Subspace::span(8, &gens);
    let ta = v * &alpha12;
    let q2 = Subspace::span(8, &contractions(&ta));
    let mut doubles = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            doubles.push(gens[i].commutator(&gens[j]));
        }
    }
    let g2 = close_span(8, &doubles);
    let three = Rational::from(3);
    let f_part = split.f_total().map(|a| &a.scale(&three) + &(&nu * a));
    let i_part = split.iota0.map(|a| a - &(&nu * a));
    let g2_predicted = f_part.sum(&i_part);
    let lambda3 = Subspace::blades(8, |b| b.grade() == 3);
    let q_in_lambda3 = q1.is_subspace_of(&lambda3) && q2.is_subspace_of(&lambda3);
    let c1 = bracket_span(&i_part, &q1) == q1;
    let f12_three = f12.map(|a| &a.scale(&three) + &(&nu * a));
    let c2 = bracket_span(&f12_three, &q1).is_subspace_of(&q1.sum(&q2));
    let c3 = bracket_span(&q1, &q2) == g2;
    Dim6Data { alpha12, q1, q2, g2, g2_predicted, q_in_lambda3, com6: [c1, c2, c3] }
}

/// For `k = 1..=k_max`: whether every `e_i _| T^{2k+1}` lies in `g`.
pub fn odd_power_inclusion_in(t: &MultiVector, g: &Subspace, k_max: u32) -> Vec<bool> {
    let sq = t * t;
    let mut power = t.clone();
    (1..=k_max)
        .map(|_| {
            power = &power * &sq;
            contractions(&power).iter().all(|c| g.contains(c))
        })
        .collect()
}

pub fn odd_power_inclusion(t: &TorsionForm, k_max: u32) -> Result<Vec<bool>, TorsionError> {
    if !in_lambda4_plus(t.value()) {
        return Err(TorsionError::Precondition("needs a self-dual 4-form in dimension 8".into()));
    }
    let g = close_span(8, &contractions(t.value()));
    Ok(odd_power_inclusion_in(t.value(), &g, k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieLabel;
    use crate::torsion::SpectrumData;

    #[test]
    fn unipotent_pair_inverse() {
        let t = TorsionForm::unipotent_pair().unwrap();
        let r = invertibility_report(&t).unwrap();
        assert!(r.invertible_mod_1nu && r.unipotent);
        assert_eq!(r.lambda, Some(Rational::from(2)));
        assert_eq!(r.inverse, Some(t.value().scale(&Rational::new(1, 2))));
        assert_eq!(r.fixed_spinor_dim, Some(0));
    }

    #[test]
    fn su4_not_invertible() {
        let t = TorsionForm::su4().unwrap();
        let r = invertibility_report(&t).unwrap();
        assert!(!r.invertible_mod_1nu && !r.unipotent);
        assert_eq!(r.fixed_spinor_dim, Some(6));
    }

    #[test]
    fn volume_seven_is_so8() {
        let a = analyze_fix_algebra(TorsionForm::volume(7).unwrap().value()).unwrap();
        assert_eq!(a.descriptor.label, LieLabel::So(8, 0));
        assert_eq!(a.h, a.g);
    }

    #[test]
    fn unipotent_splitting_dims() {
        let spec = SpectrumData::from_ints(&[(2, 4), (-2, 4)], 0).unwrap();
        let t = TorsionForm::from_spectrum(&spec, None).unwrap();
        let s = lambda2_splitting(&t).unwrap();
        assert_eq!(s.dims(), vec![0, 0, 0, 6, 16, 6]);
        assert!(s.is_orthogonal_decomposition());
        assert!(s.isotropy_matches());
        assert!(s.bracket_table().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn z1_agrees_with_kernel() {
        let rep = SpinRep::shared(8).unwrap();
        let spec = SpectrumData::from_ints(&[(1, 2), (-2, 1)], 5).unwrap();
        let t = TorsionForm::from_spectrum(&spec, None).unwrap();
        let z = fixed_spinors(t.value(), rep).unwrap();
        let (p, m) = z1_spaces(t.value(), rep).unwrap();
        assert_eq!((z.dim(), z.z_plus.len(), z.z_minus.len()), (5, 5, 0));
        assert_eq!((p.len(), m.len()), (5, 0));
    }
}
