//! Torsion elements: constructors, fixed spinors, spectra and the analyses
//! of their fix algebras.

mod analysis;
mod hermitian;
mod identities;
mod spectrum;

pub use analysis::*;
pub use hermitian::*;
pub use identities::*;
pub use spectrum::*;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::clifford::{Blade, MultiVector};
use crate::error::TorsionError;
use crate::rational::Rational;
use crate::spin::{SpinRep, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Volume,
    Unipotent,
    SpinorSquare,
    AlphaSquare,
    FromSpectrum,
    File,
    Conjugated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionForm {
    value: MultiVector,
    provenance: Provenance,
    spectrum: Option<SpectrumData>,
    /// Rows: the orthogonal basis of `S+` used by `from_spectrum`, in the
    /// order eigenvalues were assigned (zero eigenvectors last).
    eigenbasis: Option<Vec<Vec<Rational>>>,
}

/// `{e_i _| T}` over the standard frame.
pub fn contractions(t: &MultiVector) -> Vec<MultiVector> {
    (1..=t.dim()).map(|i| t.contract_basis(i)).collect()
}

/// `T^2 = lambda (1 + nu)` with `lambda > 0`: returns `lambda`.
pub fn unipotent_lambda(t: &MultiVector) -> Option<Rational> {
    let n = t.dim();
    if !n.is_multiple_of(4) || t.transpose() != *t {
        return None;
    }
    let sq = t * t;
    let lambda = sq.scalar_part();
    if !lambda.is_positive() {
        return None;
    }
    let expect = (&MultiVector::one(n) + &MultiVector::volume(n)).scale(&lambda);
    (sq == expect).then_some(lambda)
}

/// Element of `Cl^0 ∩ Cl^+`: even and fixed by left multiplication with `nu`.
pub fn in_even_plus(t: &MultiVector) -> bool {
    t.dim().is_multiple_of(4) && t.odd_part().is_zero() && &MultiVector::volume(t.dim()) * t == *t
}

/// Pure grade 4 in dimension 8 with `nu T = T`.
pub fn in_lambda4_plus(t: &MultiVector) -> bool {
    t.dim() == 8 && t.is_homogeneous(4) && in_even_plus(t)
}

/// Basis `e_A + *e_A` of the self-dual 4-forms on `R^8` (4-sets containing 1).
pub fn lambda4_plus_basis() -> Vec<MultiVector> {
    (0..256u16)
        .filter(|m| m.count_ones() == 4 && m & 1 == 1)
        .map(|m| {
            let b = MultiVector::from_terms(8, [(Blade(m), Rational::one())]);
            &b + &b.hodge_star()
        })
        .collect()
}

impl TorsionForm {
    fn new(value: MultiVector, provenance: Provenance) -> Result<Self, TorsionError> {
        if value.is_zero() {
            return Err(TorsionError::Zero);
        }
        Ok(TorsionForm { value, provenance, spectrum: None, eigenbasis: None })
    }

    pub fn value(&self) -> &MultiVector {
        &self.value
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn n(&self) -> usize {
        self.value.dim()
    }

    /// The spectrum this form was built from, if any.
    pub fn constructed_spectrum(&self) -> Option<&SpectrumData> {
        self.spectrum.as_ref()
    }

    pub fn eigenbasis(&self) -> Option<&[Vec<Rational>]> {
        self.eigenbasis.as_deref()
    }

    /// Eigenvectors (as `S+` spinors of length 16) grouped by eigenvalue,
    /// followed by the kernel, for forms built from a spectrum.
    pub fn eigenspaces(&self) -> Option<(Vec<(Rational, Vec<Spinor>)>, Vec<Spinor>)> {
        let spec = self.spectrum.as_ref()?;
        let basis = self.eigenbasis.as_ref()?;
        let lift = |v: &Vec<Rational>| {
            let mut s = v.clone();
            s.resize(16, Rational::zero());
            s
        };
        let mut idx = 0;
        let mut groups = Vec::new();
        for (lambda, m) in spec.eigenvalues() {
            groups.push((lambda.clone(), basis[idx..idx + m].iter().map(lift).collect()));
            idx += m;
        }
        Some((groups, basis[idx..].iter().map(lift).collect()))
    }

    /// An arbitrary element with an explicit tag (used for files and tests).
    pub fn from_value(value: MultiVector, provenance: Provenance) -> Result<Self, TorsionError> {
        Self::new(value, provenance)
    }

    /// The volume element `nu` of `Cl_n`.
    pub fn volume(n: usize) -> Result<Self, TorsionError> {
        if !(1..=crate::clifford::MAX_DIM).contains(&n) {
            return Err(TorsionError::InvalidConstructor(format!("volume form needs 1 <= n <= 10, got {n}")));
        }
        Self::new(MultiVector::volume(n), Provenance::Volume)
    }

    /// `e1234 + e5678`, unipotent with `T^2 = 2 (1 + nu)`.
    pub fn unipotent_pair() -> Result<Self, TorsionError> {
        Self::unipotent(&MultiVector::blade(8, &[1, 2, 3, 4]) + &MultiVector::blade(8, &[5, 6, 7, 8]))
    }

    /// Any element with `T^t = T` and `T^2 = lambda (1 + nu)`, `lambda > 0`.
    pub fn unipotent(value: MultiVector) -> Result<Self, TorsionError> {
        if unipotent_lambda(&value).is_none() {
            return Err(TorsionError::Invariant("element is not unipotent".into()));
        }
        Self::new(value, Provenance::Unipotent)
    }

    /// Spinor square `x (x) x` of a unit spinor, `n` in {7, 8}.
    pub fn spinor_square(rep: &SpinRep, x: &[Rational]) -> Result<Self, TorsionError> {
        if !matches!(rep.n(), 7 | 8) {
            return Err(TorsionError::InvalidConstructor(format!("spinor squares need n in {{7, 8}}, got {}", rep.n())));
        }
        let sq = rep.spinor_square(x)?;
        if &sq * &sq != sq {
            return Err(TorsionError::Invariant("spinor square is not idempotent".into()));
        }
        Self::new(sq, Provenance::SpinorSquare)
    }

    /// `alpha ^ alpha` for a 2-form `alpha`.
    pub fn alpha_square(alpha: &MultiVector) -> Result<Self, TorsionError> {
        if !alpha.is_homogeneous(2) {
            return Err(TorsionError::InvalidConstructor("alpha must be a 2-form".into()));
        }
        Self::new(alpha.wedge(alpha), Provenance::AlphaSquare)
    }

    /// The `SU(4)`-type form with spectrum `{1, -1}` and six fixed spinors.
    pub fn su4() -> Result<Self, TorsionError> {
        let spec = SpectrumData::new(vec![(Rational::one(), 1), (-Rational::one(), 1)], 6)?;
        Self::from_spectrum(&spec, None)
    }

    /// Reads a form from its text record.
    pub fn from_file(path: &Path) -> Result<Self, TorsionError> {
        let text = std::fs::read_to_string(path).map_err(|e| TorsionError::Io(format!("{}: {e}", path.display())))?;
        Self::new(MultiVector::from_json(&text)?, Provenance::File)
    }

    /// `e T e` for a rational unit vector `e`.
    pub fn conjugate_by_vector(&self, e: &MultiVector) -> Result<Self, TorsionError> {
        if e.dim() != self.n() || !e.is_homogeneous(1) {
            return Err(TorsionError::InvalidConstructor("conjugation needs a vector of the same dimension".into()));
        }
        if !e.norm_sq().is_one() {
            return Err(TorsionError::InvalidConstructor("conjugating vector must have unit length".into()));
        }
        Self::new(&(e * &self.value) * e, Provenance::Conjugated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_examples() {
        let t = TorsionForm::unipotent_pair().unwrap();
        assert_eq!(unipotent_lambda(t.value()), Some(Rational::from(2)));
        let one_nu = &MultiVector::one(8) + &MultiVector::volume(8);
        assert_eq!(unipotent_lambda(&one_nu), Some(Rational::from(2)));
        assert!(TorsionForm::unipotent(MultiVector::blade(8, &[1, 2, 3, 4])).is_err());
    }

    #[test]
    fn selfdual_basis() {
        let b = lambda4_plus_basis();
        assert_eq!(b.len(), 35);
        assert!(b.iter().all(in_lambda4_plus));
    }

    #[test]
    fn constructor_errors() {
        assert!(matches!(TorsionForm::volume(11), Err(TorsionError::InvalidConstructor(_))));
        let bad =
            MultiVector::vector(8, &[Rational::from(1), Rational::from(1), 0.into(), 0.into(), 0.into(), 0.into(), 0.into(), 0.into()]);
        let t = TorsionForm::volume(8).unwrap();
        assert!(t.conjugate_by_vector(&bad).is_err());
        let e = MultiVector::basis_vector(8, 1);
        assert_eq!(t.conjugate_by_vector(&e).unwrap().provenance(), Provenance::Conjugated);
        assert!(matches!(TorsionForm::alpha_square(&MultiVector::blade(8, &[1, 2])), Err(TorsionError::Zero)));
    }
}
