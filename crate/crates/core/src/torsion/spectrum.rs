use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{in_lambda4_plus, Provenance, TorsionForm};
use crate::error::TorsionError;
use crate::rational::Rational;
use crate::spin::{Matrix, SpinRep};

const NUMERIC_TOL: f64 = 1e-9;
const GROUP_GAP: f64 = 1e-6;

/// Nonzero eigenvalues of `mu_T` on `S+` with multiplicities, plus `dim Z_T+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumData {
    eigenvalues: Vec<(Rational, usize)>,
    zero_dim: usize,
}

impl SpectrumData {
    /// Eigenvalues must be distinct and nonzero, multiplicities positive, and
    /// the total count (with the kernel) equal to 8.
    pub fn new(eigenvalues: Vec<(Rational, usize)>, zero_dim: usize) -> Result<Self, TorsionError> {
        for (i, (l, m)) in eigenvalues.iter().enumerate() {
            if l.is_zero() {
                return Err(TorsionError::InvalidConstructor("eigenvalue 0 belongs in zero_dim".into()));
            }
            if *m == 0 {
                return Err(TorsionError::BadMultiplicity(0));
            }
            if eigenvalues[..i].iter().any(|(o, _)| o == l) {
                return Err(TorsionError::InvalidConstructor(format!("eigenvalue {l} listed twice")));
            }
        }
        let total = eigenvalues.iter().map(|(_, m)| m).sum::<usize>() + zero_dim;
        if total != 8 {
            return Err(TorsionError::BadMultiplicity(total));
        }
        Ok(SpectrumData { eigenvalues, zero_dim })
    }

    /// Shorthand for integer eigenvalues.
    pub fn from_ints(pairs: &[(i64, usize)], zero_dim: usize) -> Result<Self, TorsionError> {
        Self::new(pairs.iter().map(|&(l, m)| (Rational::from(l), m)).collect(), zero_dim)
    }

    pub fn eigenvalues(&self) -> &[(Rational, usize)] {
        &self.eigenvalues
    }

    pub fn zero_dim(&self) -> usize {
        self.zero_dim
    }

    /// `sum m_q lambda_q`.
    pub fn trace(&self) -> Rational {
        self.eigenvalues.iter().map(|(l, m)| l * &Rational::from(*m)).sum()
    }

    /// `sum m_q lambda_q^2`, which equals `16 |T|^2`.
    pub fn square_sum(&self) -> Rational {
        self.eigenvalues.iter().map(|(l, m)| &(l * l) * &Rational::from(*m)).sum()
    }

    /// Same data with eigenvalues in decreasing order.
    pub fn sorted(&self) -> SpectrumData {
        let mut e = self.eigenvalues.clone();
        e.sort_by(|a, b| b.0.cmp(&a.0));
        SpectrumData { eigenvalues: e, zero_dim: self.zero_dim }
    }

    /// Unipotent shape `{l:4, -l:4}`.
    pub fn is_unipotent_shape(&self) -> bool {
        self.zero_dim == 0
            && self.eigenvalues.len() == 2
            && self.eigenvalues.iter().all(|(_, m)| *m == 4)
            && (&self.eigenvalues[0].0 + &self.eigenvalues[1].0).is_zero()
    }

    /// Symmetric `8 x 8` matrix `sum lambda_q P_q` for the given orthogonal
    /// basis rows (kernel vectors last).
    fn operator(&self, basis: &[Vec<Rational>]) -> Matrix {
        let mut m = Matrix::zeros(8, 8);
        let mut idx = 0;
        for (lambda, mult) in &self.eigenvalues {
            for v in &basis[idx..idx + mult] {
                let nsq: Rational = v.iter().map(|c| c * c).sum();
                let c = lambda / &nsq;
                for i in 0..8 {
                    if v[i].is_zero() {
                        continue;
                    }
                    for j in 0..8 {
                        m.entry_mut(i, j).add_mul(&c, &(&v[i] * &v[j]));
                    }
                }
            }
            idx += mult;
        }
        m
    }
}

/// Result of reading off the spectrum of an arbitrary form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spectrum {
    Exact(SpectrumData),
    /// Floating-point eigenvalues grouped by multiplicity; the kernel
    /// dimension is still exact.
    Numeric {
        eigenvalues: Vec<(f64, usize)>,
        zero_dim: usize,
    },
}

impl Spectrum {
    pub fn zero_dim(&self) -> usize {
        match self {
            Spectrum::Exact(s) => s.zero_dim(),
            Spectrum::Numeric { zero_dim, .. } => *zero_dim,
        }
    }

    pub fn exact(&self) -> Option<&SpectrumData> {
        match self {
            Spectrum::Exact(s) => Some(s),
            Spectrum::Numeric { .. } => None,
        }
    }
}

fn check_basis(basis: &[Vec<Rational>]) -> Result<(), TorsionError> {
    if basis.len() != 8 || basis.iter().any(|v| v.len() != 8) {
        return Err(TorsionError::InvalidConstructor("eigenbasis must be 8 vectors of length 8".into()));
    }
    for i in 0..8 {
        if basis[i].iter().all(|c| c.is_zero()) {
            return Err(TorsionError::InvalidConstructor("eigenbasis contains a zero vector".into()));
        }
        for j in 0..i {
            if !crate::spin::dot(&basis[i], &basis[j]).is_zero() {
                return Err(TorsionError::InvalidConstructor(format!("eigenbasis vectors {j} and {i} are not orthogonal")));
            }
        }
    }
    Ok(())
}

impl TorsionForm {
    /// The self-dual 4-form whose action on `S+` has the given spectrum, with
    /// eigenvectors taken in order from `eigenbasis` (standard basis of `S+`
    /// by default). Acts by zero on `S-`.
    pub fn from_spectrum(spec: &SpectrumData, eigenbasis: Option<&[Vec<Rational>]>) -> Result<Self, TorsionError> {
        if spec.eigenvalues().is_empty() {
            return Err(TorsionError::Zero);
        }
        let tr = spec.trace();
        if !tr.is_zero() {
            return Err(TorsionError::NotTraceless(tr.to_string()));
        }
        let basis: Vec<Vec<Rational>> = match eigenbasis {
            Some(b) => {
                check_basis(b)?;
                b.to_vec()
            }
            None => (0..8).map(|i| (0..8).map(|j| Rational::from((i == j) as i64)).collect()).collect(),
        };
        let block = spec.operator(&basis);
        let mut full = Matrix::zeros(16, 16);
        for i in 0..8 {
            for j in 0..8 {
                full.set(i, j, block.get(i, j).clone());
            }
        }
        let rep = SpinRep::shared(8)?;
        let value = rep.mu_inverse(&full)?;
        // a traceless symmetric operator on S+ has no (1 + nu) component
        if !in_lambda4_plus(&value) {
            return Err(TorsionError::Invariant("constructed element is not a self-dual 4-form".into()));
        }
        let mut t = TorsionForm::from_value(value, Provenance::FromSpectrum)?;
        t.spectrum = Some(spec.clone());
        t.eigenbasis = Some(basis);
        Ok(t)
    }

    /// Spectrum of `mu_T` on `S+` for `T` in the self-dual 4-forms.
    ///
    /// Forms built from a spectrum return it unchanged. Otherwise eigenvalues
    /// are located numerically, rounded to nearby rationals, and accepted only
    /// if the exact rank of `mu_T - lambda` confirms each multiplicity.
    pub fn spectrum(&self) -> Result<Spectrum, TorsionError> {
        if !in_lambda4_plus(&self.value) {
            return Err(TorsionError::Precondition("spectrum needs a self-dual 4-form in dimension 8".into()));
        }
        if let Some(s) = &self.spectrum {
            return Ok(Spectrum::Exact(s.clone()));
        }
        let rep = SpinRep::shared(8)?;
        let block = rep.mu_matrix(&self.value)?.block(0, 8, 0, 8);
        let zero_dim = 8 - block.rank();
        let f = DMatrix::from_row_slice(8, 8, &block.to_f64());
        let mut vals: Vec<f64> = f.symmetric_eigen().eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for v in vals {
            match groups.last_mut() {
                Some((mean, m)) if (*mean - v).abs() < GROUP_GAP => {
                    *mean = (*mean * *m as f64 + v) / (*m as f64 + 1.0);
                    *m += 1;
                }
                _ => groups.push((v, 1)),
            }
        }
        groups.retain(|(v, _)| v.abs() > GROUP_GAP);
        let mut exact = Vec::new();
        for (v, m) in &groups {
            let candidate = Rational::approximate(*v, 1 << 20).filter(|r| (r.to_f64() - v).abs() < NUMERIC_TOL * v.abs().max(1.0));
            let Some(r) = candidate else { break };
            let mut shifted = block.clone();
            for i in 0..8 {
                *shifted.entry_mut(i, i) -= &r;
            }
            if 8 - shifted.rank() != *m {
                break;
            }
            exact.push((r, *m));
        }
        if exact.len() == groups.len() {
            if let Ok(s) = SpectrumData::new(exact, zero_dim) {
                return Ok(Spectrum::Exact(s));
            }
        }
        Ok(Spectrum::Numeric { eigenvalues: groups, zero_dim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::MultiVector;

    #[test]
    fn validation() {
        assert!(matches!(SpectrumData::from_ints(&[(1, 1), (-1, 1)], 5), Err(TorsionError::BadMultiplicity(7))));
        assert!(SpectrumData::from_ints(&[(1, 1), (1, 1)], 6).is_err());
        let s = SpectrumData::from_ints(&[(2, 1), (-1, 1)], 6).unwrap();
        assert!(matches!(TorsionForm::from_spectrum(&s, None), Err(TorsionError::NotTraceless(_))));
        let empty = SpectrumData::new(vec![], 8).unwrap();
        assert!(matches!(TorsionForm::from_spectrum(&empty, None), Err(TorsionError::Zero)));
    }

    #[test]
    fn su4_norm() {
        let t = TorsionForm::su4().unwrap();
        assert_eq!(t.value().norm_sq(), Rational::new(1, 8));
        assert!(in_lambda4_plus(t.value()));
    }

    #[test]
    fn unipotent_spectrum_is_exact() {
        let t = TorsionForm::unipotent_pair().unwrap();
        let t = TorsionForm::from_value(t.value().clone(), Provenance::File).unwrap();
        let s = t.spectrum().unwrap();
        assert_eq!(s, Spectrum::Exact(SpectrumData::from_ints(&[(2, 4), (-2, 4)], 0).unwrap()));
    }

    #[test]
    fn readback_matches_construction() {
        let spec = SpectrumData::from_ints(&[(3, 1), (-1, 3)], 4).unwrap();
        let t = TorsionForm::from_spectrum(&spec, None).unwrap();
        let again = TorsionForm::from_value(t.value().clone(), Provenance::File).unwrap();
        assert_eq!(again.spectrum().unwrap().exact().unwrap().sorted(), spec.sorted());
        assert_eq!(spec.square_sum(), t.value().norm_sq() * Rational::from(16));
    }

    #[test]
    fn rejects_wrong_class() {
        let t = TorsionForm::from_value(MultiVector::blade(8, &[1, 2]), Provenance::File).unwrap();
        assert!(t.spectrum().is_err());
    }
}
