//! Spectrum combinatorics behind the classification of fix algebras with no
//! fixed spinors: power norms, the two exponential identities, and an
//! exhaustive search over small rational spectra.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::OracleError;
use crate::rational::Rational;
use crate::torsion::SpectrumData;

pub const DEFAULT_K_MAX: usize = 6;

/// Nonzero eigenvalues with multiplicities, `sum m <= 8`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumCandidate {
    pairs: Vec<(Rational, usize)>,
}

impl SpectrumCandidate {
    pub fn new(pairs: Vec<(Rational, usize)>) -> Result<Self, OracleError> {
        for (i, (l, m)) in pairs.iter().enumerate() {
            if l.is_zero() {
                return Err(OracleError::InvalidCandidate("zero eigenvalue".into()));
            }
            if *m == 0 {
                return Err(OracleError::InvalidCandidate(format!("eigenvalue {l} has multiplicity 0")));
            }
            if pairs[..i].iter().any(|(o, _)| o == l) {
                return Err(OracleError::InvalidCandidate(format!("eigenvalue {l} listed twice")));
            }
        }
        let total: usize = pairs.iter().map(|(_, m)| m).sum();
        if total > 8 {
            return Err(OracleError::InvalidCandidate(format!("multiplicities sum to {total} > 8")));
        }
        Ok(SpectrumCandidate { pairs })
    }

    pub fn from_ints(pairs: &[(i64, usize)]) -> Result<Self, OracleError> {
        Self::new(pairs.iter().map(|&(l, m)| (Rational::from(l), m)).collect())
    }

    pub fn pairs(&self) -> &[(Rational, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn multiplicity_sum(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    /// Dimension of the kernel when read as a spectrum on `S+`.
    pub fn zero_dim(&self) -> usize {
        8 - self.multiplicity_sum()
    }

    pub fn trace(&self) -> Rational {
        self.pairs.iter().map(|(l, m)| l * &Rational::from(*m)).sum()
    }

    pub fn to_spectrum(&self) -> Result<SpectrumData, OracleError> {
        SpectrumData::new(self.pairs.clone(), self.zero_dim()).map_err(|e| OracleError::InvalidCandidate(e.to_string()))
    }
}

impl From<&SpectrumData> for SpectrumCandidate {
    fn from(s: &SpectrumData) -> Self {
        SpectrumCandidate { pairs: s.eigenvalues().to_vec() }
    }
}

/// `sum m_q lambda_q^{2(2k+1)}`, i.e. `16 |T^{2k+1}|^2`.
fn power_sum(spec: &SpectrumCandidate, k: usize) -> Rational {
    let e = (2 * (2 * k + 1)) as u32;
    spec.pairs.iter().map(|(l, m)| &l.pow(e) * &Rational::from(*m)).sum()
}

/// `16 |T^{2k+1}|^2` for `k = 0..=k_max`.
pub fn power_norm_sequence(spec: &SpectrumCandidate, k_max: usize) -> Vec<Rational> {
    (0..=k_max).map(|k| power_sum(spec, k)).collect()
}

fn check_pair(spec: &SpectrumCandidate, i: usize, j: usize) -> Result<(), OracleError> {
    let len = spec.len();
    if i == j || i >= len || j >= len {
        return Err(OracleError::BadIndices { i, j, len });
    }
    Ok(())
}

/// Residual of
/// `4|T^{2k+1}|^2 - (l_i^p + l_j^p)/2 = (l_i l_j)^{2k} (4|T|^2 - (l_i^2 + l_j^2)/2)`
/// with `p = 2(2k+1)`.
pub fn combin_residual(spec: &SpectrumCandidate, i: usize, j: usize, k: usize) -> Result<Rational, OracleError> {
    check_pair(spec, i, j)?;
    let (li, lj) = (&spec.pairs[i].0, &spec.pairs[j].0);
    let e = (2 * (2 * k + 1)) as u32;
    let quarter = Rational::new(1, 4);
    let half = Rational::new(1, 2);
    let lhs = &(&quarter * &power_sum(spec, k)) - &(&half * &(&li.pow(e) + &lj.pow(e)));
    let base = &(&quarter * &power_sum(spec, 0)) - &(&half * &(&(li * li) + &(lj * lj)));
    let rhs = &(li * lj).pow(2 * k as u32) * &base;
    Ok(&lhs - &rhs)
}

/// Smallest `k <= k_max` at which the identity fails, if any.
pub fn combin_first_failure(spec: &SpectrumCandidate, i: usize, j: usize, k_max: usize) -> Result<Option<usize>, OracleError> {
    for k in 0..=k_max {
        if !combin_residual(spec, i, j, k)?.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

pub fn combin_condition(spec: &SpectrumCandidate, i: usize, j: usize, k_max: usize) -> Result<bool, OracleError> {
    Ok(combin_first_failure(spec, i, j, k_max)?.is_none())
}

/// `8 |T^{2k+1}|^2 = lambda_i^{2(2k+1)}` for `k = 0..=k_max`.
pub fn comb0_condition(spec: &SpectrumCandidate, i: usize, k_max: usize) -> Result<bool, OracleError> {
    let len = spec.len();
    if i >= len {
        return Err(OracleError::BadIndices { i, j: i, len });
    }
    let li = &spec.pairs[i].0;
    Ok((0..=k_max).all(|k| {
        let e = (2 * (2 * k + 1)) as u32;
        power_sum(spec, k) == &Rational::from(2) * &li.pow(e)
    }))
}

/// Pairs `(i, j)`, `i < j`, satisfying the identity up to `k_max`.
pub fn combin_pairs(spec: &SpectrumCandidate, k_max: usize) -> Vec<(usize, usize)> {
    let n = spec.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if combin_condition(spec, i, j, k_max).expect("valid pair") {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `{l, -l}` with equal multiplicities.
    PlusMinus,
    /// `{l, -l, m, -m, s, -s}` with multiplicities `(1,1,1,1,2,2)`, `s^2 = |l m|`.
    TwoPairs,
    /// `{l, -m, m, s}` with multiplicities `(2,1,1,4)`, `s^2 = |l m|`.
    Lopsided,
}

impl Family {
    pub fn roman(self) -> &'static str {
        match self {
            Family::PlusMinus => "i",
            Family::TwoPairs => "ii",
            Family::Lopsided => "iii",
        }
    }
}

fn mults(spec: &SpectrumCandidate, m: usize) -> Vec<&Rational> {
    spec.pairs.iter().filter(|(_, k)| *k == m).map(|(l, _)| l).collect()
}

fn is_geometric_mean(s: &Rational, a: &Rational, b: &Rational) -> bool {
    s * s == (a * b).abs()
}

/// Structural match against the three families; scale plays no role.
pub fn family_of(spec: &SpectrumCandidate) -> Option<Family> {
    let p = &spec.pairs;
    match p.len() {
        2 if p[0].1 == p[1].1 && (&p[0].0 + &p[1].0).is_zero() => Some(Family::PlusMinus),
        6 => {
            let ones = mults(spec, 1);
            let twos = mults(spec, 2);
            if ones.len() != 4 || twos.len() != 2 || !(twos[0] + twos[1]).is_zero() {
                return None;
            }
            let l = ones[0];
            let partner = ones.iter().position(|x| (*x + l).is_zero())?;
            let rest: Vec<&Rational> = ones.iter().enumerate().filter(|&(k, _)| k != 0 && k != partner).map(|(_, x)| *x).collect();
            let m = rest[0];
            let ok = (rest[0] + rest[1]).is_zero() && l.abs() != m.abs() && is_geometric_mean(twos[0], l, m);
            ok.then_some(Family::TwoPairs)
        }
        4 => {
            let ones = mults(spec, 1);
            let (twos, fours) = (mults(spec, 2), mults(spec, 4));
            if ones.len() != 2 || twos.len() != 1 || fours.len() != 1 || !(ones[0] + ones[1]).is_zero() {
                return None;
            }
            is_geometric_mean(fours[0], twos[0], ones[0]).then_some(Family::Lopsided)
        }
        _ => None,
    }
}

/// Family (ii) with `s = sqrt|l m|`, when rational.
pub fn two_pairs_instance(l: &Rational, m: &Rational) -> Option<SpectrumCandidate> {
    let s = (l * m).abs().sqrt_exact()?;
    let (l, m) = (l.abs(), m.abs());
    SpectrumCandidate::new(vec![(l.clone(), 1), (-&l, 1), (m.clone(), 1), (-&m, 1), (s.clone(), 2), (-&s, 2)]).ok()
}

/// Family (iii) `{l:2, -m:1, m:1, s:4}` with `s = sign * sqrt|l m|`, when rational.
/// The trace is not forced to vanish.
pub fn lopsided_instance(l: &Rational, m: &Rational, sign: i32) -> Option<SpectrumCandidate> {
    let s = (l * m).abs().sqrt_exact()?;
    let s = if sign < 0 { -s } else { s };
    SpectrumCandidate::new(vec![(l.clone(), 2), (-&m.abs(), 1), (m.abs(), 1), (s, 4)]).ok()
}

/// Eigenvalues `p/q` with `0 < |p| <= max_num`, `1 <= q <= max_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub max_num: i64,
    pub max_den: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { max_num: 4, max_den: 1 }
    }
}

impl Grid {
    pub fn values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = (1..=self.max_den.max(0))
            .flat_map(|q| (1..=self.max_num.max(0)).flat_map(move |p| [Rational::new(p, q), Rational::new(-p, q)]))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Every traceless candidate with `sum m = 8`, values in increasing order.
    pub fn traceless_candidates(&self) -> Vec<SpectrumCandidate> {
        self.candidates(8)
    }

    /// Every traceless candidate with `sum m = total`.
    pub fn candidates(&self, total: usize) -> Vec<SpectrumCandidate> {
        fn rec(values: &[Rational], start: usize, left: usize, cur: &mut Vec<(Rational, usize)>, out: &mut Vec<SpectrumCandidate>) {
            if left == 0 {
                let tr: Rational = cur.iter().map(|(l, m)| l * &Rational::from(*m)).sum();
                if tr.is_zero() {
                    out.push(SpectrumCandidate { pairs: cur.clone() });
                }
                return;
            }
            for idx in start..values.len() {
                for m in 1..=left {
                    cur.push((values[idx].clone(), m));
                    rec(values, idx + 1, left - m, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.values(), 0, total.min(8), &mut Vec::new(), &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub candidate: SpectrumCandidate,
    pub pairs: Vec<(usize, usize)>,
    pub family: Option<Family>,
}

/// All traceless grid candidates passing the identity for some pair.
pub fn family_search(grid: &Grid, k_max: usize) -> Vec<SearchHit> {
    grid.traceless_candidates()
        .into_par_iter()
        .filter_map(|c| {
            let pairs = combin_pairs(&c, k_max);
            if pairs.is_empty() {
                return None;
            }
            let family = family_of(&c);
            Some(SearchHit { candidate: c, pairs, family })
        })
        .collect()
}

/// A family-(iii) shape found on the grid, with its trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LopsidedRecord {
    pub lambda: Rational,
    pub mu: Rational,
    pub candidate: SpectrumCandidate,
    pub trace: Rational,
    pub ratio_four: bool,
}

/// Family-(iii) instances with all values on the grid, whether traceless or
/// not, together with the `|lambda| = 4 |mu|` test.
pub fn lopsided_feasibility(grid: &Grid) -> Vec<LopsidedRecord> {
    let values = grid.values();
    let mut out = Vec::new();
    for l in &values {
        for m in values.iter().filter(|m| m.is_positive()) {
            if l.abs() == *m {
                continue;
            }
            for sign in [1, -1] {
                let Some(c) = lopsided_instance(l, m, sign) else { continue };
                if !values.contains(&c.pairs[3].0) {
                    continue;
                }
                out.push(LopsidedRecord {
                    lambda: l.clone(),
                    mu: m.clone(),
                    trace: c.trace(),
                    ratio_four: l.abs() == &Rational::from(4) * m,
                    candidate: c,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_norms() {
        let uni = SpectrumCandidate::from_ints(&[(2, 4), (-2, 4)]).unwrap();
        assert_eq!(power_norm_sequence(&uni, 0), vec![Rational::from(32)]);
        let pm = SpectrumCandidate::from_ints(&[(1, 1), (-1, 1)]).unwrap();
        assert_eq!(power_norm_sequence(&pm, 1)[1], Rational::from(2));
    }

    #[test]
    fn families_pass() {
        let pm = SpectrumCandidate::from_ints(&[(1, 1), (-1, 1)]).unwrap();
        assert!(comb0_condition(&pm, 0, 6).unwrap());
        let ii = two_pairs_instance(&Rational::from(1), &Rational::from(4)).unwrap();
        assert_eq!(family_of(&ii), Some(Family::TwoPairs));
        assert!(combin_condition(&ii, 0, 2, 6).unwrap());
        let iii = lopsided_instance(&Rational::from(4), &Rational::from(1), -1).unwrap();
        assert!(iii.trace().is_zero());
        assert_eq!(family_of(&iii), Some(Family::Lopsided));
        assert!(combin_condition(&iii, 0, 2, 6).unwrap());
    }

    #[test]
    fn bad_indices() {
        let pm = SpectrumCandidate::from_ints(&[(1, 1), (-1, 1)]).unwrap();
        assert!(matches!(combin_condition(&pm, 0, 0, 2), Err(OracleError::BadIndices { .. })));
        assert!(combin_condition(&pm, 0, 5, 2).is_err());
        assert!(comb0_condition(&pm, 2, 2).is_err());
    }

    #[test]
    fn empty_grid() {
        assert!(family_search(&Grid { max_num: 0, max_den: 1 }, 4).is_empty());
    }

    #[test]
    fn candidate_validation() {
        assert!(SpectrumCandidate::from_ints(&[(0, 1)]).is_err());
        assert!(SpectrumCandidate::from_ints(&[(1, 0)]).is_err());
        assert!(SpectrumCandidate::from_ints(&[(1, 1), (1, 2)]).is_err());
        assert!(SpectrumCandidate::from_ints(&[(1, 5), (-1, 4)]).is_err());
    }
}
