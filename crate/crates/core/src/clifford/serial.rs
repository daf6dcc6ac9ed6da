//! Text record for multivectors:
//! `{"n":8,"terms":[{"blade":[1,2,3,4],"num":1,"den":1}, ...]}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{Blade, MultiVector, MAX_DIM};
use crate::error::CliffordError;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub blade: Vec<usize>,
    pub num: Number,
    pub den: Number,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiVectorRecord {
    pub n: usize,
    pub terms: Vec<TermRecord>,
}

fn number(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

fn parse_int(v: &Number) -> Result<BigInt, CliffordError> {
    BigInt::from_str(&v.to_string()).map_err(|_| CliffordError::Malformed(format!("not an integer: {v}")))
}

impl From<&MultiVector> for MultiVectorRecord {
    fn from(mv: &MultiVector) -> Self {
        MultiVectorRecord {
            n: mv.dim(),
            terms: mv
                .lexicographic_terms()
                .into_iter()
                .map(|(blade, c)| TermRecord { blade, num: number(&c.numer()), den: number(&c.denom()) })
                .collect(),
        }
    }
}

impl TryFrom<&MultiVectorRecord> for MultiVector {
    type Error = CliffordError;

    fn try_from(rec: &MultiVectorRecord) -> Result<Self, CliffordError> {
        if !(1..=MAX_DIM).contains(&rec.n) {
            return Err(CliffordError::UnsupportedDimension { n: rec.n });
        }
        let mut terms = Vec::with_capacity(rec.terms.len());
        let mut seen = std::collections::HashSet::new();
        for t in &rec.terms {
            if !t.blade.windows(2).all(|w| w[0] < w[1]) || t.blade.iter().any(|&i| i == 0 || i > rec.n) {
                return Err(CliffordError::Malformed(format!("bad blade {:?} for n = {}", t.blade, rec.n)));
            }
            let blade = Blade::from_indices(&t.blade);
            if !seen.insert(blade) {
                return Err(CliffordError::Malformed(format!("repeated blade {:?}", t.blade)));
            }
            let den = parse_int(&t.den)?;
            if den <= BigInt::from(0) {
                return Err(CliffordError::Malformed(format!("denominator must be positive, got {den}")));
            }
            terms.push((blade, Rational::from_bigints(parse_int(&t.num)?, den)));
        }
        Ok(MultiVector::from_terms(rec.n, terms))
    }
}

impl Serialize for MultiVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = MultiVectorRecord::deserialize(d)?;
        MultiVector::try_from(&rec).map_err(serde::de::Error::custom)
    }
}

impl MultiVector {
    pub fn to_record(&self) -> MultiVectorRecord {
        self.into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CliffordError> {
        let rec: MultiVectorRecord = serde_json::from_str(s).map_err(|e| CliffordError::Malformed(e.to_string()))?;
        MultiVector::try_from(&rec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    #[test]
    fn canonical_text() {
        let t = &MultiVector::blade(8, &[5, 6, 7, 8]) + &MultiVector::blade(8, &[1, 2, 3, 4]).scale(&Rational::new(-3, 6));
        let s = t.to_json();
        assert_eq!(s, r#"{"n":8,"terms":[{"blade":[1,2,3,4],"num":-1,"den":2},{"blade":[5,6,7,8],"num":1,"den":1}]}"#);
        assert_eq!(MultiVector::from_json(&s).unwrap(), t);
    }

    #[test]
    fn lexicographic_order() {
        let t = MultiVector::from_terms(
            4,
            [Blade(0b0010), Blade(0b0011), Blade(0b0000), Blade(0b0101)].into_iter().map(|b| (b, Rational::one())),
        );
        let rec = t.to_record();
        let blades: Vec<Vec<usize>> = rec.terms.iter().map(|t| t.blade.clone()).collect();
        assert_eq!(blades, vec![vec![], vec![1, 2], vec![1, 3], vec![2]]);
    }

    #[test]
    fn big_coefficients_round_trip() {
        let big = Rational::from_str("123456789012345678901234567891/2").unwrap();
        let t = MultiVector::from_terms(3, [(Blade(0b101), big)]);
        let s = t.to_json();
        assert!(s.contains("123456789012345678901234567891"));
        assert_eq!(MultiVector::from_json(&s).unwrap(), t);
        assert_eq!(MultiVector::from_json(&s).unwrap().to_json(), s);
    }

    #[test]
    fn rejects_bad_records() {
        for bad in [
            r#"{"n":11,"terms":[]}"#,
            r#"{"n":4,"terms":[{"blade":[2,1],"num":1,"den":1}]}"#,
            r#"{"n":4,"terms":[{"blade":[5],"num":1,"den":1}]}"#,
            r#"{"n":4,"terms":[{"blade":[1],"num":1,"den":0}]}"#,
            r#"{"n":4,"terms":[{"blade":[1],"num":1.5,"den":1}]}"#,
            r#"{"n":4,"terms":[{"blade":[1],"num":1,"den":1},{"blade":[1],"num":1,"den":1}]}"#,
        ] {
            assert!(MultiVector::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn random_round_trip() {
        let mut s = Sampler::new(99);
        for n in 1..=10 {
            let t = s.sparse_multivector(n, 20);
            let text = t.to_json();
            let back = MultiVector::from_json(&text).unwrap();
            assert_eq!(back, t);
            assert_eq!(back.to_json(), text);
        }
    }
}
