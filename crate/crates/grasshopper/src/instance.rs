//! The instance document shared by the solver front ends: a single JSON
//! object with `jumps` and `mines` arrays. Entries are integers, or "p/q"
//! strings when an exact-rational instance is intended.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberLike {
    Int(i64),
    Rational(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub jumps: Vec<NumberLike>,
    pub mines: Vec<NumberLike>,
}

impl NumberLike {
    pub fn as_i64(&self) -> Result<i64> {
        match self {
            NumberLike::Int(v) => Ok(*v),
            NumberLike::Rational(s) => s
                .parse::<i64>()
                .map_err(|_| Error::invalid(format!("expected an integer, got {s:?}"))),
        }
    }

    pub fn as_rational(&self) -> Result<BigRational> {
        match self {
            NumberLike::Int(v) => Ok(BigRational::from(BigInt::from(*v))),
            NumberLike::Rational(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("malformed rational {s:?}, expected p or p/q"));
    match s.split_once('/') {
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from(p))
        }
        Some((num, den)) => {
            let p: BigInt = num.trim().parse().map_err(|_| bad())?;
            let q: BigInt = den.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(Error::invalid("rational with zero denominator"));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

impl InstanceDoc {
    pub fn from_integers(jumps: &[i64], mines: &[i64]) -> Self {
        InstanceDoc {
            jumps: jumps.iter().map(|&v| NumberLike::Int(v)).collect(),
            mines: mines.iter().map(|&v| NumberLike::Int(v)).collect(),
        }
    }

    pub fn integer_jumps(&self) -> Result<Vec<i64>> {
        self.jumps.iter().map(|n| n.as_i64()).collect()
    }

    pub fn integer_mines(&self) -> Result<Vec<i64>> {
        self.mines.iter().map(|n| n.as_i64()).collect()
    }

    pub fn rational_jumps(&self) -> Result<Vec<BigRational>> {
        self.jumps.iter().map(|n| n.as_rational()).collect()
    }

    pub fn rational_mines(&self) -> Result<Vec<BigRational>> {
        self.mines.iter().map(|n| n.as_rational()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_rationals() {
        let doc: InstanceDoc =
            serde_json::from_str(r#"{"jumps": [1, 2, "7/2"], "mines": [3]}"#).unwrap();
        assert!(doc.integer_jumps().is_err());
        let rats = doc.rational_jumps().unwrap();
        assert_eq!(rats[2], BigRational::new(BigInt::from(7), BigInt::from(2)));
        assert_eq!(doc.integer_mines().unwrap(), vec![3]);
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse_rational("1/0").is_err());
    }
}
