use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }

    fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '-' => Some(Sign::Negative),
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Positive),
            _ => None,
        }
    }
}

/// `0` when `|x| ≤ tol`, otherwise the sign of `x`. `tol = 0` is the exact sign.
pub fn sign_scalar(x: f64, tol: f64) -> Sign {
    debug_assert!(tol >= 0.0);
    if x.abs() <= tol {
        Sign::Zero
    } else if x > 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// One-sided sign: `+1` iff `x ≥ 0`.
pub fn sign_star(x: f64) -> Sign {
    if x >= 0.0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Recovers `sign(x)` from `sign*(x)` and `sign*(-x)`.
pub fn combine_sign_star(sp: Sign, sn: Sign) -> Result<Sign> {
    match (sp, sn) {
        (Sign::Positive, Sign::Positive) => Ok(Sign::Zero),
        (Sign::Positive, Sign::Negative) => Ok(Sign::Positive),
        (Sign::Negative, Sign::Positive) => Ok(Sign::Negative),
        (Sign::Negative, Sign::Negative) => Err(Error::InconsistentSignPair),
        _ => Err(Error::invalid("sign* values are never zero")),
    }
}

/// Measurement outcome `y ∈ {-1, 0, +1}^m`; serialized as a string over `-0+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    /// `supp(y)`: rows with a nonzero response.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|s| s.is_zero()).count()
    }

    /// `(sign*(y_i), sign*(-y_i))` for every entry.
    pub fn to_sign_star(&self) -> (Vec<Sign>, Vec<Sign>) {
        let pos = self.iter().map(|s| if s == Sign::Negative { Sign::Negative } else { Sign::Positive });
        let neg = self.iter().map(|s| if s == Sign::Positive { Sign::Negative } else { Sign::Positive });
        (pos.collect(), neg.collect())
    }

    pub fn from_sign_star(pos: &[Sign], neg: &[Sign]) -> Result<SignVector> {
        if pos.len() != neg.len() {
            return Err(Error::DimensionMismatch {
                expected: pos.len(),
                found: neg.len(),
            });
        }
        pos.iter()
            .zip(neg)
            .map(|(&p, &n)| combine_sign_star(p, n))
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl FromIterator<Sign> for SignVector {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Self {
        SignVector(iter.into_iter().collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .enumerate()
            .map(|(i, c)| {
                Sign::from_symbol(c).ok_or_else(|| Error::Malformed {
                    what: "sign vector",
                    line: 1,
                    column: i + 1,
                    message: format!("unexpected character {c:?}"),
                })
            })
            .collect()
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
