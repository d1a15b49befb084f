//! Exact rational helpers shared by the exact measurement paths.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact value of a finite float (every finite `f64` is a dyadic rational).
pub fn from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(Error::NonRationalSignal)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `"numerator/denominator"` in lowest terms, denominator positive.
pub fn format(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"a/b"` or a bare integer `"a"`.
pub fn parse(text: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}
