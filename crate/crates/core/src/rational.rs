//! Exact rationals used for weights, ratios and reported quotients.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` in lowest terms.
pub fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"3"`, `"5/2"` or `"-1/3"`.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(alloc::format!("not a rational number: {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Lowest-terms `p/q`, or `p` for integers.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Closest `f64`, for human-readable output only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse("0").unwrap()), "0");
        assert_eq!(format(&parse(" 2 ").unwrap()), "2");
        assert_eq!(format(&ratio(2, 4)), "1/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
