//! Exact rationals backed by `num-rational`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q` in lowest terms, omitting `/1`.
pub fn to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`. Rejects a zero denominator.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

/// Coefficient prefix for pretty printing: "" for 1, otherwise the
/// absolute value followed by a space.
pub(crate) fn abs_prefix(r: &Rational) -> String {
    let a = r.abs();
    if a.is_one() {
        String::new()
    } else {
        format!("{} ", to_string(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(to_string(&frac(4, 6)), "2/3");
        assert_eq!(to_string(&frac(-4, 2)), "-2");
        assert_eq!(to_string(&frac(3, -9)), "-1/3");
        assert_eq!(to_string(&Rational::zero()), "0");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse("2/3"), Some(frac(2, 3)));
        assert_eq!(parse(" -10/4 "), Some(frac(-5, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }
}
