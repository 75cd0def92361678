//! Exact rational helpers.

use alloc::string::ToString;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer, or an exact decimal such as `0.35` (read as 7/20).
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_int(num.trim()).ok_or_else(bad)?;
        let d = parse_int(den.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut digits = alloc::string::String::with_capacity(whole.len() + frac.len());
    digits.push_str(whole);
    digits.push_str(frac);
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Exact binary value of a finite `f64`.
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative_value() && *value <= Rational::one()
}

pub(crate) trait SignExt {
    fn is_negative_value(&self) -> bool;
}

impl SignExt for Rational {
    fn is_negative_value(&self) -> bool {
        *self < Rational::zero()
    }
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse("0.35").unwrap(), rat(7, 20));
        assert_eq!(parse("0.1575").unwrap(), rat(63, 400));
        assert_eq!(parse("1").unwrap(), int(1));
        assert_eq!(parse(".5").unwrap(), rat(1, 2));
        assert_eq!(parse("-0.25").unwrap(), rat(-1, 4));
    }

    #[test]
    fn fractions() {
        assert_eq!(parse("63/400").unwrap(), rat(63, 400));
        assert_eq!(parse(" 2 / 4 ").unwrap(), rat(1, 2));
    }

    #[test]
    fn malformed_literals_are_rejected() {
        for s in ["1.2.3", "", ".", "1/0", "a", "1/2/3", "0x10", "1e3", "--1"] {
            assert!(matches!(parse(s), Err(Error::InvalidRational(_))), "{s}");
        }
    }

    #[test]
    fn f64_round_trip_is_exact() {
        let r = from_f64(0.1).unwrap();
        assert_ne!(r, rat(1, 10));
        assert_eq!(to_f64(&r), 0.1);
    }
}
