//! Binary floating point at 192 bits (about 57 decimal digits).

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign, UBig};
use num_bigint::BigInt;

use crate::rational::Rational;

pub(crate) type Big = FBig<HalfEven, 2>;

pub(crate) const PRECISION: usize = 192;

pub(crate) fn from_f64(v: f64) -> Big {
    Big::try_from(v).expect("finite input").with_precision(PRECISION).value()
}

fn from_bigint(n: &BigInt) -> Big {
    let (sign, bytes) = n.to_bytes_le();
    let magnitude = UBig::from_le_bytes(&bytes);
    let sign = if sign == num_bigint::Sign::Minus { Sign::Negative } else { Sign::Positive };
    Big::from(IBig::from_parts(sign, magnitude)).with_precision(PRECISION).value()
}

pub(crate) fn from_rational(r: &Rational) -> Big {
    from_bigint(r.numer()) / from_bigint(r.denom())
}

pub(crate) fn to_f64(b: &Big) -> f64 {
    b.to_f64().value()
}

pub(crate) fn one() -> Big {
    Big::ONE.with_precision(PRECISION).value()
}

pub(crate) fn zero() -> Big {
    Big::ZERO.with_precision(PRECISION).value()
}

pub(crate) fn min(a: Big, b: Big) -> Big {
    if a <= b {
        a
    } else {
        b
    }
}

pub(crate) fn max(a: Big, b: Big) -> Big {
    if a >= b {
        a
    } else {
        b
    }
}

pub(crate) fn abs(a: Big) -> Big {
    if a < zero() {
        -a
    } else {
        a
    }
}
