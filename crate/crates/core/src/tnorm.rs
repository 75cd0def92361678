//! The Frank family of t-norms.
//!
//! `T_0` is the minimum, `T_1` the product and `T_inf` the Lukasiewicz
//! t-norm `max(u + v - 1, 0)`; every other `lambda > 0` gives
//! `log_lambda(1 + (lambda^u - 1)(lambda^v - 1) / (lambda - 1))`. The limit
//! members are evaluated exactly; the generic member in 192-bit binary
//! floating point. For fixed interior `(u, v)` the value decreases
//! continuously from `T_M` to `T_L` as `lambda` grows, which is what
//! [`find_lambda`] bisects on.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hp::{self, Big};
use crate::rational::{self, in_unit_interval, Rational};

/// Below this distance from 1 the generic formula is replaced by its limit, the product.
pub const PRODUCT_SNAP: f64 = 1e-9;

/// Target absolute residual of a recovered generic parameter.
pub const LAMBDA_RESIDUAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrankParam {
    /// `lambda = 0`
    Min,
    /// `lambda = 1`
    Product,
    /// `lambda = +inf`
    Lukasiewicz,
    /// `lambda` in `(0, 1)` or `(1, inf)`.
    Generic(f64),
}

impl FrankParam {
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(Error::InvalidLambda(lambda));
        }
        Ok(if lambda == 0.0 {
            FrankParam::Min
        } else if lambda == 1.0 {
            FrankParam::Product
        } else if lambda == f64::INFINITY {
            FrankParam::Lukasiewicz
        } else {
            FrankParam::Generic(lambda)
        })
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            FrankParam::Min => 0.0,
            FrankParam::Product => 1.0,
            FrankParam::Lukasiewicz => f64::INFINITY,
            FrankParam::Generic(l) => l,
        }
    }

    /// Position in the compactified coordinate `t = lambda / (1 + lambda)`.
    pub fn t(&self) -> f64 {
        match *self {
            FrankParam::Min => 0.0,
            FrankParam::Product => 0.5,
            FrankParam::Lukasiewicz => 1.0,
            FrankParam::Generic(l) => l / (1.0 + l),
        }
    }
}

fn check_unit(v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::FloatOutOfUnitInterval(v))
    }
}

/// `T_lambda(u, v)` for `u, v` in [0, 1].
pub fn frank(param: FrankParam, u: f64, v: f64) -> Result<f64> {
    check_unit(u)?;
    check_unit(v)?;
    Ok(match param {
        FrankParam::Min => u.min(v),
        FrankParam::Product => u * v,
        FrankParam::Lukasiewicz => (u + v - 1.0).max(0.0),
        FrankParam::Generic(l) => hp::to_f64(&frank_big(&generic_ln(l), &hp::from_f64(u), &hp::from_f64(v))),
    })
}

/// Exact value for the three limit members; `None` for a generic parameter.
pub fn frank_exact(param: FrankParam, u: &Rational, v: &Rational) -> Option<Rational> {
    match param {
        FrankParam::Min => Some(rational::min(u, v)),
        FrankParam::Product => Some(u * v),
        FrankParam::Lukasiewicz => Some(lukasiewicz(u, v)),
        FrankParam::Generic(_) => None,
    }
}

pub fn lukasiewicz(u: &Rational, v: &Rational) -> Rational {
    rational::max(&(u + v - Rational::one()), &Rational::zero())
}

/// Left fold `T(T(x1, x2), x3) ...`.
pub fn frank_n(param: FrankParam, values: &[f64]) -> Result<f64> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyList)?;
    check_unit(*first)?;
    for v in rest {
        check_unit(*v)?;
    }
    match param {
        FrankParam::Generic(l) => {
            let ln = generic_ln(l);
            let acc = rest.iter().fold(hp::from_f64(*first), |acc, v| frank_big(&ln, &acc, &hp::from_f64(*v)));
            Ok(hp::to_f64(&acc))
        }
        _ => rest.iter().try_fold(*first, |acc, v| frank(param, acc, *v)),
    }
}

pub fn frank_n_exact(param: FrankParam, values: &[Rational]) -> Result<Option<Rational>> {
    let (first, rest) = values.split_first().ok_or(Error::EmptyList)?;
    if matches!(param, FrankParam::Generic(_)) {
        return Ok(None);
    }
    Ok(rest.iter().try_fold(first.clone(), |acc, v| frank_exact(param, &acc, v)))
}

/// `ln(lambda)`, or `None` when the product limit applies.
fn generic_ln(lambda: f64) -> Option<Big> {
    if (lambda - 1.0).abs() < PRODUCT_SNAP {
        None
    } else {
        Some(hp::from_f64(lambda).ln())
    }
}

/// Generic Frank t-norm from `ln(lambda)`; clamped into `[T_L, T_M]`.
fn frank_big(ln_lambda: &Option<Big>, u: &Big, v: &Big) -> Big {
    let zero = hp::zero();
    let one = hp::one();
    if *u == zero || *v == zero {
        return zero;
    }
    if *u == one {
        return v.clone();
    }
    if *v == one {
        return u.clone();
    }
    let ln = match ln_lambda {
        Some(ln) if *ln != zero => ln.clone().with_precision(hp::PRECISION).value(),
        _ => return u * v,
    };
    let ln = &ln;
    let a = (u * ln).exp_m1();
    let b = (v * ln).exp_m1();
    let d = ln.exp_m1();
    let value = (a * b / d).ln_1p() / ln;
    let lower = hp::max(u + v - &one, zero);
    let upper = hp::min(u.clone(), v.clone());
    hp::min(hp::max(value, lower), upper)
}

/// `ln(lambda)` for `lambda = t / (1 - t)`, `t` in (0, 1).
fn ln_lambda_from_t(t: &Big) -> Big {
    t.ln() - (-t).ln_1p()
}

/// Outcome of recovering `lambda` with `z = T_lambda(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaFit {
    Min,
    Product,
    Lukasiewicz,
    /// Found by bisection; `residual = |T_lambda(x, y) - z|` at the reported `lambda`.
    Generic {
        lambda: f64,
        residual: f64,
    },
    /// `z` lies outside `[T_L(x, y), T_M(x, y)]`.
    NotRepresentable,
    /// `T_L(x, y) = T_M(x, y) = z`: every `lambda` in `[0, inf]` fits.
    Underdetermined,
}

impl LambdaFit {
    pub fn param(&self) -> Option<FrankParam> {
        match *self {
            LambdaFit::Min => Some(FrankParam::Min),
            LambdaFit::Product => Some(FrankParam::Product),
            LambdaFit::Lukasiewicz => Some(FrankParam::Lukasiewicz),
            LambdaFit::Generic { lambda, .. } => FrankParam::from_lambda(lambda).ok(),
            _ => None,
        }
    }
}

const BISECTION_STEPS: usize = 80;

pub fn find_lambda(x: &Rational, y: &Rational, z: &Rational) -> LambdaFit {
    if !(in_unit_interval(x) && in_unit_interval(y) && in_unit_interval(z)) {
        return LambdaFit::NotRepresentable;
    }
    let lower = lukasiewicz(x, y);
    let upper = rational::min(x, y);
    if *z < lower || *z > upper {
        return LambdaFit::NotRepresentable;
    }
    if lower == upper {
        return LambdaFit::Underdetermined;
    }
    if *z == upper {
        return LambdaFit::Min;
    }
    if *z == lower {
        return LambdaFit::Lukasiewicz;
    }
    if *z == x * y {
        return LambdaFit::Product;
    }

    let (xb, yb, zb) = (hp::from_rational(x), hp::from_rational(y), hp::from_rational(z));
    let mut lo = hp::zero();
    let mut hi = hp::one();
    let half = hp::from_f64(0.5);
    for _ in 0..BISECTION_STEPS {
        let mid = (&lo + &hi) * &half;
        let value = frank_big(&Some(ln_lambda_from_t(&mid)), &xb, &yb);
        if value > zb {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (lo + hi) * half;
    let lambda = hp::to_f64(&(&t / (hp::one() - &t)));
    let achieved = frank_big(&generic_ln(lambda), &xb, &yb);
    let residual = hp::to_f64(&hp::abs(achieved - zb));
    LambdaFit::Generic { lambda, residual }
}
