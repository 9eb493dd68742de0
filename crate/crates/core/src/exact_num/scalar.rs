use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Num, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Field-like scalar the geometric layer is generic over.
///
/// Exact rationals give decision-grade answers; `f64`/`f32` are used for
/// rendering and for quick numeric estimates.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display {
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f32(q).unwrap_or(f32::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

/// Parses `"p/q"` or `"p"`. Decimal points and irrational forms are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = |msg: &str| Error::parse("rational", text, msg);
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let d: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}
