use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::ifs::AffineIfs;
use crate::error::{Error, Result};
use crate::exact_num::Scalar;
use crate::Rational;

/// `log 2 / log λ`, reported exactly when `λ` is an integer power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct Dimension {
    pub exact: Option<Rational>,
    pub value: f64,
}

pub fn hausdorff_dimension_central(lambda: &Rational) -> Result<Dimension> {
    if *lambda <= Rational::from_integer(2.into()) {
        return Err(Error::Domain(format!("closed form needs λ > 2, got {lambda}")));
    }
    let exact = if lambda.is_integer() {
        let n: &BigInt = lambda.numer();
        let bits = n.bits();
        (n.is_positive() && *n == BigInt::one() << (bits - 1))
            .then(|| Rational::new(1.into(), BigInt::from(bits - 1)))
    } else {
        None
    };
    let value = match &exact {
        Some(d) => Scalar::to_f64(d),
        None => std::f64::consts::LN_2 / Scalar::to_f64(lambda).ln(),
    };
    Ok(Dimension { exact, value })
}

/// `log N / −log δ` where `N = (n+1)^depth` standard intervals of the given
/// generation cover the set and `δ` is the longest of them.
pub fn box_count_estimate<T: Scalar>(ifs: &AffineIfs<T>, depth: usize) -> Result<f64> {
    if depth < 2 {
        return Err(Error::Domain(format!("box-count estimate needs depth ≥ 2, got {depth}")));
    }
    let max_ratio = ifs
        .ratios()
        .iter()
        .map(Scalar::to_f64)
        .fold(f64::MIN, f64::max);
    let count_ln = depth as f64 * (ifs.arity() as f64).ln();
    let mesh_ln = depth as f64 * max_ratio.ln();
    Ok(count_ln / -mesh_ln)
}
