use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;

use super::lattice::relation_lattice;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::Rational;

/// Exponent vector `k` naming the scale `Λ_k = ∏ λ_i^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaleElement(pub Vec<i64>);

impl ScaleElement {
    pub fn zero(len: usize) -> Self {
        ScaleElement(vec![0; len])
    }

    /// Letter counts of a word over `{0..len-1}`; `Λ` of the word's composite map.
    pub fn of_letters(letters: &[u8], len: usize) -> Self {
        let mut k = vec![0; len];
        for &l in letters {
            k[l as usize] += 1;
        }
        ScaleElement(k)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn value<T: Scalar>(&self, ratios: &[T]) -> Result<T> {
        scale_value(ratios, self)
    }
}

impl fmt::Display for ScaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl Add for &ScaleElement {
    type Output = ScaleElement;
    fn add(self, rhs: &ScaleElement) -> ScaleElement {
        assert_eq!(self.len(), rhs.len(), "scale length mismatch");
        ScaleElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &ScaleElement {
    type Output = ScaleElement;
    fn neg(self) -> ScaleElement {
        ScaleElement(self.0.iter().map(|a| -a).collect())
    }
}

impl Sub for &ScaleElement {
    type Output = ScaleElement;
    fn sub(self, rhs: &ScaleElement) -> ScaleElement {
        self + &(-rhs)
    }
}

/// `∏ ratios_i^{k_i}` in any scalar type.
pub fn scale_value<T: Scalar>(ratios: &[T], k: &ScaleElement) -> Result<T> {
    if ratios.len() != k.len() {
        return Err(Error::LengthMismatch {
            expected: ratios.len(),
            got: k.len(),
        });
    }
    let mut acc = T::one();
    for (r, &e) in ratios.iter().zip(&k.0) {
        for _ in 0..e.unsigned_abs() {
            acc = if e > 0 { acc * r.clone() } else { acc / r.clone() };
        }
    }
    Ok(acc)
}

/// The scale group of an IFS together with its relation lattice, used to pick
/// one canonical exponent vector per scale value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleGroup {
    ratios: Vec<Rational>,
    relations: Vec<Vec<i64>>,
}

impl ScaleGroup {
    pub fn new(ratios: &[Rational]) -> Result<Self> {
        Ok(ScaleGroup {
            ratios: ratios.to_vec(),
            relations: relation_lattice(ratios)?,
        })
    }

    pub fn ratios(&self) -> &[Rational] {
        &self.ratios
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    /// Reduces `k` modulo the relation lattice; two vectors have the same value
    /// iff their canonical forms are equal.
    pub fn canonical(&self, k: &ScaleElement) -> ScaleElement {
        let mut out = k.0.clone();
        for row in &self.relations {
            let col = row.iter().position(|&x| x != 0).expect("HNF rows are nonzero");
            let q = BigInt::from(out[col]).div_floor(&BigInt::from(row[col]));
            let q: i64 = q.try_into().expect("small quotient");
            for (x, r) in out.iter_mut().zip(row) {
                *x -= q * r;
            }
        }
        ScaleElement(out)
    }

    pub fn value(&self, k: &ScaleElement) -> Result<Rational> {
        scale_value(&self.ratios, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::parse_rational;
    use proptest::prelude::*;

    fn qs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| parse_rational(s).unwrap()).collect()
    }

    #[test]
    fn scale_value_examples() {
        let third = qs(&["1/3", "1/3"]);
        assert_eq!(scale_value(&third, &ScaleElement(vec![0, 0])).unwrap(), parse_rational("1").unwrap());
        assert_eq!(scale_value(&third, &ScaleElement(vec![2, 1])).unwrap(), parse_rational("1/27").unwrap());
        let ac = qs(&["1/4", "1/2"]);
        assert_eq!(scale_value(&ac, &ScaleElement(vec![1, -2])).unwrap(), parse_rational("1").unwrap());
    }

    #[test]
    fn length_mismatch() {
        let third = qs(&["1/3", "1/3"]);
        assert!(matches!(
            scale_value(&third, &ScaleElement(vec![1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn generic_over_floats() {
        let v = scale_value(&[0.5f64, 0.25], &ScaleElement(vec![1, -1])).unwrap();
        assert_eq!(v, 2.0);
    }

    #[test]
    fn canonical_representatives() {
        let g = ScaleGroup::new(&qs(&["1/3", "1/3"])).unwrap();
        assert_eq!(g.canonical(&ScaleElement(vec![1, 0])), ScaleElement(vec![0, 1]));
        assert_eq!(g.canonical(&ScaleElement(vec![0, 1])), ScaleElement(vec![0, 1]));
        assert_eq!(g.canonical(&ScaleElement(vec![-2, 1])), ScaleElement(vec![0, -1]));
    }

    proptest! {
        #[test]
        fn scale_value_is_a_homomorphism(a in proptest::collection::vec(-4i64..5, 3), b in proptest::collection::vec(-4i64..5, 3)) {
            let ratios = qs(&["1/3", "2/7", "1/2"]);
            let ka = ScaleElement(a);
            let kb = ScaleElement(b);
            let lhs = scale_value(&ratios, &(&ka + &kb)).unwrap();
            let rhs = scale_value(&ratios, &ka).unwrap() * scale_value(&ratios, &kb).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_preserves_value(a in proptest::collection::vec(-5i64..6, 2)) {
            let g = ScaleGroup::new(&qs(&["1/4", "1/2"])).unwrap();
            let k = ScaleElement(a);
            let c = g.canonical(&k);
            prop_assert_eq!(g.value(&k).unwrap(), g.value(&c).unwrap());
            prop_assert_eq!(g.canonical(&c), c);
        }
    }
}
