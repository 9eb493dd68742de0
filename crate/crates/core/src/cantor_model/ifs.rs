use num_traits::{One, Zero};

use super::word::{Address, Point, Word};
use crate::error::{Error, Result};
use crate::exact_num::{Scalar, ScaleElement};
use crate::Rational;

/// `x ↦ ratio·x + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<T> {
    pub ratio: T,
    pub offset: T,
}

impl<T: Scalar> AffineMap<T> {
    pub fn identity() -> Self {
        AffineMap {
            ratio: T::one(),
            offset: T::zero(),
        }
    }

    pub fn apply(&self, x: &T) -> T {
        self.ratio.clone() * x.clone() + self.offset.clone()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap<T>) -> AffineMap<T> {
        AffineMap {
            ratio: self.ratio.clone() * inner.ratio.clone(),
            offset: self.ratio.clone() * inner.offset.clone() + self.offset.clone(),
        }
    }

    /// Unique fixed point of a contraction.
    pub fn fixed_point(&self) -> T {
        self.offset.clone() / (T::one() - self.ratio.clone())
    }
}

/// Self-similar IFS `φ_j(x) = λ_j x + a_j` on `[0,1]` with disjoint images,
/// ordered left to right: `0 = a_0 < λ_0 < a_1 < … < λ_n + a_n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineIfs<T> {
    maps: Vec<AffineMap<T>>,
}

/// Point type at the level of one-sided neighbourhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PointKind {
    LeftPoint,
    RightPoint,
    TwoSided,
}

/// Checks the ordering/gap constraints and returns the validated IFS.
pub fn validate_ifs<T: Scalar>(pieces: Vec<(T, T)>) -> Result<AffineIfs<T>> {
    if pieces.len() < 2 {
        return Err(Error::NotCantor(format!("need at least two maps, got {}", pieces.len())));
    }
    if pieces.len() > 10 {
        return Err(Error::Invalid("alphabets above 10 letters are not supported".into()));
    }
    for (j, (ratio, _)) in pieces.iter().enumerate() {
        if !(*ratio > T::zero() && *ratio < T::one()) {
            return Err(Error::NotCantor(format!("ratio λ_{j} = {ratio} not in (0,1)")));
        }
    }
    if !pieces[0].1.is_zero() {
        return Err(Error::NotNormalized(format!("a_0 = {} ≠ 0", pieces[0].1)));
    }
    let (last_ratio, last_offset) = pieces.last().expect("nonempty");
    if !(last_ratio.clone() + last_offset.clone()).is_one() {
        return Err(Error::NotNormalized(format!(
            "λ_n + a_n = {} ≠ 1",
            last_ratio.clone() + last_offset.clone()
        )));
    }
    for j in 0..pieces.len() - 1 {
        let right = pieces[j].0.clone() + pieces[j].1.clone();
        if right >= pieces[j + 1].1 {
            return Err(Error::NotCantor(format!(
                "images of φ_{j} and φ_{} are not separated by a gap (λ_{j}+a_{j} = {right} ≥ a_{} = {})",
                j + 1,
                j + 1,
                pieces[j + 1].1
            )));
        }
    }
    Ok(AffineIfs {
        maps: pieces
            .into_iter()
            .map(|(ratio, offset)| AffineMap { ratio, offset })
            .collect(),
    })
}

impl<T: Scalar> AffineIfs<T> {
    pub fn maps(&self) -> &[AffineMap<T>] {
        &self.maps
    }

    /// Alphabet size `n + 1`.
    pub fn arity(&self) -> usize {
        self.maps.len()
    }

    /// Largest letter `n`.
    pub fn top(&self) -> u8 {
        (self.maps.len() - 1) as u8
    }

    pub fn ratios(&self) -> Vec<T> {
        self.maps.iter().map(|m| m.ratio.clone()).collect()
    }

    /// Initial gaps `g_α = a_α − λ_{α−1} − a_{α−1}` for `α = 1..n` (index `α − 1`).
    pub fn gaps(&self) -> Vec<T> {
        self.maps
            .windows(2)
            .map(|w| w[1].offset.clone() - w[0].ratio.clone() - w[0].offset.clone())
            .collect()
    }

    /// `φ_w = φ_{w_1} ∘ … ∘ φ_{w_p}`.
    pub fn word_map(&self, w: &Word) -> AffineMap<T> {
        w.letters()
            .iter()
            .fold(AffineMap::identity(), |acc, &l| acc.after(&self.maps[l as usize]))
    }

    pub fn scale_of(&self, w: &Word) -> ScaleElement {
        ScaleElement::of_letters(w.letters(), self.arity())
    }

    /// Exact value of the point `pre · per^∞`.
    pub fn evaluate_address(&self, addr: &Address) -> T {
        let fixed = self.word_map(addr.per()).fixed_point();
        self.word_map(addr.pre()).apply(&fixed)
    }

    /// The attractor is symmetric under `x ↦ 1 − x`.
    pub fn is_palindromic(&self) -> bool {
        let ratios = self.ratios();
        let gaps = self.gaps();
        ratios.iter().eq(ratios.iter().rev()) && gaps.iter().eq(gaps.iter().rev())
    }

    pub fn classify_point(&self, point: &Point) -> PointKind {
        match point {
            Point::Periodic(a) if a.per().letters() == [0] => PointKind::LeftPoint,
            Point::Periodic(a) if a.per().letters() == [self.top()] => PointKind::RightPoint,
            _ => PointKind::TwoSided,
        }
    }
}

impl AffineIfs<Rational> {
    /// Central Cantor set `C_λ`: `x/λ` and `x/λ + (λ−1)/λ`.
    pub fn central(lambda: &Rational) -> Result<Self> {
        let two = Rational::from_integer(2.into());
        if *lambda <= two {
            return Err(Error::NotCantor(format!("central Cantor set needs λ > 2, got {lambda}")));
        }
        let r = lambda.recip();
        let offset = Rational::one() - &r;
        validate_ifs(vec![(r.clone(), Rational::zero()), (r, offset)])
    }

    /// Converts every parameter to another scalar type.
    pub fn to_scalar<U: Scalar>(&self) -> AffineIfs<U> {
        AffineIfs {
            maps: self
                .maps
                .iter()
                .map(|m| AffineMap {
                    ratio: U::from_rational(&m.ratio),
                    offset: U::from_rational(&m.offset),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::parse_rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn ifs(v: &[(&str, &str)]) -> Result<AffineIfs<Rational>> {
        validate_ifs(v.iter().map(|(r, o)| (q(r), q(o))).collect())
    }

    fn addr(pre: &str, per: &str) -> Address {
        Address::new(pre.parse().unwrap(), per.parse().unwrap()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let c3 = ifs(&[("1/3", "0"), ("1/3", "2/3")]).unwrap();
        assert_eq!(c3, AffineIfs::central(&q("3")).unwrap());
        assert!(matches!(ifs(&[("1/2", "0"), ("1/2", "1/2")]), Err(Error::NotCantor(_))));
        let ac = ifs(&[("1/4", "0"), ("1/2", "1/2")]).unwrap();
        assert_eq!(ac.gaps(), vec![q("1/4")]);
        assert!(matches!(ifs(&[("1/3", "1/9"), ("1/3", "2/3")]), Err(Error::NotNormalized(_))));
        assert!(matches!(ifs(&[("1/3", "0"), ("1/3", "1/2")]), Err(Error::NotNormalized(_))));
        assert!(matches!(ifs(&[("1/3", "0")]), Err(Error::NotCantor(_))));
        assert!(matches!(ifs(&[("3/2", "0"), ("1/3", "2/3")]), Err(Error::NotCantor(_))));
        assert!(AffineIfs::central(&q("2")).is_err());
    }

    #[test]
    fn address_values() {
        let c3 = AffineIfs::central(&q("3")).unwrap();
        assert_eq!(c3.evaluate_address(&addr("", "0")), q("0"));
        assert_eq!(c3.evaluate_address(&addr("1", "0")), q("2/3"));
        assert_eq!(c3.evaluate_address(&addr("", "10")), q("3/4"));
        assert_eq!(c3.evaluate_address(&addr("", "1")), q("1"));
    }

    #[test]
    fn float_model_tracks_exact_model() {
        let c3 = AffineIfs::central(&q("3")).unwrap();
        let f = c3.to_scalar::<f64>();
        let a = addr("1", "10");
        let exact = Scalar::to_f64(&c3.evaluate_address(&a));
        assert!((f.evaluate_address(&a) - exact).abs() < 1e-12);
    }

    #[test]
    fn point_classification() {
        let c3 = AffineIfs::central(&q("3")).unwrap();
        assert_eq!(c3.classify_point(&addr("1", "0").into()), PointKind::LeftPoint);
        assert_eq!(c3.classify_point(&addr("", "1").into()), PointKind::RightPoint);
        assert_eq!(c3.classify_point(&addr("", "10").into()), PointKind::TwoSided);
        assert_eq!(
            c3.classify_point(&Point::Aperiodic { prefix: "0110".parse().unwrap() }),
            PointKind::TwoSided
        );
    }

    #[test]
    fn palindromes() {
        assert!(AffineIfs::central(&q("5")).unwrap().is_palindromic());
        assert!(!ifs(&[("1/4", "0"), ("1/2", "1/2")]).unwrap().is_palindromic());
        assert!(ifs(&[("1/5", "0"), ("1/7", "3/7"), ("1/5", "4/5")]).unwrap().is_palindromic());
    }

    #[test]
    fn distinct_addresses_give_distinct_points() {
        // attractor pieces are disjoint, so every point has one address
        let ifs = ifs(&[("1/4", "0"), ("1/5", "1/2"), ("1/8", "7/8")]).unwrap();
        let mut seen = std::collections::HashMap::new();
        for len in 0..=3 {
            for pre in Word::all_of_length(3, len) {
                for plen in 1..=3 {
                    for per in Word::all_of_length(3, plen) {
                        let a = Address::new(pre.clone(), per).unwrap();
                        let v = ifs.evaluate_address(&a);
                        if let Some(prev) = seen.insert(v.clone(), a.clone()) {
                            assert_eq!(prev, a, "two addresses share value {v}");
                        }
                    }
                }
            }
        }
    }
}
