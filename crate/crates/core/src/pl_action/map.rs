use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cantor_model::{Address, Point, Word};
use crate::error::{Error, Result};
use crate::exact_num::{ScaleElement, ScaleGroup};
use crate::tree_calculus::{apply_pieces, compose_pieces, GroupElement, Piece, Symbol, Variant};
use crate::{Ifs, Interval, Rational};

/// Which group a map is required to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Model {
    /// Orientation-preserving maps of the line: pieces keep their order.
    Line,
    /// Maps of the circle `[0,1]/0≡1`: pieces are cyclically rotated.
    Circle,
    /// Piecewise-affine exchanges, possibly reversing orientation.
    Exchange,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Line => "line",
            Model::Circle => "circle",
            Model::Exchange => "exchange",
        }
    }

    pub fn parse(s: &str) -> Result<Model> {
        match s {
            "line" => Ok(Model::Line),
            "circle" => Ok(Model::Circle),
            "exchange" => Ok(Model::Exchange),
            other => Err(Error::parse("model", other, "expected line, circle or exchange")),
        }
    }

    fn admits(self, class: Variant) -> bool {
        match self {
            Model::Line => class == Variant::F,
            Model::Circle => class <= Variant::T,
            Model::Exchange => true,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One affine piece `x ↦ b + Λ_k (x − a)` (or `b + Λ_k (hi − x)` when reversed)
/// from a standard source interval onto a standard target interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PLPiece {
    pub source: Interval,
    pub target: Interval,
    /// Left endpoint of the target interval as a point of the attractor.
    pub target_left: Address,
    pub scale: ScaleElement,
    pub reversed: bool,
}

impl PLPiece {
    /// Exact image of a coordinate lying in the source interval.
    pub fn eval(&self, ifs: &Ifs, x: &Rational) -> Result<Rational> {
        let lambda = self.scale.value(&ifs.ratios())?;
        let b = &self.target.lo;
        Ok(if self.reversed {
            b + lambda * (&self.source.hi - x)
        } else {
            b + lambda * (x - &self.source.lo)
        })
    }

    /// Recovers the target word from `target_left` and the scale exponent
    /// (the letter counts of the target word are `k + counts(source)`).
    pub fn target_word(source: &Word, target_left: &Address, scale: &ScaleElement) -> Result<Word> {
        if target_left.per().letters() != [0] {
            return Err(Error::Invalid(format!("target_left {target_left} is not a left point")));
        }
        let counts = &ScaleElement::of_letters(source.letters(), scale.len()) + scale;
        if counts.0.iter().any(|&c| c < 0) {
            return Err(Error::Invalid(format!("scale {scale} is not realized by a word")));
        }
        let len: i64 = counts.0.iter().sum();
        let pre = target_left.pre();
        if (pre.len() as i64) > len {
            return Err(Error::Invalid(format!("target_left {target_left} deeper than the scale allows")));
        }
        let mut word = pre.clone();
        while (word.len() as i64) < len {
            word.push(0);
        }
        if ScaleElement::of_letters(word.letters(), scale.len()) != counts {
            return Err(Error::Invalid(format!(
                "target_left {target_left} inconsistent with scale {scale}"
            )));
        }
        Ok(word)
    }
}

/// Finite piecewise-affine bijection of the attractor, stored as reduced
/// prefix-replacement pieces over the IFS coding.
#[derive(Debug, Clone, PartialEq)]
pub struct PLMap {
    ifs: Ifs,
    model: Model,
    symbol: Symbol,
}

impl PLMap {
    /// Validates word pieces (sources and targets must each cover the
    /// attractor by disjoint standard intervals) and merges them to canonical form.
    pub fn new(ifs: &Ifs, model: Model, pieces: Vec<Piece>) -> Result<PLMap> {
        for p in &pieces {
            p.source.check_alphabet(ifs.arity())?;
            p.target.check_alphabet(ifs.arity())?;
        }
        let symbol = Symbol::from_pieces(ifs.arity(), pieces)?.reduce();
        PLMap::checked(ifs, model, symbol)
    }

    fn checked(ifs: &Ifs, model: Model, symbol: Symbol) -> Result<PLMap> {
        let class = symbol.class();
        if class == Variant::Vpm && !ifs.is_palindromic() {
            return Err(Error::NotInvertible);
        }
        if !model.admits(class) {
            return Err(Error::VariantMismatch(format!("a {class} map is not in the {model} model")));
        }
        Ok(PLMap {
            ifs: ifs.clone(),
            model,
            symbol,
        })
    }

    pub fn identity(ifs: &Ifs, model: Model) -> PLMap {
        PLMap {
            ifs: ifs.clone(),
            model,
            symbol: Symbol::identity(ifs.arity()),
        }
    }

    /// Realization of a tree-pair element on the attractor: leaves become standard intervals.
    pub fn from_symbol(element: &GroupElement, ifs: &Ifs) -> Result<PLMap> {
        if element.arity() != ifs.arity() {
            return Err(Error::ArityMismatch(element.arity(), ifs.arity()));
        }
        let model = match element.variant() {
            Variant::F => Model::Line,
            Variant::T => Model::Circle,
            Variant::V | Variant::Vpm => Model::Exchange,
        };
        PLMap::checked(ifs, model, element.symbol().clone())
    }

    pub fn to_symbol(&self) -> GroupElement {
        let variant = match self.model {
            Model::Line => Variant::F,
            Model::Circle => Variant::T,
            Model::Exchange => self.symbol.class().max(Variant::V),
        };
        GroupElement::new(self.symbol.clone(), variant).expect("model admits the symbol class")
    }

    pub fn ifs(&self) -> &Ifs {
        &self.ifs
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn word_pieces(&self) -> Vec<Piece> {
        self.symbol.pieces()
    }

    pub fn is_identity(&self) -> bool {
        self.symbol == Symbol::identity(self.ifs.arity())
    }

    /// Pieces with their exact intervals and scales, in source order.
    pub fn pieces(&self) -> Vec<PLPiece> {
        let n = self.ifs.arity();
        self.symbol
            .pieces()
            .into_iter()
            .map(|p| PLPiece {
                source: self.ifs.standard_interval(&p.source),
                target: self.ifs.standard_interval(&p.target),
                target_left: Address::with_constant_tail(&p.target, 0),
                scale: &ScaleElement::of_letters(p.target.letters(), n)
                    - &ScaleElement::of_letters(p.source.letters(), n),
                reversed: p.flip,
            })
            .collect()
    }

    /// Symbolic action: replace the source prefix by the target prefix,
    /// complementing the tail on reversed pieces.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        apply_pieces(&self.symbol.pieces(), p, self.ifs.top())
    }

    /// Action on a coordinate; `x` must lie in one of the source intervals.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        self.pieces()
            .iter()
            .find(|p| p.source.contains(x))
            .ok_or_else(|| Error::NotCovered(format!("{x} lies in a gap")))?
            .eval(&self.ifs, x)
    }

    /// `f ∘ g`. The result lives in the larger of the two models.
    pub fn compose(&self, g: &PLMap) -> Result<PLMap> {
        if self.ifs != g.ifs {
            return Err(Error::Invalid("maps act on different IFSs".into()));
        }
        let pieces = compose_pieces(&self.symbol.pieces(), &g.symbol.pieces(), self.ifs.top());
        let symbol = Symbol::from_pieces(self.ifs.arity(), pieces)?.reduce();
        PLMap::checked(&self.ifs, self.model.max(g.model), symbol)
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            ifs: self.ifs.clone(),
            model: self.model,
            symbol: self.symbol.inverse(),
        }
    }

    /// Distinct scales `Λ_k` of the pieces, each reduced modulo the relations among the `λ_i`.
    pub fn slope_spectrum(&self) -> Result<BTreeSet<ScaleElement>> {
        let group = ScaleGroup::new(&self.ifs.ratios())?;
        Ok(self.pieces().iter().map(|p| group.canonical(&p.scale)).collect())
    }
}

pub fn compose_pl(f: &PLMap, g: &PLMap) -> Result<PLMap> {
    f.compose(g)
}

pub fn inverse_pl(f: &PLMap) -> PLMap {
    f.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::parse_rational;
    use crate::tree_calculus::{reflection, rotation, transposition, x0, x1};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn c3() -> Ifs {
        Ifs::central(&q("3")).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn addr(pre: &str, per: &str) -> Address {
        Address::new(w(pre), w(per)).unwrap()
    }

    fn piece(s: &str, t: &str, flip: bool) -> Piece {
        Piece {
            source: w(s),
            target: w(t),
            flip,
        }
    }

    #[test]
    fn identity_realization() {
        let id = PLMap::from_symbol(&GroupElement::identity(2, Variant::F), &c3()).unwrap();
        let pieces = id.pieces();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].source.word, Word::empty());
        assert!(pieces[0].scale.is_zero());
        let p: Point = addr("01", "10").into();
        assert_eq!(id.apply(&p).unwrap(), p);
    }

    #[test]
    fn x0_round_trip_and_spectrum() {
        let f = PLMap::from_symbol(&x0(), &c3()).unwrap();
        assert_eq!(f.to_symbol(), x0());
        assert_eq!(f.model(), Model::Line);
        let spectrum: Vec<ScaleElement> = f.slope_spectrum().unwrap().into_iter().collect();
        assert_eq!(
            spectrum,
            vec![ScaleElement(vec![0, -1]), ScaleElement(vec![0, 0]), ScaleElement(vec![0, 1])]
        );
    }

    #[test]
    fn rotation_sends_zero_to_two_thirds() {
        let c3 = c3();
        let f = PLMap::from_symbol(&rotation(2), &c3).unwrap();
        assert_eq!(f.pieces().len(), 2);
        let image = f.apply(&addr("", "0").into()).unwrap();
        let Point::Periodic(a) = image else { panic!() };
        assert_eq!(c3.evaluate_address(&a), q("2/3"));
        assert_eq!(f.eval(&q("0")).unwrap(), q("2/3"));
    }

    #[test]
    fn prefix_replacement_matches_affine_formula() {
        let c3 = c3();
        let f = PLMap::new(&c3, Model::Exchange, vec![piece("0", "1", false), piece("1", "0", false)]).unwrap();
        let a = addr("0", "10");
        assert_eq!(c3.evaluate_address(&a), q("1/4"));
        let Point::Periodic(b) = f.apply(&a.clone().into()).unwrap() else { panic!() };
        assert_eq!(b, addr("1", "10"));
        assert_eq!(c3.evaluate_address(&b), q("11/12"));
        assert_eq!(f.eval(&q("1/4")).unwrap(), q("11/12"));
    }

    #[test]
    fn reflection_swaps_extremes() {
        let c3 = c3();
        let f = PLMap::from_symbol(&reflection(2), &c3).unwrap();
        assert_eq!(f.apply(&addr("", "0").into()).unwrap(), addr("", "1").into());
        assert_eq!(f.eval(&q("2/9")).unwrap(), q("7/9"));
        let ac = crate::cantor_model::validate_ifs(vec![(q("1/4"), q("0")), (q("1/2"), q("1/2"))]).unwrap();
        assert_eq!(PLMap::from_symbol(&reflection(2), &ac), Err(Error::NotInvertible));
    }

    #[test]
    fn composition_and_inverse() {
        let c3 = c3();
        let f = PLMap::from_symbol(&x0(), &c3).unwrap();
        let g = PLMap::from_symbol(&x1(), &c3).unwrap();
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
        let fg = f.compose(&g).unwrap();
        for (pre, per) in [("", "0"), ("01", "1"), ("1", "10"), ("110", "011")] {
            let p: Point = addr(pre, per).into();
            assert_eq!(fg.apply(&p).unwrap(), f.apply(&g.apply(&p).unwrap()).unwrap());
        }
        let t = PLMap::from_symbol(&rotation(2), &c3).unwrap();
        assert_eq!(f.compose(&t).unwrap().model(), Model::Circle);
        let v = PLMap::from_symbol(&transposition(2), &c3).unwrap();
        assert_eq!(t.compose(&v).unwrap().model(), Model::Exchange);
    }

    #[test]
    fn line_model_rejects_permuted_pieces() {
        let err = PLMap::new(&c3(), Model::Line, vec![piece("0", "1", false), piece("1", "0", false)]);
        assert!(matches!(err, Err(Error::VariantMismatch(_))));
        assert!(PLMap::new(&c3(), Model::Line, vec![piece("0", "0", false)]).is_err());
    }

    #[test]
    fn target_word_recovery() {
        let k = ScaleElement(vec![1, 0]);
        assert_eq!(PLPiece::target_word(&w("01"), &addr("1", "0"), &k).unwrap(), w("100"));
        assert!(PLPiece::target_word(&w("01"), &addr("1", "1"), &k).is_err());
        assert!(PLPiece::target_word(&w(""), &addr("", "0"), &ScaleElement(vec![-1, 0])).is_err());
        for p in PLMap::from_symbol(&x1(), &c3()).unwrap().pieces() {
            assert_eq!(
                PLPiece::target_word(&p.source.word, &p.target_left, &p.scale).unwrap(),
                p.target.word
            );
        }
    }
}
