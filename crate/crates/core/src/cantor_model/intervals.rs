use super::ifs::AffineIfs;
use super::word::Word;
use crate::error::{Error, Result};
use crate::exact_num::Scalar;

/// `φ_w([0,1]) = [lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardInterval<T> {
    pub word: Word,
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> StandardInterval<T> {
    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// Complementary interval of generation `g`: the gap in slot `α` of the
/// standard interval of `parent` (`|parent| = g − 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Gap<T> {
    pub generation: usize,
    pub parent: Word,
    pub slot: usize,
    pub left: T,
    pub right: T,
}

impl<T: Scalar> Gap<T> {
    pub fn length(&self) -> T {
        self.right.clone() - self.left.clone()
    }
}

impl<T: Scalar> AffineIfs<T> {
    pub fn standard_interval(&self, w: &Word) -> StandardInterval<T> {
        let m = self.word_map(w);
        StandardInterval {
            word: w.clone(),
            lo: m.apply(&T::zero()),
            hi: m.apply(&T::one()),
        }
    }

    /// Standard intervals of one generation, left to right.
    pub fn generation(&self, g: usize) -> Vec<StandardInterval<T>> {
        Word::all_of_length(self.arity(), g)
            .iter()
            .map(|w| self.standard_interval(w))
            .collect()
    }

    /// All gaps of generation `1..=max_gen`, ordered by generation then left endpoint.
    pub fn gaps_up_to(&self, max_gen: usize) -> Vec<Gap<T>> {
        let mut out = Vec::new();
        for g in 1..=max_gen {
            for parent in Word::all_of_length(self.arity(), g - 1) {
                let m = self.word_map(&parent);
                for slot in 1..self.arity() {
                    let before = &self.maps()[slot - 1];
                    out.push(Gap {
                        generation: g,
                        parent: parent.clone(),
                        slot,
                        left: m.apply(&(before.ratio.clone() + before.offset.clone())),
                        right: m.apply(&self.maps()[slot].offset),
                    });
                }
            }
        }
        out
    }

    /// Endpoints of all standard intervals of generation `≤ g`, left to right.
    pub fn endpoints(&self, g: usize) -> Vec<T> {
        // generation-g endpoints already include every coarser endpoint
        self.generation(g)
            .into_iter()
            .flat_map(|iv| [iv.lo, iv.hi])
            .collect()
    }

    /// `σ_G`: the minimum, over endpoint pairs `a < b` of generation `≤ G`,
    /// of (largest gap inside `(a,b)`) / `(b − a)`.
    ///
    /// Gaps up to generation `G + 1` suffice: every standard interval `I_w` of
    /// generation `G` lies entirely inside or outside `[a,b]`, and the largest
    /// gap inside it is `Λ_w · max g_α`, of generation `G + 1`. Containment is
    /// decided from the left-to-right order of the tree, never by comparing
    /// coordinates, so the result is robust for floating-point scalars.
    pub fn sparseness_bound(&self, max_gen: usize) -> Result<T> {
        if max_gen == 0 {
            return Err(Error::Domain("sparseness bound needs G ≥ 1".into()));
        }
        let mut items = Vec::new();
        self.layout(&Word::empty(), max_gen, &mut items);
        let mut best: Option<T> = None;
        for (i, item) in items.iter().enumerate() {
            let Item::Point(a) = item else { continue };
            let mut largest = T::zero();
            for next in &items[i + 1..] {
                match next {
                    Item::Gap(len) => {
                        if *len > largest {
                            largest = len.clone();
                        }
                    }
                    Item::Point(b) => {
                        let ratio = largest.clone() / (b.clone() - a.clone());
                        if best.as_ref().is_none_or(|cur| ratio < *cur) {
                            best = Some(ratio);
                        }
                    }
                }
            }
        }
        best.ok_or_else(|| Error::Domain("no endpoint pairs".into()))
    }

    /// Left-to-right sequence of generation-`G` endpoints and the gaps of
    /// generation `≤ G + 1` between them.
    fn layout(&self, w: &Word, max_gen: usize, out: &mut Vec<Item<T>>) {
        let m = self.word_map(w);
        let gaps = self.gaps();
        if w.len() == max_gen {
            out.push(Item::Point(m.apply(&T::zero())));
            out.extend(gaps.iter().map(|g| Item::Gap(m.ratio.clone() * g.clone())));
            out.push(Item::Point(m.apply(&T::one())));
            return;
        }
        for j in 0..self.arity() {
            if j > 0 {
                out.push(Item::Gap(m.ratio.clone() * gaps[j - 1].clone()));
            }
            self.layout(&w.pushed(j as u8), max_gen, out);
        }
    }
}

enum Item<T> {
    Point(T),
    Gap(T),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor_model::validate_ifs;
    use crate::exact_num::parse_rational;
    use crate::Rational;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn c(lambda: &str) -> AffineIfs<Rational> {
        AffineIfs::central(&q(lambda)).unwrap()
    }

    fn ac() -> AffineIfs<Rational> {
        validate_ifs(vec![(q("1/4"), q("0")), (q("1/2"), q("1/2"))]).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn standard_interval_examples() {
        let c3 = c("3");
        let iv = c3.standard_interval(&w(""));
        assert_eq!((iv.lo, iv.hi), (q("0"), q("1")));
        let iv = c3.standard_interval(&w("0"));
        assert_eq!((iv.lo, iv.hi), (q("0"), q("1/3")));
        let iv = c3.standard_interval(&w("01"));
        assert_eq!((iv.lo, iv.hi), (q("2/9"), q("1/3")));
    }

    #[test]
    fn gap_examples() {
        let c3 = c("3");
        let g1 = c3.gaps_up_to(1);
        assert_eq!(g1.len(), 1);
        assert_eq!((g1[0].left.clone(), g1[0].right.clone()), (q("1/3"), q("2/3")));
        let g2 = c3.gaps_up_to(2);
        let pairs: Vec<_> = g2.iter().map(|g| (g.left.clone(), g.right.clone())).collect();
        assert_eq!(
            pairs,
            vec![(q("1/3"), q("2/3")), (q("1/9"), q("2/9")), (q("7/9"), q("8/9"))]
        );
        // (λ−2)λ^{−2} with λ = 3
        assert_eq!(g2[1].length(), q("1/9"));
        let a = ac().gaps_up_to(1);
        assert_eq!((a[0].left.clone(), a[0].right.clone()), (q("1/4"), q("1/2")));
        assert_eq!(a[0].length(), q("1/4"));
    }

    #[test]
    fn gap_count() {
        let three = validate_ifs(vec![(q("1/5"), q("0")), (q("1/5"), q("2/5")), (q("1/5"), q("4/5"))]).unwrap();
        for g in 1..=4 {
            // (n+1)^G − 1 with n + 1 = 3
            assert_eq!(three.gaps_up_to(g).len(), 3usize.pow(g as u32) - 1);
        }
    }

    #[test]
    fn sparseness_examples() {
        assert_eq!(c("3").sparseness_bound(3).unwrap(), q("1/3"));
        assert_eq!(c("4").sparseness_bound(3).unwrap(), q("1/2"));
        assert!(c("3").sparseness_bound(0).is_err());
    }

    #[test]
    fn nesting_and_disjointness() {
        let ifs = validate_ifs(vec![(q("1/4"), q("0")), (q("1/5"), q("1/2")), (q("1/8"), q("7/8"))]).unwrap();
        for g in 0..4 {
            let gen = ifs.generation(g);
            for pair in gen.windows(2) {
                assert!(pair[0].hi < pair[1].lo, "generation {g} intervals overlap");
            }
            for iv in &gen {
                for l in 0..3u8 {
                    let child = ifs.standard_interval(&iv.word.pushed(l));
                    assert!(iv.lo <= child.lo && child.hi <= iv.hi);
                    assert!(child.length() < iv.length());
                }
            }
        }
    }

    #[test]
    fn gaps_and_intervals_tile_unit_interval() {
        let ifs = validate_ifs(vec![(q("1/4"), q("0")), (q("1/5"), q("1/2")), (q("1/8"), q("7/8"))]).unwrap();
        for g in 1..=4 {
            let total: Rational = ifs.gaps_up_to(g).iter().map(|x| x.length()).sum::<Rational>()
                + ifs.generation(g).iter().map(|x| x.length()).sum::<Rational>();
            assert_eq!(total, q("1"));
        }
    }

    #[test]
    fn gap_length_is_parent_scale_times_initial_gap() {
        let ifs = ac();
        let ratios = ifs.ratios();
        let g0 = ifs.gaps();
        for gap in ifs.gaps_up_to(5) {
            let scale = ifs.scale_of(&gap.parent).value(&ratios).unwrap();
            assert_eq!(gap.length(), scale * g0[gap.slot - 1].clone());
        }
    }

    #[test]
    fn float_sparseness_matches_exact() {
        let exact = c("5").sparseness_bound(2).unwrap();
        let approx = c("5").to_scalar::<f64>().sparseness_bound(2).unwrap();
        assert!((approx - Scalar::to_f64(&exact)).abs() < 1e-12);
    }
}
