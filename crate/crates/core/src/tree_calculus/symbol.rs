use std::fmt;

use serde::Serialize;

use super::tree::Tree;
use crate::cantor_model::{Point, Word};
use crate::error::{Error, Result};

/// Group in the chain `F < T < V < V±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Variant {
    F,
    T,
    V,
    Vpm,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::F => "F",
            Variant::T => "T",
            Variant::V => "V",
            Variant::Vpm => "Vpm",
        }
    }

    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "F" => Ok(Variant::F),
            "T" => Ok(Variant::T),
            "V" => Ok(Variant::V),
            "Vpm" | "V±" | "Vpm±" => Ok(Variant::Vpm),
            other => Err(Error::parse("variant", other, "expected F, T, V or Vpm")),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Prefix replacement `source·y ↦ target·y`, or `target·ȳ` (letterwise
/// complement) when `flip` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub source: Word,
    pub target: Word,
    pub flip: bool,
}

impl Piece {
    fn tail(&self, x: &Word, top: u8) -> Word {
        if self.flip {
            x.complement(top)
        } else {
            x.clone()
        }
    }

    /// Image of a point under this piece, `None` when the point lies elsewhere.
    pub fn apply(&self, p: &Point, top: u8) -> Result<Option<Point>> {
        Ok(p.strip_prefix(&self.source)?.map(|rest| {
            let rest = if self.flip { rest.complement(top) } else { rest };
            rest.prepend(&self.target)
        }))
    }

    pub fn inverse(&self) -> Piece {
        Piece {
            source: self.target.clone(),
            target: self.source.clone(),
            flip: self.flip,
        }
    }
}

/// Pieces of `outer ∘ inner`, sorted by source word.
pub fn compose_pieces(outer: &[Piece], inner: &[Piece], top: u8) -> Vec<Piece> {
    let mut out = Vec::new();
    for p in inner {
        for q in outer {
            if let Some(x) = q.source.strip_prefix(&p.target) {
                out.push(Piece {
                    source: p.source.concat(&p.tail(&x, top)),
                    target: q.target.clone(),
                    flip: p.flip ^ q.flip,
                });
            } else if let Some(x) = p.target.strip_prefix(&q.source) {
                out.push(Piece {
                    source: p.source.clone(),
                    target: q.target.concat(&q.tail(&x, top)),
                    flip: p.flip ^ q.flip,
                });
            }
        }
    }
    out.sort();
    out
}

/// Image of a point under a piecewise prefix replacement.
pub fn apply_pieces(pieces: &[Piece], p: &Point, top: u8) -> Result<Point> {
    for piece in pieces {
        if let Some(image) = piece.apply(p, top)? {
            return Ok(image);
        }
    }
    Err(Error::NotCovered(format!("no piece covers {p}")))
}

/// Tree pair `(target, source)` with a leaf bijection and orientation flags.
///
/// `perm[i]` is the target leaf receiving source leaf `i` (0-based); `flips[i]`
/// marks source leaf `i` as mapped orientation-reversingly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    arity: usize,
    target: Tree,
    source: Tree,
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl Symbol {
    pub fn new(arity: usize, target: Tree, source: Tree, perm: Vec<usize>, flips: Vec<bool>) -> Result<Symbol> {
        if arity < 2 {
            return Err(Error::Invalid(format!("arity must be at least 2, got {arity}")));
        }
        for tree in [&target, &source] {
            if let Some(a) = tree.arity()? {
                if a != arity {
                    return Err(Error::ArityMismatch(arity, a));
                }
            }
        }
        let m = source.leaf_count();
        if target.leaf_count() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: target.leaf_count(),
            });
        }
        if perm.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: perm.len() });
        }
        if flips.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: flips.len() });
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("perm {perm:?} is not a bijection")));
            }
        }
        Ok(Symbol {
            arity,
            target,
            source,
            perm,
            flips,
        })
    }

    pub fn identity(arity: usize) -> Symbol {
        Symbol {
            arity,
            target: Tree::Leaf,
            source: Tree::Leaf,
            perm: vec![0],
            flips: vec![false],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn target(&self) -> &Tree {
        &self.target
    }

    pub fn source(&self) -> &Tree {
        &self.source
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> &[bool] {
        &self.flips
    }

    pub fn leaf_count(&self) -> usize {
        self.perm.len()
    }

    fn top(&self) -> u8 {
        (self.arity - 1) as u8
    }

    /// One piece per source leaf, in source order.
    pub fn pieces(&self) -> Vec<Piece> {
        let targets = self.target.leaf_words();
        self.source
            .leaf_words()
            .into_iter()
            .enumerate()
            .map(|(i, source)| Piece {
                source,
                target: targets[self.perm[i]].clone(),
                flip: self.flips[i],
            })
            .collect()
    }

    /// Inverse of [`Symbol::pieces`]; sources and targets must be complete prefix codes.
    pub fn from_pieces(arity: usize, mut pieces: Vec<Piece>) -> Result<Symbol> {
        pieces.sort();
        let sources: Vec<Word> = pieces.iter().map(|p| p.source.clone()).collect();
        let mut targets: Vec<Word> = pieces.iter().map(|p| p.target.clone()).collect();
        targets.sort();
        let source = Tree::from_leaf_words(arity, &sources)?;
        let target = Tree::from_leaf_words(arity, &targets)?;
        let perm = pieces
            .iter()
            .map(|p| targets.binary_search(&p.target).expect("target present"))
            .collect();
        let flips = pieces.iter().map(|p| p.flip).collect();
        Symbol::new(arity, target, source, perm, flips)
    }

    /// Refines source leaf `i` (0-based) and its image by one caret each.
    pub fn expand(&self, i: usize) -> Result<Symbol> {
        let m = self.leaf_count();
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i, size: m });
        }
        let mut pieces = self.pieces();
        let p = pieces.remove(i);
        for l in 0..self.arity as u8 {
            let image = if p.flip { self.top() - l } else { l };
            pieces.push(Piece {
                source: p.source.pushed(l),
                target: p.target.pushed(image),
                flip: p.flip,
            });
        }
        Symbol::from_pieces(self.arity, pieces)
    }

    /// Source leaf indices where a caret pair can be removed.
    pub fn removable_carets(&self) -> Vec<usize> {
        let pieces = self.pieces();
        let top = self.top();
        let n = self.arity;
        (0..pieces.len().saturating_sub(n - 1))
            .filter(|&i| {
                let group = &pieces[i..i + n];
                let flip = group[0].flip;
                caret_parent(group.iter().map(|p| &p.source), |j| j as u8).is_some()
                    && group.iter().all(|p| p.flip == flip)
                    && caret_parent(group.iter().map(|p| &p.target), |j| if flip { top - j as u8 } else { j as u8 })
                        .is_some()
            })
            .collect()
    }

    /// Removes the caret pair starting at source leaf `i`, if removable.
    pub fn collapse_at(&self, i: usize) -> Option<Symbol> {
        if !self.removable_carets().contains(&i) {
            return None;
        }
        let mut pieces = self.pieces();
        let group: Vec<Piece> = pieces.drain(i..i + self.arity).collect();
        pieces.push(Piece {
            source: parent(&group[0].source),
            target: parent(&group[0].target),
            flip: group[0].flip,
        });
        Some(Symbol::from_pieces(self.arity, pieces).expect("collapsing a caret keeps prefix codes complete"))
    }

    /// Removes caret pairs until none remain.
    pub fn reduce(&self) -> Symbol {
        let mut cur = self.clone();
        while let Some(&i) = cur.removable_carets().first() {
            cur = cur.collapse_at(i).expect("listed as removable");
        }
        cur
    }

    pub fn is_reduced(&self) -> bool {
        self.removable_carets().is_empty()
    }

    /// Reduced symbol of `self ∘ inner`.
    pub fn compose(&self, inner: &Symbol) -> Result<Symbol> {
        if self.arity != inner.arity {
            return Err(Error::ArityMismatch(self.arity, inner.arity));
        }
        let pieces = compose_pieces(&self.pieces(), &inner.pieces(), self.top());
        Ok(Symbol::from_pieces(self.arity, pieces)?.reduce())
    }

    pub fn inverse(&self) -> Symbol {
        let pieces = self.pieces().iter().map(Piece::inverse).collect();
        Symbol::from_pieces(self.arity, pieces).expect("inverse of a valid symbol")
    }

    /// Smallest group in the chain containing this symbol.
    pub fn class(&self) -> Variant {
        let m = self.leaf_count();
        if self.flips.iter().any(|&f| f) {
            Variant::Vpm
        } else if self.perm.iter().enumerate().all(|(i, &p)| p == i) {
            Variant::F
        } else if self.perm.iter().enumerate().all(|(i, &p)| p == (i + self.perm[0]) % m) {
            Variant::T
        } else {
            Variant::V
        }
    }

    /// Action on a point of the coding space `{0..n}^ℕ`.
    pub fn apply(&self, p: &Point) -> Result<Point> {
        apply_pieces(&self.pieces(), p, self.top())
    }
}

fn parent(w: &Word) -> Word {
    Word(w.letters()[..w.len() - 1].to_vec())
}

/// Common parent of `words` if they are `u·e(0), u·e(1), …` for one `u`.
fn caret_parent<'a>(words: impl Iterator<Item = &'a Word>, expected: impl Fn(usize) -> u8) -> Option<Word> {
    let mut parent_word: Option<Word> = None;
    for (j, w) in words.enumerate() {
        if w.last() != Some(expected(j)) {
            return None;
        }
        let p = parent(w);
        match &parent_word {
            None => parent_word = Some(p),
            Some(q) if *q != p => return None,
            _ => {}
        }
    }
    parent_word
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        let flips: String = self.flips.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(
            f,
            "target {} source {} perm [{}] flips {}",
            self.target,
            self.source,
            perm.join(","),
            flips
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor_model::Address;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn sym(target: &str, source: &str, perm: &[usize], flips: &str) -> Symbol {
        let target = t(target);
        let arity = target.arity().unwrap().or(t(source).arity().unwrap()).unwrap_or(2);
        Symbol::new(
            arity,
            target,
            t(source),
            perm.iter().map(|p| p - 1).collect(),
            flips.chars().map(|c| c == '1').collect(),
        )
        .unwrap()
    }

    fn addr(pre: &str, per: &str) -> Point {
        Address::new(pre.parse().unwrap(), per.parse().unwrap()).unwrap().into()
    }

    #[test]
    fn validation() {
        assert!(Symbol::new(2, t("(..)"), t("(.(..))"), vec![0, 1, 2], vec![false; 3]).is_err());
        assert!(Symbol::new(2, t("(..)"), t("(..)"), vec![0, 0], vec![false; 2]).is_err());
        assert!(Symbol::new(3, t("(..)"), t("(..)"), vec![0, 1], vec![false; 2]).is_err());
        assert!(Symbol::new(2, t("(..)"), t("(..)"), vec![1, 0], vec![false]).is_err());
    }

    #[test]
    fn expand_identity() {
        for arity in [2, 3] {
            let e = Symbol::identity(arity).expand(0).unwrap();
            assert_eq!(e.source(), &Tree::caret(arity));
            assert_eq!(e.target(), &Tree::caret(arity));
            assert_eq!(e.perm(), (0..arity).collect::<Vec<_>>());
            assert_eq!(e.reduce(), Symbol::identity(arity));
        }
        assert!(Symbol::identity(2).expand(1).is_err());
    }

    #[test]
    fn expand_flipped_leaf_reverses_order() {
        let s = sym(".", ".", &[1], "1").expand(0).unwrap();
        assert_eq!(s.perm(), &[1, 0]);
        assert_eq!(s.flips(), &[true, true]);
        assert_eq!(s.reduce(), sym(".", ".", &[1], "1"));
        // identical action on sample points
        let orig = sym(".", ".", &[1], "1");
        for p in [addr("", "0"), addr("01", "10"), addr("1", "011")] {
            assert_eq!(orig.apply(&p).unwrap(), s.apply(&p).unwrap());
        }
    }

    #[test]
    fn x0_round_trip_through_expansion() {
        let x0 = sym("((..).)", "(.(..))", &[1, 2, 3], "000");
        let big = x0.expand(1).unwrap();
        assert_eq!(big.leaf_count(), 4);
        assert_eq!(big.reduce(), x0);
        assert!(x0.is_reduced());
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let x0 = sym("((..).)", "(.(..))", &[1, 2, 3], "000");
        assert_eq!(x0.compose(&x0.inverse()).unwrap(), Symbol::identity(2));
        assert_eq!(x0.inverse().compose(&x0).unwrap(), Symbol::identity(2));
        assert_eq!(x0.inverse().source(), x0.target());
    }

    #[test]
    fn action_of_x0() {
        let x0 = sym("((..).)", "(.(..))", &[1, 2, 3], "000");
        // 0·w ↦ 00·w, 10·w ↦ 01·w, 11·w ↦ 1·w
        assert_eq!(x0.apply(&addr("0", "1")).unwrap(), addr("00", "1"));
        assert_eq!(x0.apply(&addr("10", "0")).unwrap(), addr("01", "0"));
        assert_eq!(x0.apply(&addr("", "1")).unwrap(), addr("", "1"));
    }

    #[test]
    fn classification() {
        assert_eq!(Symbol::identity(2).class(), Variant::F);
        assert_eq!(sym("(..)", "(..)", &[2, 1], "00").class(), Variant::T);
        assert_eq!(sym("((..).)", "((..).)", &[2, 1, 3], "000").class(), Variant::V);
        assert_eq!(sym("((..).)", "((..).)", &[2, 3, 1], "000").class(), Variant::T);
        assert_eq!(sym("(..)", "(..)", &[1, 2], "01").class(), Variant::Vpm);
    }

    #[test]
    fn removable_carets_listing() {
        let s = Symbol::identity(2).expand(0).unwrap().expand(0).unwrap();
        assert_eq!(s.removable_carets(), vec![0]);
        let s = Symbol::identity(2).expand(0).unwrap().expand(0).unwrap().expand(2).unwrap();
        assert_eq!(s.removable_carets(), vec![0, 2]);
        assert!(s.collapse_at(1).is_none());
        assert_eq!(s.collapse_at(2).unwrap().reduce(), Symbol::identity(2));
    }
}
