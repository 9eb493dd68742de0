use std::fmt;

use crate::cantor_model::{Point, Word};
use crate::error::{Error, Result};
use crate::exact_num::ScaleElement;

/// `φ_{I/J}`: the affine map with `φ_{I/J}(φ_I(x)) = φ_J(x)`, i.e. the prefix
/// replacement `I·y ↦ J·y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardGerm {
    pub source: Word,
    pub target: Word,
}

impl StandardGerm {
    pub fn new(source: Word, target: Word) -> StandardGerm {
        StandardGerm { source, target }
    }

    /// Image of `p`, `None` outside the domain `φ_I([0,1])`.
    pub fn apply(&self, p: &Point) -> Result<Option<Point>> {
        Ok(p.strip_prefix(&self.source)?.map(|rest| rest.prepend(&self.target)))
    }

    /// Exponent of the slope `Λ(J)/Λ(I)`.
    pub fn scale(&self, arity: usize) -> ScaleElement {
        &ScaleElement::of_letters(self.target.letters(), arity) - &ScaleElement::of_letters(self.source.letters(), arity)
    }

    pub fn inverse(&self) -> StandardGerm {
        StandardGerm::new(self.target.clone(), self.source.clone())
    }

    /// Whether `self` is `other` restricted to a sub-interval.
    pub fn is_restriction_of(&self, other: &StandardGerm) -> bool {
        match (self.source.strip_prefix(&other.source), self.target.strip_prefix(&other.target)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    fn check_alphabet(&self, arity: usize) -> Result<()> {
        self.source.check_alphabet(arity)?;
        self.target.check_alphabet(arity)
    }
}

impl fmt::Display for StandardGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "φ[{}/{}]", self.source, self.target)
    }
}

/// `g1` followed by `g2`; needs `g1`'s target to be `g2`'s source.
pub fn germ_compose(g1: &StandardGerm, g2: &StandardGerm) -> Result<StandardGerm> {
    if g1.target != g2.source {
        return Err(Error::ChainMismatch(format!("{g1} ends at `{}`, {g2} starts at `{}`", g1.target, g2.source)));
    }
    Ok(StandardGerm::new(g1.source.clone(), g2.target.clone()))
}

/// `φ_{I'a/J'a} ↦ φ_{I'/J'}`; `None` when the last letters differ or a word is empty.
pub fn germ_extend(g: &StandardGerm) -> Option<StandardGerm> {
    match (g.source.last(), g.target.last()) {
        (Some(a), Some(b)) if a == b => Some(StandardGerm::new(
            Word(g.source.letters()[..g.source.len() - 1].to_vec()),
            Word(g.target.letters()[..g.target.len() - 1].to_vec()),
        )),
        _ => None,
    }
}

/// Repeated [`germ_extend`] to the largest standard germ with the same germ.
pub fn germ_maximal(g: &StandardGerm) -> StandardGerm {
    let mut cur = g.clone();
    while let Some(next) = germ_extend(&cur) {
        cur = next;
    }
    cur
}

/// Ordered standard germs whose domains (and images) are consecutive along
/// the attractor: between two consecutive domains there is exactly one gap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGerm {
    arity: usize,
    germs: Vec<StandardGerm>,
}

/// Outcome of [`extend_multigerm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub result: MultiGerm,
    /// Number of single-germ extensions performed.
    pub steps: usize,
}

impl MultiGerm {
    pub fn new(arity: usize, germs: Vec<StandardGerm>) -> Result<MultiGerm> {
        if germs.is_empty() {
            return Err(Error::Invalid("a multi-germ needs at least one germ".into()));
        }
        let top = (arity - 1) as u8;
        for g in &germs {
            g.check_alphabet(arity)?;
        }
        for pair in germs.windows(2) {
            for (a, b, side) in [
                (&pair[0].source, &pair[1].source, "domains"),
                (&pair[0].target, &pair[1].target, "images"),
            ] {
                if !separated_by_gap(a, b, top) {
                    return Err(Error::Invalid(format!(
                        "{side} `{a}` and `{b}` are not consecutive standard intervals separated by a gap"
                    )));
                }
            }
        }
        Ok(MultiGerm { arity, germs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn germs(&self) -> &[StandardGerm] {
        &self.germs
    }

    /// Total number of letters over all source and target words.
    pub fn letter_count(&self) -> usize {
        self.germs.iter().map(|g| g.source.len() + g.target.len()).sum()
    }

    pub fn apply(&self, p: &Point) -> Result<Option<Point>> {
        for g in &self.germs {
            if let Some(image) = g.apply(p)? {
                return Ok(Some(image));
            }
        }
        Ok(None)
    }
}

/// `a = P·c·n^r` and `b = P·(c+1)·0^s`: the right end of `I_a` and the left end
/// of `I_b` bound one gap.
fn separated_by_gap(a: &Word, b: &Word, top: u8) -> bool {
    let strip = |w: &Word, letter: u8| {
        let l = w.letters();
        let end = l.iter().rposition(|&x| x != letter).map_or(0, |i| i + 1);
        Word(l[..end].to_vec())
    };
    let a = strip(a, top);
    let b = strip(b, 0);
    match (a.last(), b.last()) {
        (Some(x), Some(y)) if y == x + 1 => a.letters()[..a.len() - 1] == b.letters()[..b.len() - 1],
        _ => false,
    }
}

/// Extends germs of a multi-germ one at a time until no germ can be extended.
///
/// A germ is replaced by its extension `e` when every other germ whose domain
/// meets the domain of `e` is a restriction of `e` (those are absorbed) and the
/// resulting family is still a multi-germ. Each step removes at least two
/// letters, so the number of steps is below the total letter count.
pub fn extend_multigerm(mg: &MultiGerm) -> Extension {
    let mut germs = mg.germs.clone();
    let mut steps = 0;
    'outer: loop {
        for i in 0..germs.len() {
            let Some(e) = germ_extend(&germs[i]) else { continue };
            let mut next = Vec::with_capacity(germs.len());
            let mut blocked = false;
            for (j, g) in germs.iter().enumerate() {
                if j == i {
                    if next.last() != Some(&e) {
                        next.push(e.clone());
                    }
                } else if g.source.comparable(&e.source) || g.target.comparable(&e.target) {
                    if !g.is_restriction_of(&e) {
                        blocked = true;
                        break;
                    }
                    if next.last() != Some(&e) {
                        next.push(e.clone());
                    }
                } else {
                    next.push(g.clone());
                }
            }
            if blocked {
                continue;
            }
            if let Ok(candidate) = MultiGerm::new(mg.arity, next) {
                germs = candidate.germs;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    Extension {
        result: MultiGerm { arity: mg.arity, germs },
        steps,
    }
}
