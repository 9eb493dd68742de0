use std::fmt;

use crate::cantor_model::Word;
use crate::error::{Error, Result};
use crate::Rational;

/// Product of one dyadic interval per axis, named by binary words.
pub type DyadicBox = Vec<Word>;

/// Numbered dyadic pattern: a hierarchy of halvings of the unit `n`-cube.
/// Axes are 0-based here and 1-based in the text format.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTree {
    Cell,
    Cut {
        axis: usize,
        low: Box<PatternTree>,
        high: Box<PatternTree>,
    },
}

impl PatternTree {
    pub fn cut(axis: usize, low: PatternTree, high: PatternTree) -> PatternTree {
        PatternTree::Cut {
            axis,
            low: Box::new(low),
            high: Box::new(high),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            PatternTree::Cell => 1,
            PatternTree::Cut { low, high, .. } => low.leaf_count() + high.leaf_count(),
        }
    }

    pub fn cut_count(&self) -> usize {
        self.leaf_count() - 1
    }

    pub fn check_dimension(&self, dim: usize) -> Result<()> {
        match self {
            PatternTree::Cell => Ok(()),
            PatternTree::Cut { axis, low, high } => {
                if *axis >= dim {
                    return Err(Error::IndexOutOfRange { index: *axis, size: dim });
                }
                low.check_dimension(dim)?;
                high.check_dimension(dim)
            }
        }
    }

    /// Per-axis words of each leaf box, low halves before high halves.
    pub fn leaf_words(&self, dim: usize) -> Vec<DyadicBox> {
        fn go(t: &PatternTree, cur: &mut DyadicBox, out: &mut Vec<DyadicBox>) {
            match t {
                PatternTree::Cell => out.push(cur.clone()),
                PatternTree::Cut { axis, low, high } => {
                    for (bit, child) in [(0u8, low), (1u8, high)] {
                        cur[*axis].push(bit);
                        go(child, cur, out);
                        cur[*axis].0.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut vec![Word::empty(); dim], &mut out);
        out
    }

    /// Rebuilds a pattern from its leaf boxes, cutting each region along the
    /// first axis that separates all boxes inside it.
    pub fn from_boxes(dim: usize, boxes: &[DyadicBox]) -> Result<PatternTree> {
        fn go(region: &mut DyadicBox, boxes: &[&DyadicBox]) -> Result<PatternTree> {
            if boxes.len() == 1 && *boxes[0] == *region {
                return Ok(PatternTree::Cell);
            }
            let axis = (0..region.len())
                .find(|&a| boxes.iter().all(|b| b[a].len() > region[a].len()))
                .ok_or_else(|| Error::Invalid("boxes do not form a hierarchical dyadic pattern".into()))?;
            let depth = region[axis].len();
            let mut halves = Vec::with_capacity(2);
            for bit in [0u8, 1] {
                let sub: Vec<&DyadicBox> = boxes.iter().copied().filter(|b| b[axis].letters()[depth] == bit).collect();
                if sub.is_empty() {
                    return Err(Error::Invalid("boxes do not cover the cube".into()));
                }
                region[axis].push(bit);
                let child = go(region, &sub);
                region[axis].0.pop();
                halves.push(child?);
            }
            let high = halves.pop().expect("two halves");
            let low = halves.pop().expect("two halves");
            Ok(PatternTree::cut(axis, low, high))
        }
        for b in boxes {
            if b.len() != dim {
                return Err(Error::DimensionMismatch(dim, b.len()));
            }
            for w in b {
                w.check_alphabet(2)?;
            }
        }
        if boxes.is_empty() {
            return Err(Error::Invalid("empty pattern".into()));
        }
        let refs: Vec<&DyadicBox> = boxes.iter().collect();
        go(&mut vec![Word::empty(); dim], &refs)
    }

    /// Restriction of the pattern to a dyadic box `region`: cuts that miss
    /// the region are skipped.
    pub fn restrict(&self, region: &DyadicBox) -> PatternTree {
        fn go(t: &PatternTree, region: &DyadicBox, cell: &mut DyadicBox) -> PatternTree {
            match t {
                PatternTree::Cell => PatternTree::Cell,
                PatternTree::Cut { axis, low, high } => {
                    let depth = cell[*axis].len();
                    if region[*axis].len() > depth {
                        let bit = region[*axis].letters()[depth];
                        cell[*axis].push(bit);
                        let r = go(if bit == 0 { low } else { high }, region, cell);
                        cell[*axis].0.pop();
                        r
                    } else {
                        cell[*axis].push(0);
                        let l = go(low, region, cell);
                        cell[*axis].0.pop();
                        cell[*axis].push(1);
                        let h = go(high, region, cell);
                        cell[*axis].0.pop();
                        PatternTree::cut(*axis, l, h)
                    }
                }
            }
        }
        go(self, region, &mut vec![Word::empty(); region.len()])
    }
}

/// Lebesgue measure of a dyadic box.
pub fn box_measure(b: &DyadicBox) -> Rational {
    let depth: usize = b.iter().map(Word::len).sum();
    Rational::new(1.into(), num_bigint::BigInt::from(1) << depth)
}

/// Whether box `inner` lies inside box `outer`.
pub fn box_contains(outer: &DyadicBox, inner: &DyadicBox) -> bool {
    outer.iter().zip(inner).all(|(o, i)| o.is_prefix_of(i))
}

/// Whether two boxes overlap in a set of positive measure.
pub fn boxes_meet(a: &DyadicBox, b: &DyadicBox) -> bool {
    a.iter().zip(b).all(|(x, y)| x.comparable(y))
}

/// Common refinement of two patterns with, for each leaf of either input,
/// the indices of the refinement leaves it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub tree: PatternTree,
    pub from_first: Vec<Vec<usize>>,
    pub from_second: Vec<Vec<usize>>,
}

/// Superposes `p2` onto `p1`: every leaf of `p1` is subdivided by the cuts
/// of `p2` that cross it.
pub fn refine_to_match(dim: usize, p1: &PatternTree, p2: &PatternTree) -> Result<Refinement> {
    p1.check_dimension(dim)?;
    p2.check_dimension(dim)?;
    fn graft(t: &PatternTree, region: &mut DyadicBox, p2: &PatternTree) -> PatternTree {
        match t {
            PatternTree::Cell => p2.restrict(region),
            PatternTree::Cut { axis, low, high } => {
                region[*axis].push(0);
                let l = graft(low, region, p2);
                region[*axis].0.pop();
                region[*axis].push(1);
                let h = graft(high, region, p2);
                region[*axis].0.pop();
                PatternTree::cut(*axis, l, h)
            }
        }
    }
    let tree = graft(p1, &mut vec![Word::empty(); dim], p2);
    let leaves = tree.leaf_words(dim);
    let embed = |p: &PatternTree| -> Vec<Vec<usize>> {
        p.leaf_words(dim)
            .iter()
            .map(|outer| (0..leaves.len()).filter(|&i| box_contains(outer, &leaves[i])).collect())
            .collect()
    };
    Ok(Refinement {
        from_first: embed(p1),
        from_second: embed(p2),
        tree,
    })
}

impl fmt::Display for PatternTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTree::Cell => write!(f, "cell"),
            PatternTree::Cut { axis, low, high } => write!(f, "[{} {} {}]", axis + 1, low, high),
        }
    }
}
