use std::collections::HashMap;

use super::pattern::{boxes_meet, DyadicBox, PatternTree};
use super::symmetry::CubeSymmetry;
use crate::cantor_model::{Point, PointKind, Word};
use crate::error::{Error, Result};
use crate::{Ifs, Rational};

/// Point of the dust `C^n`: one binary address per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DustAddress {
    pub coords: Vec<Point>,
}

impl DustAddress {
    pub fn new(coords: Vec<Point>) -> Result<DustAddress> {
        for c in &coords {
            if let Point::Periodic(a) = c {
                a.check_alphabet(2)?;
            }
        }
        Ok(DustAddress { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Exact coordinates; every coordinate must be eventually periodic.
    pub fn values(&self, ifs: &Ifs) -> Result<Vec<Rational>> {
        self.coords
            .iter()
            .map(|c| match c {
                Point::Periodic(a) => Ok(ifs.evaluate_address(a)),
                Point::Aperiodic { .. } => Err(Error::Domain("aperiodic coordinate has no finite value".into())),
            })
            .collect()
    }
}

/// Number of eventually periodic coordinates `r(a)`; the germ stabilizer is `ℤ^{r(a)}`.
pub fn stabilizer_rank(a: &DustAddress) -> usize {
    a.coords.iter().filter(|c| c.is_periodic()).count()
}

/// `k` in the tangent-hull type `L_{k,n}`: the number of two-sided coordinates.
pub fn tangent_hull_type(ifs: &Ifs, a: &DustAddress) -> Result<usize> {
    for c in &a.coords {
        if let Point::Periodic(p) = c {
            p.check_alphabet(ifs.arity())?;
        }
    }
    Ok(a.coords
        .iter()
        .filter(|c| ifs.classify_point(c) == PointKind::TwoSided)
        .count())
}

/// `source·u ↦ target·σ(u)` on per-axis words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxPiece {
    pub source: DyadicBox,
    pub target: DyadicBox,
    pub sym: CubeSymmetry,
}

fn complement(w: &Word) -> Word {
    w.complement(1)
}

fn concat(a: &DyadicBox, b: &DyadicBox) -> DyadicBox {
    a.iter().zip(b).map(|(x, y)| x.concat(y)).collect()
}

impl BoxPiece {
    pub fn apply(&self, a: &DustAddress) -> Result<Option<DustAddress>> {
        let mut tails = Vec::with_capacity(a.dim());
        for (c, s) in a.coords.iter().zip(&self.source) {
            match c.strip_prefix(s)? {
                Some(t) => tails.push(t),
                None => return Ok(None),
            }
        }
        let moved = self.sym.act(&tails, |p| p.complement(1));
        Ok(Some(DustAddress {
            coords: moved.iter().zip(&self.target).map(|(p, t)| p.prepend(t)).collect(),
        }))
    }

    pub fn inverse(&self) -> BoxPiece {
        BoxPiece {
            source: self.target.clone(),
            target: self.source.clone(),
            sym: self.sym.inverse(),
        }
    }

    /// The affine map of this piece, extended to the box `region` meeting
    /// its source, if it is still a piece from `region` onto a dyadic box.
    fn extend_to(&self, region: &DyadicBox) -> Option<(DyadicBox, CubeSymmetry)> {
        // B = region ∩ source = source·u = region·v
        let mut u = Vec::with_capacity(region.len());
        let mut v = Vec::with_capacity(region.len());
        for (r, s) in region.iter().zip(&self.source) {
            if let Some(x) = s.strip_prefix(r) {
                u.push(Word::empty());
                v.push(x);
            } else {
                u.push(r.strip_prefix(s)?);
                v.push(Word::empty());
            }
        }
        let image = concat(&self.target, &self.sym.act(&u, complement));
        let sv = self.sym.act(&v, complement);
        let target = image
            .iter()
            .zip(&sv)
            .map(|(w, suffix)| w.strip_suffix(suffix))
            .collect::<Option<DyadicBox>>()?;
        Some((target, self.sym.clone()))
    }
}

/// Pieces of `outer ∘ inner`.
fn compose_box_pieces(outer: &[BoxPiece], inner: &[BoxPiece]) -> Vec<BoxPiece> {
    let mut out = Vec::new();
    for p in inner {
        for q in outer {
            if !boxes_meet(&p.target, &q.source) {
                continue;
            }
            let meet: DyadicBox = p
                .target
                .iter()
                .zip(&q.source)
                .map(|(a, b)| if a.len() >= b.len() { a.clone() } else { b.clone() })
                .collect();
            let x: DyadicBox = meet.iter().zip(&p.target).map(|(m, t)| m.strip_prefix(t).expect("meet")).collect();
            let y: DyadicBox = meet.iter().zip(&q.source).map(|(m, s)| m.strip_prefix(s).expect("meet")).collect();
            out.push(BoxPiece {
                source: concat(&p.source, &p.sym.inverse().act(&x, complement)),
                target: concat(&q.target, &q.sym.act(&y, complement)),
                sym: q.sym.compose(&p.sym),
            });
        }
    }
    out
}

/// Element of `nV^sym`: source and target patterns, a leaf bijection
/// (`perm[i]` is the target leaf receiving source leaf `i`) and one
/// orientation-preserving cube symmetry per source leaf, acting on the
/// source side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NVElement {
    dim: usize,
    source: PatternTree,
    target: PatternTree,
    perm: Vec<usize>,
    syms: Vec<CubeSymmetry>,
}

impl NVElement {
    /// Validates the data as given; see [`NVElement::reduce`] for the canonical form.
    pub fn new(
        dim: usize,
        source: PatternTree,
        target: PatternTree,
        perm: Vec<usize>,
        syms: Vec<CubeSymmetry>,
    ) -> Result<NVElement> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        source.check_dimension(dim)?;
        target.check_dimension(dim)?;
        let m = source.leaf_count();
        if target.leaf_count() != m {
            return Err(Error::LengthMismatch { expected: m, got: target.leaf_count() });
        }
        if perm.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: perm.len() });
        }
        if syms.len() != m {
            return Err(Error::LengthMismatch { expected: m, got: syms.len() });
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("perm {perm:?} is not a bijection")));
            }
        }
        for s in &syms {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch(dim, s.dim()));
            }
            if s.det() != 1 {
                return Err(Error::Invalid(format!("symmetry {s} reverses orientation")));
            }
        }
        Ok(NVElement {
            dim,
            source,
            target,
            perm,
            syms,
        })
    }

    /// Element of plain `nV` (all symmetries trivial).
    pub fn plain(dim: usize, source: PatternTree, target: PatternTree, perm: Vec<usize>) -> Result<NVElement> {
        let m = perm.len();
        NVElement::new(dim, source, target, perm, vec![CubeSymmetry::identity(dim); m])
    }

    pub fn identity(dim: usize) -> NVElement {
        NVElement {
            dim,
            source: PatternTree::Cell,
            target: PatternTree::Cell,
            perm: vec![0],
            syms: vec![CubeSymmetry::identity(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> &PatternTree {
        &self.source
    }

    pub fn target(&self) -> &PatternTree {
        &self.target
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn syms(&self) -> &[CubeSymmetry] {
        &self.syms
    }

    pub fn is_plain(&self) -> bool {
        self.syms.iter().all(CubeSymmetry::is_identity)
    }

    pub fn pieces(&self) -> Vec<BoxPiece> {
        let targets = self.target.leaf_words(self.dim);
        self.source
            .leaf_words(self.dim)
            .into_iter()
            .enumerate()
            .map(|(i, source)| BoxPiece {
                source,
                target: targets[self.perm[i]].clone(),
                sym: self.syms[i].clone(),
            })
            .collect()
    }

    /// Canonical element with the given action. `pieces` must have sources and
    /// targets that each partition the cube.
    pub fn from_pieces(dim: usize, pieces: Vec<BoxPiece>) -> Result<NVElement> {
        let sources: Vec<DyadicBox> = pieces.iter().map(|p| p.source.clone()).collect();
        let targets: Vec<DyadicBox> = pieces.iter().map(|p| p.target.clone()).collect();
        PatternTree::from_boxes(dim, &sources)?;
        PatternTree::from_boxes(dim, &targets)?;
        Ok(canonical(dim, &pieces))
    }

    /// The canonical representative: the source pattern with the fewest
    /// leaves on whose cells the map is a single piece (ties broken toward
    /// lower axes), then the target pattern rebuilt from the image boxes.
    pub fn reduce(&self) -> NVElement {
        canonical(self.dim, &self.pieces())
    }

    /// `self ∘ inner`, in canonical form.
    pub fn compose(&self, inner: &NVElement) -> Result<NVElement> {
        if self.dim != inner.dim {
            return Err(Error::DimensionMismatch(self.dim, inner.dim));
        }
        Ok(canonical(self.dim, &compose_box_pieces(&self.pieces(), &inner.pieces())))
    }

    pub fn inverse(&self) -> NVElement {
        let pieces: Vec<BoxPiece> = self.pieces().iter().map(BoxPiece::inverse).collect();
        canonical(self.dim, &pieces)
    }

    pub fn apply(&self, a: &DustAddress) -> Result<DustAddress> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, a.dim()));
        }
        for p in self.pieces() {
            if let Some(image) = p.apply(a)? {
                return Ok(image);
            }
        }
        Err(Error::NotCovered(format!("no piece covers {a:?}")))
    }

    /// Checks that the factor `C` supports this element: binary, and
    /// palindromic whenever some symmetry reverses an axis.
    pub fn check_factor(&self, ifs: &Ifs) -> Result<()> {
        if ifs.arity() != 2 {
            return Err(Error::ArityMismatch(2, ifs.arity()));
        }
        if self.syms.iter().any(|s| s.signs().iter().any(|&x| x < 0)) && !ifs.is_palindromic() {
            return Err(Error::NotInvertible);
        }
        Ok(())
    }
}

pub fn compose_nv(f: &NVElement, g: &NVElement) -> Result<NVElement> {
    f.compose(g)
}

pub fn apply_nv(f: &NVElement, a: &DustAddress) -> Result<DustAddress> {
    f.apply(a)
}

struct Canon {
    count: usize,
    tree: PatternTree,
    leaves: Vec<BoxPiece>,
}

fn canonical(dim: usize, pieces: &[BoxPiece]) -> NVElement {
    let mut memo = HashMap::new();
    let root = vec![Word::empty(); dim];
    let best = canon_region(&root, pieces, &mut memo);
    let (tree, leaves) = (best.tree.clone(), best.leaves.clone());
    let targets: Vec<DyadicBox> = leaves.iter().map(|p| p.target.clone()).collect();
    match PatternTree::from_boxes(dim, &targets) {
        Ok(target) => assemble(dim, tree, target, &leaves),
        Err(_) => grid_fallback(dim, &leaves),
    }
}

fn assemble(dim: usize, source: PatternTree, target: PatternTree, leaves: &[BoxPiece]) -> NVElement {
    let order = target.leaf_words(dim);
    let index: HashMap<&DyadicBox, usize> = order.iter().enumerate().map(|(i, b)| (b, i)).collect();
    NVElement {
        dim,
        source,
        target,
        perm: leaves.iter().map(|p| index[&p.target]).collect(),
        syms: leaves.iter().map(|p| p.sym.clone()).collect(),
    }
}

/// Image boxes that do not form a hierarchical pattern (possible from
/// dimension 3 on): refine every image to the finest per-axis depth.
fn grid_fallback(dim: usize, leaves: &[BoxPiece]) -> NVElement {
    let depth: Vec<usize> = (0..dim)
        .map(|a| leaves.iter().map(|p| p.target[a].len()).max().unwrap_or(0))
        .collect();
    let mut refined = Vec::new();
    for p in leaves {
        let mut suffixes: Vec<DyadicBox> = vec![vec![Word::empty(); dim]];
        for a in 0..dim {
            let extra = depth[a] - p.target[a].len();
            let words = Word::all_of_length(2, extra);
            suffixes = suffixes
                .into_iter()
                .flat_map(|s| {
                    words.iter().map(move |w| {
                        let mut t = s.clone();
                        t[a] = w.clone();
                        t
                    })
                })
                .collect();
        }
        for z in suffixes {
            refined.push(BoxPiece {
                source: concat(&p.source, &p.sym.inverse().act(&z, complement)),
                target: concat(&p.target, &z),
                sym: p.sym.clone(),
            });
        }
    }
    let sources: Vec<DyadicBox> = refined.iter().map(|p| p.source.clone()).collect();
    let targets: Vec<DyadicBox> = refined.iter().map(|p| p.target.clone()).collect();
    let source = PatternTree::from_boxes(dim, &sources).expect("refinement of a pattern is a pattern");
    let target = PatternTree::from_boxes(dim, &targets).expect("uniform grid is a pattern");
    let order = source.leaf_words(dim);
    refined.sort_by_key(|p| order.iter().position(|b| *b == p.source).expect("leaf present"));
    assemble(dim, source, target, &refined)
}

fn canon_region<'m>(
    region: &DyadicBox,
    pieces: &[BoxPiece],
    memo: &'m mut HashMap<DyadicBox, Canon>,
) -> &'m Canon {
    if !memo.contains_key(region) {
        let value = compute_region(region, pieces, memo);
        memo.insert(region.clone(), value);
    }
    &memo[region]
}

fn compute_region(region: &DyadicBox, pieces: &[BoxPiece], memo: &mut HashMap<DyadicBox, Canon>) -> Canon {
    let meeting: Vec<&BoxPiece> = pieces.iter().filter(|p| boxes_meet(&p.source, region)).collect();
    if let Some(piece) = single_piece(region, &meeting) {
        return Canon {
            count: 1,
            tree: PatternTree::Cell,
            leaves: vec![piece],
        };
    }
    let mut best: Option<(usize, usize)> = None;
    for axis in 0..region.len() {
        if !meeting.iter().any(|p| p.source[axis].len() > region[axis].len()) {
            continue;
        }
        let halves = [0u8, 1].map(|bit| {
            let mut r = region.clone();
            r[axis].push(bit);
            r
        });
        let count = canon_region(&halves[0], pieces, memo).count + canon_region(&halves[1], pieces, memo).count;
        if best.is_none_or(|(c, _)| count < c) {
            best = Some((count, axis));
        }
    }
    let (count, axis) = best.expect("a region meeting several pieces can be cut");
    let mut parts = [0u8, 1].map(|bit| {
        let mut r = region.clone();
        r[axis].push(bit);
        let c = &memo[&r];
        (c.tree.clone(), c.leaves.clone())
    });
    let (high_tree, high_leaves) = std::mem::replace(&mut parts[1], (PatternTree::Cell, Vec::new()));
    let (low_tree, mut leaves) = std::mem::replace(&mut parts[0], (PatternTree::Cell, Vec::new()));
    leaves.extend(high_leaves);
    Canon {
        count,
        tree: PatternTree::cut(axis, low_tree, high_tree),
        leaves,
    }
}

/// The single piece `region → box` agreeing with every piece meeting `region`, if any.
fn single_piece(region: &DyadicBox, meeting: &[&BoxPiece]) -> Option<BoxPiece> {
    let (target, sym) = meeting.first()?.extend_to(region)?;
    for p in &meeting[1..] {
        if p.extend_to(region)? != (target.clone(), sym.clone()) {
            return None;
        }
    }
    Some(BoxPiece {
        source: region.clone(),
        target,
        sym,
    })
}
