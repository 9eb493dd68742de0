//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_cantor::cantor_model::{Address, Point, Word};
use thompson_cantor::nv_patterns::{CubeSymmetry, DustAddress, NVElement, PatternTree};
use thompson_cantor::pl_action::{MultiGerm, StandardGerm};
use thompson_cantor::tree_calculus::{GroupElement, Symbol, Tree, Variant};

pub const SEED_VAR: &str = "THOMPSON_CANTOR_SEED";

/// Seed from `THOMPSON_CANTOR_SEED`, or a fixed default; mixed with a per-test salt.
pub fn rng(salt: u64) -> ChaCha8Rng {
    let base = std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0x5eed_cafe);
    ChaCha8Rng::seed_from_u64(base ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_word(rng: &mut impl Rng, arity: usize, len: usize) -> Word {
    Word((0..len).map(|_| rng.gen_range(0..arity as u8)).collect())
}

pub fn random_address(rng: &mut impl Rng, arity: usize) -> Address {
    let pre_len = rng.gen_range(0..5);
    let per_len = rng.gen_range(1..4);
    let pre = random_word(rng, arity, pre_len);
    let per = random_word(rng, arity, per_len);
    Address::new(pre, per).expect("nonempty period")
}

pub fn random_tree(rng: &mut impl Rng, arity: usize, carets: usize) -> Tree {
    let mut t = Tree::Leaf;
    for _ in 0..carets {
        let i = rng.gen_range(0..t.leaf_count());
        t = t.expand_leaf(i, arity).expect("leaf in range");
    }
    t
}

pub fn random_symbol(rng: &mut impl Rng, variant: Variant, arity: usize, max_carets: usize) -> Symbol {
    let carets = rng.gen_range(0..=max_carets);
    let target = random_tree(rng, arity, carets);
    let source = random_tree(rng, arity, carets);
    let m = source.leaf_count();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut flips = vec![false; m];
    match variant {
        Variant::F => {}
        Variant::T => {
            let r = rng.gen_range(0..m);
            perm = (0..m).map(|i| (i + r) % m).collect();
        }
        Variant::V => perm.shuffle(rng),
        Variant::Vpm => {
            perm.shuffle(rng);
            flips = (0..m).map(|_| rng.gen_bool(0.5)).collect();
        }
    }
    Symbol::new(arity, target, source, perm, flips).expect("well-formed random symbol")
}

pub fn random_element(rng: &mut impl Rng, variant: Variant, arity: usize, max_carets: usize) -> GroupElement {
    GroupElement::new(random_symbol(rng, variant, arity, max_carets), variant).expect("class within variant")
}

fn expand_cell(p: &PatternTree, target: &mut usize, axis: usize) -> PatternTree {
    match p {
        PatternTree::Cell => {
            if *target == 0 {
                *target = usize::MAX;
                PatternTree::cut(axis, PatternTree::Cell, PatternTree::Cell)
            } else {
                *target -= 1;
                PatternTree::Cell
            }
        }
        PatternTree::Cut { axis: a, low, high } => {
            let low = expand_cell(low, target, axis);
            let high = expand_cell(high, target, axis);
            PatternTree::cut(*a, low, high)
        }
    }
}

pub fn random_pattern(rng: &mut impl Rng, dim: usize, cuts: usize) -> PatternTree {
    let mut p = PatternTree::Cell;
    for _ in 0..cuts {
        let mut i = rng.gen_range(0..p.leaf_count());
        let axis = rng.gen_range(0..dim);
        p = expand_cell(&p, &mut i, axis);
    }
    p
}

pub fn random_nv(rng: &mut impl Rng, dim: usize, max_cuts: usize, with_symmetry: bool) -> NVElement {
    let cuts = rng.gen_range(0..=max_cuts);
    let source = random_pattern(rng, dim, cuts);
    let target = random_pattern(rng, dim, cuts);
    let m = source.leaf_count();
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let group = CubeSymmetry::all(dim);
    let syms = (0..m)
        .map(|_| {
            if with_symmetry {
                group.choose(rng).expect("nonempty group").clone()
            } else {
                CubeSymmetry::identity(dim)
            }
        })
        .collect();
    NVElement::new(dim, source, target, perm, syms).expect("well-formed random element")
}

pub fn random_dust(rng: &mut impl Rng, dim: usize) -> DustAddress {
    DustAddress::new((0..dim).map(|_| Point::Periodic(random_address(rng, 2))).collect()).expect("nonempty")
}

/// Germs `φ_{I·l / J·l'}` over a contiguous run of leaves `l` of one random
/// tree and `l'` of another with the same leaf count.
pub fn random_multigerm(rng: &mut impl Rng, arity: usize) -> MultiGerm {
    loop {
        let i_len = rng.gen_range(0..3);
        let j_len = rng.gen_range(0..3);
        let i = random_word(rng, arity, i_len);
        let j = random_word(rng, arity, j_len);
        let carets = rng.gen_range(1..4);
        let src = random_tree(rng, arity, carets).leaf_words();
        let tgt = if rng.gen_bool(0.5) {
            src.clone()
        } else {
            random_tree(rng, arity, carets).leaf_words()
        };
        let start = rng.gen_range(0..src.len());
        let end = rng.gen_range(start + 1..=src.len());
        let germs = (start..end)
            .map(|k| StandardGerm::new(i.concat(&src[k]), j.concat(&tgt[k])))
            .collect();
        if let Ok(mg) = MultiGerm::new(arity, germs) {
            return mg;
        }
    }
}

/// All endpoint addresses `w·0^∞`, `w·top^∞` with `|w| = generation`.
pub fn endpoint_addresses(arity: usize, generation: usize) -> Vec<Point> {
    let top = (arity - 1) as u8;
    Word::all_of_length(arity, generation)
        .iter()
        .flat_map(|w| [Address::with_constant_tail(w, 0), Address::with_constant_tail(w, top)])
        .map(Point::Periodic)
        .collect()
}
