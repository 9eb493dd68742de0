use super::symbol::{Symbol, Variant};
use super::tree::Tree;
use crate::cantor_model::Point;
use crate::error::{Error, Result};

/// Reduced symbol tagged with the group it is considered in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    symbol: Symbol,
    variant: Variant,
}

impl GroupElement {
    /// Reduces `symbol`; fails if it does not belong to `variant`.
    pub fn new(symbol: Symbol, variant: Variant) -> Result<GroupElement> {
        let symbol = symbol.reduce();
        let class = symbol.class();
        if class > variant {
            return Err(Error::VariantMismatch(format!("symbol lies in {class}, not in {variant}")));
        }
        Ok(GroupElement { symbol, variant })
    }

    /// Element in the smallest group containing `symbol`.
    pub fn from_symbol(symbol: Symbol) -> GroupElement {
        let symbol = symbol.reduce();
        let variant = symbol.class();
        GroupElement { symbol, variant }
    }

    pub fn identity(arity: usize, variant: Variant) -> GroupElement {
        GroupElement {
            symbol: Symbol::identity(arity),
            variant,
        }
    }

    pub fn symbol(&self) -> &Symbol {
        &self.symbol
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn arity(&self) -> usize {
        self.symbol.arity()
    }

    pub fn is_identity(&self) -> bool {
        self.symbol == Symbol::identity(self.arity())
    }

    /// Same element viewed in a larger group.
    pub fn widen(&self, variant: Variant) -> Result<GroupElement> {
        GroupElement::new(self.symbol.clone(), variant)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.variant != other.variant {
            return Err(Error::VariantMismatch(format!("{} vs {}", self.variant, other.variant)));
        }
        Ok(GroupElement {
            symbol: self.symbol.compose(&other.symbol)?,
            variant: self.variant,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            symbol: self.symbol.inverse(),
            variant: self.variant,
        }
    }

    pub fn classify(&self) -> Variant {
        self.symbol.class()
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        self.symbol.apply(p)
    }

    /// `(log₂ slope at 0, log₂ slope at 1)` of a binary `F` element.
    pub fn abelianization_f(&self) -> Result<(i64, i64)> {
        if self.arity() != 2 {
            return Err(Error::ArityMismatch(2, self.arity()));
        }
        if self.classify() != Variant::F {
            return Err(Error::VariantMismatch(format!(
                "abelianization needs an F element, got {}",
                self.classify()
            )));
        }
        let src = self.symbol.source().leaf_words();
        let tgt = self.symbol.target().leaf_words();
        let depth = |w: &[crate::cantor_model::Word], i: usize| w[i].len() as i64;
        let last = src.len() - 1;
        Ok((depth(&src, 0) - depth(&tgt, 0), depth(&src, last) - depth(&tgt, last)))
    }
}

fn right_comb(spine: usize, end: Tree) -> Tree {
    (0..spine).fold(end, |acc, _| Tree::Node(vec![Tree::Leaf, acc]))
}

fn f_element(source: Tree, target: Tree) -> GroupElement {
    let m = source.leaf_count();
    let arity = source.arity().ok().flatten().unwrap_or(2);
    let symbol = Symbol::new(arity, target, source, (0..m).collect(), vec![false; m]).expect("generator symbol");
    GroupElement::new(symbol, Variant::F).expect("generator lies in F")
}

/// Binary generator `x_k`: identity on `[0, 1 − 2^{−k}]`, a rescaled `x_0` after.
pub fn x_n(k: usize) -> GroupElement {
    let src = right_comb(k, "(.(..))".parse().expect("tree literal"));
    let tgt = right_comb(k, "((..).)".parse().expect("tree literal"));
    f_element(src, tgt)
}

pub fn x0() -> GroupElement {
    x_n(0)
}

pub fn x1() -> GroupElement {
    x_n(1)
}

pub fn x2() -> GroupElement {
    x_n(2)
}

/// `x_0` of `F_{n+1}`: source has a caret under its last leaf, target under its first.
pub fn x0_nary(arity: usize) -> GroupElement {
    let mut src = vec![Tree::Leaf; arity];
    src[arity - 1] = Tree::caret(arity);
    let mut tgt = vec![Tree::Leaf; arity];
    tgt[0] = Tree::caret(arity);
    f_element(Tree::Node(src), Tree::Node(tgt))
}

/// Cyclic rotation of the first-generation pieces: leaf `i` ↦ leaf `i + 1`.
pub fn rotation(arity: usize) -> GroupElement {
    let symbol = Symbol::new(
        arity,
        Tree::caret(arity),
        Tree::caret(arity),
        (0..arity).map(|i| (i + 1) % arity).collect(),
        vec![false; arity],
    )
    .expect("rotation symbol");
    GroupElement::new(symbol, Variant::T).expect("rotation lies in T")
}

/// Swaps the two leftmost second-generation pieces.
pub fn transposition(arity: usize) -> GroupElement {
    let mut children = vec![Tree::Leaf; arity];
    children[0] = Tree::caret(arity);
    let tree = Tree::Node(children);
    let m = tree.leaf_count();
    let mut perm: Vec<usize> = (0..m).collect();
    perm.swap(0, 1);
    let symbol = Symbol::new(arity, tree.clone(), tree, perm, vec![false; m]).expect("transposition symbol");
    GroupElement::new(symbol, Variant::V).expect("transposition lies in V")
}

/// Global reflection `x ↦ 1 − x`.
pub fn reflection(arity: usize) -> GroupElement {
    let symbol = Symbol::new(arity, Tree::Leaf, Tree::Leaf, vec![0], vec![true]).expect("reflection symbol");
    GroupElement::new(symbol, Variant::Vpm).expect("reflection lies in V±")
}
