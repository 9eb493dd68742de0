//! Tree-pair symbols for the Thompson groups `F_{n+1} ⊂ T_{n+1} ⊂ V_{n+1}`
//! and the orientation extension `V±_{n+1}`.
//!
//! Composition is functional: `a.compose(b)` acts as `a` after `b`.

mod element;
mod symbol;
mod tree;

pub use element::{reflection, rotation, transposition, x0, x0_nary, x1, x2, x_n, GroupElement};
pub use symbol::{apply_pieces, compose_pieces, Piece, Symbol, Variant};
pub use tree::Tree;
