//! Brin's `nV` and its symmetry extension `nV^sym`, acting on the dust `C^n`
//! through pairs of numbered dyadic patterns.

mod element;
mod pattern;
mod symmetry;

pub use element::{apply_nv, compose_nv, stabilizer_rank, tangent_hull_type, BoxPiece, DustAddress, NVElement};
pub use pattern::{box_contains, box_measure, boxes_meet, refine_to_match, DyadicBox, PatternTree, Refinement};
pub use symmetry::CubeSymmetry;
