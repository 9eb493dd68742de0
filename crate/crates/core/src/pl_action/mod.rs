//! Thompson-like groups acting on a self-similar Cantor set by finitely many
//! affine pieces between standard intervals, together with standard germs and
//! point stabilizers.

mod germ;
mod map;
mod stabilizer;

pub use germ::{extend_multigerm, germ_compose, germ_extend, germ_maximal, Extension, MultiGerm, StandardGerm};
pub use map::{compose_pl, inverse_pl, Model, PLMap, PLPiece};
pub use stabilizer::{left_point_germs, stabilizer, StabilizerDescriptor, StabilizerGenerator, StabilizerKind};
