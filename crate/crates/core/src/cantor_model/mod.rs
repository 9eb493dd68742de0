//! Affine IFSs on `[0,1]`, symbolic addresses and the combinatorics of
//! standard intervals and gaps.

mod dimension;
mod genericity;
mod ifs;
mod intervals;
mod word;

pub use dimension::{box_count_estimate, hausdorff_dimension_central, Dimension};
pub use genericity::{check_genericity, Clause, GenericityWitness, Verdict};
pub use ifs::{validate_ifs, AffineIfs, AffineMap, PointKind};
pub use intervals::{Gap, StandardInterval};
pub use word::{Address, Point, Word};
