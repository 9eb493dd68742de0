//! Exact arithmetic kernel: scalars, prime factorization, the scale group and
//! integer relation lattices between positive rationals.

mod factor;
mod lattice;
mod scalar;
mod scale;

pub use factor::{factorize, PrimeExponents};
pub use lattice::{hermite_rows, in_subgroup, relation_lattice};
pub use scalar::{parse_rational, Scalar};
pub use scale::{scale_value, ScaleElement, ScaleGroup};
