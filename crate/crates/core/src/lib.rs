//! Exact computation in Thompson-like groups realized as piecewise-affine
//! transformations of self-similar Cantor sets.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact_num`]: rational scalars, prime factorization, the multiplicative
//!   scale group `Λ_k = ∏ λ_i^{k_i}` and its relation lattice.
//! * [`cantor_model`]: affine iterated function systems on `[0,1]`, symbolic
//!   addresses, standard intervals, gaps, sparseness and genericity.
//! * [`tree_calculus`]: tree-pair symbols for `F`, `T`, `V` and `V±`.
//! * [`pl_action`]: the same elements as piecewise-affine maps of a Cantor
//!   set, stabilizers and standard germs.
//! * [`nv_patterns`]: Brin's `nV` and its symmetry extension acting on
//!   products of central Cantor sets.
//!
//! The geometric layer (`AffineIfs`, standard intervals, gaps) is generic over
//! a [`Scalar`]; the decision procedures work over exact [`Rational`]s.

pub mod cantor_model;
pub mod error;
pub mod exact_num;
pub mod format;
pub mod nv_patterns;
pub mod pl_action;
pub mod svg;
pub mod tree_calculus;

pub use error::{Error, Result};
pub use exact_num::{PrimeExponents, Scalar, ScaleElement};

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Exact IFS: the representation every decision procedure works with.
pub type Ifs = cantor_model::AffineIfs<Rational>;
/// Floating-point IFS, used for rendering and dimension estimates.
pub type IfsF64 = cantor_model::AffineIfs<f64>;
/// Single-precision IFS.
pub type IfsF32 = cantor_model::AffineIfs<f32>;

pub type Interval = cantor_model::StandardInterval<Rational>;
pub type IntervalF64 = cantor_model::StandardInterval<f64>;
pub type Gap = cantor_model::Gap<Rational>;
pub type GapF64 = cantor_model::Gap<f64>;
