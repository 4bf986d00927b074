//! Exact-arithmetic toolkit for subdirect products of free groups.
//!
//! The crate is organized around five pieces of machinery:
//!
//! - [`words`]: freely reduced words over finite alphabets, with products,
//!   inverses, left-normed commutators and substitution homomorphisms.
//! - [`magnus`]: truncated power series in two non-commuting symbols with
//!   exact rational (or rational-polynomial) coefficients, the Magnus
//!   embeddings of the rank-2 and rank-4 free groups, and lower central
//!   series membership through them.
//! - [`sec`]: the subgroups of a finite power of the rank-2 free group
//!   generated by the evaluation tuples of four distinguished elements
//!   together with coordinate-planted normal generators, plus intersection
//!   certificates for their lower-central intersections.
//! - [`lattice`]: arbitrary-precision integer matrices, Smith normal form,
//!   sublattice indices, and the finite-index projection tests built on them.
//! - [`fibre`]: mechanical assembly of fibre-product presentations from
//!   structured presentations of the two factors, and the audit that every
//!   emitted relator dies in the product.
//!
//! All arithmetic is exact; scalar-generic types are instantiated at the
//! crate root as [`Rat`], [`Int`], [`TPoly`], [`RatSeries`], [`PolySeries`]
//! and [`IntMatrix`].

pub mod fibre;
pub mod lattice;
pub mod magnus;
mod parse;
pub mod poly;
pub mod sec;
pub mod series;
pub mod words;

pub use parse::parse_word_inferred;

/// Exact rational scalar used throughout.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer scalar used by the lattice machinery.
pub type Int = num_bigint::BigInt;
/// Polynomial in `t` with exact rational coefficients.
pub type TPoly = poly::Poly<Rat>;
/// Truncated two-symbol power series with rational coefficients.
pub type RatSeries = series::Series<Rat>;
/// Truncated two-symbol power series with `TPoly` coefficients.
pub type PolySeries = series::Series<TPoly>;
/// Integer matrix with arbitrary-precision entries.
pub type IntMatrix = lattice::Matrix<Int>;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown letter index {index} for alphabet of size {size}")]
    UnknownLetter { index: usize, size: usize },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("series is not invertible: constant term must be 1")]
    NotInvertible,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not an identity sequence: {0}")]
    NotIdentity(String),
    #[error("letter elimination exceeded its step bound; identity-sequence invariant broken")]
    RewriteBound,
    #[error("lower-central intersection contract violated: {0}")]
    IntersectionViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
