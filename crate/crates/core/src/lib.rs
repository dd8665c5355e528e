//! Exact circuit-partition invariants of Eulerian digraphs.
//!
//! The crate covers
//! - Eulerian trails, circuits and cycle sequences ([`trails`]),
//! - the semilattice of Eulerian edge partitions, Möbius inversion and the
//!   Martin polynomial ([`lattice`], [`poset`], [`partition`]),
//! - bond lattices, NBC bases and unique-sink orientations ([`bond`]),
//! - heaps of pieces and full pyramids ([`heaps`]),
//! - rank-2 Harary-Sachs weights and characteristic polynomials ([`harary`]).
//!
//! All counting is exact. Polynomials are generic over a [`scalar::Scalar`];
//! the aliases below fix the instantiations used throughout.

pub mod bond;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod harary;
pub mod heaps;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod poset;
pub mod scalar;
pub mod trails;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{ApproxClass, Digraph, Labels, Multigraph, SimpleGraph};
pub use partition::SetPartition;
pub use poly::Polynomial;

/// Exact integer scalar.
pub type Integer = num_bigint::BigInt;
/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Polynomial with exact integer coefficients.
pub type IntPolynomial = Polynomial<Integer>;
/// Polynomial with exact rational coefficients.
pub type RatPolynomial = Polynomial<Rational>;
