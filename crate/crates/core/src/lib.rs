//! Spanning trees with few leaves and branch vertices in `K_{1,4}`-free
//! graphs.
//!
//! * [`graph`]: simple graphs, edge-list and graph6 I/O, `α`, `σ_p`, star
//!   freeness.
//! * [`tree`]: spanning trees with path, leg and stem queries.
//! * [`engine`]: the potential-driven local search and its certificates.
//! * [`oracle`]: exact minima by enumeration, Kirchhoff counts and sweeps.
//! * [`generators`]: extremal families and seeded random graphs.

pub mod engine;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod tree;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use engine::{improve, improve_from, initial_tree, Certificate, EngineError, Outcome, Potential};
pub use graph::{Graph, GraphError, SigmaValue};
pub use oracle::kirchhoff::Matrix;
pub use tree::{Edge, SpanningTree, TreeError};

/// Laplacian over machine integers; exact for tree counts below `2^127`.
pub type LaplacianI128 = Matrix<i128>;
/// Laplacian over arbitrary-precision integers.
pub type LaplacianBig = Matrix<BigInt>;
/// Laplacian over arbitrary-precision rationals.
pub type LaplacianRational = Matrix<BigRational>;

/// Spanning-tree count with `i128` arithmetic.
pub fn tree_count_i128(g: &Graph) -> i128 {
    oracle::kirchhoff::spanning_tree_count(g)
}

/// Spanning-tree count with arbitrary precision.
pub fn tree_count_big(g: &Graph) -> BigInt {
    oracle::kirchhoff::spanning_tree_count(g)
}
