//! Homology and rational cohomology of the ordered configuration space of two
//! points on a finite graph.
//!
//! The pipeline builds the discretized configuration space `D(G,2)` and the
//! pair `(N, dN)` around the diagonal as integer cell complexes, evaluates the
//! intersection form `H_1(G) (x) H_1(G) -> H_2(N, dN)`, and for planar graphs
//! reads off the torus basis of `H_2`, the Betti numbers and cup products.
//!
//! Matrix algebra is generic over [`Scalar`]; the topology layers use
//! arbitrary precision integers through [`IntMatrix`].

pub mod chain_algebra;
pub mod corpus;
pub mod cup_product;
pub mod discrete_config;
pub mod error;
pub mod graph;
pub mod intersection_form;
pub mod io;
pub mod matrix;
pub mod planar;
pub mod relative_complex;
pub mod scalar;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use chain_algebra::{
    chain_homology, cokernel_invariants, invariant_factors, kernel_basis, rank,
    smith_normal_form, HomologySummary, SmithDecomposition,
};
pub use error::{Error, Result};
pub use graph::{
    fundamental_cycle_basis, subdivide, validate, valence, EdgeChain, Graph, GraphClassification,
};
pub use matrix::Matrix;
pub use scalar::Scalar;

/// Exact integer matrices used throughout the topology layers.
pub type IntMatrix = Matrix<BigInt>;
/// Machine-word matrices, for callers that know their entries stay small.
pub type SmallMatrix = Matrix<i64>;
pub type Rational = BigRational;
