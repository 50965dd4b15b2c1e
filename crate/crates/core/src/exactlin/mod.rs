//! Exact arithmetic: rationals, polynomials in `t`, formal linear
//! combinations, dense matrices and subspaces in reduced echelon form.

pub mod lincomb;
pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use lincomb::{specialize, LinComb};
pub use matrix::ExactMatrix;
pub use scalar::{int, rat, Poly, Rational, Scalar};
pub use subspace::{dense_from_sparse, span_closure, sparse_from_dense, SparseVec, Subspace};
