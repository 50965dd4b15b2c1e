//! Brauer diagrams, their linear and coloured variants, and the tensor
//! representations they act on.

pub mod diagram;
pub mod error;
pub mod exactlin;
pub mod expr;
pub mod linear;
pub mod laws;
pub mod palette;

pub use diagram::{BrauerDiagram, Permutation, Point};
pub use error::{Error, Result};
pub mod tensor;
pub mod wiring;
