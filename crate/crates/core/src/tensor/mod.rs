//! Evaluation of diagrams as tensors, invariant-dimension oracles, and the
//! checks comparing the two.

mod checks;
mod form;
mod oracle;

pub use checks::{
    ca_ideal_kernel_check, fft_check, gl_check, sft_check, CaIdealReport, FftReport,
    GlReport, GradeComparison, SftReport,
};
pub use form::{EvalFunctor, FormKind, OrientedEvalFunctor, TensorForm};
pub use oracle::{derivation_power, invariant_dimension, is_equivariant, lie_basis, reflections, Group};

use crate::error::{Error, Result};

/// Largest matrix (in entries) or coordinate space the crate will build.
/// Read from `BRAUERKIT_BUDGET`, default `2^24`.
pub fn budget() -> usize {
    std::env::var("BRAUERKIT_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(1 << 24)
}

pub fn check_budget(size: usize) -> Result<()> {
    let budget = budget();
    if size > budget {
        Err(Error::Budget { size, budget })
    } else {
        Ok(())
    }
}
