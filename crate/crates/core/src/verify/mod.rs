//! Brute-force oracles: exact universality constants, classical entropy and
//! distance measures, and exhaustive leftover-hash checks at small sizes.

mod delta;
mod leftover;
mod metrics;
mod source;

pub use delta::{measure_delta_dual, measure_delta_universal, DeltaMeasurement, MAX_DELTA_N};
pub use leftover::{empirical_leftover, LeftoverMode, LeftoverReport, MAX_EXHAUSTIVE_N};
pub use metrics::{collision_bound_holds, d1_prime, d2, h_min, h_min_cond, JointDistribution};
pub use source::{affine_source, flat_source, SeedDistribution, Source};

use crate::bitlinalg::{BitMatrix, BitVector};
use crate::families::{evaluate, FamilyError, FamilySpec};
use crate::security::SecurityError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("{what} is {found}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        found: usize,
        limit: usize,
    },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("Q_E vanishes at e = {0} where P_E does not")]
    SupportViolation(usize),
    #[error("seed {0} gives a map that is not surjective")]
    NotSurjective(BitVector),
    #[error("seed distribution has {found} bits, family needs {expected}")]
    SeedLength { expected: usize, found: usize },
    #[error("source has {found} bits, family needs {expected}")]
    SourceLength { expected: usize, found: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Security(#[from] SecurityError),
}

/// The matrix of `x ↦ f_seed(x)` built column by column from the fast evaluator.
fn linear_map(spec: &FamilySpec, seed: &BitVector) -> Result<BitMatrix, VerifyError> {
    let n = spec.n();
    let cols = (0..n)
        .map(|j| {
            let mut e = BitVector::zeros(n);
            e.set(j, true);
            evaluate(spec, seed, &e)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BitMatrix::from_columns(&cols, spec.m()).map_err(FamilyError::from)?)
}
