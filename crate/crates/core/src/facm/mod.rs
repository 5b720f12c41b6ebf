//! Arithmetic in `F_{2^k}` through circulant matrices, and the search for
//! field sizes that admit it.

mod na;
mod poly;
pub mod primes;
mod ring;

pub use na::{
    find_na_at_least, find_na_at_least_with, is_in_na, NaIndex, SearchConfig, SearchReport,
};
pub use poly::{PolyField, MAX_POLY_DEGREE};
pub use ring::{
    extend, field_mul, field_mul_transpose, field_mul_transpose_with, field_mul_with, ring_add,
    ring_mul, ring_mul_with, ring_pow, schoolbook_ring_mul, shorten, FieldElementShort,
    RingElement,
};

use crate::bitlinalg::BitLinAlgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FacmError {
    #[error("{0} is not in N_A (k+1 must be an odd prime with 2 as a primitive root)")]
    NotInNa(u64),
    #[error("elements belong to different fields (k={left} and k={right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coefficient vector has odd weight")]
    OddWeight,
    #[error("no field size found from {lower} after {candidates} candidates")]
    SearchExhausted { lower: u64, candidates: u64 },
    #[error("field size {0} is not supported by the polynomial-basis fallback")]
    UnsupportedFieldSize(u64),
    #[error(transparent)]
    Convolution(#[from] BitLinAlgError),
}
