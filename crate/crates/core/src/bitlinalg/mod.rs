//! Packed GF(2) vectors and matrices, exact binary convolution and
//! Toeplitz products.

mod bitvec;
mod convolution;
mod matrix;
mod ntt;
mod toeplitz;

pub use bitvec::BitVector;
pub use convolution::{
    cyclic_convolve_f2, cyclic_convolve_f2_with, schoolbook_cyclic_convolve, ConvolutionStrategy,
    SCHOOLBOOK_THRESHOLD,
};
pub use matrix::{dense_mul, for_each_in_span, BitMatrix, MAX_DENSE_ENTRIES};
pub use ntt::{linear_convolve_bits, max_cyclic_length};
pub use toeplitz::{modified_toeplitz_hash, toeplitz_matrix, toeplitz_mul, ToeplitzSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BitLinAlgError {
    #[error("input too short: need {needed_bits} bits, have {available_bits}")]
    ShortInput {
        needed_bits: usize,
        available_bits: usize,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dense matrix {rows}x{cols} exceeds the verification size cap")]
    MatrixTooLarge { rows: usize, cols: usize },
    #[error("convolution of length {length} exceeds the exact transform limit {limit}")]
    TransformTooLarge { length: usize, limit: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid shape: {0}")]
    InvalidShape(String),
}
