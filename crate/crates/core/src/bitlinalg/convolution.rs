use super::ntt::{linear_convolve_bits, max_cyclic_length};
use super::{BitLinAlgError, BitVector};

/// Below this length the quadratic shift-and-xor kernel is used automatically.
/// Set from a one-core measurement: the word-parallel kernel wins up to
/// roughly 6·10^4 bits for random operands.
pub const SCHOOLBOOK_THRESHOLD: usize = 60_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConvolutionStrategy {
    /// Schoolbook below [`SCHOOLBOOK_THRESHOLD`], transform otherwise.
    #[default]
    Auto,
    Schoolbook,
    Transform,
}

/// Cyclic convolution over F₂: `c_t = XOR_{i + j ≡ t (mod L)} a_i b_j`.
pub fn cyclic_convolve_f2(a: &BitVector, b: &BitVector) -> Result<BitVector, BitLinAlgError> {
    cyclic_convolve_f2_with(a, b, ConvolutionStrategy::Auto)
}

pub fn cyclic_convolve_f2_with(
    a: &BitVector,
    b: &BitVector,
    strategy: ConvolutionStrategy,
) -> Result<BitVector, BitLinAlgError> {
    if a.len() != b.len() {
        return Err(BitLinAlgError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.is_empty() {
        return Err(BitLinAlgError::EmptyInput);
    }
    let use_schoolbook = match strategy {
        ConvolutionStrategy::Auto => a.len() < SCHOOLBOOK_THRESHOLD,
        ConvolutionStrategy::Schoolbook => true,
        ConvolutionStrategy::Transform => false,
    };
    if use_schoolbook {
        Ok(schoolbook_cyclic_convolve(a, b))
    } else {
        transform_cyclic_convolve(a, b)
    }
}

/// Pad-and-fold: linear convolution through the NTT, then reduce mod `x^L - 1`.
fn transform_cyclic_convolve(a: &BitVector, b: &BitVector) -> Result<BitVector, BitLinAlgError> {
    let len = a.len();
    if len > max_cyclic_length() {
        return Err(BitLinAlgError::TransformTooLarge {
            length: len,
            limit: max_cyclic_length(),
        });
    }
    let linear = linear_convolve_bits(a, b)?;
    let mut out = linear.slice(0, len);
    if linear.len() > len {
        out.xor_at(0, &linear.slice(len, linear.len() - len));
    }
    Ok(out)
}

/// Quadratic reference kernel: XOR a rotated copy of `b` for every set bit of `a`.
///
/// Rotations are windows of `b || b`. All 64 sub-word alignments of that
/// buffer are built up front, so each rotation is a plain aligned word XOR.
pub fn schoolbook_cyclic_convolve(a: &BitVector, b: &BitVector) -> BitVector {
    assert_eq!(a.len(), b.len());
    if a.count_ones() > b.count_ones() {
        return schoolbook_cyclic_convolve(b, a);
    }
    let len = a.len();
    if len <= 64 {
        return single_word_convolve(a, b);
    }
    let out_words = len.div_ceil(64);
    let doubled = BitVector::concat(&[b, b]);
    let src = doubled.words();
    // aligned[r][w] = bits [64 w + r, 64 w + r + 64) of b || b
    let aligned: Vec<Vec<u64>> = (0..64)
        .map(|r| {
            (0..src.len())
                .map(|w| {
                    if r == 0 {
                        src[w]
                    } else {
                        (src[w] >> r) | (src.get(w + 1).copied().unwrap_or(0) << (64 - r))
                    }
                })
                .collect()
        })
        .collect();
    let mut acc = vec![0u64; out_words];
    for shift in a.ones_positions() {
        // rotated(b, shift)[t] = (b || b)[t + len - shift]
        let start = (len - shift) % len;
        let window = &aligned[start % 64][start / 64..start / 64 + out_words];
        for (o, w) in acc.iter_mut().zip(window) {
            *o ^= w;
        }
    }
    BitVector::from_words(acc, len)
}

fn single_word_convolve(a: &BitVector, b: &BitVector) -> BitVector {
    let len = a.len();
    let mask = if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    };
    let bw = b.words().first().copied().unwrap_or(0);
    let mut acc = 0u64;
    let mut aw = a.words().first().copied().unwrap_or(0);
    while aw != 0 {
        let shift = aw.trailing_zeros() as usize;
        aw &= aw - 1;
        let rotated = if shift == 0 {
            bw
        } else {
            ((bw << shift) | (bw >> (len - shift))) & mask
        };
        acc ^= rotated;
    }
    BitVector::from_u64(acc, len)
}
