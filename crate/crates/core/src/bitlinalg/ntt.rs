//! Number-theoretic transform over the prime 7·2^26 + 1.
//!
//! Bit convolutions are computed as integer convolutions of 0/1 sequences.
//! Every output coefficient is a count bounded by the shorter input length,
//! so the result is exact as long as that length stays below the modulus and
//! the transform length fits the 2-adic part of `p - 1`.

use super::{BitLinAlgError, BitVector};

pub(crate) const MODULUS: u32 = 469_762_049;
const GENERATOR: u32 = 3;
/// Largest supported transform is `2^MAX_LOG2`.
pub(crate) const MAX_LOG2: u32 = 26;

// Montgomery constants for R = 2^32.
const N_PRIME: u32 = montgomery_n_prime(MODULUS);
const R2: u32 = ((1u128 << 64) % MODULUS as u128) as u32;

const fn montgomery_n_prime(p: u32) -> u32 {
    // Newton iteration for p^{-1} mod 2^32, then negate.
    let mut inv: u32 = 1;
    let mut i = 0;
    while i < 5 {
        inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        i += 1;
    }
    inv.wrapping_neg()
}

#[inline(always)]
fn reduce(t: u64) -> u32 {
    let m = (t as u32).wrapping_mul(N_PRIME);
    let u = ((t + m as u64 * MODULUS as u64) >> 32) as u32;
    if u >= MODULUS {
        u - MODULUS
    } else {
        u
    }
}

#[inline(always)]
fn mont_mul(a: u32, b: u32) -> u32 {
    reduce(a as u64 * b as u64)
}

#[inline(always)]
fn to_mont(a: u32) -> u32 {
    mont_mul(a, R2)
}

#[inline(always)]
fn add_mod(a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline(always)]
fn sub_mod(a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

fn pow_mont(base: u32, mut exp: u64) -> u32 {
    let mut acc = to_mont(1);
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mont_mul(acc, b);
        }
        b = mont_mul(b, b);
        exp >>= 1;
    }
    acc
}

/// Twiddle factors for one transform size, laid out level by level:
/// the stage with butterfly half-width `h` reads `table[h - 1 .. 2h - 1]`.
struct Twiddles {
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl Twiddles {
    fn new(size: usize) -> Self {
        let mut forward = Vec::with_capacity(size.saturating_sub(1));
        let mut inverse = Vec::with_capacity(size.saturating_sub(1));
        let g = to_mont(GENERATOR);
        let mut h = 1;
        while h < size {
            let step = (MODULUS as u64 - 1) / (2 * h as u64);
            let w = pow_mont(g, step);
            let w_inv = pow_mont(w, MODULUS as u64 - 2);
            let (mut a, mut b) = (to_mont(1), to_mont(1));
            for _ in 0..h {
                forward.push(a);
                inverse.push(b);
                a = mont_mul(a, w);
                b = mont_mul(b, w_inv);
            }
            h *= 2;
        }
        Self { forward, inverse }
    }
}

fn bit_reverse_permute(a: &mut [u32]) {
    let n = a.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
}

fn transform(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    bit_reverse_permute(a);
    let mut h = 1;
    while h < n {
        let tw = &table[h - 1..2 * h - 1];
        for block in a.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let t = mont_mul(*y, w);
                *y = sub_mod(*x, t);
                *x = add_mod(*x, t);
            }
        }
        h *= 2;
    }
}

fn load_bits(v: &BitVector, size: usize) -> Vec<u32> {
    let one = to_mont(1);
    let mut out = vec![0u32; size];
    for i in v.ones_positions() {
        out[i] = one;
    }
    out
}

/// Linear convolution of two bit strings, reduced mod 2. Output length is
/// `a.len() + b.len() - 1`.
pub fn linear_convolve_bits(a: &BitVector, b: &BitVector) -> Result<BitVector, BitLinAlgError> {
    if a.is_empty() || b.is_empty() {
        return Ok(BitVector::zeros(0));
    }
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let max_term = a.len().min(b.len());
    if size > 1usize << MAX_LOG2 || max_term >= MODULUS as usize {
        return Err(BitLinAlgError::TransformTooLarge {
            length: out_len,
            limit: 1usize << MAX_LOG2,
        });
    }
    let tw = Twiddles::new(size);
    let mut fa = load_bits(a, size);
    let mut fb = load_bits(b, size);
    transform(&mut fa, &tw.forward);
    transform(&mut fb, &tw.forward);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mont_mul(*x, *y);
    }
    transform(&mut fa, &tw.inverse);
    // Scale by 1/size and leave Montgomery form in one multiply:
    // reduce(x * size^{-1}) with size^{-1} in plain form.
    let size_inv = pow_mont(to_mont(size as u32), MODULUS as u64 - 2);
    let scale = reduce(size_inv as u64);
    let mut words = vec![0u64; out_len.div_ceil(64)];
    for (i, &x) in fa[..out_len].iter().enumerate() {
        let count = mont_mul(x, scale);
        debug_assert!((count as usize) <= max_term);
        if count & 1 == 1 {
            words[i / 64] |= 1u64 << (i % 64);
        }
    }
    Ok(BitVector::from_words(words, out_len))
}

/// Largest cyclic length whose pad-and-fold transform fits the modulus.
pub fn max_cyclic_length() -> usize {
    (1usize << (MAX_LOG2 - 1)) + 1
}
