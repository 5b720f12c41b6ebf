use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use rand::Rng;

use super::BitLinAlgError;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Packed bit string over F₂.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Storage past `len`
/// is always zero, so word-level comparisons and popcounts are exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            words: vec![u64::MAX; words_for(len)],
            len,
        };
        v.clear_tail();
        v
    }

    /// Builds a vector from 0/1 values; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Low `len` bits of `value`, bit 0 first. `len` must not exceed 64.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.clear_tail();
        }
        v
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        assert!(words.len() >= words_for(len));
        let mut v = Self { words, len };
        v.words.truncate(words_for(len));
        v.clear_tail();
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let words = (0..words_for(len)).map(|_| rng.gen::<u64>()).collect();
        Self::from_words(words, len)
    }

    /// Canonical deserialization: LSB-first bit packing, byte 0 first.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self, BitLinAlgError> {
        let needed = len.div_ceil(8);
        if bytes.len() < needed {
            return Err(BitLinAlgError::ShortInput {
                needed_bits: len,
                available_bits: bytes.len() * 8,
            });
        }
        let mut v = Self::zeros(len);
        for (wi, chunk) in bytes[..needed].chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            v.words[wi] = u64::from_le_bytes(buf);
        }
        v.clear_tail();
        Ok(v)
    }

    /// Canonical serialization: `ceil(len / 8)` bytes, LSB-first within each byte.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.words.len() * 8);
        for w in &self.words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out.truncate(self.len.div_ceil(8));
        out
    }

    /// Value of the first (up to) 64 bits as an integer, bit 0 least significant.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "to_u64 needs len <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn parity(&self) -> bool {
        self.words
            .iter()
            .fold(0u32, |acc, w| acc ^ (w.count_ones() & 1))
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over F₂.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ ((a & b).count_ones() & 1))
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set bits, ascending.
    pub fn ones_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let tz = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + tz);
                w &= w - 1;
            }
        }
        out
    }

    /// Copy of bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = Self::zeros(len);
        if len == 0 {
            return out;
        }
        let shift = start % WORD_BITS;
        let first = start / WORD_BITS;
        for (i, w) in out.words.iter_mut().enumerate() {
            let lo = self.words.get(first + i).copied().unwrap_or(0);
            let hi = if shift == 0 {
                0
            } else {
                self.words.get(first + i + 1).copied().unwrap_or(0) << (WORD_BITS - shift)
            };
            *w = (lo >> shift) | hi;
        }
        out.clear_tail();
        out
    }

    /// XORs `src` into `self` starting at bit `offset`.
    pub fn xor_at(&mut self, offset: usize, src: &Self) {
        assert!(offset + src.len <= self.len, "xor_at out of range");
        if src.len == 0 {
            return;
        }
        let shift = offset % WORD_BITS;
        let first = offset / WORD_BITS;
        for (i, &w) in src.words.iter().enumerate() {
            self.words[first + i] ^= w << shift;
            if shift != 0 {
                let spill = w >> (WORD_BITS - shift);
                if spill != 0 {
                    self.words[first + i + 1] ^= spill;
                }
            }
        }
    }

    /// Overwrites bits `[offset, offset + src.len())` with `src`.
    pub fn write_at(&mut self, offset: usize, src: &Self) {
        let current = self.slice(offset, src.len);
        self.xor_at(offset, &current);
        self.xor_at(offset, src);
    }

    pub fn concat(parts: &[&Self]) -> Self {
        let total = parts.iter().map(|p| p.len).sum();
        let mut out = Self::zeros(total);
        let mut at = 0;
        for p in parts {
            out.xor_at(at, p);
            at += p.len;
        }
        out
    }

    /// Returns a copy extended with zeros (or truncated) to `len` bits.
    pub fn resized(&self, len: usize) -> Self {
        if len <= self.len {
            return self.slice(0, len);
        }
        let mut words = self.words.clone();
        words.resize(words_for(len), 0);
        Self { words, len }
    }

    pub fn reversed(&self) -> Self {
        let mut out = Self::zeros(self.len);
        for i in self.ones_positions() {
            out.set(self.len - 1 - i, true);
        }
        out
    }

    /// Cyclic left rotation by `shift` positions: bit `i` moves to `(i + shift) mod len`.
    pub fn rotated(&self, shift: usize) -> Self {
        if self.len == 0 {
            return self.clone();
        }
        let shift = shift % self.len;
        if shift == 0 {
            return self.clone();
        }
        let mut out = Self::zeros(self.len);
        out.xor_at(shift, &self.slice(0, self.len - shift));
        out.xor_at(0, &self.slice(self.len - shift, shift));
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({}:", self.len)?;
        if self.len <= 256 {
            write!(f, "{self})")
        } else {
            write!(f, "{}…)", self.slice(0, 64))
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}
