use crate::bitlinalg::{BitMatrix, BitVector, ConvolutionStrategy};
use crate::facm::{
    extend, field_mul_transpose_with, field_mul_with, is_in_na, FieldElementShort, NaIndex,
    PolyField, MAX_POLY_DEGREE,
};

use super::FamilyError;

/// Arithmetic for one block `F_{2^k}`, on `k`-bit vectors.
///
/// Sizes in N_A use the circulant representation and scale to millions of
/// bits. Other sizes up to 63 bits fall back to a polynomial basis, which is
/// only meant for small instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockField {
    Circulant(NaIndex),
    Poly(PolyField),
}

/// Whether a block size has some supported field representation.
pub fn field_size_supported(k: usize) -> bool {
    k >= 1 && (k <= MAX_POLY_DEGREE || is_in_na(k as u64))
}

impl BlockField {
    pub fn new(k: usize) -> Result<Self, FamilyError> {
        if k == 0 {
            return Err(FamilyError::Infeasible(
                "block size must be positive".into(),
            ));
        }
        if let Ok(na) = NaIndex::new(k as u64) {
            return Ok(Self::Circulant(na));
        }
        if k <= MAX_POLY_DEGREE {
            return Ok(Self::Poly(PolyField::new(k)?));
        }
        Err(FamilyError::Infeasible(format!(
            "block size {k} is neither in N_A nor small enough for the polynomial basis"
        )))
    }

    pub fn k(&self) -> usize {
        match self {
            Self::Circulant(na) => na.k(),
            Self::Poly(f) => f.k(),
        }
    }

    pub fn is_circulant(&self) -> bool {
        matches!(self, Self::Circulant(_))
    }

    fn short(&self, v: &BitVector) -> Result<FieldElementShort, FamilyError> {
        match self {
            Self::Circulant(na) => Ok(FieldElementShort::new(*na, v.clone())?),
            Self::Poly(_) => unreachable!("polynomial fields work on words"),
        }
    }

    /// The multiplicative identity in this representation.
    pub fn identity(&self) -> BitVector {
        match self {
            Self::Circulant(na) => {
                let mut e = BitVector::ones(na.k());
                e.set(0, false);
                e
            }
            Self::Poly(f) => BitVector::from_u64(1, f.k()),
        }
    }

    pub fn mul(
        &self,
        a: &BitVector,
        b: &BitVector,
        strategy: ConvolutionStrategy,
    ) -> Result<BitVector, FamilyError> {
        match self {
            Self::Circulant(_) => {
                Ok(field_mul_with(&self.short(a)?, &self.short(b)?, strategy)?.into_bits())
            }
            Self::Poly(f) => Ok(BitVector::from_u64(f.mul(a.to_u64(), b.to_u64()), f.k())),
        }
    }

    /// `M(a)ᵀ z`, where `M(a)` is the matrix of multiplication by `a`.
    pub fn mul_transpose(
        &self,
        a: &BitVector,
        z: &BitVector,
        strategy: ConvolutionStrategy,
    ) -> Result<BitVector, FamilyError> {
        match self {
            Self::Circulant(_) => {
                Ok(
                    field_mul_transpose_with(&self.short(a)?, &self.short(z)?, strategy)?
                        .into_bits(),
                )
            }
            Self::Poly(f) => Ok(BitVector::from_u64(
                f.mul_transpose(a.to_u64(), z.to_u64()),
                f.k(),
            )),
        }
    }

    /// Dense `k × k` matrix of `s ↦ a·s`, built entry by entry from the
    /// representation rather than through the multiplication routines.
    pub fn matrix(&self, a: &BitVector) -> Result<BitMatrix, FamilyError> {
        let k = self.k();
        let mut out = BitMatrix::zeros(k, k)?;
        match self {
            Self::Circulant(na) => {
                // D C(a) E: entry (i, j) is a[i - j] + a[i + 1], indices mod k+1.
                let ext = extend(&self.short(a)?);
                let c = ext.coeffs();
                let len = na.ring_len();
                for i in 0..k {
                    for j in 0..k {
                        if c.get((i + len - j) % len) ^ c.get((i + 1) % len) {
                            out.set(i, j, true);
                        }
                    }
                }
            }
            Self::Poly(f) => {
                // Column j is a·x^j, walked by repeated multiplication by x.
                let mut col = a.to_u64();
                for j in 0..k {
                    for i in 0..k {
                        if col >> i & 1 == 1 {
                            out.set(i, j, true);
                        }
                    }
                    col = f.times_x(col);
                }
            }
        }
        Ok(out)
    }
}
