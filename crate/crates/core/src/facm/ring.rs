//! `F_{2^k}` as the even-weight polynomials modulo `x^{k+1} + 1`.

use rand::Rng;

use super::{FacmError, NaIndex};
use crate::bitlinalg::{
    cyclic_convolve_f2_with, schoolbook_cyclic_convolve, BitVector, ConvolutionStrategy,
};

/// An element of `S`: coefficients `a_0 .. a_k` of even Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    k: NaIndex,
    coeffs: BitVector,
}

/// The shortened `k`-bit form: the ring element with its last coefficient
/// dropped. Every `k`-bit string is valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElementShort {
    k: NaIndex,
    bits: BitVector,
}

impl RingElement {
    pub fn new(k: NaIndex, coeffs: BitVector) -> Result<Self, FacmError> {
        if coeffs.len() != k.ring_len() {
            return Err(FacmError::LengthMismatch {
                expected: k.ring_len(),
                found: coeffs.len(),
            });
        }
        if coeffs.parity() {
            return Err(FacmError::OddWeight);
        }
        Ok(Self { k, coeffs })
    }

    pub fn zero(k: NaIndex) -> Self {
        Self {
            k,
            coeffs: BitVector::zeros(k.ring_len()),
        }
    }

    /// Multiplicative identity `x + x^2 + … + x^k`: it is `0 mod (x + 1)` and
    /// `1 mod (1 + x + … + x^k)`.
    pub fn identity(k: NaIndex) -> Self {
        let mut coeffs = BitVector::ones(k.ring_len());
        coeffs.set(0, false);
        Self { k, coeffs }
    }

    pub fn random<R: Rng + ?Sized>(k: NaIndex, rng: &mut R) -> Self {
        extend(&FieldElementShort::random(k, rng))
    }

    pub fn k(&self) -> NaIndex {
        self.k
    }

    pub fn coeffs(&self) -> &BitVector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// `a(x^{-1})`: coefficient `i` moves to `-i mod (k+1)`. This is the
    /// element whose circulant is the transpose of this one's.
    pub fn reflected(&self) -> Self {
        let len = self.k.ring_len();
        let mut out = BitVector::zeros(len);
        for i in self.coeffs.ones_positions() {
            out.set((len - i) % len, true);
        }
        Self {
            k: self.k,
            coeffs: out,
        }
    }
}

impl FieldElementShort {
    pub fn new(k: NaIndex, bits: BitVector) -> Result<Self, FacmError> {
        if bits.len() != k.k() {
            return Err(FacmError::LengthMismatch {
                expected: k.k(),
                found: bits.len(),
            });
        }
        Ok(Self { k, bits })
    }

    pub fn zero(k: NaIndex) -> Self {
        Self {
            k,
            bits: BitVector::zeros(k.k()),
        }
    }

    pub fn random<R: Rng + ?Sized>(k: NaIndex, rng: &mut R) -> Self {
        Self {
            k,
            bits: BitVector::random(k.k(), rng),
        }
    }

    /// Shortens a raw `(k+1)`-bit vector, rejecting odd weight.
    pub fn from_extended(k: NaIndex, coeffs: &BitVector) -> Result<Self, FacmError> {
        Ok(shorten(&RingElement::new(k, coeffs.clone())?))
    }

    pub fn k(&self) -> NaIndex {
        self.k
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }
}

/// Appends the parity bit.
pub fn extend(s: &FieldElementShort) -> RingElement {
    let mut coeffs = s.bits.resized(s.k.ring_len());
    if s.bits.parity() {
        coeffs.set(s.k.k(), true);
    }
    RingElement { k: s.k, coeffs }
}

/// Drops the last coefficient.
pub fn shorten(a: &RingElement) -> FieldElementShort {
    FieldElementShort {
        k: a.k,
        bits: a.coeffs.slice(0, a.k.k()),
    }
}

fn same_k(a: &RingElement, b: &RingElement) -> Result<(), FacmError> {
    if a.k != b.k {
        return Err(FacmError::FieldMismatch {
            left: a.k.get(),
            right: b.k.get(),
        });
    }
    Ok(())
}

pub fn ring_add(a: &RingElement, b: &RingElement) -> Result<RingElement, FacmError> {
    same_k(a, b)?;
    Ok(RingElement {
        k: a.k,
        coeffs: &a.coeffs ^ &b.coeffs,
    })
}

/// `a(x) b(x) mod x^{k+1} + 1` through one cyclic convolution.
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, FacmError> {
    ring_mul_with(a, b, ConvolutionStrategy::Auto)
}

pub fn ring_mul_with(
    a: &RingElement,
    b: &RingElement,
    strategy: ConvolutionStrategy,
) -> Result<RingElement, FacmError> {
    same_k(a, b)?;
    let coeffs = cyclic_convolve_f2_with(&a.coeffs, &b.coeffs, strategy)?;
    debug_assert!(!coeffs.parity());
    Ok(RingElement { k: a.k, coeffs })
}

/// Quadratic reference multiplication.
pub fn schoolbook_ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, FacmError> {
    same_k(a, b)?;
    Ok(RingElement {
        k: a.k,
        coeffs: schoolbook_cyclic_convolve(&a.coeffs, &b.coeffs),
    })
}

/// Square-and-multiply; `a^0` is the identity.
pub fn ring_pow(a: &RingElement, mut e: u64) -> Result<RingElement, FacmError> {
    let mut acc = RingElement::identity(a.k);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = ring_mul(&acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = ring_mul(&base, &base)?;
        }
    }
    Ok(acc)
}

/// Field product on shortened forms.
pub fn field_mul(
    a: &FieldElementShort,
    b: &FieldElementShort,
) -> Result<FieldElementShort, FacmError> {
    field_mul_with(a, b, ConvolutionStrategy::Auto)
}

pub fn field_mul_with(
    a: &FieldElementShort,
    b: &FieldElementShort,
    strategy: ConvolutionStrategy,
) -> Result<FieldElementShort, FacmError> {
    Ok(shorten(&ring_mul_with(&extend(a), &extend(b), strategy)?))
}

/// Transpose of the `k × k` matrix of `s ↦ a·s` in shortened coordinates,
/// applied to `z`.
///
/// That matrix factors as `D C(a) E` (extend, circulant, drop last), so its
/// transpose is `Eᵀ C(a)ᵀ Dᵀ`: pad `z` with a zero, multiply by the
/// reflected element, then fold the last coordinate into all others.
pub fn field_mul_transpose(
    a: &FieldElementShort,
    z: &FieldElementShort,
) -> Result<FieldElementShort, FacmError> {
    field_mul_transpose_with(a, z, ConvolutionStrategy::Auto)
}

pub fn field_mul_transpose_with(
    a: &FieldElementShort,
    z: &FieldElementShort,
    strategy: ConvolutionStrategy,
) -> Result<FieldElementShort, FacmError> {
    if a.k != z.k {
        return Err(FacmError::FieldMismatch {
            left: a.k.get(),
            right: z.k.get(),
        });
    }
    let k = a.k.k();
    let refl = extend(a).reflected();
    let v = cyclic_convolve_f2_with(&refl.coeffs, &z.bits.resized(k + 1), strategy)?;
    let mut out = v.slice(0, k);
    if v.get(k) {
        out = &out ^ &BitVector::ones(k);
    }
    Ok(FieldElementShort { k: a.k, bits: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn k(v: u64) -> NaIndex {
        NaIndex::new(v).unwrap()
    }

    fn elem(k2: NaIndex, bits: &[u8]) -> RingElement {
        RingElement::new(k2, BitVector::from_bits(bits)).unwrap()
    }

    #[test]
    fn small_products_by_hand() {
        let k2 = k(2);
        // (1 + x)(1 + x^2) = 1 + x + x^2 + x^3 = x + x^2 when x^3 = 1
        let p = ring_mul(&elem(k2, &[1, 1, 0]), &elem(k2, &[1, 0, 1])).unwrap();
        assert_eq!(p, elem(k2, &[0, 1, 1]));
        // (1 + x)^2 = 1 + x^2
        assert_eq!(
            ring_pow(&elem(k2, &[1, 1, 0]), 2).unwrap(),
            elem(k2, &[1, 0, 1])
        );
    }

    #[test]
    fn identity_acts_as_one() {
        for kv in [2u64, 4, 10, 100] {
            let kk = k(kv);
            let e = RingElement::identity(kk);
            assert_eq!(ring_mul(&e, &e).unwrap(), e);
            let mut rng = ChaCha8Rng::seed_from_u64(kv);
            for _ in 0..20 {
                let s = RingElement::random(kk, &mut rng);
                assert_eq!(ring_mul(&e, &s).unwrap(), s);
            }
        }
    }

    #[test]
    fn extend_and_shorten_round_trip() {
        let k2 = k(2);
        let s = FieldElementShort::new(k2, BitVector::from_bits(&[1, 0])).unwrap();
        assert_eq!(extend(&s).coeffs(), &BitVector::from_bits(&[1, 0, 1]));
        assert_eq!(shorten(&extend(&s)), s);
        assert!(RingElement::new(k2, BitVector::from_bits(&[1, 0, 0])).is_err());
        assert!(FieldElementShort::from_extended(k2, &BitVector::from_bits(&[1, 1, 1])).is_err());
    }

    #[test]
    fn transpose_matches_dense_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for kv in [2u64, 4, 10, 18, 100] {
            let kk = k(kv);
            let kz = kk.k();
            let a = FieldElementShort::random(kk, &mut rng);
            // Column j of the multiplication matrix is a · e_j.
            let cols: Vec<BitVector> = (0..kz)
                .map(|j| {
                    let mut e = BitVector::zeros(kz);
                    e.set(j, true);
                    let ej = FieldElementShort::new(kk, e).unwrap();
                    field_mul(&a, &ej).unwrap().into_bits()
                })
                .collect();
            let z = FieldElementShort::random(kk, &mut rng);
            let got = field_mul_transpose(&a, &z).unwrap();
            for (i, col) in cols.iter().enumerate() {
                assert_eq!(got.bits().get(i), col.dot(z.bits()));
            }
        }
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = RingElement::zero(k(2));
        let b = RingElement::zero(k(4));
        assert!(ring_add(&a, &b).is_err());
        assert!(ring_mul(&a, &b).is_err());
    }
}
