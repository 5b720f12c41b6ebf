//! Small binary fields in a polynomial basis, for block sizes that have no
//! circulant representation. Only intended for `k ≤ 63`.

use super::primes::distinct_prime_factors;
use super::FacmError;

pub const MAX_POLY_DEGREE: usize = 63;

/// `F_{2^k} = F₂[x]/(f)` with `f` the numerically smallest irreducible
/// polynomial of degree `k`. Elements are the low `k` bits of a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyField {
    k: usize,
    modulus: u128,
}

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u128, m: u128) -> u128 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, poly_rem(a, b));
    }
    a
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    poly_rem(clmul(a as u64, b as u64), m)
}

/// `x^{2^e} mod m`.
fn frobenius_power(e: usize, m: u128) -> u128 {
    let mut x = poly_rem(2, m);
    for _ in 0..e {
        x = mul_mod(x, x, m);
    }
    x
}

/// Rabin's irreducibility test.
fn is_irreducible(m: u128, k: usize) -> bool {
    if frobenius_power(k, m) != poly_rem(2, m) {
        return false;
    }
    let primes = distinct_prime_factors(k as u64, u64::MAX).unwrap_or_default();
    primes
        .iter()
        .all(|&p| poly_gcd(m, frobenius_power(k / p as usize, m) ^ 2) == 1)
}

impl PolyField {
    pub fn new(k: usize) -> Result<Self, FacmError> {
        if k == 0 || k > MAX_POLY_DEGREE {
            return Err(FacmError::UnsupportedFieldSize(k as u64));
        }
        let top = 1u128 << k;
        let modulus = (0..top)
            .map(|low| top | low)
            .filter(|m| m & 1 == 1 || k == 1)
            .find(|&m| is_irreducible(m, k))
            .ok_or(FacmError::UnsupportedFieldSize(k as u64))?;
        Ok(Self { k, modulus })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Modulus coefficients, bit `i` for `x^i` (bit `k` always set).
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    fn mask(&self) -> u64 {
        if self.k == 64 {
            u64::MAX
        } else {
            (1u64 << self.k) - 1
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        poly_rem(clmul(a & self.mask(), b & self.mask()), self.modulus) as u64
    }

    /// `x · a`, by shift and conditional reduction.
    pub fn times_x(&self, a: u64) -> u64 {
        let shifted = (a as u128) << 1;
        let reduced = if shifted >> self.k & 1 == 1 {
            shifted ^ self.modulus
        } else {
            shifted
        };
        reduced as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a & self.mask();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Transpose of the multiplication-by-`a` matrix applied to `z`:
    /// entry `i` is the inner product of `a·x^i` with `z`.
    pub fn mul_transpose(&self, a: u64, z: u64) -> u64 {
        let mut col = a & self.mask();
        let mut out = 0u64;
        for i in 0..self.k {
            if (col & z).count_ones() & 1 == 1 {
                out |= 1 << i;
            }
            col = self.times_x(col);
        }
        out
    }
}
