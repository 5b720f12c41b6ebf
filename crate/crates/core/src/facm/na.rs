use std::fmt;

use super::primes::{distinct_prime_factors, is_prime, pow_mod};
use super::FacmError;

/// A field size `k` such that `k + 1` is an odd prime and 2 generates
/// `(Z/(k+1))^×`. For such `k`, `F_{2^k}` embeds in `F₂[x]/(x^{k+1} + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NaIndex(u64);

impl NaIndex {
    pub fn new(k: u64) -> Result<Self, FacmError> {
        if is_in_na(k) {
            Ok(Self(k))
        } else {
            Err(FacmError::NotInNa(k))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `k` as a bit length.
    pub fn k(self) -> usize {
        self.0 as usize
    }

    /// Length of the ambient ring vectors, `k + 1`.
    pub fn ring_len(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for NaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Limits for [`find_na_at_least_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of even candidates examined before giving up.
    pub max_candidates: u64,
    /// Pollard rho iteration budget per candidate; a candidate whose
    /// factorisation exceeds it is skipped.
    pub rho_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_candidates: 1_000_000,
            rho_budget: 1 << 22,
        }
    }
}

/// Outcome of a search, including how many candidates were skipped because
/// factoring ran over budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub k: NaIndex,
    pub candidates: u64,
    pub skipped: u64,
}

/// Order test with the subgroup condition `2^{k/p} ≠ 1 (mod k+1)` for every
/// prime `p | k`, given that `k + 1` is prime.
fn two_is_primitive(k: u64, rho_budget: u64) -> Option<bool> {
    let q = k + 1;
    let factors = distinct_prime_factors(k, rho_budget)?;
    Some(factors.iter().all(|&p| pow_mod(2, k / p, q) != 1))
}

pub fn is_in_na(k: u64) -> bool {
    if k < 2 || k % 2 == 1 || k == u64::MAX {
        return false;
    }
    if !is_prime(k + 1) {
        return false;
    }
    two_is_primitive(k, u64::MAX).unwrap_or(false)
}

pub fn find_na_at_least(lower: u64) -> Result<NaIndex, FacmError> {
    find_na_at_least_with(lower, SearchConfig::default()).map(|r| r.k)
}

pub fn find_na_at_least_with(lower: u64, config: SearchConfig) -> Result<SearchReport, FacmError> {
    let mut k = lower.max(2);
    k += k % 2;
    let mut candidates = 0;
    let mut skipped = 0;
    while candidates < config.max_candidates {
        candidates += 1;
        if is_prime(k + 1) {
            match two_is_primitive(k, config.rho_budget) {
                Some(true) => {
                    return Ok(SearchReport {
                        k: NaIndex(k),
                        candidates,
                        skipped,
                    })
                }
                Some(false) => {}
                None => skipped += 1,
            }
        }
        k = k
            .checked_add(2)
            .ok_or(FacmError::SearchExhausted { lower, candidates })?;
    }
    Err(FacmError::SearchExhausted { lower, candidates })
}
