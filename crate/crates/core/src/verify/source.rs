use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::bitlinalg::BitVector;

/// Largest seed length enumerated for a uniform seed.
const MAX_UNIFORM_SEED_BITS: usize = 24;

/// Distribution of the seed `R` over `{0,1}^d`, with integer weights so that
/// every derived probability is an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedDistribution {
    Uniform {
        d: usize,
    },
    /// `weights[i]` belongs to the seed whose bits are those of `i`, LSB first.
    Weighted {
        d: usize,
        weights: Vec<u64>,
    },
    PointMass {
        seed: BitVector,
    },
    UniformOnSubset {
        d: usize,
        seeds: Vec<BitVector>,
    },
}

impl SeedDistribution {
    pub fn d(&self) -> usize {
        match self {
            Self::Uniform { d } | Self::Weighted { d, .. } | Self::UniformOnSubset { d, .. } => *d,
            Self::PointMass { seed } => seed.len(),
        }
    }

    /// Seeds with nonzero weight.
    pub fn support(&self) -> Result<Vec<(BitVector, u64)>, VerifyError> {
        let d = self.d();
        let enumerable = |count: usize| -> Result<(), VerifyError> {
            if d > MAX_UNIFORM_SEED_BITS {
                return Err(VerifyError::TooLarge {
                    what: "seed length",
                    found: d,
                    limit: MAX_UNIFORM_SEED_BITS,
                });
            }
            if count != 1usize << d {
                return Err(VerifyError::InvalidDistribution(format!(
                    "{count} weights for {d}-bit seeds"
                )));
            }
            Ok(())
        };
        let out = match self {
            Self::Uniform { d } => {
                enumerable(1 << d)?;
                (0..1u64 << d)
                    .map(|i| (BitVector::from_u64(i, *d), 1))
                    .collect()
            }
            Self::Weighted { d, weights } => {
                enumerable(weights.len())?;
                weights
                    .iter()
                    .enumerate()
                    .filter(|(_, &w)| w > 0)
                    .map(|(i, &w)| (BitVector::from_u64(i as u64, *d), w))
                    .collect()
            }
            Self::PointMass { seed } => vec![(seed.clone(), 1)],
            Self::UniformOnSubset { d, seeds } => {
                if seeds.iter().any(|s| s.len() != *d) {
                    return Err(VerifyError::InvalidDistribution(
                        "subset seed of the wrong length".into(),
                    ));
                }
                let mut sorted = seeds.clone();
                sorted.sort_by(|a, b| a.words().cmp(b.words()));
                sorted.dedup();
                sorted.into_iter().map(|s| (s, 1)).collect()
            }
        };
        let out: Vec<_> = out;
        if out.is_empty() {
            return Err(VerifyError::InvalidDistribution("empty support".into()));
        }
        Ok(out)
    }

    /// `H_min(R)` in bits.
    pub fn h_min(&self) -> Result<f64, VerifyError> {
        let support = self.support()?;
        let total: u128 = support.iter().map(|(_, w)| *w as u128).sum();
        let max = support.iter().map(|(_, w)| *w).max().unwrap_or(0) as f64;
        Ok((total as f64 / max).log2())
    }

    pub fn is_uniform(&self) -> bool {
        match self {
            Self::Uniform { .. } => true,
            Self::Weighted { weights, .. } => {
                weights.iter().all(|&w| w == weights[0]) && weights[0] > 0
            }
            Self::PointMass { seed } => seed.is_empty(),
            Self::UniformOnSubset { d, .. } => {
                *d < 64 && self.support().is_ok_and(|s| s.len() as u64 == 1u64 << d)
            }
        }
    }
}

/// A source over `{0,1}^n` with integer point weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    n: usize,
    points: Vec<(u64, u64)>,
}

impl Source {
    /// Points are `(x, weight)` with `x` read LSB first; duplicate points merge.
    pub fn new(n: usize, mut points: Vec<(u64, u64)>) -> Result<Self, VerifyError> {
        if n > 63 {
            return Err(VerifyError::TooLarge {
                what: "source length",
                found: n,
                limit: 63,
            });
        }
        if points.iter().any(|&(x, _)| x >> n != 0) {
            return Err(VerifyError::InvalidDistribution(format!(
                "point outside {{0,1}}^{n}"
            )));
        }
        points.retain(|&(_, w)| w > 0);
        points.sort_unstable();
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(points.len());
        for (x, w) in points {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += w,
                _ => merged.push((x, w)),
            }
        }
        if merged.is_empty() {
            return Err(VerifyError::InvalidDistribution("empty source".into()));
        }
        Ok(Source { n, points: merged })
    }

    pub fn uniform(n: usize) -> Result<Self, VerifyError> {
        if n > 24 {
            return Err(VerifyError::TooLarge {
                what: "uniform source length",
                found: n,
                limit: 24,
            });
        }
        Source::new(n, (0..1u64 << n).map(|x| (x, 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }

    pub fn total_weight(&self) -> u128 {
        self.points.iter().map(|&(_, w)| w as u128).sum()
    }

    pub fn h_min(&self) -> f64 {
        let max = self.points.iter().map(|&(_, w)| w).max().unwrap_or(1);
        (self.total_weight() as f64 / max as f64).log2()
    }

    /// Probabilities indexed by `x`; only for `n ≤ 24`.
    pub fn probabilities(&self) -> Result<Vec<f64>, VerifyError> {
        if self.n > 24 {
            return Err(VerifyError::TooLarge {
                what: "source length",
                found: self.n,
                limit: 24,
            });
        }
        let total = self.total_weight() as f64;
        let mut p = vec![0.0; 1 << self.n];
        for &(x, w) in &self.points {
            p[x as usize] = w as f64 / total;
        }
        Ok(p)
    }
}

/// Uniform over a pseudo-random `2^t`-subset of `{0,1}^n`, selected by `select`.
pub fn flat_source(n: usize, t: usize, select: u64) -> Result<Source, VerifyError> {
    if t > n {
        return Err(VerifyError::InvalidDistribution(format!(
            "min-entropy {t} exceeds length {n}"
        )));
    }
    if n > 32 || t > 24 {
        return Err(VerifyError::TooLarge {
            what: "flat source size",
            found: n.max(t),
            limit: 24,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(select);
    let points = sample(&mut rng, 1usize << n, 1usize << t)
        .into_iter()
        .map(|x| (x as u64, 1))
        .collect();
    Source::new(n, points)
}

/// Uniform over a random `t`-dimensional affine subspace of `{0,1}^n`.
pub fn affine_source(n: usize, t: usize, select: u64) -> Result<Source, VerifyError> {
    if t > n {
        return Err(VerifyError::InvalidDistribution(format!(
            "dimension {t} exceeds length {n}"
        )));
    }
    if n > 63 || t > 24 {
        return Err(VerifyError::TooLarge {
            what: "affine source size",
            found: n.max(t),
            limit: 24,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(select);
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // grow an independent set by rejection
    let mut basis: Vec<u64> = Vec::with_capacity(t);
    let mut reduced: Vec<u64> = Vec::with_capacity(t);
    while basis.len() < t {
        let v = rng.gen::<u64>() & mask;
        let mut r = v;
        for &b in &reduced {
            r = r.min(r ^ b);
        }
        if r != 0 {
            reduced.push(r);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            basis.push(v);
        }
    }
    let offset = rng.gen::<u64>() & mask;
    let mut points = Vec::with_capacity(1 << t);
    let mut cur = offset;
    points.push((cur, 1));
    for i in 1u64..(1u64 << t) {
        cur ^= basis[i.trailing_zeros() as usize];
        points.push((cur, 1));
    }
    Source::new(n, points)
}
