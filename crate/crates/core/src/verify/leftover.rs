use num_rational::Ratio;
use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{linear_map, SeedDistribution, Source, VerifyError};
use crate::bitlinalg::BitVector;
use crate::families::FamilySpec;
use crate::security::{family_bound, penalty_nonuniform, Epsilon, ExtractorBound, PenaltyRoute};

/// Input length up to which [`LeftoverMode::Exhaustive`] is allowed.
pub const MAX_EXHAUSTIVE_N: usize = 20;
const MAX_EXHAUSTIVE_WORK: u128 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftoverMode {
    /// Every seed in the support, weighted exactly.
    Exhaustive,
    /// `trials` seeds drawn from the seed distribution with a ChaCha8 stream.
    Sampled { trials: usize, rng_seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeftoverReport {
    /// `E_R ‖P_{f_R(A)} − P_{U_m}‖₁`, exact or estimated.
    pub measured: f64,
    pub exact: Option<Ratio<u128>>,
    pub mode: LeftoverMode,
    pub source_min_entropy: f64,
    pub seed_min_entropy: f64,
    /// Bound for uniformly distributed seeds.
    pub bound: ExtractorBound,
    /// Bound with the collision-route penalty, present when the seed is not
    /// full-entropy.
    pub penalized: Option<Epsilon>,
}

impl LeftoverReport {
    /// The bound that applies to the seed distribution actually used.
    pub fn applicable_bound(&self) -> Epsilon {
        self.penalized.unwrap_or(self.bound.epsilon)
    }

    /// `measured ≤ bound`, allowing `1e−12` relative rounding in the bound.
    pub fn within_bound(&self) -> bool {
        self.measured <= self.applicable_bound().value() * (1.0 + 1e-12)
    }
}

/// `Σ_y |c_y 2^m − W|` for output weights `c_y` of one seed; divided by
/// `W 2^m` it is the L1 distance to uniform.
fn seed_distance(columns: &[u64], m: usize, source: &Source, counts: &mut [u64]) -> u128 {
    counts.iter_mut().for_each(|c| *c = 0);
    for &(x, w) in source.points() {
        let mut y = 0u64;
        let mut bits = x;
        while bits != 0 {
            y ^= columns[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        counts[y as usize] += w;
    }
    let total = source.total_weight() as i128;
    counts
        .iter()
        .map(|&c| (((c as i128) << m) - total).unsigned_abs())
        .sum()
}

fn columns_of(spec: &FamilySpec, seed: &BitVector) -> Result<Vec<u64>, VerifyError> {
    let g = linear_map(spec, seed)?;
    Ok((0..spec.n()).map(|j| g.column(j).to_u64()).collect())
}

/// Distance of `f_R(A)` from uniform averaged over the seed, alongside the
/// family's classical bound at `t = H_min(A)`.
pub fn empirical_leftover(
    spec: &FamilySpec,
    seeds: &SeedDistribution,
    source: &Source,
    mode: LeftoverMode,
) -> Result<LeftoverReport, VerifyError> {
    let (n, m) = (spec.n(), spec.m());
    if source.n() != n {
        return Err(VerifyError::SourceLength {
            expected: n,
            found: source.n(),
        });
    }
    if seeds.d() != spec.d() {
        return Err(VerifyError::SeedLength {
            expected: spec.d(),
            found: seeds.d(),
        });
    }
    if n > MAX_EXHAUSTIVE_N || m > MAX_EXHAUSTIVE_N {
        return Err(VerifyError::TooLarge {
            what: "input length",
            found: n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    let support = seeds.support()?;
    let per_seed_scale = source.total_weight() << m;
    let mut counts = vec![0u64; 1 << m];

    let (measured, exact) = match mode {
        LeftoverMode::Exhaustive => {
            let work = support.len() as u128 * source.points().len() as u128;
            if work > MAX_EXHAUSTIVE_WORK {
                return Err(VerifyError::TooLarge {
                    what: "seed × source enumeration",
                    found: work.min(usize::MAX as u128) as usize,
                    limit: MAX_EXHAUSTIVE_WORK as usize,
                });
            }
            let mut numer: u128 = 0;
            let mut seed_total: u128 = 0;
            for (seed, w) in &support {
                let cols = columns_of(spec, seed)?;
                numer += *w as u128 * seed_distance(&cols, m, source, &mut counts);
                seed_total += *w as u128;
            }
            let r = Ratio::new(numer, seed_total * per_seed_scale);
            (*r.numer() as f64 / *r.denom() as f64, Some(r))
        }
        LeftoverMode::Sampled { trials, rng_seed } => {
            if trials == 0 {
                return Err(VerifyError::InvalidDistribution("zero trials".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            let pick = WeightedIndex::new(support.iter().map(|(_, w)| *w))
                .map_err(|e| VerifyError::InvalidDistribution(e.to_string()))?;
            let mut sum = 0.0;
            for _ in 0..trials {
                let (seed, _) = &support[pick.sample(&mut rng)];
                let cols = columns_of(spec, seed)?;
                sum += seed_distance(&cols, m, source, &mut counts) as f64 / per_seed_scale as f64;
            }
            (sum / trials as f64, None)
        }
    };

    let t = source.h_min();
    let h = seeds.h_min()?;
    let mut bound = family_bound(spec, t)?;
    let penalized = if h < spec.d() as f64 {
        Some(penalty_nonuniform(
            bound.epsilon,
            spec.d() as f64,
            h,
            PenaltyRoute::Collision,
        )?)
    } else {
        None
    };
    bound
        .notes
        .push(format!("seed min-entropy {h:.4} of {} bits", spec.d()));
    Ok(LeftoverReport {
        measured,
        exact,
        mode,
        source_min_entropy: t,
        seed_min_entropy: h,
        bound,
        penalized,
    })
}
