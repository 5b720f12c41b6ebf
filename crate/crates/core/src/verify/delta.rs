use num_rational::Ratio;

use super::{linear_map, SeedDistribution, VerifyError};
use crate::bitlinalg::{for_each_in_span, BitVector};
use crate::families::FamilySpec;

/// Input length up to which universality constants are measured.
pub const MAX_DELTA_N: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaMeasurement {
    /// `2^m · max_{x≠0} Pr[f_R(x) = 0]` (or its dual analogue), exactly.
    pub delta: Ratio<u128>,
    /// An `x` attaining the maximum.
    pub witness: BitVector,
    /// Number of seeds with nonzero weight.
    pub seeds: usize,
}

impl DeltaMeasurement {
    pub fn as_f64(&self) -> f64 {
        *self.delta.numer() as f64 / *self.delta.denom() as f64
    }
}

fn check(spec: &FamilySpec, seeds: &SeedDistribution) -> Result<(), VerifyError> {
    if spec.n() > MAX_DELTA_N {
        return Err(VerifyError::TooLarge {
            what: "input length",
            found: spec.n(),
            limit: MAX_DELTA_N,
        });
    }
    if seeds.d() != spec.d() {
        return Err(VerifyError::SeedLength {
            expected: spec.d(),
            found: seeds.d(),
        });
    }
    Ok(())
}

/// Accumulate seed weights over a per-seed subspace of `{0,1}^n` and return
/// the heaviest nonzero point.
fn heaviest_point(
    spec: &FamilySpec,
    seeds: &SeedDistribution,
    scale_bits: usize,
    subspace: impl Fn(&crate::bitlinalg::BitMatrix) -> Vec<BitVector>,
) -> Result<DeltaMeasurement, VerifyError> {
    check(spec, seeds)?;
    let (n, m) = (spec.n(), spec.m());
    let support = seeds.support()?;
    let mut weight = vec![0u64; 1 << n];
    let mut total: u128 = 0;
    for (seed, w) in &support {
        let g = linear_map(spec, seed)?;
        if g.rank() != m {
            return Err(VerifyError::NotSurjective(seed.clone()));
        }
        for_each_in_span(&subspace(&g), n, |x| weight[x.to_u64() as usize] += w);
        total += *w as u128;
    }
    let (best, &top) = weight
        .iter()
        .enumerate()
        .skip(1)
        .max_by_key(|&(i, w)| (w, std::cmp::Reverse(i)))
        .expect("n ≥ 1");
    Ok(DeltaMeasurement {
        delta: Ratio::new((top as u128) << scale_bits, total),
        witness: BitVector::from_u64(best as u64, n),
        seeds: support.len(),
    })
}

/// `2^m · max_{x≠0} Pr_R[x ∈ Ker f_R]`, by enumerating each kernel.
pub fn measure_delta_universal(
    spec: &FamilySpec,
    seeds: &SeedDistribution,
) -> Result<DeltaMeasurement, VerifyError> {
    heaviest_point(spec, seeds, spec.m(), |g| g.kernel_basis())
}

/// `2^{n−m} · max_{x≠0} Pr_R[x ∈ (Ker f_R)^⊥]`; the orthogonal complement of
/// the kernel is the row space of the generator.
pub fn measure_delta_dual(
    spec: &FamilySpec,
    seeds: &SeedDistribution,
) -> Result<DeltaMeasurement, VerifyError> {
    heaviest_point(spec, seeds, spec.n() - spec.m(), |g| {
        g.row_vectors().to_vec()
    })
}
