//! Snapping requested sizes to ones the block constructions support exactly.

use crate::facm::{find_na_at_least, is_in_na, MAX_POLY_DEGREE};

use super::{g_obstacle, make_f1, make_f2, make_mt, BaseKind, FamilyError, FamilySpec};

/// A buildable family close to a requested `(n, m)`: `n ≥ requested n`
/// (the input is zero-padded) and `m ≤ requested m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasible {
    pub spec: FamilySpec,
    pub requested_n: usize,
    pub requested_m: usize,
}

impl Feasible {
    /// Zero bits appended to the input.
    pub fn padding(&self) -> usize {
        self.spec.n() - self.requested_n
    }
}

fn smallest_field_at_least(k: usize) -> Option<usize> {
    let k = k.max(1);
    if k <= MAX_POLY_DEGREE {
        return Some(k);
    }
    find_na_at_least(k as u64).ok().map(|na| na.k())
}

fn largest_field_at_most(k: usize) -> Option<usize> {
    if k == 0 {
        return None;
    }
    if k <= MAX_POLY_DEGREE {
        return Some(k);
    }
    (MAX_POLY_DEGREE + 1..=k)
        .rev()
        .find(|&c| is_in_na(c as u64))
        .or(Some(MAX_POLY_DEGREE))
}

pub fn nearest_feasible(kind: BaseKind, n: usize, m: usize) -> Result<Feasible, FamilyError> {
    if m == 0 || m >= n {
        return Err(FamilyError::Infeasible(format!(
            "need 1 <= m < n, got n={n} m={m}"
        )));
    }
    let spec = match kind {
        BaseKind::ModifiedToeplitz => make_mt(n, m)?,
        BaseKind::F1 => {
            let k = largest_field_at_most(m).expect("m >= 1");
            make_f1(k, n.div_ceil(k).max(2))?
        }
        BaseKind::F2 => {
            // Blocks l and size k with l·k ≥ n and (l−1)·k ≤ m; keep the
            // largest output, then the least padding.
            let mut best: Option<(usize, usize, usize)> = None;
            let max_l = n / (n - m);
            for l in 2..=max_l.max(2) {
                let Some(k) = smallest_field_at_least(n.div_ceil(l)) else {
                    continue;
                };
                let out = (l - 1) * k;
                if out > m {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bl, bk, bout)) => out > bout || (out == bout && l * k < bl * bk),
                };
                if better {
                    best = Some((l, k, out));
                }
            }
            let (l, k, _) = best.ok_or_else(|| {
                FamilyError::Infeasible(format!("no f2 block layout fits n={n} m={m}"))
            })?;
            make_f2(k, l)?
        }
    };
    Ok(Feasible {
        spec,
        requested_n: n,
        requested_m: m,
    })
}

/// Largest `l ≤ requested` with `m < l` for which `g_{n,l,m}` can be built.
pub fn feasible_g_l(n: usize, m: usize, requested: usize) -> Option<usize> {
    (m + 1..=requested.min(n.saturating_sub(1)))
        .rev()
        .find(|&l| g_obstacle(n, l, m).is_none())
}
