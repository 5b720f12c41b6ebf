//! Security bounds for leftover hashing with (dual) universal families.
//!
//! Every ε is carried as its base-2 logarithm so that the astronomically
//! small values of the asymptotic regime never underflow. [`linear`] holds a
//! plain floating-point re-implementation used for cross-checking.

mod family;
pub mod linear;
mod logspace;
mod table;

use std::fmt;

pub use family::{family_bound, family_bound_via, Route};
pub use logspace::{log2_add, log2_sub};
pub use table::{
    comparison_table, t3_fixed_point, t4_fixed_point, Cell, ComparisonRow, ComparisonTable,
    FixedPoint, Leading, RegimeParams, Scheme, Unspecified,
};

use logspace::log2_delta_minus_one;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SecurityError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("seed min-entropy {h} exceeds seed length {d}")]
    EntropyExceedsSeed { h: f64, d: f64 },
    #[error("fixed point did not converge after {iterations} iterations (last step {step})")]
    NoConvergence { iterations: usize, step: f64 },
}

/// A nonnegative quantity stored as `log2` of its value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Epsilon(f64);

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon(f64::NEG_INFINITY);

    pub fn from_log2(log2: f64) -> Self {
        Epsilon(log2)
    }

    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0, "epsilon must be nonnegative");
        Epsilon(v.log2())
    }

    pub fn log2(self) -> f64 {
        self.0
    }

    /// Linear value; underflows to 0 below about `2^-1074`.
    pub fn value(self) -> f64 {
        self.0.exp2()
    }

    pub fn min(self, other: Self) -> Self {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        Epsilon(self.0 / 2.0)
    }

    fn scale_log2(self, by: f64) -> Self {
        Epsilon(self.0 + by)
    }

    fn add(self, other: Self) -> Self {
        Epsilon(log2_add(self.0, other.0))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::NEG_INFINITY {
            write!(f, "0")
        } else if self.0 > -1000.0 {
            write!(f, "{:.6e} (2^{:.4})", self.value(), self.0)
        } else {
            write!(f, "2^{:.4}", self.0)
        }
    }
}

/// A bound together with the parameters it was computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractorBound {
    pub n: usize,
    pub m: usize,
    pub t: f64,
    pub d: usize,
    /// Seed min-entropy; equals `d` for uniform seeds.
    pub h: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub eta: Option<f64>,
    pub epsilon: Epsilon,
    pub formula_id: &'static str,
    pub notes: Vec<String>,
}

fn check_delta(name: &str, delta: f64) {
    assert!(delta >= 1.0, "{name} must be at least 1, got {delta}");
}

/// `sqrt(δ − 1 + 2^{m−t})` for a δ-almost universal family.
pub fn bound_universal_classical(delta: f64, m: f64, t: f64) -> Epsilon {
    check_delta("delta", delta);
    Epsilon(log2_add(log2_delta_minus_one(delta), m - t)).sqrt()
}

/// `sqrt(δ) 2^{(m−t)/2}` for a surjective δ-almost dual universal family.
pub fn bound_dual_classical(delta: f64, m: f64, t: f64) -> Epsilon {
    check_delta("delta", delta);
    Epsilon((delta.log2() + m - t) / 2.0)
}

/// Result of a quantum bound together with the `η` it was evaluated at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumBound {
    pub epsilon: Epsilon,
    pub eta: f64,
}

/// `2η + sqrt(δ − 1 + (1 + 2/η²) 2^{m−t})`, minimized over `η` when none is given.
pub fn bound_universal_quantum(delta: f64, m: f64, t: f64, eta: Option<f64>) -> QuantumBound {
    check_delta("delta", delta);
    let ld = log2_delta_minus_one(delta);
    let objective = |log_eta: f64| {
        // 1 + 2/η² = 1 + 2^{1 − 2 log η}
        let coeff = log2_add(0.0, 1.0 - 2.0 * log_eta);
        let root = Epsilon(log2_add(ld, coeff + m - t)).sqrt();
        Epsilon(1.0 + log_eta).add(root)
    };
    evaluate_eta(objective, (m - t) / 2.0 - 8.0, 0.0, eta)
}

/// `sqrt(δ′ (2^{m−t} + 2^{m−l}(δ − 1)))` for an outer δ′-dual family after an
/// inner δ-universal family with intermediate length `l`.
pub fn bound_concat_classical(delta: f64, delta_prime: f64, m: f64, l: f64, t: f64) -> Epsilon {
    check_delta("delta", delta);
    check_delta("delta_prime", delta_prime);
    let inner = log2_add(m - t, m - l + log2_delta_minus_one(delta));
    Epsilon(delta_prime.log2() + inner).sqrt()
}

/// `sqrt(δ′) sqrt((2η^{−2} + 1) 2^{m−t} + 2^{m−l}(δ − 1)(1 + η)) + 2η`.
pub fn bound_concat_quantum(
    delta: f64,
    delta_prime: f64,
    m: f64,
    l: f64,
    t: f64,
    eta: Option<f64>,
) -> QuantumBound {
    check_delta("delta", delta);
    check_delta("delta_prime", delta_prime);
    let (ld, ldp) = (log2_delta_minus_one(delta), delta_prime.log2());
    let objective = |log_eta: f64| {
        let c1 = log2_add(1.0 - 2.0 * log_eta, 0.0);
        let c2 = log2_add(0.0, log_eta);
        let inner = log2_add(c1 + m - t, m - l + ld + c2);
        Epsilon(ldp + inner).sqrt().add(Epsilon(1.0 + log_eta))
    };
    evaluate_eta(objective, (m - t) / 2.0 - 8.0, 0.0, eta)
}

/// `sqrt(δ δ′) 2^{(m−t)/2}` for two dual families in sequence.
pub fn bound_dual_dual_concat(delta: f64, delta_prime: f64, m: f64, t: f64) -> Epsilon {
    check_delta("delta", delta);
    check_delta("delta_prime", delta_prime);
    Epsilon((delta.log2() + delta_prime.log2() + m - t) / 2.0)
}

fn ceil_ratio(a: usize, b: usize) -> f64 {
    a.div_ceil(b) as f64
}

/// Classical and quantum bounds of the composed family `g_{n,l,m}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GBounds {
    pub classical: Epsilon,
    pub quantum: QuantumBound,
}

/// Closed-form bounds for `g_{n,l,m}` with the ceiling constants
/// `⌈m/(n−m)⌉` and `⌈l/(n−l)⌉`.
pub fn g_bounds(
    n: usize,
    l: usize,
    m: usize,
    t: f64,
    eta: Option<f64>,
) -> Result<GBounds, SecurityError> {
    if !(m < l && l < n) {
        return Err(SecurityError::InvalidParameters(format!(
            "g bounds need m < l < n, got n={n} l={l} m={m}"
        )));
    }
    let c1 = ceil_ratio(m, n - m).log2();
    let c2 = log2_delta_minus_one(ceil_ratio(l, n - l));
    let (mf, lf) = (m as f64, l as f64);
    let classical = Epsilon(c1 + log2_add(mf - t, mf - lf + c2)).sqrt();
    let objective = |log_eta: f64| {
        let a = log2_add(0.0, -2.0 * log_eta) + mf - t;
        let b = log2_add(0.0, log_eta) + mf - lf + c2;
        Epsilon(c1 + log2_add(a, b))
            .sqrt()
            .add(Epsilon(1.0 + log_eta))
    };
    let quantum = evaluate_eta(objective, (mf - t) / 2.0 - 8.0, 0.0, eta);
    Ok(GBounds { classical, quantum })
}

/// The quantum bound for `f_F4` at `l = (m+t)/2`, `η = 2^{(m−t)/4}`.
pub fn f4_bound(n: usize, m: usize, t: usize) -> Result<Epsilon, SecurityError> {
    if !(m < t && t < n) {
        return Err(SecurityError::InvalidParameters(format!(
            "f4 bound needs m < t < n, got n={n} m={m} t={t}"
        )));
    }
    Ok(f4_formula(n as f64, m as f64, t as f64))
}

/// `2^{(m−t)/4} sqrt(c1 (2^{(m−t)/2} − 2^{(m−t)/4} + (1 + 2^{(m−t)/4}) c2)) + 2^{(m−t)/4+1}`
/// with `c1 = ⌈m/(n−m)⌉`, `c2 = ⌈(m+t)/(2n−m−t)⌉`; real-valued `t` allowed.
pub(crate) fn f4_formula(n: f64, m: f64, t: f64) -> Epsilon {
    let c1 = (m / (n - m)).ceil();
    let c2 = ((m + t) / (2.0 * n - m - t)).ceil();
    let q = (m - t) / 4.0;
    // η² − η + (1 + η) c2 = η² + c2 + η (c2 − 1), all terms nonnegative
    let inner = log2_add(log2_add(2.0 * q, c2.log2()), q + log2_delta_minus_one(c2));
    Epsilon(q + (c1.log2() + inner) / 2.0).add(Epsilon(q + 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PenaltyRoute {
    /// Any extractor: factor `2^{d−h}`.
    Direct,
    /// Bounds obtained through the collision quantity: factor `2^{(d−h)/2}`.
    Collision,
}

/// Degrade `epsilon` for a `d`-bit seed with min-entropy `h`.
pub fn penalty_nonuniform(
    epsilon: Epsilon,
    d: f64,
    h: f64,
    route: PenaltyRoute,
) -> Result<Epsilon, SecurityError> {
    if h > d {
        return Err(SecurityError::EntropyExceedsSeed { h, d });
    }
    let gap = d - h;
    Ok(match route {
        PenaltyRoute::Direct => epsilon.scale_log2(gap),
        PenaltyRoute::Collision => epsilon.scale_log2(gap / 2.0),
    })
}

/// Minimum seed min-entropy of a δ-almost dual universal surjective family.
pub fn seed_lower_bound_dual(n: f64, m: f64, delta: f64) -> f64 {
    check_delta("delta", delta);
    n - m - delta.log2()
}

/// Seed entropy any `(t, ε)` strong extractor `F_2^n → F_2^m` needs.
pub fn extractor_seed_lower_bound(n: f64, m: f64, t: f64, epsilon: Epsilon) -> f64 {
    -epsilon.log2() - (t - n + m).max(0.0)
}

/// Universality constant of the dual `F_2^n → F_2^{n−m}` of a δ-almost
/// universal family: `2(1 − 2^{−m}δ) + (δ − 1) 2^{n−m}`.
pub fn dual_delta_conversion(delta: f64, n: usize, m: usize) -> Result<f64, SecurityError> {
    if delta < 0.0 || m > n {
        return Err(SecurityError::InvalidParameters(format!(
            "need delta >= 0 and m <= n, got delta={delta} n={n} m={m}"
        )));
    }
    let v = 2.0 * (1.0 - (-(m as f64)).exp2() * delta) + (delta - 1.0) * ((n - m) as f64).exp2();
    if v < 0.0 {
        return Err(SecurityError::InvalidParameters(format!(
            "converted constant is negative ({v})"
        )));
    }
    Ok(v)
}

/// Evaluate at the given `η`, or golden-section search on `log2 η`.
///
/// The starting bracket is widened until the minimum is interior.
fn evaluate_eta(
    objective: impl Fn(f64) -> Epsilon,
    lo: f64,
    hi: f64,
    eta: Option<f64>,
) -> QuantumBound {
    if let Some(eta) = eta {
        assert!(eta > 0.0, "eta must be positive");
        return QuantumBound {
            epsilon: objective(eta.log2()),
            eta,
        };
    }
    let f = |u: f64| objective(u).log2();
    let (mut lo, mut hi) = (lo.min(hi - 1.0), hi);
    for _ in 0..64 {
        let step = (hi - lo) / 64.0;
        let grow_lo = f(lo) <= f(lo + step);
        let grow_hi = f(hi) <= f(hi - step);
        if !grow_lo && !grow_hi {
            break;
        }
        let width = hi - lo;
        if grow_lo {
            lo -= width;
        }
        if grow_hi {
            hi += width;
        }
    }
    let u = golden_section(f, lo, hi);
    QuantumBound {
        epsilon: objective(u),
        eta: u.exp2(),
    }
}

/// Minimize a unimodal function on `[lo, hi]`. The tolerance is absolute in
/// `log2 η`, which is relative in `η`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    const TOL: f64 = 1e-9 / std::f64::consts::LN_2;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > TOL * (1.0 + lo.abs().min(hi.abs()).min(1.0)) {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    (lo + hi) / 2.0
}
