//! Arithmetic on base-2 logarithms.

/// `log2(2^a + 2^b)`.
pub fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// `log2(2^a − 2^b)` for `a ≥ b`; NaN otherwise.
pub fn log2_sub(a: f64, b: f64) -> f64 {
    if b > a {
        return f64::NAN;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    a + (-(b - a).exp2()).ln_1p() / std::f64::consts::LN_2
}

/// `log2(δ − 1)`, exactly `-inf` at `δ = 1`.
pub(crate) fn log2_delta_minus_one(delta: f64) -> f64 {
    (delta - 1.0).log2()
}
