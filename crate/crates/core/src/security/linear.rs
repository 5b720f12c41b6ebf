//! The same bounds evaluated directly in floating point.
//!
//! Only usable where the values stay within `f64` range; kept as an
//! independent cross-check of the log-domain code.

fn p2(e: f64) -> f64 {
    e.exp2()
}

pub fn bound_universal_classical(delta: f64, m: f64, t: f64) -> f64 {
    (delta - 1.0 + p2(m - t)).sqrt()
}

pub fn bound_dual_classical(delta: f64, m: f64, t: f64) -> f64 {
    delta.sqrt() * p2((m - t) / 2.0)
}

pub fn bound_universal_quantum(delta: f64, m: f64, t: f64, eta: f64) -> f64 {
    2.0 * eta + (delta - 1.0 + (1.0 + 2.0 / (eta * eta)) * p2(m - t)).sqrt()
}

pub fn bound_concat_classical(delta: f64, delta_prime: f64, m: f64, l: f64, t: f64) -> f64 {
    (delta_prime * (p2(m - t) + p2(m - l) * (delta - 1.0))).sqrt()
}

pub fn bound_concat_quantum(delta: f64, delta_prime: f64, m: f64, l: f64, t: f64, eta: f64) -> f64 {
    delta_prime.sqrt()
        * ((2.0 / (eta * eta) + 1.0) * p2(m - t) + p2(m - l) * (delta - 1.0) * (1.0 + eta)).sqrt()
        + 2.0 * eta
}

pub fn bound_dual_dual_concat(delta: f64, delta_prime: f64, m: f64, t: f64) -> f64 {
    (delta * delta_prime).sqrt() * p2((m - t) / 2.0)
}

fn ceil_div(a: f64, b: f64) -> f64 {
    (a / b).ceil()
}

pub fn g_bound_classical(n: f64, l: f64, m: f64, t: f64) -> f64 {
    let c1 = ceil_div(m, n - m);
    let c2 = ceil_div(l, n - l);
    (c1 * (p2(m - t) + p2(m - l) * (c2 - 1.0))).sqrt()
}

pub fn g_bound_quantum(n: f64, l: f64, m: f64, t: f64, eta: f64) -> f64 {
    let c1 = ceil_div(m, n - m);
    let c2 = ceil_div(l, n - l);
    (c1 * ((1.0 + 1.0 / (eta * eta)) * p2(m - t) + (1.0 + eta) * p2(m - l) * (c2 - 1.0))).sqrt()
        + 2.0 * eta
}

pub fn f4_bound(n: f64, m: f64, t: f64) -> f64 {
    let c1 = ceil_div(m, n - m);
    let c2 = ceil_div(m + t, 2.0 * n - m - t);
    let q = p2((m - t) / 4.0);
    q * (c1 * (p2((m - t) / 2.0) - q + (1.0 + q) * c2)).sqrt() + 2.0 * q
}

pub fn penalty_direct(epsilon: f64, d: f64, h: f64) -> f64 {
    epsilon * p2(d - h)
}

pub fn penalty_collision(epsilon: f64, d: f64, h: f64) -> f64 {
    epsilon * p2((d - h) / 2.0)
}
