use dualhash::security::{self, linear, *};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) || a == b
}

#[test]
fn universal_classical_examples() {
    assert_eq!(bound_universal_classical(1.0, 8.0, 8.0).value(), 1.0);
    assert!(close(
        bound_universal_classical(1.0, 0.0, 20.0).value(),
        2f64.powi(-10),
        1e-15
    ));
    let v = bound_universal_classical(2.0, 0.0, 20.0).value();
    assert!(close(v, (1.0 + 2f64.powi(-20)).sqrt(), 1e-15));
    assert!((v - 1.000_000_5).abs() < 1e-7);
}

#[test]
fn dual_classical_examples() {
    assert_eq!(bound_dual_classical(1.0, 5.0, 5.0).value(), 1.0);
    assert_eq!(bound_dual_classical(4.0, 0.0, 24.0).log2(), -11.0);
    assert!(close(
        bound_dual_classical(2.0, 0.0, 20.0).value(),
        2f64.sqrt() * 2f64.powi(-10),
        1e-15
    ));
}

#[test]
fn universal_quantum_limits_and_minimum() {
    // 2η dominates once 2^{m−t} vanishes
    let q = bound_universal_quantum(1.0, 0.0, 4000.0, Some(1.0));
    assert!(close(q.epsilon.value(), 2.0, 1e-12));

    // minimized value against a dense grid in log η
    let best = bound_universal_quantum(1.0, 0.0, 40.0, None);
    let mut grid_min = f64::INFINITY;
    for i in 0..=200_000 {
        let u = -30.0 + 30.0 * i as f64 / 200_000.0;
        grid_min = grid_min.min(linear::bound_universal_quantum(1.0, 0.0, 40.0, u.exp2()));
    }
    let v = best.epsilon.value();
    assert!(v <= grid_min * (1.0 + 1e-9), "{v} vs {grid_min}");
    assert!(v >= grid_min * (1.0 - 1e-6));

    // η = 2^{(m−t)/4} gives the 2^{(m−t)/4} order
    for gap in [40.0, 80.0, 120.0] {
        let eta = (-gap / 4.0f64).exp2();
        let q = bound_universal_quantum(1.0, 0.0, gap, Some(eta));
        let ratio = q.epsilon.value() / eta;
        assert!(ratio > 2.0 && ratio < 2.0 + 2f64.sqrt() + 1e-6, "{ratio}");
    }
}

#[test]
fn minimizer_handles_large_delta() {
    // the optimum shrinks far below the starting bracket when δ − 1 dominates
    let q = bound_universal_quantum(1.0 + 1e6, 0.0, 10.0, None);
    let f = |eta: f64| linear::bound_universal_quantum(1.0 + 1e6, 0.0, 10.0, eta);
    for k in [0.5, 0.9, 1.1, 2.0] {
        assert!(q.epsilon.value() <= f(q.eta * k) * (1.0 + 1e-12));
    }
}

#[test]
fn concat_examples() {
    for (dp, m, l, t) in [(1.0, 4.0, 8.0, 24.0), (3.0, 2.0, 9.0, 5.0)] {
        assert_eq!(
            bound_concat_classical(1.0, dp, m, l, t),
            bound_dual_classical(dp, m, t)
        );
    }
    let e = bound_concat_classical(1.0, 1.0, 3.0, 1e6, 10.0);
    assert!(close(e.value(), 2f64.powf(-3.5), 1e-14));
    let v = bound_concat_classical(3.0, 2.0, 4.0, 8.0, 24.0).value();
    let expect = (2.0f64 * (2f64.powi(-20) + 2f64.powi(-4) * 2.0)).sqrt();
    assert!(close(v, expect, 1e-12), "{v} {expect}");

    let q = bound_concat_quantum(1.0, 1.0, 0.0, 30.0, 20.0, Some(1.0));
    assert!(close(
        q.epsilon.value(),
        3f64.sqrt() * 2f64.powi(-10) + 2.0,
        1e-14
    ));
    // for fixed η the formula is continuous and monotone in t
    let mut prev = f64::INFINITY;
    for t in 10..60 {
        let v = bound_concat_quantum(2.0, 3.0, 8.0, 12.0, t as f64, Some(0.01))
            .epsilon
            .value();
        assert!(v <= prev);
        prev = v;
    }
}

#[test]
fn dual_dual_examples() {
    assert_eq!(bound_dual_dual_concat(1.0, 1.0, 7.0, 7.0).value(), 1.0);
    for gap in [-10.0, -3.0, 0.0] {
        assert!(close(
            bound_dual_dual_concat(2.0, 2.0, 0.0, -gap).value(),
            2.0 * (gap / 2.0f64).exp2(),
            1e-15
        ));
        assert!(close(
            bound_dual_dual_concat(3.0, 5.0, 0.0, -gap).log2(),
            bound_dual_classical(15.0, 0.0, -gap).log2(),
            1e-15
        ));
    }
}

#[test]
fn g_bounds_examples() {
    let g = g_bounds(8, 6, 4, 6.0, None).unwrap();
    assert!(close(g.classical.value(), 3f64.sqrt() / 2.0, 1e-14));
    // l = t recovers the closed form with both ceilings
    for (n, m, t) in [(100usize, 40usize, 60usize), (64, 10, 30), (1000, 700, 900)] {
        let g = g_bounds(n, t, m, t as f64, None).unwrap();
        let c1 = m.div_ceil(n - m) as f64;
        let c2 = t.div_ceil(n - t) as f64;
        let e3 = (c1 * c2).sqrt() * ((m as f64 - t as f64) / 2.0).exp2();
        assert!(close(g.classical.value(), e3, 1e-12));
    }
    // n = 2m: first ceiling is 1
    let g = g_bounds(20, 15, 10, 18.0, None).unwrap();
    let plain = bound_concat_classical(15f64.div_euclid(5.0), 1.0, 10.0, 15.0, 18.0);
    assert!(close(g.classical.value(), plain.value(), 1e-14));
    assert!(g_bounds(8, 4, 4, 6.0, None).is_err());
    assert!(g_bounds(8, 8, 4, 6.0, None).is_err());
}

#[test]
fn f4_examples() {
    assert!(f4_bound(10, 5, 5).is_err());
    // m = t would be vacuous: the tail alone is 2
    let tail_only = security::linear::f4_bound(10.0, 5.0, 5.0);
    assert!(tail_only >= 2.0);
    let (n, m, t) = (400usize, 60usize, 100usize);
    let e = f4_bound(n, m, t).unwrap();
    assert!(close(
        e.value(),
        linear::f4_bound(400.0, 60.0, 100.0),
        1e-12
    ));
    // equals the g quantum bound at l = (m+t)/2, η = 2^{(m−t)/4}
    let eta = ((m as f64 - t as f64) / 4.0).exp2();
    let g = g_bounds(n, (m + t) / 2, m, t as f64, Some(eta)).unwrap();
    assert!(close(e.value(), g.quantum.epsilon.value(), 1e-12));
}

#[test]
fn penalties() {
    let e = Epsilon::from_value(0.125);
    for r in [PenaltyRoute::Direct, PenaltyRoute::Collision] {
        assert_eq!(penalty_nonuniform(e, 9.0, 9.0, r).unwrap(), e);
    }
    assert_eq!(
        penalty_nonuniform(e, 9.0, 7.0, PenaltyRoute::Collision)
            .unwrap()
            .value(),
        0.25
    );
    assert_eq!(
        penalty_nonuniform(e, 9.0, 7.0, PenaltyRoute::Direct)
            .unwrap()
            .value(),
        0.5
    );
    assert!(penalty_nonuniform(e, 7.0, 9.0, PenaltyRoute::Direct).is_err());
}

#[test]
fn seed_bounds() {
    assert_eq!(seed_lower_bound_dual(20.0, 10.0, 1.0), 10.0);
    assert_eq!(seed_lower_bound_dual(20.0, 8.0, 2.0), 11.0);
    let f1 = dualhash::families::make_f1(2, 2).unwrap();
    assert_eq!(seed_lower_bound_dual(4.0, 2.0, 1.0), f1.d() as f64);

    assert!(extractor_seed_lower_bound(10.0, 3.0, 5.0, Epsilon::from_value(1.0)) <= 0.0);
    assert_eq!(
        extractor_seed_lower_bound(100.0, 30.0, 50.0, Epsilon::from_log2(-40.0)),
        40.0
    );
    // ε = 2^{−βn}, t = m − 2 log ε: bound βn stays below h₀ = (1−α)n
    let (n, alpha, beta) = (1000.0, 0.3, 0.1);
    let m = alpha * n;
    let t = m + 2.0 * beta * n;
    let lb = extractor_seed_lower_bound(n, m, t, Epsilon::from_log2(-beta * n));
    assert!(lb <= beta * n && lb <= (1.0 - alpha) * n);
}

#[test]
fn dual_delta_conversion_examples() {
    let m = 12;
    assert!(close(
        dual_delta_conversion(1.0, 40, m).unwrap(),
        2.0 * (1.0 - 2f64.powi(-12)),
        1e-15
    ));
    assert!(close(
        dual_delta_conversion(1.0, 13, 12).unwrap(),
        2.0 - 2f64.powi(1 - 12),
        1e-15
    ));
    // δ = 0 is below what any family attains; with n − m ≥ 2 the value is negative
    assert!(dual_delta_conversion(0.0, 14, 12).is_err());
    assert_eq!(dual_delta_conversion(0.0, 13, 12).unwrap(), 0.0);
    assert!(dual_delta_conversion(-1.0, 12, 4).is_err());
}

#[test]
fn monotone_on_grid() {
    let deltas = [1.0, 1.5, 2.0, 7.0];
    for &d in &deltas {
        for m in 1..12 {
            for t in 1..40 {
                let (mf, tf) = (m as f64, t as f64);
                let fs: [&dyn Fn(f64, f64, f64) -> f64; 3] = [
                    &|d, m, t| bound_universal_classical(d, m, t).log2(),
                    &|d, m, t| bound_dual_classical(d, m, t).log2(),
                    &|d, m, t| bound_concat_classical(d, 1.5, m, 20.0, t).log2(),
                ];
                for f in fs {
                    let base = f(d, mf, tf);
                    assert!(f(d, mf, tf + 1.0) <= base);
                    assert!(f(d, mf + 1.0, tf) >= base);
                    assert!(f(d + 0.5, mf, tf) >= base);
                }
                let base = bound_concat_classical(d, 1.5, mf, 20.0, tf).log2();
                assert!(bound_concat_classical(d, 2.5, mf, 20.0, tf).log2() >= base);
                let q =
                    |d: f64, m: f64, t: f64| bound_universal_quantum(d, m, t, None).epsilon.log2();
                let base = q(d, mf, tf);
                assert!(q(d, mf, tf + 1.0) <= base + 1e-9);
                assert!(q(d + 0.5, mf, tf) >= base - 1e-9);
            }
        }
    }
}

#[test]
fn log_and_linear_domains_agree() {
    let rel = 1e-12;
    for &d in &[1.0, 1.25, 2.0, 3.0, 17.0] {
        for &dp in &[1.0, 2.0, 5.0] {
            for m in [1.0, 8.0, 64.0] {
                for gap in [0.0, 3.0, 50.0, 400.0, 1500.0] {
                    let t = m + gap;
                    let l = m + gap / 2.0 + 1.0;
                    let pairs = [
                        (
                            bound_universal_classical(d, m, t).value(),
                            linear::bound_universal_classical(d, m, t),
                        ),
                        (
                            bound_dual_classical(d, m, t).value(),
                            linear::bound_dual_classical(d, m, t),
                        ),
                        (
                            bound_concat_classical(d, dp, m, l, t).value(),
                            linear::bound_concat_classical(d, dp, m, l, t),
                        ),
                        (
                            bound_dual_dual_concat(d, dp, m, t).value(),
                            linear::bound_dual_dual_concat(d, dp, m, t),
                        ),
                    ];
                    for eta in [1e-3, 0.25, 1.0] {
                        let a = bound_universal_quantum(d, m, t, Some(eta)).epsilon.value();
                        let b = linear::bound_universal_quantum(d, m, t, eta);
                        assert!(close(a, b, rel), "{a} {b}");
                        let a = bound_concat_quantum(d, dp, m, l, t, Some(eta))
                            .epsilon
                            .value();
                        let b = linear::bound_concat_quantum(d, dp, m, l, t, eta);
                        assert!(close(a, b, rel), "{a} {b}");
                    }
                    for (a, b) in pairs {
                        if b > 1e-300 {
                            assert!(close(a, b, rel), "d={d} dp={dp} m={m} gap={gap}: {a} {b}");
                        }
                    }
                }
            }
        }
    }
    for (n, l, m) in [(100usize, 60usize, 40usize), (64, 40, 10), (30, 20, 12)] {
        for t in [m + 1, m + 5, n - 1] {
            let g = g_bounds(n, l, m, t as f64, Some(0.1)).unwrap();
            let (nf, lf, mf, tf) = (n as f64, l as f64, m as f64, t as f64);
            assert!(close(
                g.classical.value(),
                linear::g_bound_classical(nf, lf, mf, tf),
                rel
            ));
            assert!(close(
                g.quantum.epsilon.value(),
                linear::g_bound_quantum(nf, lf, mf, tf, 0.1),
                rel
            ));
            if t > m && t < n {
                assert!(close(
                    f4_bound(n, m, t).unwrap().value(),
                    linear::f4_bound(nf, mf, tf),
                    rel
                ));
            }
        }
    }
    let e = Epsilon::from_value(3.0e-7);
    assert!(close(
        penalty_nonuniform(e, 30.0, 21.5, PenaltyRoute::Direct)
            .unwrap()
            .value(),
        linear::penalty_direct(3.0e-7, 30.0, 21.5),
        rel
    ));
    assert!(close(
        penalty_nonuniform(e, 30.0, 21.5, PenaltyRoute::Collision)
            .unwrap()
            .value(),
        linear::penalty_collision(3.0e-7, 30.0, 21.5),
        rel
    ));
}

#[test]
fn tiny_epsilon_survives() {
    let e = bound_dual_classical(2.0, 500_000.0, 3_000_000.0);
    assert_eq!(e.value(), 0.0);
    assert!(close(e.log2(), (1.0 - 2_500_000.0) / 2.0, 1e-15));
}

#[test]
fn family_bound_picks_smallest_route() {
    use dualhash::families::*;
    let f2 = make_f2(2, 3).unwrap();
    let b = family_bound(&f2, 5.0).unwrap();
    // F2{2,3}: universal constant 2^{m−k} = 4, dual constant 2
    assert_eq!(b.formula_id, "dual-classical");
    assert_eq!(b.delta, 2.0);
    let g = make_g(12, 6, 4).unwrap();
    let b = family_bound(&g, 10.0).unwrap();
    assert!(b.formula_id.contains("concat"), "{}", b.formula_id);
    let mt = make_mt(6, 3).unwrap();
    assert_eq!(
        family_bound(&mt, 6.0).unwrap().epsilon.value(),
        2f64.powf(-1.5)
    );
}
