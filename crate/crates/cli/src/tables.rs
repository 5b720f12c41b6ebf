use std::fmt::Write as _;
use std::path::Path;

use dualhash::bitlinalg::BitVector;
use dualhash::facm::{find_na_at_least_with, is_in_na, SearchConfig};
use dualhash::families::{FamilySpec, GVariant};
use dualhash::security::{
    bound_universal_quantum, comparison_table, extractor_seed_lower_bound, f4_bound, family_bound,
    family_bound_via, g_bounds, penalty_nonuniform, seed_lower_bound_dual, PenaltyRoute,
    RegimeParams, Route,
};
use dualhash::verify::{
    empirical_leftover, flat_source, measure_delta_dual, measure_delta_universal, LeftoverMode,
    SeedDistribution,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{BoundsArgs, CompareArgs, NaCommand, VerifyArgs};
use crate::CliError;

/// Largest input length `verify` runs leftover checks for.
const VERIFY_MAX_N: usize = 16;

pub(crate) fn write_csv(path: &Path, rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Usage(e.to_string()))?;
    for row in rows {
        w.write_record(row)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn na(cmd: &NaCommand) -> Result<String, CliError> {
    match *cmd {
        NaCommand::Find {
            lower,
            max_candidates,
        } => {
            let config = SearchConfig {
                max_candidates,
                ..SearchConfig::default()
            };
            let rep =
                find_na_at_least_with(lower, config).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(format!(
                "{}\n(tested {} candidates, {} skipped)\n",
                rep.k, rep.candidates, rep.skipped
            ))
        }
        NaCommand::Check { k } => Ok(format!("{}\n", is_in_na(k))),
    }
}

fn frac(r: &num_rational::Ratio<u128>) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn verify(args: &VerifyArgs) -> Result<String, CliError> {
    let spec = args.family.exact()?;
    let uniform = SeedDistribution::Uniform { d: spec.d() };
    let claims = spec.claims();
    let mut out = String::new();
    let mut rows = vec![vec![
        "check".to_string(),
        "t".into(),
        "seed_h".into(),
        "measured".into(),
        "bound".into(),
        "ok".into(),
    ]];
    let mut failures = 0;
    writeln!(out, "family {spec}").unwrap();
    writeln!(
        out,
        "{:<22} {:>6} {:>6} {:>16} {:>16}  ok",
        "check", "t", "seed h", "measured", "bound"
    )
    .unwrap();
    let mut line = |out: &mut String,
                    check: &str,
                    t: String,
                    h: String,
                    measured: String,
                    bound: String,
                    ok: bool| {
        writeln!(
            out,
            "{check:<22} {t:>6} {h:>6} {measured:>16} {bound:>16}  {}",
            if ok { "yes" } else { "NO" }
        )
        .unwrap();
        rows.push(vec![check.into(), t, h, measured, bound, ok.to_string()]);
        if !ok {
            failures += 1;
        }
    };

    let d = spec.d().to_string();
    let u = measure_delta_universal(&spec, &uniform)?;
    let du = measure_delta_dual(&spec, &uniform)?;
    for (name, meas, claim) in [
        ("delta", &u, claims.delta_universal),
        ("delta_dual", &du, claims.delta_dual),
    ] {
        let ok = claim.is_none_or(|c| meas.delta <= num_rational::Ratio::from_integer(c));
        let bound = claim.map_or("-".to_string(), |c| c.to_string());
        line(
            &mut out,
            name,
            "-".into(),
            d.clone(),
            frac(&meas.delta),
            bound,
            ok,
        );
    }

    let mut dists = vec![(uniform.clone(), spec.d())];
    if let Some(h) = args.seed_minentropy {
        if h > spec.d() {
            return Err(CliError::Usage(format!(
                "seed min-entropy {h} exceeds d = {}",
                spec.d()
            )));
        }
        let mut seeds: Vec<BitVector> = (0..1u64 << spec.d())
            .map(|i| BitVector::from_u64(i, spec.d()))
            .collect();
        seeds.shuffle(&mut ChaCha8Rng::seed_from_u64(0));
        seeds.truncate(1 << h);
        let dist = SeedDistribution::UniformOnSubset { d: spec.d(), seeds };
        // reported, not compared: the design constants assume uniform seeds
        let nu = measure_delta_universal(&spec, &dist)?;
        writeln!(
            out,
            "delta with seed h = {h}: {} (informational)",
            frac(&nu.delta)
        )
        .unwrap();
        dists.push((dist, h));
    }

    if spec.n() > VERIFY_MAX_N {
        writeln!(out, "leftover checks skipped: n > {VERIFY_MAX_N}").unwrap();
    } else if family_bound(&spec, 1.0).is_err() {
        writeln!(out, "leftover checks skipped: no bound for this family").unwrap();
    } else {
        for (dist, h) in &dists {
            for t in 1..=spec.n() {
                for select in 0..args.sources {
                    let src = flat_source(spec.n(), t, select)?;
                    let rep = empirical_leftover(&spec, dist, &src, LeftoverMode::Exhaustive)?;
                    line(
                        &mut out,
                        "leftover",
                        t.to_string(),
                        h.to_string(),
                        format!("{:.6e}", rep.measured),
                        format!("{:.6e}", rep.applicable_bound().value()),
                        rep.within_bound(),
                    );
                }
            }
        }
    }
    if let Some(path) = &args.csv {
        write_csv(path, &rows)?;
    }
    if failures > 0 {
        return Err(CliError::VerificationFailed {
            report: out,
            failures,
        });
    }
    writeln!(out, "all checks within bounds").unwrap();
    Ok(out)
}

fn bound_rows(
    spec: &FamilySpec,
    args: &BoundsArgs,
    t: f64,
) -> Result<Vec<(String, String)>, CliError> {
    let mut rows = Vec::new();
    let mut push = |k: &str, v: String| rows.push((k.to_string(), v));
    push("family", spec.to_string());
    push("n", spec.n().to_string());
    push("m", spec.m().to_string());
    push("d", spec.d().to_string());
    push("t", t.to_string());
    let claims = spec.claims();
    for route in Route::ALL {
        if let Some(b) = family_bound_via(spec, t, route) {
            push(route.id(), b.epsilon.to_string());
        }
    }
    if let Some(d) = claims.delta_universal {
        let q = bound_universal_quantum(d as f64, spec.m() as f64, t, args.eta);
        push(
            "universal-quantum",
            format!("{} (eta = {:.4e})", q.epsilon, q.eta),
        );
    }
    if let Some(o) = spec.origin() {
        let tt = t as usize;
        if let Ok(g) = g_bounds(spec.n(), o.l, spec.m(), t, args.eta) {
            push("g-classical", g.classical.to_string());
            push(
                "g-quantum",
                format!("{} (eta = {:.4e})", g.quantum.epsilon, g.quantum.eta),
            );
        }
        if o.variant == GVariant::F4 {
            if let Ok(e) = f4_bound(spec.n(), spec.m(), tt) {
                push("f4-quantum", e.to_string());
            }
        }
    }
    let best = family_bound(spec, t).ok();
    if let Some(dd) = claims.delta_dual {
        push(
            "seed-lower-bound-dual",
            format!(
                "{:.3}",
                seed_lower_bound_dual(spec.n() as f64, spec.m() as f64, dd as f64)
            ),
        );
    }
    if let Some(b) = &best {
        if b.epsilon.log2() <= 0.0 {
            push(
                "seed-lower-bound",
                format!(
                    "{:.3}",
                    extractor_seed_lower_bound(spec.n() as f64, spec.m() as f64, t, b.epsilon)
                ),
            );
        }
    }
    match (args.seed_minentropy, &best) {
        (Some(h), Some(b)) if h < spec.d() as f64 => {
            let d = spec.d() as f64;
            push(
                "penalized-collision",
                penalty_nonuniform(b.epsilon, d, h, PenaltyRoute::Collision)?.to_string(),
            );
            push(
                "penalized-direct",
                penalty_nonuniform(b.epsilon, d, h, PenaltyRoute::Direct)?.to_string(),
            );
        }
        (Some(h), _) if h > spec.d() as f64 => {
            return Err(CliError::Usage(format!(
                "seed min-entropy {h} exceeds d = {}",
                spec.d()
            )))
        }
        (Some(_), _) => push("penalty", "none (h = d)".into()),
        _ => {}
    }
    Ok(rows)
}

pub fn bounds(args: &BoundsArgs) -> Result<String, CliError> {
    let n = args
        .family
        .n
        .ok_or_else(|| CliError::Usage("--n is required".into()))?;
    let t = args
        .family
        .t
        .ok_or_else(|| CliError::Usage("--t is required".into()))? as f64;
    let (spec, padding) = args.family.padded(n)?;
    let mut rows = bound_rows(&spec, args, t)?;
    if padding > 0 {
        rows.insert(1, ("padding".into(), padding.to_string()));
    }
    let mut out = String::new();
    for (k, v) in &rows {
        writeln!(out, "{k:<24} {v}").unwrap();
    }
    if let Some(path) = &args.csv {
        let mut csv_rows = vec![vec!["quantity".to_string(), "value".to_string()]];
        csv_rows.extend(rows.into_iter().map(|(k, v)| vec![k, v]));
        write_csv(path, &csv_rows)?;
    }
    Ok(out)
}

pub fn compare(args: &CompareArgs) -> Result<String, CliError> {
    let regime = RegimeParams::new(args.alpha, args.beta, args.gamma, args.n)?;
    let table = comparison_table(regime)?;
    let mut out = table.to_string();
    writeln!(out, "\nasymptotic forms").unwrap();
    let sym =
        |c: &Option<dualhash::security::Cell>| c.as_ref().map_or("-".to_string(), |c| c.symbolic());
    for row in &table.rows {
        writeln!(
            out,
            "{:<20} t_C = {:<20} t_Q = {:<20} h = {}",
            row.scheme.label(),
            sym(&row.t_classical),
            sym(&row.t_quantum),
            row.h.symbolic()
        )
        .unwrap();
    }
    writeln!(
        out,
        "fixed points: t3 {} iterations, t4 {} iterations",
        table.t3.iterations, table.t4.iterations
    )
    .unwrap();
    if let Some(path) = &args.csv {
        let num = |c: &Option<dualhash::security::Cell>| {
            c.as_ref().map_or(String::new(), |c| c.numeric())
        };
        let mut rows = vec![vec![
            "scheme".to_string(),
            "t_classical".into(),
            "t_quantum".into(),
            "h".into(),
            "t_classical_form".into(),
            "t_quantum_form".into(),
            "h_form".into(),
        ]];
        for row in &table.rows {
            rows.push(vec![
                row.scheme.label().into(),
                num(&row.t_classical),
                num(&row.t_quantum),
                row.h.numeric(),
                sym(&row.t_classical),
                sym(&row.t_quantum),
                row.h.symbolic(),
            ]);
        }
        write_csv(path, &rows)?;
    }
    Ok(out)
}
