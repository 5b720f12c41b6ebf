use std::fmt::Write as _;
use std::time::Instant;

use dualhash::bitlinalg::{cyclic_convolve_f2_with, BitVector, ConvolutionStrategy};
use dualhash::facm::find_na_at_least;
use dualhash::families::{evaluate, make_f1};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{BenchArgs, FamilyArgs, FamilyName};
use crate::tables::write_csv;
use crate::CliError;

/// Mean seconds per call, repeating until `min_time` has elapsed.
fn time_it(min_time: f64, mut f: impl FnMut() -> Result<(), CliError>) -> Result<f64, CliError> {
    let start = Instant::now();
    let mut reps = 0u32;
    loop {
        f()?;
        reps += 1;
        let spent = start.elapsed().as_secs_f64();
        if spent >= min_time {
            return Ok(spent / reps as f64);
        }
    }
}

pub fn bench(args: &BenchArgs) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut out = String::new();
    let mut rows = vec![vec![
        "n".to_string(),
        "family".into(),
        "padded_n".into(),
        "m".into(),
        "seconds".into(),
        "mbit_per_s".into(),
        "ratio".into(),
    ]];
    writeln!(
        out,
        "{:>10} {:>10} {:>10} {:>12} {:>10} {:>7}  family",
        "n", "padded", "m", "time (ms)", "Mbit/s", "ratio"
    )
    .unwrap();
    let mut prev: Option<f64> = None;
    for &n in &args.n {
        let spec = match (args.family, args.m) {
            // two blocks over the smallest circulant field covering n/2
            (FamilyName::F1, None) => {
                let k = find_na_at_least(n.div_ceil(2) as u64)
                    .map_err(|e| CliError::Infeasible(e.to_string()))?;
                make_f1(k.k(), 2)?
            }
            (family, m) => {
                let fa = FamilyArgs {
                    family,
                    n: Some(n),
                    m: Some(m.unwrap_or(n / 2)),
                    l: None,
                    t: None,
                };
                fa.padded(n)?.0
            }
        };
        let seed = BitVector::random(spec.d(), &mut rng);
        let x = BitVector::random(spec.n(), &mut rng);
        let secs = time_it(args.min_time, || {
            evaluate(&spec, &seed, &x)?;
            Ok(())
        })?;
        let rate = n as f64 / secs / 1e6;
        let ratio = prev.map_or("-".to_string(), |p| format!("{:.2}", secs / p));
        writeln!(
            out,
            "{:>10} {:>10} {:>10} {:>12.3} {:>10.2} {:>7}  {}",
            n,
            spec.n(),
            spec.m(),
            secs * 1e3,
            rate,
            ratio,
            spec.name()
        )
        .unwrap();
        rows.push(vec![
            n.to_string(),
            spec.name(),
            spec.n().to_string(),
            spec.m().to_string(),
            format!("{secs:.6e}"),
            format!("{rate:.4}"),
            ratio,
        ]);
        prev = Some(secs);
    }

    writeln!(out, "\ncyclic convolution kernels").unwrap();
    writeln!(
        out,
        "{:>8} {:>14} {:>14}",
        "length", "schoolbook us", "transform us"
    )
    .unwrap();
    let mut crossover = None;
    for len in [16usize, 64, 256, 1024, 4096, 16384, 65536, 131072, 262144] {
        let a = BitVector::random(len, &mut rng);
        let b = BitVector::random(len, &mut rng);
        let per = |s| {
            time_it(args.min_time / 8.0, || {
                cyclic_convolve_f2_with(&a, &b, s).map_err(|e| CliError::Usage(e.to_string()))?;
                Ok(())
            })
        };
        let school = per(ConvolutionStrategy::Schoolbook)?;
        let fast = per(ConvolutionStrategy::Transform)?;
        if crossover.is_none() && fast < school {
            crossover = Some(len);
        }
        writeln!(
            out,
            "{:>8} {:>14.3} {:>14.3}",
            len,
            school * 1e6,
            fast * 1e6
        )
        .unwrap();
    }
    match crossover {
        Some(len) => writeln!(out, "transform faster from length {len}").unwrap(),
        None => writeln!(out, "schoolbook faster at every tested length").unwrap(),
    }
    if let Some(path) = &args.csv {
        write_csv(path, &rows)?;
    }
    Ok(out)
}
