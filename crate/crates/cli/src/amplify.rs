use std::fmt::Write as _;
use std::fs;

use dualhash::bitlinalg::BitVector;
use dualhash::families::{evaluate, FamilySpec};
use dualhash::security::{family_bound, penalty_nonuniform, PenaltyRoute};

use crate::args::AmplifyArgs;
use crate::header::{KeyFileHeader, VERSION};
use crate::CliError;

#[derive(Debug)]
pub struct AmplifyOutcome {
    pub header: KeyFileHeader,
    pub output: BitVector,
    pub report: String,
}

/// The first `d` bits of the seed bytes, LSB first within each byte.
pub fn parse_seed(bytes: &[u8], d: usize) -> Result<BitVector, CliError> {
    let found = bytes.len() * 8;
    if found < d {
        return Err(CliError::ShortSeed { needed: d, found });
    }
    Ok(BitVector::from_bytes(bytes, d).expect("length checked"))
}

fn seed_bytes(args: &AmplifyArgs) -> Result<Vec<u8>, CliError> {
    match (&args.seed_file, &args.seed_hex) {
        (Some(path), _) => Ok(fs::read(path)?),
        (None, Some(hex)) => {
            hex::decode(hex.trim()).map_err(|e| CliError::Usage(format!("bad --seed-hex: {e}")))
        }
        (None, None) => Err(CliError::Usage(
            "a seed is required (--seed-file or --seed-hex)".into(),
        )),
    }
}

pub fn amplify(args: &AmplifyArgs) -> Result<AmplifyOutcome, CliError> {
    let input = fs::read(&args.input)?;
    let available = input.len() * 8;
    let n = args.family.n.unwrap_or(available);
    if n == 0 || n > available {
        return Err(CliError::Usage(format!(
            "input file holds {available} bits, --n asks for {n}"
        )));
    }
    let (spec, padding) = args.family.padded(n)?;
    let seed = parse_seed(&seed_bytes(args)?, spec.d())?;
    let x = BitVector::from_bytes(&input, n)
        .expect("length checked")
        .resized(spec.n());
    let output = evaluate(&spec, &seed, &x)?;

    let header = KeyFileHeader {
        version: VERSION,
        n: n as u64,
        m: spec.m() as u64,
        d: spec.d() as u64,
        family: spec.clone(),
        padding: padding as u64,
        body_bits: spec.m() as u64,
    };
    let mut file = header.to_bytes()?;
    file.extend_from_slice(&output.to_bytes());
    fs::write(&args.out, file)?;

    let report = report(&spec, n, padding, args)?;
    Ok(AmplifyOutcome {
        header,
        output,
        report,
    })
}

fn report(
    spec: &FamilySpec,
    n: usize,
    padding: usize,
    args: &AmplifyArgs,
) -> Result<String, CliError> {
    let mut r = String::new();
    let claims = spec.claims();
    let show = |v: Option<u128>| v.map_or("-".to_string(), |v| v.to_string());
    writeln!(r, "family      {spec}").unwrap();
    writeln!(r, "input bits  {n} (+{padding} zero padding)").unwrap();
    writeln!(r, "output bits {}", spec.m()).unwrap();
    writeln!(r, "seed bits   {}", spec.d()).unwrap();
    writeln!(
        r,
        "delta       universal {} / dual {}",
        show(claims.delta_universal),
        show(claims.delta_dual)
    )
    .unwrap();
    if let Some(c) = &claims.concat {
        writeln!(
            r,
            "layers      inner universal {} / inner dual {} / outer dual {} (l = {})",
            show(c.inner_universal),
            show(c.inner_dual),
            show(c.outer_dual),
            c.l
        )
        .unwrap();
    }
    if let Some(want) = args.family.m.filter(|&m| m != spec.m()) {
        writeln!(
            r,
            "note        requested m = {want}, nearest buildable m = {}",
            spec.m()
        )
        .unwrap();
    }
    let Some(t) = args.family.t else {
        writeln!(r, "epsilon     not computed (pass --t)").unwrap();
        return Ok(r);
    };
    let b = family_bound(spec, t as f64)?;
    writeln!(
        r,
        "epsilon     {} at t = {t} [{}], uniform seed",
        b.epsilon, b.formula_id
    )
    .unwrap();
    if let Some(h) = args.seed_minentropy {
        let d = spec.d() as f64;
        let coll = penalty_nonuniform(b.epsilon, d, h, PenaltyRoute::Collision)?;
        let direct = penalty_nonuniform(b.epsilon, d, h, PenaltyRoute::Direct)?;
        writeln!(
            r,
            "epsilon     {coll} with seed min-entropy {h} (collision route)"
        )
        .unwrap();
        writeln!(
            r,
            "epsilon     {direct} with seed min-entropy {h} (direct route)"
        )
        .unwrap();
    }
    Ok(r)
}
