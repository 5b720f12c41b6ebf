use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dualhash::families::{
    make_f1, make_f2, make_f3, make_f4, make_g, make_mt, nearest_feasible, BaseKind, FamilySpec,
};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "dualhash",
    version,
    about = "Privacy amplification with dual universal hash families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hash a key file down to m bits with a supplied seed.
    Amplify(AmplifyArgs),
    /// Time hashing at several input lengths.
    Bench(BenchArgs),
    /// Field sizes with circulant arithmetic.
    Na {
        #[command(subcommand)]
        command: NaCommand,
    },
    /// Measure universality and leftover distance exhaustively.
    Verify(VerifyArgs),
    /// Security bounds for a family.
    Bounds(BoundsArgs),
    /// Seed length and min-entropy across constructions.
    Compare(CompareArgs),
}

#[derive(Subcommand, Debug)]
pub enum NaCommand {
    /// Smallest admissible k at or above LOWER.
    Find {
        lower: u64,
        /// Candidates to test before giving up.
        #[arg(long, default_value_t = 1_000_000)]
        max_candidates: u64,
    },
    /// Whether K is admissible.
    Check { k: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Mt,
    F1,
    F2,
    F3,
    F4,
    G,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    /// Input bits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Output bits.
    #[arg(long)]
    pub m: Option<usize>,
    /// Block count for f1/f2, intermediate length for g.
    #[arg(long)]
    pub l: Option<usize>,
    /// Source min-entropy in bits.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AmplifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Raw key file; n defaults to all of its bits.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(
        long,
        conflicts_with = "seed_hex",
        required_unless_present = "seed_hex"
    )]
    pub seed_file: Option<PathBuf>,
    #[arg(long)]
    pub seed_hex: Option<String>,
    /// Min-entropy of the seed, when it is not uniform.
    #[arg(long)]
    pub seed_minentropy: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "f1")]
    pub family: FamilyName,
    /// Comma-separated input lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Output bits; by default about n/2 (for f1, two blocks over the
    /// smallest admissible field of at least n/2 bits).
    #[arg(long)]
    pub m: Option<usize>,
    /// Minimum seconds per measurement.
    #[arg(long, default_value_t = 0.2)]
    pub min_time: f64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Also check seeds uniform on 2^h of the 2^d seed values.
    #[arg(long)]
    pub seed_minentropy: Option<usize>,
    /// Flat sources drawn per min-entropy value.
    #[arg(long, default_value_t = 2)]
    pub sources: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub seed_minentropy: Option<f64>,
    /// Fixed η for the quantum bounds; minimized when absent.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn need(v: Option<usize>, flag: &str, family: FamilyName) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {family:?}")))
}

impl FamilyArgs {
    /// The family for exactly `n` input bits.
    pub fn exact(&self) -> Result<FamilySpec, CliError> {
        let n = need(self.n, "n", self.family)?;
        let (spec, padding) = self.padded(n)?;
        if padding != 0 {
            return Err(CliError::Infeasible(format!(
                "{} needs n = {}, not {n}",
                spec.name(),
                spec.n()
            )));
        }
        Ok(spec)
    }

    /// A family for at least `n` input bits, with the padding it needs.
    pub fn padded(&self, n: usize) -> Result<(FamilySpec, usize), CliError> {
        let f = self.family;
        let m = need(self.m, "m", f)?;
        let spec = match (f, self.l) {
            (FamilyName::Mt, _) => make_mt(n, m)?,
            (FamilyName::F1, Some(l)) => make_f1(m, l)?,
            (FamilyName::F2, Some(l)) => {
                if l < 2 || m % (l - 1) != 0 {
                    return Err(CliError::Infeasible(format!(
                        "f2 with {l} blocks needs (l − 1) | m"
                    )));
                }
                make_f2(m / (l - 1), l)?
            }
            (FamilyName::F1, None) => nearest_feasible(BaseKind::F1, n, m)?.spec,
            (FamilyName::F2, None) => nearest_feasible(BaseKind::F2, n, m)?.spec,
            (FamilyName::G, l) => make_g(n, need(l, "l", f)?, m)?,
            (FamilyName::F3, _) => make_f3(n, m, need(self.t, "t", f)?)?,
            (FamilyName::F4, _) => make_f4(n, m, need(self.t, "t", f)?)?,
        };
        if spec.n() < n {
            return Err(CliError::Infeasible(format!(
                "{} takes {} input bits, fewer than {n}",
                spec.name(),
                spec.n()
            )));
        }
        let padding = spec.n() - n;
        Ok((spec, padding))
    }
}
