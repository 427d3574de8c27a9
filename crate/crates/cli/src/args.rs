use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tf2m::{ForbiddenMode, Rational, SearchClass, Strategy};

#[derive(Parser, Debug)]
#[command(name = "tf2m", version, about = "Weighted triangle-free 2-matching toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the local-search PTAS.
    Solve(SolveArgs),
    /// Run the 2/3 baseline (ignore triangles, then break them).
    Baseline(SolveArgs),
    /// Exact optimum by branch and bound.
    Exact(ExactArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Build an improving alternating trail between two solutions.
    Witness(WitnessArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Compare PTAS, baseline and oracle on a generated corpus.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Total epsilon, as `a/b` or a decimal with at most 9 fractional digits.
    #[arg(long, value_parser = parse_rational)]
    pub eps: Rational,
    #[arg(long, value_enum, default_value_t = StrategyArg::First)]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = ClassArg::Alternating)]
    pub search_class: ClassArg,
    #[arg(long, value_enum, default_value_t = ForbiddenArg::All)]
    pub forbidden: ForbiddenArg,
    /// Include wall time in the output.
    #[arg(long)]
    pub timing: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ForbiddenArg::All)]
    pub forbidden: ForbiddenArg,
    /// Largest edge count the oracle accepts.
    #[arg(long, default_value_t = tf2m::oracle::DEFAULT_EDGE_LIMIT)]
    pub oracle_limit: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub solution: PathBuf,
    #[arg(long, value_enum, default_value_t = ForbiddenArg::All)]
    pub forbidden: ForbiddenArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    pub instance: PathBuf,
    /// The better solution `A1`.
    pub a1: PathBuf,
    /// The solution to improve, `A2`.
    pub a2: PathBuf,
    #[arg(long, value_parser = parse_rational)]
    pub eps: Rational,
    #[arg(long, value_enum, default_value_t = ForbiddenArg::All)]
    pub forbidden: ForbiddenArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Gnp)]
    pub model: ModelArg,
    /// Edge probability (gnp, triangle-dense, planted-cycle).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Connection radius (geometric).
    #[arg(long, default_value_t = 0.5)]
    pub radius: f64,
    /// Random triangles laid over the base graph (triangle-dense).
    #[arg(long, default_value_t = 3)]
    pub overlays: usize,
    /// `int:LO:HI` or `rational:LO:HI:DEN`.
    #[arg(long, default_value = "int:1:10", value_parser = parse_weights)]
    pub weights: tf2m::WeightDist,
    /// Probability of a self-loop at each vertex.
    #[arg(long, default_value_t = 0.0)]
    pub loops: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of instances.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Comma-separated epsilons.
    #[arg(long, value_delimiter = ',', default_value = "1/2", value_parser = parse_rational)]
    pub eps: Vec<Rational>,
    /// Skip the exact oracle.
    #[arg(long)]
    pub no_oracle: bool,
    #[arg(long, default_value_t = tf2m::oracle::DEFAULT_EDGE_LIMIT)]
    pub oracle_limit: usize,
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory receiving `bench.csv` and `bench.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum StrategyArg {
    First,
    Best,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ClassArg {
    Alternating,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ForbiddenArg {
    All,
    Listed,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModelArg {
    Gnp,
    Geometric,
    TriangleDense,
    PlantedCycle,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::First => Strategy::First,
            StrategyArg::Best => Strategy::Best,
        }
    }
}

impl From<ClassArg> for SearchClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Alternating => SearchClass::Alternating,
            ClassArg::All => SearchClass::All,
        }
    }
}

impl From<ForbiddenArg> for ForbiddenMode {
    fn from(f: ForbiddenArg) -> Self {
        match f {
            ForbiddenArg::All => ForbiddenMode::All,
            ForbiddenArg::Listed => ForbiddenMode::Listed,
        }
    }
}

impl ModelArgs {
    pub fn model(&self) -> tf2m::Model {
        match self.model {
            ModelArg::Gnp => tf2m::Model::Gnp { p: self.p },
            ModelArg::Geometric => tf2m::Model::Geometric { radius: self.radius },
            ModelArg::TriangleDense => tf2m::Model::TriangleDense {
                p: self.p,
                overlays: self.overlays,
            },
            ModelArg::PlantedCycle => tf2m::Model::PlantedCycle { p: self.p },
        }
    }

    pub fn spec(&self, n: usize) -> tf2m::GeneratorSpec {
        tf2m::GeneratorSpec::new(self.model(), n, self.seed)
            .with_weights(self.weights.clone())
            .with_loops(self.loops)
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_weights(s: &str) -> Result<tf2m::WeightDist, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.parse::<u64>().map_err(|_| format!("bad number {x:?} in {s:?}"));
    match parts.as_slice() {
        ["int", lo, hi] => Ok(tf2m::WeightDist::UniformInteger {
            lo: num(lo)?,
            hi: num(hi)?,
        }),
        ["rational", lo, hi, den] => Ok(tf2m::WeightDist::UniformRational {
            lo: num(lo)?,
            hi: num(hi)?,
            den: num(den)?,
        }),
        _ => Err(format!("expected int:LO:HI or rational:LO:HI:DEN, got {s:?}")),
    }
}
