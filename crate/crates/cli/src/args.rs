use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use xxpaths::{Limits, C64};

use crate::parse::{parse_complex, FloatRange, IntRange};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "xxpaths",
    version,
    about = "XX0 chain correlators, Schur functions and lattice-path counts"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for spectral sums (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest number of objects a single enumeration may visit.
    #[arg(long = "enumeration-cap", global = true, default_value_t = Limits::DEFAULT_ENUMERATION)]
    pub enumeration_cap: u128,
    /// Largest dimension of a dense sector Hamiltonian.
    #[arg(long = "sector-cap", global = true, default_value_t = Limits::DEFAULT_SECTOR_DIMENSION)]
    pub sector_cap: usize,
    /// Multiply every verification tolerance by this factor.
    #[arg(long = "tolerance-scale", global = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,
    /// JSON file with the command and its flags, e.g.
    /// {"command": "verify persistence", "M": 6, "N": 2, "n": 1, "t": 0.5}.
    /// Flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Evaluate a Schur function.
    Schur(SchurArgs),
    /// Count lattice paths, nests and watermelons.
    #[command(subcommand)]
    Paths(PathsCommand),
    /// Bethe momenta and energies of a sector, with the diagonalised spectrum.
    ChainSpectrum(GeometryArgs),
    /// Correlation and generating functions.
    #[command(subcommand)]
    Correlator(CorrelatorCommand),
    /// Check an identity; exit code 1 if any check fails.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Tabulate a quantity over a parameter grid.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Args, Debug, Clone)]
pub struct GeometryArgs {
    /// Largest site index; the ring has M+1 sites.
    #[arg(long = "M")]
    pub m: usize,
    /// Number of down spins.
    #[arg(long = "N")]
    pub n_down: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMode {
    Symbolic,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("point").required(true).args(["at_ones", "at", "q"])))]
pub struct SchurArgs {
    /// Shape, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<usize>,
    /// Number of variables N.
    #[arg(long)]
    pub vars: usize,
    /// Evaluate at (1, ..., 1) exactly.
    #[arg(long)]
    pub at_ones: bool,
    /// Evaluate at a complex point, e.g. 0.5,1+2i,-1i.
    #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub at: Option<Vec<C64>>,
    /// Exact polynomials at (q, ..., q^N) and (1, q, ..., q^(N-1)).
    #[arg(long, value_enum)]
    pub q: Option<QMode>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum PathsCommand {
    /// Random-turns vicious-walker paths between two configurations.
    Count(PathCountArgs),
    /// Nests encoding the tableaux of a shape.
    Nests(NestArgs),
    /// Watermelons with a ferromagnetic string of length n.
    Watermelon(WatermelonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PathCountArgs {
    #[arg(long = "M")]
    pub m: usize,
    /// Start sites, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub start: Vec<usize>,
    /// End sites, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub end: Vec<usize>,
    /// Number of ticks.
    #[arg(long = "K")]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct NestArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<usize>,
    /// Number of paths.
    #[arg(long = "N")]
    pub n: usize,
    /// Emit conjugate nests in a strip of height M.
    #[arg(long, requires = "m")]
    pub conjugate: bool,
    #[arg(long = "M")]
    pub m: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct WatermelonArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Ferromagnetic string length.
    #[arg(long = "n", default_value_t = 0)]
    pub n: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum CorrelatorCommand {
    /// G(j, m | t).
    OneParticle(OneParticleArgs),
    /// F(j, m | z).
    Laplace(LaplaceArgs),
    /// G(j; l | t) by determinant and spectral sum.
    Multi(MultiArgs),
    /// Path count as a trigonometric sum.
    Trig(TrigArgs),
    /// Transition amplitude between Schur-weighted states.
    Transition(TransitionArgs),
    /// Persistence of a ferromagnetic string.
    Persistence(PersistenceArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OneParticleArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long = "m")]
    pub site: usize,
    /// Complex time, e.g. 0.5 or 0+2i.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: C64,
}

#[derive(Args, Debug, Clone)]
pub struct LaplaceArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long)]
    pub j: usize,
    #[arg(long = "m")]
    pub site: usize,
    /// Complex argument with |z| < 1/2.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: C64,
}

#[derive(Args, Debug, Clone)]
pub struct MultiArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub j: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: C64,
}

#[derive(Args, Debug, Clone)]
pub struct TrigArgs {
    #[arg(long = "M")]
    pub m: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub j: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub l: Vec<usize>,
    #[arg(long = "K")]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct TransitionArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long = "n", default_value_t = 0)]
    pub n: usize,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: C64,
    /// The values u_j^2 (default: all ones).
    #[arg(long = "u-squared", value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub u_squared: Option<Vec<C64>>,
    /// The values v_j^2 (default: all ones).
    #[arg(long = "v-squared", value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
    pub v_squared: Option<Vec<C64>>,
}

#[derive(Args, Debug, Clone)]
pub struct PersistenceArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub t: C64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyCommand {
    /// Trigonometric sum against weighted walker counts.
    EqualityOfSums(EqualityArgs),
    /// Boxed Cauchy-Binet sum against its determinant form.
    CauchyBinet(CauchyBinetArgs),
    /// Spectral persistence against exact diagonalisation.
    Persistence(VerifyPersistenceArgs),
    /// Plane-partition product formula against brute force.
    Macmahon(MacmahonArgs),
    /// Exact q-polynomial identity chain.
    QIdentity(QIdentityArgs),
    /// Bethe energies against the sector spectrum.
    Spectrum(GeometryArgs),
    /// Determinant against spectral sum for G(j; l | t).
    Proposition(PropositionArgs),
    /// Walker counts against trigonometric sums.
    PathCounts(VerifyPathArgs),
    /// Alternant ratio against tableau sums.
    Schur(VerifySchurArgs),
}

#[derive(Args, Debug, Clone)]
pub struct EqualityArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long = "K")]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct CauchyBinetArgs {
    /// Number of variables.
    #[arg(long = "N")]
    pub n_vars: usize,
    /// Upper bound on lambda_1.
    #[arg(long = "L")]
    pub upper: usize,
    /// Lower bound on lambda_N.
    #[arg(long = "n", default_value_t = 0)]
    pub lower: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyPersistenceArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long)]
    pub t: f64,
}

#[derive(Args, Debug, Clone)]
pub struct MacmahonArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long = "K")]
    pub k: usize,
}

#[derive(Args, Debug, Clone)]
pub struct QIdentityArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long = "n", default_value_t = 0)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct PropositionArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyPathArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Largest number of ticks.
    #[arg(long = "K")]
    pub k: u32,
}

#[derive(Args, Debug, Clone)]
pub struct VerifySchurArgs {
    /// Number of variables.
    #[arg(long = "N")]
    pub n_vars: usize,
    /// A single shape; otherwise every shape up to --max-weight.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<usize>>,
    #[arg(long = "max-weight", default_value_t = 8)]
    pub max_weight: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SweepCommand {
    /// Persistence over string lengths and times.
    Persistence(SweepPersistenceArgs),
    /// Walker counts and trigonometric sums for every pair of configurations.
    PathCounts(SweepPathArgs),
    /// Plane-partition counts.
    Macmahon(SweepMacmahonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SweepPersistenceArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// String lengths: a value, a list, or an inclusive range a..b.
    #[arg(long = "n")]
    pub n: IntRange,
    /// Times: a value, a list, or start:step:stop inclusive.
    #[arg(long, allow_hyphen_values = true)]
    pub t: FloatRange,
}

#[derive(Args, Debug, Clone)]
pub struct SweepPathArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[arg(long = "K")]
    pub k: IntRange,
}

#[derive(Args, Debug, Clone)]
pub struct SweepMacmahonArgs {
    #[arg(long = "N")]
    pub n: IntRange,
    #[arg(long = "K")]
    pub k: IntRange,
}
