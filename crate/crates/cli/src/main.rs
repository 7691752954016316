mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quasitree_core::coarse::HalfInt;

#[derive(Parser, Debug)]
#[command(name = "quasitree", version, about = "Certified planar patches, bottleneck scans and growth witnesses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a patch of one of the built-in families.
    Generate(GenerateArgs),
    /// Ball sizes around chosen centers and the fitted growth slope.
    Profile(ProfileArgs),
    /// Scan vertex pairs for bottleneck violations at one or more scales.
    CheckBp(CheckBpArgs),
    /// Quadratic growth witness on a triangulated patch.
    Witness(WitnessArgs),
    /// Growth witness on a patch whose cycle space is generated by short cycles.
    KscWitness(KscWitnessArgs),
    /// Check that every monochromatic component of a two-coloring is small.
    Coloring(ColoringArgs),
    /// Chase monochromatic components along a bottleneck violation.
    Escalate(EscalateArgs),
    /// Audit a patch file against its recorded generator.
    Validate(ValidateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    Lattice,
    SquareLattice,
    AlphaTree,
    Cone,
    GluedTrees,
    ParabolicCone,
    GridChain,
    LongCycleChain,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    pub family: FamilyName,
    #[arg(long)]
    pub radius: Option<u32>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub leaves: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Patch file to write; the summary goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PatchInput {
    #[arg(long)]
    pub patch: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub input: PatchInput,
    /// `roots`, `all`, or a number of sampled centers.
    #[arg(long, default_value = "roots")]
    pub centers: String,
    #[arg(long)]
    pub rmin: Option<u32>,
    #[arg(long)]
    pub rmax: Option<u32>,
}

#[derive(Args, Debug)]
pub struct PairSelection {
    /// Test only this pair.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub pair: Option<Vec<usize>>,
    /// Number of sampled pairs.
    #[arg(long, default_value_t = 200)]
    pub budget: usize,
}

#[derive(Args, Debug)]
pub struct CheckBpArgs {
    #[command(flatten)]
    pub input: PatchInput,
    /// Scales to test, e.g. `--delta 1,2.5,4`.
    #[arg(long, required = true, value_delimiter = ',')]
    pub delta: Vec<HalfInt>,
    #[command(flatten)]
    pub pairs: PairSelection,
    /// Test every pair of eligible vertices instead of sampling.
    #[arg(long, conflicts_with_all = ["pair"])]
    pub exhaustive: bool,
    /// Smallest pair distance to sample.
    #[arg(long, default_value_t = 1)]
    pub min_dist: u32,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub input: PatchInput,
    #[arg(long)]
    pub r: u32,
    #[command(flatten)]
    pub pairs: PairSelection,
}

#[derive(Args, Debug)]
pub struct KscWitnessArgs {
    #[command(flatten)]
    pub witness: WitnessArgs,
    #[arg(long)]
    pub k: usize,
    /// Verify the short-cycle property on the whole patch first.
    #[arg(long)]
    pub check_ksc: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ColoringChoice {
    /// The explicit grid-chain coloring at this scale.
    #[arg(long)]
    pub grid_chain_scale: Option<usize>,
    /// One `0`/`1` token per vertex.
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Disjoint balls of this radius colored 1.
    #[arg(long)]
    pub balls: Option<u32>,
    /// Stripes of this width on a triangular lattice.
    #[arg(long)]
    pub stripes: Option<u32>,
    /// Rings of this width around the first center.
    #[arg(long)]
    pub rings: Option<u32>,
    /// Depth from the centers mod 2.
    #[arg(long)]
    pub depth_parity: bool,
}

#[derive(Args, Debug)]
pub struct ColoringArgs {
    #[command(flatten)]
    pub input: PatchInput,
    #[command(flatten)]
    pub choice: ColoringChoice,
    /// Diameter threshold; defaults to `2s + 1` for the grid chain.
    #[arg(long)]
    pub r: Option<u32>,
    /// Also write the coloring itself here.
    #[arg(long)]
    pub write_coloring: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EscalateArgs {
    #[command(flatten)]
    pub input: PatchInput,
    #[command(flatten)]
    pub choice: ColoringChoice,
    #[arg(long)]
    pub r: u32,
    #[command(flatten)]
    pub pairs: PairSelection,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub patch: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Profile(a) => commands::profile(a),
        Command::CheckBp(a) => commands::check_bp(a),
        Command::Witness(a) => commands::witness(a, None),
        Command::KscWitness(a) => commands::witness(a.witness, Some((a.k, a.check_ksc))),
        Command::Coloring(a) => commands::coloring(a),
        Command::Escalate(a) => commands::escalate(a),
        Command::Validate(a) => commands::validate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("quasitree: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
