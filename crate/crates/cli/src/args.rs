use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "z2cross",
    version,
    about = "Crossed products of finite-dimensional *-algebras by order-two automorphisms"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Absolute tolerance (overrides Z2CROSS_ABS_TOL).
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Relative tolerance (overrides Z2CROSS_REL_TOL).
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split A into the fixed and odd parts of the automorphism.
    Grading(Source),
    /// Build the doubled-matrix crossed product and check its structure.
    CrossedProduct(Source),
    /// Classify every irreducible representation of the crossed product.
    Classify(Source),
    /// Induce each irreducible representation of A and test irreducibility.
    Induce(Source),
    /// Count irreducible classes of the crossed product by kind.
    Census(Source),
    /// Run a brute-force lemma suite or the randomized induction campaign.
    Verify(VerifyArgs),
    /// K0 of the algebra, or of its crossed product with --crossed.
    K0(K0Args),
    /// K0 maps of the automorphism and of the embedding into the crossed product.
    K0Map(Source),
    /// Smith normal form of an integer matrix.
    Snf(SnfArgs),
    /// K-group of an amalgamated free product from pushout data.
    PushoutK(PushoutArgs),
    /// Evaluate a bundled K-theory case.
    Paper(PaperArgs),
    /// Run the full pipeline on a built-in model.
    Demo(DemoArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    M2,
    CircleFlip,
    CircleConj,
}

#[derive(Clone, Debug, Args)]
pub struct Source {
    /// AlgebraFile (JSON, format 1).
    #[arg(long, conflicts_with = "model")]
    pub file: Option<PathBuf>,

    /// Built-in model.
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,

    /// Number of points for circle models.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LemmaName {
    Central,
    Central2,
    Rep0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CampaignModeArg {
    Random,
    Identity,
    Swap,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub lemma: LemmaName,

    /// Pairs per dimension (lemmas) or trials (rep0).
    #[arg(long, default_value_t = 200)]
    pub trials: u64,

    /// Largest block size for rep0.
    #[arg(long, default_value_t = 3)]
    pub max_block: usize,

    /// Instance generator for rep0.
    #[arg(long, value_enum, default_value_t = CampaignModeArg::Random)]
    pub mode: CampaignModeArg,

    /// Smallest matrix size for the lemma suites.
    #[arg(long, default_value_t = 2)]
    pub min_dim: usize,

    /// Largest matrix size for the lemma suites.
    #[arg(long, default_value_t = 6)]
    pub max_dim: usize,
}

#[derive(Clone, Debug, Args)]
pub struct K0Args {
    #[command(flatten)]
    pub source: Source,

    /// Compute K0 of the crossed product instead of the algebra.
    #[arg(long)]
    pub crossed: bool,
}

#[derive(Clone, Debug, Args)]
pub struct SnfArgs {
    /// Integer matrix as JSON rows, e.g. '[[2,4],[6,8]]'.
    #[arg(long)]
    pub matrix: String,
}

#[derive(Clone, Debug, Args)]
pub struct PushoutArgs {
    /// JSON object with g1, g2, g_g, i1, i2.
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    Alpha,
    Beta,
}

#[derive(Clone, Debug, Args)]
pub struct PaperArgs {
    #[arg(long = "case", value_enum)]
    pub case: CaseName,

    /// Fixture data file; defaults to the bundled copy.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct DemoArgs {
    #[arg(long, value_enum)]
    pub model: ModelName,

    #[arg(long, default_value_t = 8)]
    pub n: usize,
}
