use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "seqtrans", version, about = "Sequence transformations, extrapolation and rational approximants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform a sequence and report the full table.
    Accelerate(AccelerateArgs),
    /// Build a rational approximant from power series coefficients and
    /// predict the coefficients that follow its guaranteed order.
    Predict(PredictArgs),
    /// Run several methods on the same input and tabulate them per order.
    Compare(CompareArgs),
    /// List the built-in reference problems.
    ListProblems(OutputArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    F64,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InputArgs {
    /// Text file (one value per line, decimal or p/q) or JSON array.
    #[arg(long, conflicts_with = "problem")]
    pub input: Option<PathBuf>,
    /// Name of a built-in reference problem (see list-problems).
    #[arg(long)]
    pub problem: Option<String>,
    /// Number of terms taken from a reference problem.
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// Read the input values as partial sums instead of terms.
    #[arg(long)]
    pub as_sums: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MethodArgs {
    /// G, L, S, M, C, lambda, F, P, RC or epsilon.
    #[arg(long, default_value = "S")]
    pub family: String,
    /// u, t, d, v or explicit-omega.
    #[arg(long)]
    pub variant: Option<String>,
    /// Values of omega_n for the explicit-omega variant.
    #[arg(long)]
    pub omega: Option<PathBuf>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    /// Shift of the F and RC Richardson variants.
    #[arg(long)]
    pub chi: Option<String>,
    /// Shift of the P Richardson variant.
    #[arg(long)]
    pub zeta: Option<String>,
    /// Schedule of the G family, e.g. "const:1", "m^2", "list:1,4,9".
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AccelerateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Highest order; defaults to the largest the input supports.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = ScalarMode::F64)]
    pub scalar: ScalarMode,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PredictArgs {
    /// Coefficient file or JSON array of gamma_0, gamma_1, ...
    #[arg(long, conflicts_with = "problem")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub problem: Option<String>,
    /// Number of coefficients taken from a reference problem.
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
    /// G, L, S, M or C.
    #[arg(long, default_value = "S")]
    pub family: String,
    #[arg(long, default_value = "d")]
    pub variant: String,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub xi: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Number of predicted coefficients.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = ScalarMode::Rational)]
    pub scalar: ScalarMode,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Further methods as FAMILY or FAMILY:VARIANT (e.g. epsilon, L:u).
    /// Parameters are shared with the primary method.
    #[arg(long = "baseline")]
    pub baselines: Vec<String>,
    /// Reference value for file input without a built-in oracle.
    #[arg(long)]
    pub exact: Option<f64>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long, value_enum, default_value_t = ScalarMode::F64)]
    pub scalar: ScalarMode,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}
