use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "uniopt", version, about = "One-dimensional optimization: bounded minima, critical points, plots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimize f(x) on [lo, hi]
    Minimize(SolveArgs),
    /// Maximize f(x) on [lo, hi] by minimizing -f(x)
    Maximize(SolveArgs),
    /// Locate and classify critical points of f on [lo, hi]
    CriticalPoints(AnalyzeArgs),
    /// Split [lo, hi] into increasing and decreasing pieces
    Monotonic(AnalyzeArgs),
    /// Built-in applied problems
    Model {
        #[command(subcommand)]
        model: ModelCommand,
    },
    /// Sample f on [lo, hi] and write CSV or SVG
    Plot(PlotArgs),
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Longest pipe carried flat around a corner between corridors of widths a and b
    Pipe(PipeArgs),
    /// Seat distance maximizing the angle subtended by a screen spanning [bottom, top]
    Cinema(CinemaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brent,
    Golden,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Brent => "brent",
            MethodArg::Golden => "golden",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Pipe,
    Cinema,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MarkArg {
    Min,
    Max,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit a JSON report instead of text
    #[arg(long)]
    pub json: bool,
    /// Measure wall-clock time; otherwise elapsed_ms is reported as 0 so output is reproducible
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SolverFlags {
    /// x tolerance
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Brent)]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Function of x, e.g. "3/sin(x) + 6/cos(x)"
    #[arg(allow_hyphen_values = true)]
    pub expression: String,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    #[command(flatten)]
    pub solver: SolverFlags,
    /// Bounds are given, and x is reported, in degrees
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(allow_hyphen_values = true)]
    pub expression: String,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    /// Derivative sampling grid size
    #[arg(long, default_value_t = 1001)]
    pub grid: usize,
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PipeArgs {
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long, default_value_t = 6.0)]
    pub b: f64,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CinemaArgs {
    /// Screen top above eye level
    #[arg(long, default_value_t = 10.0)]
    pub top: f64,
    /// Screen bottom above eye level
    #[arg(long, default_value_t = 3.0)]
    pub bottom: f64,
    /// Search interval for the distance; defaults to [1e-6 * top, 100 * top]
    #[arg(long)]
    pub lo: Option<f64>,
    #[arg(long)]
    pub hi: Option<f64>,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Function of x; omit when plotting a built-in model
    #[arg(allow_hyphen_values = true)]
    pub expression: Option<String>,
    #[arg(long, value_enum, conflicts_with = "expression")]
    pub model: Option<ModelArg>,
    #[arg(long, default_value_t = 3.0)]
    pub a: f64,
    #[arg(long, default_value_t = 6.0)]
    pub b: f64,
    #[arg(long, default_value_t = 10.0)]
    pub top: f64,
    #[arg(long, default_value_t = 3.0)]
    pub bottom: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Output file; `.csv` or `.svg`. CSV goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<String>,
    /// Mark the minimum or maximum on the plot
    #[arg(long, value_enum)]
    pub mark: Option<MarkArg>,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    #[arg(long, default_value_t = 500)]
    pub height: u32,
    #[arg(long)]
    pub degrees: bool,
    #[command(flatten)]
    pub output: Output,
}
