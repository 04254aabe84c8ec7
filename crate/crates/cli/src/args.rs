use catgate::states::FockSpec;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "catgate", version, about = "Cubic-phase cat gate simulator")]
pub struct Cli {
    /// Worker threads for sweeps and Wigner transforms.
    #[arg(long, global = true, env = "CATGATE_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact gate output state with cat diagnostics and fidelities.
    Gate(StateArgs),
    /// Stationary-phase output state.
    Stationary(StateArgs),
    /// Wigner function of the gate output (or of the input with --no-gate).
    Wigner(WignerArgs),
    /// Scalar diagnostics θ, p⁺, α, λ and parity for one (y_m, γ) point.
    Diagnostics(DiagnosticsArgs),
    /// Map a metric over a (y_m, γ) rectangle.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputState {
    Fock { n: usize },
    Coherent { re: f64, im: f64 },
}

impl InputState {
    pub fn fock(&self) -> Option<FockSpec> {
        match *self {
            InputState::Fock { n } => Some(FockSpec::new(n)),
            InputState::Coherent { .. } => None,
        }
    }

    pub fn alpha(&self) -> Option<Complex64> {
        match *self {
            InputState::Coherent { re, im } => Some(Complex64::new(re, im)),
            InputState::Fock { .. } => None,
        }
    }
}

impl std::fmt::Display for InputState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputState::Fock { n } => write!(f, "fock:{n}"),
            InputState::Coherent { re, im } => write!(f, "coherent:{re},{im}"),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// `fock:n` or `coherent:re,im`.
pub fn parse_input(s: &str) -> Result<InputState, String> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| format!("expected fock:n or coherent:re,im, got `{s}`"))?;
    match kind {
        "fock" => rest
            .trim()
            .parse()
            .map(|n| InputState::Fock { n })
            .map_err(|_| format!("photon number `{rest}` is not a non-negative integer")),
        "coherent" => {
            let (re, im) = rest
                .split_once(',')
                .ok_or_else(|| format!("expected coherent:re,im, got `{s}`"))?;
            Ok(InputState::Coherent { re: parse_f64(re)?, im: parse_f64(im)? })
        }
        other => Err(format!("unknown input state kind `{other}` (expected fock or coherent)")),
    }
}

/// A single value or a `lo:hi` range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ValueOrRange {
    Value(f64),
    Range { lo: f64, hi: f64 },
}

pub fn parse_value_or_range(s: &str) -> Result<ValueOrRange, String> {
    match s.split_once(':') {
        None => parse_f64(s).map(ValueOrRange::Value),
        Some((lo, hi)) => {
            let (lo, hi) = (parse_f64(lo)?, parse_f64(hi)?);
            if lo < hi {
                Ok(ValueOrRange::Range { lo, hi })
            } else {
                Err(format!("range `{s}` must satisfy lo < hi"))
            }
        }
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    match parse_value_or_range(s)? {
        ValueOrRange::Range { lo, hi } => Ok((lo, hi)),
        ValueOrRange::Value(_) => Err(format!("expected a lo:hi range, got `{s}`")),
    }
}

/// `NxM`: y_m cells × γ cells.
pub fn parse_cells(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got `{s}`"))?;
    let parse = |t: &str| -> Result<usize, String> {
        let n: usize = t.trim().parse().map_err(|_| format!("`{t}` is not a cell count"))?;
        if n >= 2 {
            Ok(n)
        } else {
            Err(format!("each axis needs at least 2 cells, got {n}"))
        }
    };
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Coordinate range of the grid, lo:hi.
    #[arg(long = "x-range", value_parser = parse_range, default_value = "-12:12", allow_hyphen_values = true)]
    pub x_range: (f64, f64),

    /// Coordinate grid spacing.
    #[arg(long, default_value_t = 0.01)]
    pub dx: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Input state: fock:n or coherent:re,im.
    #[arg(long, value_parser = parse_input)]
    pub input: InputState,

    /// Homodyne outcome y_m.
    #[arg(long = "ym", value_parser = parse_value_or_range, allow_hyphen_values = true)]
    pub y_m: ValueOrRange,

    /// Cubic-phase strength γ > 0.
    #[arg(long, value_parser = parse_value_or_range, allow_hyphen_values = true)]
    pub gamma: ValueOrRange,

    /// Angular tolerance for the even/odd classification (radians).
    #[arg(long = "parity-tol", default_value_t = 0.05)]
    pub parity_tol: f64,

    #[command(flatten)]
    pub grid: GridArgs,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub state: StateArgs,

    /// Transform the input state itself instead of the gate output.
    #[arg(long = "no-gate")]
    pub no_gate: bool,

    /// Momentum axis range, lo:hi.
    #[arg(long = "p-range", value_parser = parse_range, default_value = "-10:10", allow_hyphen_values = true)]
    pub p_range: (f64, f64),

    #[arg(long = "p-points", default_value_t = 801)]
    pub p_points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct DiagnosticsArgs {
    #[arg(long = "ym", value_parser = parse_value_or_range, allow_hyphen_values = true)]
    pub y_m: ValueOrRange,

    #[arg(long, value_parser = parse_value_or_range, allow_hyphen_values = true)]
    pub gamma: ValueOrRange,

    #[arg(long = "parity-tol", default_value_t = 0.05)]
    pub parity_tol: f64,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum MetricArg {
    InfidelitySt,
    InfidelityCat,
    Theta,
    Lambda,
}

impl From<MetricArg> for catgate::Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::InfidelitySt => catgate::Metric::InfidelitySt,
            MetricArg::InfidelityCat => catgate::Metric::InfidelityCat,
            MetricArg::Theta => catgate::Metric::Theta,
            MetricArg::Lambda => catgate::Metric::Lambda,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub metric: MetricArg,

    /// Fock input state, fock:n.
    #[arg(long, value_parser = parse_input, default_value = "fock:0")]
    pub input: InputState,

    /// y_m range lo:hi.
    #[arg(long = "ym", value_parser = parse_value_or_range, allow_hyphen_values = true)]
    pub y_m: ValueOrRange,

    /// γ range lo:hi.
    #[arg(long, value_parser = parse_value_or_range, allow_hyphen_values = true)]
    pub gamma: ValueOrRange,

    /// Cell counts along y_m and γ, NxM.
    #[arg(long, value_parser = parse_cells, default_value = "60x60")]
    pub cells: (usize, usize),

    /// Guide-curve CSV; defaults to `<output>.guides.csv` when --output is set.
    #[arg(long)]
    pub guides: Option<PathBuf>,

    #[command(flatten)]
    pub out: OutputArgs,
}
