use std::env;
use std::fmt;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use multizeta_core::ZetaParams;

mod commands;
mod output;

use output::{obj, Report};

#[derive(Parser, Debug)]
#[command(name = "multizeta", version, about = "Multiple zeta-functions with identical arguments")]
struct Cli {
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Attach run metadata (version, timestamp, evaluation parameters).
    #[arg(long, global = true)]
    meta: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate zeta_r(s).
    Eval(EvalArgs),
    /// Exact values of zeta_r at nonpositive integers.
    Table(TableArgs),
    /// Real-zero census on (0, 1) or on the negative axis.
    Zeros(ZerosArgs),
    /// Pole orders and leading coefficients.
    Coeffs(CoeffsArgs),
    /// CSV samples of zeta_r for plotting.
    Plotdata(PlotArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct EvalArgs {
    /// Depth r.
    #[arg(short)]
    pub r: usize,
    /// Real argument s.
    #[arg(short)]
    pub s: f64,
    /// Exact rational value; s must be a nonpositive integer.
    #[arg(long, conflicts_with = "oracle")]
    pub exact: bool,
    /// Truncated-series oracle summing indices up to M (s > 1).
    #[arg(long, value_name = "M")]
    pub oracle: Option<usize>,
    /// Print zeta_1 .. zeta_r.
    #[arg(long)]
    pub profile: bool,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct TableArgs {
    /// Largest depth.
    #[arg(long, default_value_t = 14)]
    pub r_max: usize,
    /// Nonpositive integer argument; repeat for several columns.
    #[arg(long = "arg", value_name = "N", default_values_t = [0i64, -1])]
    pub args: Vec<i64>,
}

#[derive(Args, Debug)]
pub(crate) struct ZerosArgs {
    #[arg(short)]
    pub r: usize,
    /// Zeros between the asymptotes in (0, 1) (default).
    #[arg(long, conflicts_with = "negative")]
    pub positive: bool,
    /// Zeros on (-2n, -2(n-1)) for n = 1..=N.
    #[arg(long, value_name = "N")]
    pub negative: Option<usize>,
    /// CSV records instead of text.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub(crate) struct CoeffsArgs {
    #[arg(short)]
    pub r: usize,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub(crate) struct PlotArgs {
    /// Depths, comma separated.
    #[arg(short, value_delimiter = ',', required = true)]
    pub r: Vec<usize>,
    #[arg(long)]
    pub lo: f64,
    #[arg(long)]
    pub hi: f64,
    /// Number of rows.
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// Leave cells outside [YMIN, YMAX] empty.
    #[arg(long, num_args = 2, value_names = ["YMIN", "YMAX"])]
    pub clip: Option<Vec<f64>>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Suite {
    Rouche,
    Asymptotics,
    Conjectures,
    All,
}

#[derive(Args, Debug)]
pub(crate) struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest depth (suite default if omitted).
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Largest rectangle index for the boundary checks.
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Negative intervals for the zero census.
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Boundary samples per rectangle side.
    #[arg(long, default_value_t = 64)]
    pub per_side: usize,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Core(multizeta_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.kind(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<multizeta_core::Error> for CliError {
    fn from(e: multizeta_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn env_override(name: &str) -> Result<Option<usize>, CliError> {
    match env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{name} must be a nonnegative integer, got {v:?}"))),
        Err(env::VarError::NotPresent) => Ok(None),
        Err(env::VarError::NotUnicode(_)) => Err(CliError::Usage(format!("{name} is not valid UTF-8"))),
    }
}

fn zeta_params() -> Result<ZetaParams, CliError> {
    let mut p = ZetaParams::default();
    if let Some(n) = env_override("MULTIZETA_EM_CUTOFF")? {
        p.em_cutoff = n;
    }
    if let Some(k) = env_override("MULTIZETA_EM_TERMS")? {
        p.em_terms = k;
    }
    p.validate()?;
    Ok(p)
}

fn meta(params: &ZetaParams) -> serde_json::Value {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    obj([
        ("version", env!("CARGO_PKG_VERSION").into()),
        ("unix_time", secs.into()),
        ("em_cutoff", params.em_cutoff.into()),
        ("em_terms", params.em_terms.into()),
    ])
}

fn run(cli: &Cli) -> Result<(&'static str, Report, ZetaParams), CliError> {
    let params = zeta_params()?;
    let (name, report) = match &cli.command {
        Command::Eval(a) => ("eval", commands::eval(a, &params)?),
        Command::Table(a) => ("table", commands::table(a)?),
        Command::Zeros(a) => ("zeros", commands::zeros(a, &params)?),
        Command::Coeffs(a) => ("coeffs", commands::coeffs(a, &params)?),
        Command::Plotdata(a) => ("plotdata", commands::plotdata(a, &params)?),
        Command::Verify(a) => ("verify", commands::verify(a, &params)?),
    };
    Ok((name, report, params))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, report, params) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            return ExitCode::from(2);
        }
    };
    let mut out = io::stdout().lock();
    let written = if cli.json {
        out.write_all(report.envelope(name, cli.meta.then(|| meta(&params))).as_bytes())
    } else {
        if cli.meta {
            let _ = writeln!(io::stderr(), "meta: {}", meta(&params));
        }
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
        out.write_all(report.text.as_bytes())
    };
    if written.and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    if report.failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
