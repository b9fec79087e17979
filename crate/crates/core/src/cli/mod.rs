//! Command-line front end. Every number printed or written here comes from
//! [`crate::optics`], [`crate::moments`] or [`crate::oracle`].

mod commands;
mod output;
mod verify;

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};

pub use output::format_sig9;
pub use verify::{verify_grid, VerifyPoint, VerifyReport, VERIFY_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "opa-litho",
    version,
    about = "N-photon absorption fringes from an unseeded high-gain OPA"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the amplifier coefficients U and V
    Coeffs(CoeffsArgs),
    /// Absorption rate at one point of the recording plane
    Rate(RateArgs),
    /// Rate against classical phase for several orders (CSV or SVG)
    Fringe(FringeArgs),
    /// Fringe visibility against gain (CSV or SVG)
    Visibility(VisibilityArgs),
    /// Linear/quadratic crossover of the two-photon fringe maximum
    Crossover,
    /// Two-photon maxima and minima against intensity (CSV)
    Figure2(Figure2Args),
    /// Compare closed-form moments with the Fock-space oracle
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gain: f64,
    /// Interaction phase in radians
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase: f64,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub gain: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase: f64,
    /// Classical phase in radians
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<f64>,
    /// Wavelength, in the same unit as --position
    #[arg(long)]
    pub wavelength: Option<f64>,
    /// Angle of incidence in radians
    #[arg(long)]
    pub angle: Option<f64>,
    /// Transverse position on the recording plane
    #[arg(long, allow_hyphen_values = true)]
    pub position: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub cross_section: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; CSV goes to stdout when omitted
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FringeArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    pub orders: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub gain: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phase: f64,
    /// Phase window `min:max` in radians
    #[arg(long, allow_hyphen_values = true, default_value_t = ValueRange { start: -PI, end: PI })]
    pub chi_range: ValueRange,
    #[arg(long, default_value_t = 629)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VisibilityArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    pub orders: Vec<usize>,
    /// Gain window `min:max`
    #[arg(long, default_value_t = ValueRange { start: 0.01, end: 5.0 })]
    pub gain_range: ValueRange,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    /// Intensity window `min:max` in photons per mode
    #[arg(long, conflicts_with = "gain_range")]
    pub intensity_range: Option<ValueRange>,
    /// Gain window `min:max`
    #[arg(long)]
    pub gain_range: Option<ValueRange>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6")]
    pub orders: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.5,1.0,2.0")]
    pub gains: Vec<f64>,
    /// Phases k·π/steps for k = 0..=steps
    #[arg(long, default_value_t = 8)]
    pub chi_steps: usize,
    /// Write every grid point to this CSV file
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Closed interval written as `min:max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueRange {
    pub start: f64,
    pub end: f64,
}

impl FromStr for ValueRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected `min:max`, got `{s}`"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number `{t}`: {e}"))
        };
        Ok(Self {
            start: parse(a)?,
            end: parse(b)?,
        })
    }
}

impl std::fmt::Display for ValueRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

/// Whether a run completed normally or a verification grid failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    VerificationFailed,
}

pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<Outcome> {
    match &config.command {
        Command::Coeffs(args) => commands::coeffs(args, stdout),
        Command::Rate(args) => commands::rate(args, stdout),
        Command::Fringe(args) => commands::fringe(args, stdout),
        Command::Visibility(args) => commands::visibility(args, stdout),
        Command::Crossover => commands::crossover(stdout),
        Command::Figure2(args) => commands::figure2(args, stdout),
        Command::Verify(args) => commands::verify(args, stdout),
    }
}

pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(Outcome::Done) => EXIT_OK,
        Ok(Outcome::VerificationFailed) => EXIT_VERIFY_FAILED,
        Err(Error::Io { .. } | Error::Csv(_)) => EXIT_IO,
        Err(Error::ImaginaryResidue { .. }) => EXIT_VERIFY_FAILED,
        Err(_) => EXIT_USAGE,
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(err) => {
            if err.use_stderr() {
                let _ = write!(stderr, "{}", err.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", err.render());
            return EXIT_OK;
        }
    };
    let result = run(&config, stdout);
    if let Err(err) = &result {
        let _ = writeln!(stderr, "error: {err}");
    }
    exit_code(&result)
}
