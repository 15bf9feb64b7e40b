use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qeuler_core::qalg::parse_rat;
use qeuler_core::BigRat;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "qeuler", version, about = "Exact (h,q)-Euler polynomials, q-Euler zeta values and their symmetry identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for grid commands (0 = one per core).
    #[arg(long, global = true, env = "QEULER_JOBS", default_value_t = 0)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact E_{n,q^c}^{(h,r)}(N/c) as a canonical rational function.
    Euler(EulerArgs),
    /// Numeric multiple q-Euler zeta value.
    Zeta(ZetaArgs),
    /// Alternating q-power sum S_{n,i,q^c}^{(h,r)}(a).
    Ssum(SsumArgs),
    /// Check an identity on a parameter grid.
    Verify(VerifyArgs),
    /// Emit a table of values over parameter ranges.
    Table(TableArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EulerArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub h: i64,
    #[arg(long)]
    pub r: u32,
    /// Argument as `N/c` (base q^c); `N` alone means c = 1.
    #[arg(long, default_value = "0/1", allow_hyphen_values = true)]
    pub arg: String,
    /// Evaluate exactly at this rational q.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ZetaArgs {
    /// Complex argument such as `1.5`, `-2` or `2+1i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub h: i64,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Use the direct r-fold sum with this many terms per index.
    #[arg(long)]
    pub multi: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SsumArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub i: u32,
    #[arg(long)]
    pub h: i64,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub a: u32,
    #[arg(long, default_value_t = 1)]
    pub c: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

/// Integer lists accept comma-separated values and inclusive ranges,
/// e.g. `1,3,5`, `0..6` or `-1..3`; an empty string is an empty list.
#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// One of thm2.1, thm2.2, thm2.4, thm2.5, prop2.3, umbral, lemma1.1.
    pub identity: Option<String>,
    /// JSON grid description; inline flags are then not allowed.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Offsets from r, replacing --h: h = r + dh.
    #[arg(long, allow_hyphen_values = true)]
    pub dh: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Values of s separated by `;`, e.g. `-2;1.5;2+1i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Comma-separated values of q.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// For thm2.1: compare s = -n against the exact polynomial identity.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Euler,
    Ssum,
    Zeta,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TableArgs {
    pub kind: TableKind,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Argument numerators N for euler; real x values for zeta.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Base exponent c.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<String>,
}

/// Parses `1,3,5`, `0..6`, `-1..3,7` or the empty string.
pub fn parse_int_list(name: &str, text: &str) -> Result<Vec<i64>, CliError> {
    let bad = || CliError::Invalid(format!("--{name}: cannot parse `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((lo, hi)) => {
                let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: i64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

pub fn parse_float_list(name: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| CliError::Invalid(format!("--{name}: cannot parse `{p}`"))))
        .collect()
}

pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("cannot parse complex value `{text}`")))
}

/// Complex values separated by `;` (commas are allowed when every value is real).
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    let sep = if text.contains(';') || text.contains('i') { ';' } else { ',' };
    text.split(sep)
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(parse_complex)
        .collect()
}

/// `N/c` or `N`.
pub fn parse_arg(text: &str) -> Result<(i64, u32), CliError> {
    let bad = || CliError::Invalid(format!("--arg: expected N/c, got `{text}`"));
    let (num, den) = text.split_once('/').unwrap_or((text, "1"));
    let num = num.trim().parse().map_err(|_| bad())?;
    let den: u32 = den.trim().parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(CliError::Invalid("--arg: base exponent c must be at least 1".into()));
    }
    Ok((num, den))
}

pub fn parse_point(text: &str) -> Result<BigRat, CliError> {
    parse_rat(text).map_err(|e| CliError::Invalid(format!("--at: {e}")))
}
