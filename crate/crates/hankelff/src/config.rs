//! Command-line flags and the validated run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use hankelff_core::ffield::{Field, FieldError};
use serde_json::json;

use crate::report::{row, Row};

/// Inclusive range of small integers, written `a`, `a..b` or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanArg {
    pub lo: usize,
    pub hi: usize,
}

impl SpanArg {
    pub fn new(lo: usize, hi: usize) -> SpanArg {
        SpanArg { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }

    /// Values of the range that are at most `top`.
    pub fn capped(self, top: usize) -> impl Iterator<Item = usize> {
        self.lo..=self.hi.min(top)
    }
}

impl FromStr for SpanArg {
    type Err = String;

    fn from_str(s: &str) -> Result<SpanArg, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(SpanArg { lo, hi })
    }
}

impl fmt::Display for SpanArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Divisor-function variance over short intervals: brute force against the closed form.
    Variance,
    /// Counts of sequences per class, rank and matrix shape against the closed forms.
    Census,
    /// Kernels of every Hankel matrix against the characteristic polynomials.
    Kernel,
    /// Sequences rebuilt from prescribed characteristic polynomials.
    Converse,
    /// How profiles and polynomials move when one entry is appended.
    Extension,
    /// Truncations against the Euclidean algorithm on the characteristic pair.
    Euclid,
    /// Exact exponential sums over Hankel forms and the second-moment identity.
    Expsum,
    /// Every suite above.
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Variance => "variance",
            Command::Census => "census",
            Command::Kernel => "kernel",
            Command::Converse => "converse",
            Command::Extension => "extension",
            Command::Euclid => "euclid",
            Command::Expsum => "expsum",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldArgs {
    pub p: u32,
    pub e: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    pub fn prime(p: u32) -> FieldArgs {
        FieldArgs { p, e: 1, modulus: None }
    }

    pub fn build(&self) -> Result<Field, FieldError> {
        Field::new(self.p, self.e, self.modulus.as_deref())
    }
}

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub field: FieldArgs,
    pub n: Option<SpanArg>,
    pub h: Option<SpanArg>,
    pub l: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub rho: Option<usize>,
    pub pi: Option<usize>,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
    pub budget: u128,
    pub seed: u64,
    /// Sample this many sequences instead of enumerating all of them.
    pub sample: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command, field: FieldArgs) -> RunConfig {
        RunConfig {
            command,
            field,
            n: None,
            h: None,
            l: None,
            m: None,
            r: None,
            rho: None,
            pi: None,
            format: Format::Json,
            cache_dir: None,
            jobs: 1,
            budget: DEFAULT_BUDGET,
            seed: 0,
            sample: None,
        }
    }

    /// The parameters echoed in a report. Worker count, output format and
    /// cache location are left out: they must not change the report.
    pub fn params(&self) -> Row {
        let span = |s: Option<SpanArg>| s.map(|s| s.to_string());
        row(json!({
            "p": self.field.p,
            "e": self.field.e,
            "modulus": self.field.modulus,
            "n": span(self.n),
            "h": span(self.h),
            "l": self.l,
            "m": self.m,
            "r": self.r,
            "rho": self.rho,
            "pi": self.pi,
            "budget": self.budget.to_string(),
            "seed": self.seed,
            "sample": self.sample,
        }))
    }
}

#[derive(Debug, Parser)]
#[command(name = "hankelff", version, about = "Exact reconciliation of Hankel-matrix and divisor-variance theorems over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    /// Extension degree; the field has p^e elements.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// Comma-separated coefficients of the monic modulus, constant term first.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Sequence or polynomial degree: a value or a range a..b.
    #[arg(long, global = true)]
    pub n: Option<SpanArg>,
    /// Interval parameter or zero-prefix length: a value or a range.
    #[arg(long, global = true)]
    pub h: Option<SpanArg>,
    #[arg(long, global = true)]
    pub l: Option<usize>,
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true)]
    pub r: Option<usize>,
    #[arg(long, global = true)]
    pub rho: Option<usize>,
    #[arg(long, global = true)]
    pub pi: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for cached census tallies.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Cap on the number of objects enumerated by one check.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Seed for sampled sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample this many sequences per degree instead of enumerating all.
    #[arg(long, global = true)]
    pub sample: Option<usize>,
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, String> {
        if self.jobs == 0 {
            return Err("--jobs must be at least 1".into());
        }
        if self.budget == 0 {
            return Err("--budget must be at least 1".into());
        }
        if self.sample == Some(0) {
            return Err("--sample must be at least 1".into());
        }
        Ok(RunConfig {
            command: self.command,
            field: FieldArgs { p: self.p, e: self.e, modulus: self.modulus },
            n: self.n,
            h: self.h,
            l: self.l,
            m: self.m,
            r: self.r,
            rho: self.rho,
            pi: self.pi,
            format: self.format,
            cache_dir: self.cache_dir,
            jobs: self.jobs,
            budget: self.budget,
            seed: self.seed,
            sample: self.sample,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("3".parse::<SpanArg>(), Ok(SpanArg::new(3, 3)));
        assert_eq!("0..4".parse::<SpanArg>(), Ok(SpanArg::new(0, 4)));
        assert_eq!("2..=5".parse::<SpanArg>(), Ok(SpanArg::new(2, 5)));
        assert!("5..2".parse::<SpanArg>().is_err());
        assert!("x".parse::<SpanArg>().is_err());
        assert_eq!(SpanArg::new(0, 4).to_string(), "0..4");
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["hankelff", "variance", "--p", "2", "--n", "4", "--h", "0..4", "--format", "json"]).unwrap();
        let cfg = cli.into_config().unwrap();
        assert_eq!(cfg.command, Command::Variance);
        assert_eq!(cfg.h, Some(SpanArg::new(0, 4)));
        let cli = Cli::try_parse_from(["hankelff", "census", "--p", "2", "--e", "2", "--modulus", "1,1,1"]).unwrap();
        assert_eq!(cli.modulus, Some(vec![1, 1, 1]));
        let cli = Cli::try_parse_from(["hankelff", "kernel", "--jobs", "0"]).unwrap();
        assert!(cli.into_config().is_err());
        assert!(Cli::try_parse_from(["hankelff", "frobnicate"]).is_err());
    }
}
