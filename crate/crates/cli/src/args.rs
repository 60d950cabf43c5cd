//! Command-line arguments and their translation into core configuration.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellhyp_core::lattice::MultiIndex;
use ellhyp_core::params::{Shape, Size};
use ellhyp_core::sampler::SamplerConfig;
use ellhyp_core::verifier::{CheckSize, VerifyConfig, SUITES};
use ellhyp_core::Real;

#[derive(Parser, Debug)]
#[command(name = "ellhyp", version, about = "Numerical verification of elliptic hypergeometric identities on root systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the identities in the catalog.
    List,
    /// Verify one identity over a range of shapes.
    Verify {
        #[arg(long)]
        identity: String,
    },
    /// Run a fixed verification suite.
    Suite {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
    /// Run one cross-check between identities, or all of them.
    CrossCheck {
        /// cr_vs_aaj, cjt_vs_wj, reparametrization, swap_dg, gauge_an_box,
        /// gauge_an_simplex or epf_ww; all cross-checks when omitted.
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Options {
    /// Trials per report [default: 50; suites use their own counts unless given].
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Working precision in bits.
    #[arg(long, global = true, env = "EH_PRECISION_BITS", default_value_t = 256)]
    pub precision: usize,
    /// Rank n, or an inclusive range such as 1..3.
    #[arg(long, global = true, value_parser = parse_rank)]
    pub rank: Option<RankArg>,
    /// N for simplex sums; a bound or comma-separated bounds m for box sums.
    #[arg(long, global = true, value_parser = parse_size)]
    pub size: Option<SizeArg>,
    #[arg(long, global = true, default_value_t = 0.3)]
    pub nome_magnitude: f64,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Relative residual tolerance, decimal or 2^k [default: 2^(-precision/2)].
    #[arg(long, global = true, value_parser = parse_tolerance)]
    pub tolerance: Option<Tolerance>,
    /// Report zero wall time so that output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankArg {
    pub range: RangeInclusive<usize>,
    pub explicit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeArg {
    Scalar(usize),
    Vector(Vec<usize>),
}

/// A tolerance as written on the command line, kept as text until the
/// precision is known.
#[derive(Clone, Debug, PartialEq)]
pub enum Tolerance {
    Pow2(i32),
    Decimal(String),
}

fn parse_rank(s: &str) -> Result<RankArg, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad rank `{t}`: {e}"));
    let range = match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            num(lo)?..=num(hi)?
        }
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if *range.start() == 0 || range.is_empty() {
        return Err("rank must be a positive integer or a nonempty range like 1..3".into());
    }
    Ok(RankArg { range, explicit: true })
}

fn parse_size(s: &str) -> Result<SizeArg, String> {
    let parts: Vec<&str> = s.trim_matches(|c| c == '(' || c == ')').split(',').collect();
    let vals = parts
        .iter()
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad size `{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if vals.len() == 1 { SizeArg::Scalar(vals[0]) } else { SizeArg::Vector(vals) })
}

fn parse_tolerance(s: &str) -> Result<Tolerance, String> {
    if let Some(k) = s.strip_prefix("2^") {
        return k.parse().map(Tolerance::Pow2).map_err(|e| format!("bad exponent `{k}`: {e}"));
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 => Ok(Tolerance::Decimal(s.to_string())),
        Ok(_) => Err("tolerance must be nonnegative".into()),
        Err(e) => Err(format!("bad tolerance `{s}`: {e}")),
    }
}

impl Tolerance {
    pub fn to_real(&self, prec: usize) -> Result<Real, String> {
        match self {
            Tolerance::Pow2(k) => Ok(Real::pow2(*k, prec)),
            Tolerance::Decimal(s) => Real::parse_decimal(s, prec).ok_or_else(|| format!("bad tolerance `{s}`")),
        }
    }
}

impl Options {
    pub fn ranks(&self) -> RankArg {
        self.rank.clone().unwrap_or(RankArg { range: 1..=3, explicit: false })
    }

    pub fn verify_config(&self) -> Result<VerifyConfig, String> {
        let sampler = SamplerConfig {
            seed: self.seed,
            precision_bits: self.precision,
            nome_magnitude: self.nome_magnitude,
            ..SamplerConfig::default()
        };
        sampler.validate().map_err(|e| e.to_string())?;
        let tolerance = self.tolerance.as_ref().map(|t| t.to_real(self.precision)).transpose()?;
        Ok(VerifyConfig { sampler, tolerance, trials: self.trials })
    }

    /// The shape at rank `n` for a size of the given kind.
    pub fn shape(&self, kind: &Size, n: usize) -> Result<Shape, String> {
        Ok(match (kind, &self.size) {
            (Size::Unsized, None) => Shape::rank_only(n),
            (Size::Unsized, Some(_)) => return Err("this identity takes no --size".into()),
            (Size::Total(_), None) => Shape::total(n, 3),
            (Size::Total(_), Some(SizeArg::Scalar(v))) => Shape::total(n, *v),
            (Size::Total(_), Some(SizeArg::Vector(_))) => return Err("--size must be a single N here".into()),
            (Size::Bounds(_), None) => Shape::uniform_box(n, 2),
            (Size::Bounds(_), Some(SizeArg::Scalar(v))) => Shape::uniform_box(n, *v),
            (Size::Bounds(_), Some(SizeArg::Vector(v))) => {
                if v.len() < n {
                    return Err(format!("--size has {} bounds but rank is {n}", v.len()));
                }
                Shape::bounds(MultiIndex::new(v[..n].to_vec()))
            }
        })
    }

    pub fn check_shape(&self, kind: CheckSize, n: usize) -> Result<Shape, String> {
        let template = match kind {
            CheckSize::Rank => Size::Unsized,
            CheckSize::Total => Size::Total(0),
            CheckSize::Bounds => Size::Bounds(MultiIndex::zeros(0)),
        };
        self.shape(&template, n)
    }
}
