mod args;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use ellhyp_core::catalog::{self, Identity};
use ellhyp_core::params::Shape;
use ellhyp_core::verifier::{self, cross_check_size, Clock, VerificationReport, VerifyConfig};
use ellhyp_core::Error;

use args::{Cli, Command, Options, Output};
use output::{ConfigEcho, Document};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

struct WallClock(Instant);

impl Clock for WallClock {
    fn now_ns(&self) -> u64 {
        self.0.elapsed().as_nanos() as u64
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownIdentity(_)
            | Error::UnknownSuite(_)
            | Error::UnknownCrossCheck(_)
            | Error::UnsupportedShape { .. }
            | Error::InvalidConfig(_)
            | Error::InvalidPrecision(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

/// Returns whether every report passed.
fn run(cli: &Cli) -> Result<bool, Failure> {
    let opts = &cli.opts;
    if let Command::List = cli.command {
        let ids = catalog::all();
        let text = match opts.output {
            Output::Text => output::list_text(&ids),
            Output::Json => output::list_json(&ids),
        };
        emit(opts, &text)?;
        return Ok(true);
    }
    let cfg = opts.verify_config().map_err(Failure::Usage)?;
    let clock = WallClock(Instant::now());
    let mut echo = ConfigEcho {
        command: String::new(),
        identity: None,
        suite: None,
        check: None,
        trials: opts.trials,
        seed: opts.seed,
        precision_bits: opts.precision,
        nome_magnitude: opts.nome_magnitude,
        tolerance: cfg.tolerance.as_ref().map(|t| t.to_decimal_string()),
        timing: !opts.no_timing,
    };
    let reports = match &cli.command {
        Command::List => unreachable!(),
        Command::Verify { identity } => {
            echo.command = "verify".into();
            echo.identity = Some(identity.clone());
            verify_identity(identity, opts, &cfg, &clock)?
        }
        Command::Suite { suite } => {
            echo.command = "suite".into();
            echo.suite = Some(suite.clone());
            verifier::run_suite(suite, &cfg, &clock)?
        }
        Command::CrossCheck { check } => {
            echo.command = "cross-check".into();
            echo.check = check.clone();
            match check {
                None => verifier::run_suite("cross-checks", &cfg, &clock)?,
                Some(name) => cross_check(name, opts, &cfg, &clock)?,
            }
        }
    };
    let doc = Document::new(echo, &reports);
    let text = match opts.output {
        Output::Text => doc.to_text(),
        Output::Json => doc.to_json(),
    };
    emit(opts, &text)?;
    Ok(doc.passed)
}

fn emit(opts: &Options, text: &str) -> Result<(), Failure> {
    match &opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Shapes for every requested rank. Ranks from the default range that the
/// identity does not support are skipped; an explicit rank must fit.
fn shapes(
    opts: &Options,
    build: impl Fn(usize) -> Result<Shape, String>,
    supported: impl Fn(&Shape) -> Result<(), Error>,
) -> Result<Vec<Shape>, Failure> {
    let ranks = opts.ranks();
    let mut out = Vec::new();
    for n in ranks.range.clone() {
        let shape = build(n).map_err(Failure::Usage)?;
        match supported(&shape) {
            Ok(()) => out.push(shape),
            Err(e) if ranks.explicit => return Err(e.into()),
            Err(_) => {}
        }
    }
    if out.is_empty() {
        return Err(Failure::Usage("no supported shape in the requested rank range".into()));
    }
    Ok(out)
}

fn trials(opts: &Options) -> usize {
    opts.trials.unwrap_or(50)
}

fn verify_identity(
    id: &str,
    opts: &Options,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<Vec<VerificationReport>, Failure> {
    let d: &dyn Identity = catalog::lookup(id)?;
    let template = d.suite_shapes().remove(0).size;
    let list = shapes(opts, |n| opts.shape(&template, n), |s| d.check_shape(s))?;
    let mut reports = Vec::new();
    for shape in list {
        reports.push(match verifier::verify(id, &shape, trials(opts), cfg, clock) {
            Ok(r) => r,
            Err(e @ Error::SamplingExhausted(_)) => VerificationReport::failed(id, shape, cfg, &e),
            Err(e) => return Err(e.into()),
        });
    }
    Ok(reports)
}

fn cross_check(
    name: &str,
    opts: &Options,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<Vec<VerificationReport>, Failure> {
    let kind = cross_check_size(name)?;
    let list = shapes(opts, |n| opts.check_shape(kind, n), |_| Ok(()))?;
    let mut reports = Vec::new();
    for shape in list {
        reports.push(match verifier::run_cross_check(name, &shape, trials(opts), cfg, clock) {
            Ok(r) => r,
            Err(e @ Error::SamplingExhausted(_)) => VerificationReport::failed(name, shape, cfg, &e),
            Err(e) => return Err(e.into()),
        });
    }
    Ok(reports)
}
