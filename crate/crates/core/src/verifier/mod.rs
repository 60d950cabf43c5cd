//! Trial driver: draws constrained parameters, evaluates both sides at full
//! precision and collects residual statistics into reports.

mod cross;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::arith::{default_tolerance, residual, BigComplex, Real};
use crate::catalog::{self, Family, Identity};
use crate::error::{Error, Result};
use crate::eval::{Evaluator, Mode};
use crate::lattice::MultiIndex;
use crate::params::{ParameterSet, Shape};
use crate::sampler::{self, SamplerConfig};

pub use cross::{
    check_reparametrization, cross_check_cjt_vs_wj, cross_check_cr_vs_aaj, epf_reduces_to_ww, gauge_check,
    reparametrization_report, swap_symmetry_check,
};

/// Source of timestamps; the core crate has no clock of its own.
pub trait Clock {
    fn now_ns(&self) -> u64;
}

/// A clock that always reads zero, for reproducible output.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_ns(&self) -> u64 {
        0
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyConfig {
    pub sampler: SamplerConfig,
    /// Overrides the default `2^(-prec/2)`.
    pub tolerance: Option<Real>,
    /// Overrides the per-suite trial counts.
    pub trials: Option<usize>,
}

impl VerifyConfig {
    pub fn tolerance(&self) -> Real {
        self.tolerance
            .clone()
            .unwrap_or_else(|| default_tolerance(self.sampler.precision_bits))
    }

    pub fn precision(&self) -> usize {
        self.sampler.precision_bits
    }

    fn with_zero_nome(&self) -> Self {
        let mut c = self.clone();
        c.sampler.zero_nome = true;
        c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub descriptor_id: String,
    pub shape: Shape,
    pub trials: usize,
    /// One entry per trial, in trial order; NaN for a trial that errored.
    pub residuals: Vec<Real>,
    pub max_residual: Real,
    pub tolerance: Real,
    pub passed: bool,
    pub wall_time_ns: u64,
    pub seed: u64,
    pub precision_bits: usize,
    /// Whether the draws were made at `p = 0`.
    pub p_zero: bool,
    pub errors: Vec<String>,
}

impl VerificationReport {
    /// A report for a run that could not start, e.g. exhausted sampling.
    pub fn failed(id: &str, shape: Shape, cfg: &VerifyConfig, err: &Error) -> Self {
        let mut t = Tally::new(id, shape, cfg);
        t.fail(0, err);
        t.finish(0)
    }
}

/// Accumulates per-trial residuals and errors.
pub(crate) struct Tally {
    id: String,
    shape: Shape,
    tolerance: Real,
    prec: usize,
    seed: u64,
    p_zero: bool,
    residuals: Vec<Real>,
    errors: Vec<String>,
}

impl Tally {
    pub(crate) fn new(id: &str, shape: Shape, cfg: &VerifyConfig) -> Self {
        Tally {
            id: id.to_string(),
            shape,
            tolerance: cfg.tolerance(),
            prec: cfg.precision(),
            seed: cfg.sampler.seed,
            p_zero: cfg.sampler.zero_nome,
            residuals: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, r: Real) {
        self.residuals.push(r);
    }

    /// Records the worst of several residuals as one trial.
    pub(crate) fn push_all(&mut self, rs: impl IntoIterator<Item = Real>) {
        let mut worst = Real::zero(self.prec);
        for r in rs {
            if !r.is_finite() {
                worst = r;
                break;
            }
            worst = worst.max(r);
        }
        self.push(worst);
    }

    pub(crate) fn fail(&mut self, trial: usize, err: &Error) {
        self.errors.push(format!("trial {trial}: {err}"));
    }

    pub(crate) fn record(&mut self, trial: usize, r: Result<Real>) {
        match r {
            Ok(v) => self.push(v),
            Err(e) => {
                self.push(Real::nan());
                self.fail(trial, &e);
            }
        }
    }

    pub(crate) fn finish(self, wall_time_ns: u64) -> VerificationReport {
        let mut max = Real::zero(self.prec);
        let mut finite = true;
        for r in &self.residuals {
            if r.is_finite() {
                max = max.max(r.clone());
            } else {
                finite = false;
            }
        }
        let passed = finite && self.errors.is_empty() && max < self.tolerance;
        VerificationReport {
            descriptor_id: self.id,
            shape: self.shape,
            trials: self.residuals.len(),
            residuals: self.residuals,
            max_residual: max,
            tolerance: self.tolerance,
            passed,
            wall_time_ns,
            seed: self.seed,
            precision_bits: self.prec,
            p_zero: self.p_zero,
            errors: self.errors,
        }
    }
}

/// Full-precision evaluator for a sampled parameter set.
pub(crate) fn evaluator_for(ps: &ParameterSet, prec: usize) -> Result<Evaluator> {
    Evaluator::new(&ps.p, &ps.q, prec, Mode::Evaluate)
}

/// Both sides of `d` at `ps`, with the constraint checked.
pub fn evaluate(d: &dyn Identity, ps: &ParameterSet, prec: usize) -> Result<(BigComplex, BigComplex)> {
    let ev = evaluator_for(ps, prec)?;
    d.evaluate(&ev, ps)
}

/// Runs `trials` constrained draws of the identity `id` at `shape`.
/// Sampling failures abort the run; evaluation failures are recorded and fail
/// the report.
pub fn verify(
    id: &str,
    shape: &Shape,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    let d = catalog::lookup(id)?;
    d.check_shape(shape)?;
    let start = clock.now_ns();
    let mut tally = Tally::new(id, shape.clone(), cfg);
    tally.p_zero |= d.zero_nome_only();
    for trial in 0..trials {
        let ps = sampler::sample(d, shape, &cfg.sampler, trial as u64)?;
        let r = evaluate(d, &ps, cfg.precision()).map(|(l, r)| residual(&l, &r));
        tally.record(trial, r);
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}

pub const SUITES: [&str; 6] = ["primitives", "partial-fractions", "jackson", "bailey", "cross-checks", "all"];

/// Shapes with rank at most `max_rank` and the given trial count for every
/// identity in `families`.
fn family_reports(
    families: &[Family],
    max_rank: usize,
    default_trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
    out: &mut Vec<VerificationReport>,
) {
    let trials = cfg.trials.unwrap_or(default_trials);
    for d in catalog::all().into_iter().filter(|d| families.contains(&d.family())) {
        for shape in d.suite_shapes().into_iter().filter(|s| s.rank <= max_rank) {
            out.push(run_or_fail(d.id(), &shape, trials, cfg, clock));
        }
    }
}

fn run_or_fail(id: &str, shape: &Shape, trials: usize, cfg: &VerifyConfig, clock: &dyn Clock) -> VerificationReport {
    verify(id, shape, trials, cfg, clock).unwrap_or_else(|e| VerificationReport::failed(id, shape.clone(), cfg, &e))
}

fn cross_check_reports(cfg: &VerifyConfig, clock: &dyn Clock, out: &mut Vec<VerificationReport>) {
    let trials = cfg.trials.unwrap_or(20);
    for m in [vec_of(&[0]), vec_of(&[2]), vec_of(&[1, 2]), vec_of(&[2, 2])] {
        let shape = Shape::bounds(m);
        out.push(
            cross_check_cr_vs_aaj(&shape, trials, cfg, clock)
                .unwrap_or_else(|e| VerificationReport::failed("cross_check_cr_vs_aaj", shape, cfg, &e)),
        );
    }
    for n in 1..=3 {
        for c in [cfg.clone(), cfg.with_zero_nome()] {
            out.push(
                cross_check_cjt_vs_wj(n, trials, &c, clock).unwrap_or_else(|e| {
                    VerificationReport::failed("cross_check_cjt_vs_wj", Shape::uniform_box(n, 1), &c, &e)
                }),
            );
        }
    }
    for m in [vec_of(&[1]), vec_of(&[2]), vec_of(&[1, 1]), vec_of(&[2, 1]), vec_of(&[1, 2]), vec_of(&[2, 2])] {
        let shape = Shape::bounds(m.clone());
        out.push(
            reparametrization_report(&m, trials, cfg, clock)
                .unwrap_or_else(|e| VerificationReport::failed("check_reparametrization", shape, cfg, &e)),
        );
    }
}

fn vec_of(m: &[usize]) -> MultiIndex {
    MultiIndex::new(m.to_vec())
}

fn bailey_extras(cfg: &VerifyConfig, clock: &dyn Clock, out: &mut Vec<VerificationReport>) {
    let trials = cfg.trials.unwrap_or(20);
    for m in [vec_of(&[2]), vec_of(&[1, 2])] {
        let shape = Shape::bounds(m);
        out.push(
            swap_symmetry_check(&shape, trials, cfg, clock)
                .unwrap_or_else(|e| VerificationReport::failed("bailey_cn_an:swap_dg", shape, cfg, &e)),
        );
    }
    for (id, shape) in [
        ("bailey_an_box", Shape::bounds(vec_of(&[1, 2]))),
        ("bailey_an_simplex", Shape::total(2, 2)),
    ] {
        out.push(
            gauge_check(id, &shape, trials, cfg, clock)
                .unwrap_or_else(|e| VerificationReport::failed(id, shape, cfg, &e)),
        );
    }
}

/// Names accepted by [`run_cross_check`], with the kind of size each takes.
pub const CROSS_CHECKS: [(&str, CheckSize); 7] = [
    ("cr_vs_aaj", CheckSize::Bounds),
    ("cjt_vs_wj", CheckSize::Rank),
    ("reparametrization", CheckSize::Bounds),
    ("swap_dg", CheckSize::Bounds),
    ("gauge_an_box", CheckSize::Bounds),
    ("gauge_an_simplex", CheckSize::Total),
    ("epf_ww", CheckSize::Rank),
];

/// What a cross-check needs from its shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckSize {
    Rank,
    Total,
    Bounds,
}

/// Looks up the size kind of a named cross-check.
pub fn cross_check_size(name: &str) -> Result<CheckSize> {
    CROSS_CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, k)| *k)
        .ok_or_else(|| Error::UnknownCrossCheck(name.into()))
}

/// Runs one named cross-check at `shape`.
pub fn run_cross_check(
    name: &str,
    shape: &Shape,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    let kind = cross_check_size(name)?;
    let fits = match kind {
        CheckSize::Rank => shape.size == crate::params::Size::Unsized,
        CheckSize::Total => shape.total_value().is_some(),
        CheckSize::Bounds => shape.bounds_value().is_some(),
    };
    if !fits {
        return Err(Error::UnsupportedShape { id: "cross-check", reason: format!("{name} does not take {shape}") });
    }
    match name {
        "cr_vs_aaj" => cross_check_cr_vs_aaj(shape, trials, cfg, clock),
        "cjt_vs_wj" => cross_check_cjt_vs_wj(shape.rank, trials, cfg, clock),
        "reparametrization" => reparametrization_report(shape.bounds_value().unwrap(), trials, cfg, clock),
        "swap_dg" => swap_symmetry_check(shape, trials, cfg, clock),
        "gauge_an_box" => gauge_check("bailey_an_box", shape, trials, cfg, clock),
        "gauge_an_simplex" => gauge_check("bailey_an_simplex", shape, trials, cfg, clock),
        _ => epf_reduces_to_ww(shape.rank, trials, cfg, clock),
    }
}

/// Runs one of [`SUITES`].
pub fn run_suite(name: &str, cfg: &VerifyConfig, clock: &dyn Clock) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    match name {
        "primitives" => family_reports(&[Family::Primitive], 3, 50, cfg, clock, &mut out),
        "partial-fractions" => {
            family_reports(&[Family::PartialFraction], 5, 50, cfg, clock, &mut out);
            let trials = cfg.trials.unwrap_or(50);
            for n in 2..=5 {
                out.push(epf_reduces_to_ww(n, trials, cfg, clock).unwrap_or_else(|e| {
                    VerificationReport::failed("pf_epf:ww", Shape::rank_only(n), cfg, &e)
                }));
            }
        }
        "jackson" => {
            let families = [Family::An, Family::Dn, Family::Cn];
            family_reports(&families, 3, 50, cfg, clock, &mut out);
            // The q-series specializations of everything not already at p = 0.
            let trials = cfg.trials.unwrap_or(50);
            let q_only = cfg.with_zero_nome();
            for d in catalog::all().into_iter().filter(|d| families.contains(&d.family()) && !d.zero_nome_only()) {
                for shape in d.suite_shapes().into_iter().filter(|s| s.rank <= 3) {
                    out.push(run_or_fail(d.id(), &shape, trials, &q_only, clock));
                }
            }
        }
        "bailey" => {
            family_reports(&[Family::Bailey], 2, 30, cfg, clock, &mut out);
            bailey_extras(cfg, clock, &mut out);
        }
        "cross-checks" => cross_check_reports(cfg, clock, &mut out),
        "all" => {
            for s in &SUITES[..5] {
                out.extend(run_suite(s, cfg, clock)?);
            }
        }
        _ => return Err(Error::UnknownSuite(name.into())),
    }
    Ok(out)
}
