//! Seeded draws of parameter sets on the constraint variety of an identity.
//!
//! Free parameters get uniform angles and log-uniform magnitudes. The
//! constraint's solved slot is then computed exactly, derived parameters are
//! filled in, and both sides are scanned at low precision so that no theta
//! factor in a denominator is close to zero.

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{BigComplex, DEFAULT_PRECISION};
use crate::catalog::{Identity, IntDraw};
use crate::error::{Error, Result};
use crate::eval::{Evaluator, Mode};
use crate::lattice::MultiIndex;
use crate::params::{ParameterSet, Shape, Size};

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub precision_bits: usize,
    /// Range of `|x|` for every free parameter and for `q`.
    pub magnitude_band: (f64, f64),
    /// `|p|`; kept below the magnitude band so that `p^k = q^l` is not forced.
    pub nome_magnitude: f64,
    /// Draw with `p = 0`.
    pub zero_nome: bool,
    pub max_resamples: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 42,
            precision_bits: DEFAULT_PRECISION,
            magnitude_band: (0.5, 2.0),
            nome_magnitude: 0.3,
            zero_nome: false,
            max_resamples: 100,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        crate::arith::check_precision(self.precision_bits)?;
        let (lo, hi) = self.magnitude_band;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidConfig("magnitude band must satisfy 0 < lo <= hi"));
        }
        if !(self.nome_magnitude > 0.0 && self.nome_magnitude < 1.0) {
            return Err(Error::InvalidConfig("nome magnitude must lie in (0, 1)"));
        }
        if self.nome_magnitude >= lo {
            return Err(Error::InvalidConfig("nome magnitude must lie below the magnitude band"));
        }
        if self.max_resamples == 0 {
            return Err(Error::InvalidConfig("max_resamples must be positive"));
        }
        Ok(())
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fnv(bytes: impl IntoIterator<Item = u8>, mut h: u64) -> u64 {
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Stream seed for one trial, derived from the base seed, the identity, the
/// shape and the trial index.
pub fn trial_seed(seed: u64, id: &str, shape: &Shape, trial: u64) -> u64 {
    let mut h = fnv(id.bytes(), 0xcbf2_9ce4_8422_2325);
    h = fnv((shape.rank as u64).to_le_bytes(), h);
    match &shape.size {
        Size::Unsized => h = fnv([0u8], h),
        Size::Total(n) => h = fnv([1u8].into_iter().chain((*n as u64).to_le_bytes()), h),
        Size::Bounds(m) => {
            h = fnv([2u8], h);
            for v in m.iter() {
                h = fnv((*v as u64).to_le_bytes(), h);
            }
        }
    }
    splitmix(splitmix(seed ^ h).wrapping_add(trial))
}

/// Random source for one trial.
pub(crate) struct Draw {
    rng: ChaCha8Rng,
    log_lo: f64,
    log_hi: f64,
    prec: usize,
}

impl Draw {
    pub(crate) fn new(cfg: &SamplerConfig, stream: u64) -> Self {
        Draw {
            rng: ChaCha8Rng::seed_from_u64(stream),
            log_lo: libm::log(cfg.magnitude_band.0),
            log_hi: libm::log(cfg.magnitude_band.1),
            prec: cfg.precision_bits,
        }
    }

    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn below(&mut self, bound: usize) -> usize {
        ((self.rng.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// A fresh 64-bit seed for a nested stream.
    pub(crate) fn stream_seed(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub(crate) fn angle(&mut self) -> f64 {
        self.unit() * core::f64::consts::TAU
    }

    /// `p` with `|p| = nome_magnitude`, or 0 when `zero` is set.
    pub(crate) fn nome(&mut self, cfg: &SamplerConfig, zero: bool) -> BigComplex {
        if zero {
            return BigComplex::zero(self.prec);
        }
        let t = self.angle();
        BigComplex::from_polar_f64(cfg.nome_magnitude, t, self.prec)
    }

    pub(crate) fn complex(&mut self) -> BigComplex {
        let r = libm::exp(self.log_lo + self.unit() * (self.log_hi - self.log_lo));
        let t = self.angle();
        BigComplex::from_polar_f64(r, t, self.prec)
    }
}

/// One draw without the degeneracy scan: free values, solved slot, derived values.
fn draw_once(d: &dyn Identity, shape: &Shape, cfg: &SamplerConfig, g: &mut Draw) -> Result<ParameterSet> {
    let p = g.nome(cfg, cfg.zero_nome || d.zero_nome_only());
    let q = g.complex();
    let mut ps = ParameterSet::new(p, q, shape.clone());
    let spec = d.params(shape);
    for name in &spec.scalars {
        let v = g.complex();
        ps.set_scalar(name, v);
    }
    for (name, len) in &spec.lists {
        let v = (0..*len).map(|_| g.complex()).collect();
        ps.set_list(name, v);
    }
    for (name, draw) in &spec.ints {
        let max = match draw {
            IntDraw::UpTo(max) => *max,
            IntDraw::UpToInt(other) => ps.int(other)?,
        };
        let v = g.below(max + 1);
        ps.ints.insert(name, v);
    }
    if let Some(name) = spec.index {
        let bounds = shape.bounds_value().ok_or(Error::MissingParameter("m"))?;
        let y: alloc::vec::Vec<usize> = bounds.iter().map(|&m| g.below(m + 1)).collect();
        ps.indices.insert(name, MultiIndex::new(y));
    }
    if let Some(c) = d.constraint() {
        c.solve(&mut ps)?;
    }
    d.derive(&mut ps)?;
    ps.validate()?;
    Ok(ps)
}

/// Evaluates both sides at 64 bits with the scan floor; any denominator theta
/// factor below the floor is reported as `DegenerateConfiguration`.
pub fn scan(d: &dyn Identity, ps: &ParameterSet) -> Result<()> {
    let low = ps.with_precision(crate::arith::MIN_PRECISION);
    let ev = Evaluator::new(&low.p, &low.q, crate::arith::MIN_PRECISION, Mode::Scan)?;
    let (lhs, rhs) = d.sides(&ev, &low)?;
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(Error::DegenerateConfiguration("non-finite side"));
    }
    Ok(())
}

/// Draws a constrained, non-degenerate parameter set for `d` at `shape`.
/// Deterministic in `(cfg.seed, d.id(), shape, trial)`.
pub fn sample(d: &dyn Identity, shape: &Shape, cfg: &SamplerConfig, trial: u64) -> Result<ParameterSet> {
    cfg.validate()?;
    d.check_shape(shape)?;
    if cfg.zero_nome && d.needs_nonzero_nome() {
        return Err(Error::InvalidConfig("identity needs a nonzero nome"));
    }
    let mut g = Draw::new(cfg, trial_seed(cfg.seed, d.id(), shape, trial));
    let ps = sample_with(cfg, &mut g, |g| draw_once(d, shape, cfg, g), |ps| scan(d, ps))?;
    Ok(ps)
}

fn retryable(e: &Error) -> bool {
    matches!(
        e,
        Error::ConstraintUnsolvable(_)
            | Error::ZeroArgument
            | Error::NonFinite
            | Error::DegenerateConfiguration(_)
    )
}

/// Draws with `build` until `check` accepts, resampling on degenerate or
/// unsolvable draws at most `cfg.max_resamples` times.
pub(crate) fn sample_with<T, B, C>(cfg: &SamplerConfig, g: &mut Draw, mut build: B, mut check: C) -> Result<T>
where
    B: FnMut(&mut Draw) -> Result<T>,
    C: FnMut(&T) -> Result<()>,
{
    for _ in 0..cfg.max_resamples {
        let v = match build(g) {
            Ok(v) => v,
            Err(e) if retryable(&e) => continue,
            Err(e) => return Err(e),
        };
        match check(&v) {
            Ok(()) => return Ok(v),
            Err(e) if retryable(&e) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted(cfg.max_resamples))
}

/// The same parameters with `p = 0`.
pub fn degenerate_to_q(params: &ParameterSet) -> ParameterSet {
    let mut out = params.clone();
    out.p = BigComplex::zero(params.p.prec());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{residual, Real};
    use crate::catalog::{self, lookup};

    fn cfg() -> SamplerConfig {
        SamplerConfig::default()
    }

    #[test]
    fn same_seed_same_draw() {
        let d = lookup("an_jackson_simplex").unwrap();
        let s = Shape::total(2, 1);
        let a = sample(d, &s, &cfg(), 3).unwrap();
        let b = sample(d, &s, &cfg(), 3).unwrap();
        assert_eq!(a, b);
        let c = sample(d, &s, &cfg(), 4).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn solved_scalar_matches_product() {
        let d = lookup("an_jackson_simplex").unwrap();
        let ps = sample(d, &Shape::total(2, 1), &cfg(), 0).unwrap();
        let a = ps.list("a_list").unwrap();
        let z = ps.list("z_list").unwrap();
        let want = a.iter().chain(z).fold(BigComplex::one(256), |acc, v| &acc * v);
        let r = residual(ps.scalar("b").unwrap(), &want);
        assert!(r < Real::pow2(-240, 256));
    }

    #[test]
    fn every_descriptor_samples_at_its_first_suite_shape() {
        for d in catalog::all() {
            let shape = d.suite_shapes().pop().unwrap();
            let ps = sample(d, &shape, &cfg(), 0).unwrap_or_else(|e| panic!("{}: {e}", d.id()));
            if let Some(c) = d.constraint() {
                c.check(&ps).unwrap();
            }
        }
    }

    #[test]
    fn zero_nome_flag_and_degeneration() {
        let d = lookup("an_jackson_box").unwrap();
        let c = SamplerConfig { zero_nome: true, ..cfg() };
        let ps = sample(d, &Shape::uniform_box(2, 1), &c, 0).unwrap();
        assert!(ps.p.is_zero());
        let ps = sample(d, &Shape::uniform_box(2, 1), &cfg(), 0).unwrap();
        let z = degenerate_to_q(&ps);
        assert!(z.p.is_zero());
        assert_eq!(z.q, ps.q);
        assert_eq!(degenerate_to_q(&z), z);
        let q_only = lookup("theta_quasi_period_tqp").unwrap();
        assert!(sample(q_only, &Shape::rank_only(1), &c, 0).is_err());
    }

    #[test]
    fn config_is_validated() {
        let bad = SamplerConfig { nome_magnitude: 0.7, ..cfg() };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = SamplerConfig { magnitude_band: (2.0, 1.0), ..cfg() };
        assert!(bad.validate().is_err());
        assert!(cfg().validate().is_ok());
    }
}
