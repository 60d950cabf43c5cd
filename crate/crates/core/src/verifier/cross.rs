//! Checks that tie identities to each other: matched specializations of two
//! summations, the collapse of a cube of points to a box, and the
//! symmetry and gauge invariances of the Bailey transformations.

use alloc::vec::Vec;

use super::{evaluator_for, Clock, Tally, VerificationReport, VerifyConfig};
use crate::arith::{residual, BigComplex, Real};
use crate::catalog::{self, cn_box_norm_into, epf_terms, isolate, mono, ww_terms, Identity, AN_JACKSON_BOX, AN_JACKSON_CLASSICAL, BAILEY_CN_AN, CN_JACKSON_BOX, WARNAAR_FIRST};
use crate::error::{Error, Result};
use crate::eval::{Evaluator, Mode};
use crate::lattice::{Domain, MultiIndex};
use crate::params::{ParameterSet, Shape};
use crate::sampler::{self, sample_with, scan, trial_seed, Draw};
use crate::weyl::PointConfig;

fn four_way(
    ev_a: &Evaluator,
    (da, pa): (&dyn Identity, &ParameterSet),
    ev_b: &Evaluator,
    (db, pb): (&dyn Identity, &ParameterSet),
) -> Result<[Real; 4]> {
    let (la, ra) = da.evaluate(ev_a, pa)?;
    let (lb, rb) = db.evaluate(ev_b, pb)?;
    Ok([residual(&la, &lb), residual(&ra, &rb), residual(&la, &ra), residual(&lb, &rb)])
}

/// The box sum with `b = q^{-N}`, `N = |m|`, against the classical simplex
/// sum with `b_j = q^{-m_j}/z_j`, `b_{n+1} = d`, `b_{n+2} = e`. Both share
/// `a, c, z` and the joint constraint `a^2 q^{1+N+|m|} = cde`.
pub fn cross_check_cr_vs_aaj(
    shape: &Shape,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    const ID: &str = "cross_check_cr_vs_aaj";
    let m = shape.bounds_value().ok_or(Error::MissingParameter("m"))?.clone();
    let n = m.len();
    let big_n = m.weight();
    let sc = &cfg.sampler;
    let start = clock.now_ns();
    let mut tally = Tally::new(ID, shape.clone(), cfg);
    for trial in 0..trials {
        let mut g = Draw::new(sc, trial_seed(sc.seed, ID, shape, trial as u64));
        let build = |g: &mut Draw| -> Result<(ParameterSet, ParameterSet)> {
            let p = g.nome(sc, sc.zero_nome);
            let q = g.complex();
            let [a, c, d] = [g.complex(), g.complex(), g.complex()];
            let z: Vec<BigComplex> = (0..n).map(|_| g.complex()).collect();
            let e = mono!(a, a, q.powi(1 + 2 * big_n as i64); c, d);
            let mut cr = ParameterSet::new(p.clone(), q.clone(), shape.clone());
            for (name, v) in [("a", &a), ("b", &q.powi(-(big_n as i64))), ("c", &c), ("d", &d), ("e", &e)] {
                cr.set_scalar(name, v.clone());
            }
            cr.set_list("z_list", z.clone());
            let mut aaj = ParameterSet::new(p, q.clone(), Shape::total(n, big_n));
            aaj.set_scalar("a", a);
            aaj.set_scalar("c", c);
            let mut b: Vec<BigComplex> = z.iter().zip(m.iter()).map(|(zj, &mj)| &q.powi(-(mj as i64)) / zj).collect();
            b.push(d);
            b.push(e);
            aaj.set_list("b_list", b);
            aaj.set_list("z_list", z);
            cr.validate()?;
            aaj.validate()?;
            Ok((cr, aaj))
        };
        let check = |(cr, aaj): &(ParameterSet, ParameterSet)| {
            scan(&AN_JACKSON_BOX, cr)?;
            scan(&AN_JACKSON_CLASSICAL, aaj)
        };
        let (cr, aaj) = sample_with(sc, &mut g, build, check)?;
        let r = evaluator_for(&cr, cfg.precision()).and_then(|ev| {
            four_way(&ev, (&AN_JACKSON_BOX, &cr), &ev, (&AN_JACKSON_CLASSICAL, &aaj))
        });
        match r {
            Ok(rs) => tally.push_all(rs),
            Err(e) => tally.record(trial, Err(e)),
        }
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}

/// Warnaar's first summation at `N = 1` against the `C_n` box sum at
/// `m = (1, ..., 1)` with `a -> aq^2` and `q -> 1/q`.
pub fn cross_check_cjt_vs_wj(
    n: usize,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    const ID: &str = "cross_check_cjt_vs_wj";
    if n == 0 {
        return Err(Error::InvalidConfig("rank must be at least 1"));
    }
    let shape = Shape::uniform_box(n, 1);
    let sc = &cfg.sampler;
    let start = clock.now_ns();
    let mut tally = Tally::new(ID, shape.clone(), cfg);
    for trial in 0..trials {
        let mut g = Draw::new(sc, trial_seed(sc.seed, ID, &shape, trial as u64));
        let build = |g: &mut Draw| -> Result<(ParameterSet, ParameterSet)> {
            let p = g.nome(sc, sc.zero_nome);
            let q = g.complex();
            let mut wj = ParameterSet::new(p.clone(), q.clone(), Shape::total(n, 1));
            for name in ["a", "b", "c", "d", "e"] {
                wj.set_scalar(name, g.complex());
            }
            wj.set_list("z_list", (0..n).map(|_| g.complex()).collect());
            WARNAAR_FIRST.constraint().expect("balanced").solve(&mut wj)?;
            let mut cjt = wj.clone();
            cjt.shape = shape.clone();
            cjt.q = q.recip();
            cjt.set_scalar("a", mono!(wj.scalar("a")?, q, q));
            wj.validate()?;
            cjt.validate()?;
            Ok((wj, cjt))
        };
        let check = |(wj, cjt): &(ParameterSet, ParameterSet)| {
            scan(&WARNAAR_FIRST, wj)?;
            scan(&CN_JACKSON_BOX, cjt)
        };
        let (wj, cjt) = sample_with(sc, &mut g, build, check)?;
        let r = evaluator_for(&wj, cfg.precision()).and_then(|ev_w| {
            let ev_c = evaluator_for(&cjt, cfg.precision())?;
            four_way(&ev_w, (&WARNAAR_FIRST, &wj), &ev_c, (&CN_JACKSON_BOX, &cjt))
        });
        match r {
            Ok(rs) => tally.push_all(rs),
            Err(e) => tally.record(trial, Err(e)),
        }
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}

/// The points `w = (z_1, q z_1, ..., q^{m_1-1} z_1, ..., q^{m_n-1} z_n)`.
fn spread_points(ev: &Evaluator, z: &[BigComplex], m: &MultiIndex) -> Vec<BigComplex> {
    z.iter()
        .zip(m.iter())
        .flat_map(|(zk, &mk)| (0..mk as i64).map(move |t| ev.shift(zk, t)))
        .collect()
}

/// `y = (1^{x_1} 0^{m_1-x_1}, ..., 1^{x_n} 0^{m_n-x_n})`.
fn spread_index(m: &MultiIndex, x: &MultiIndex) -> Vec<usize> {
    m.iter()
        .zip(x.iter())
        .flat_map(|(&mk, &xk)| (0..mk).map(move |t| usize::from(t < xk)))
        .collect()
}

/// Residuals of the three product identities that turn the `|m|`-point
/// `N = 1` sum into the box sum over `x <= m`.
fn reparametrization_residuals(
    ev: &Evaluator,
    a: &BigComplex,
    z: &[BigComplex],
    m: &MultiIndex,
    x: &MultiIndex,
) -> Result<[Real; 3]> {
    let w = spread_points(ev, z, m);
    let y = spread_index(m, x);
    let len = w.len();
    let aq = mono!(a, ev.q());

    // prod_{j<k} theta(a w_j w_k q^{2-y_j-y_k}) / theta(a w_j w_k q^2)
    let mut lhs1 = ev.product();
    for k in 0..len {
        for j in 0..k {
            let base = mono!(a, w[j], w[k]);
            lhs1.theta(&ev.shift(&base, 2 - y[j] as i64 - y[k] as i64))?;
            lhs1.theta_den(&ev.shift(&base, 2))?;
        }
    }
    let pc = PointConfig::new(ev, z);
    let mut rhs1 = ev.product();
    pc.cn_weight_into(&mut rhs1, a, x)?;
    for (j, zj) in z.iter().enumerate() {
        let up = mono!(a, ev.qpow(1 + m[j] as i64), zj);
        for (k, zk) in z.iter().enumerate() {
            rhs1.poch(&mono!(a, zj, zk), x[k])?.poch_den(&mono!(up, zk), x[k])?;
        }
    }

    // Delta(w q^{-y}) / Delta(w)
    let shifted: Vec<BigComplex> = w.iter().zip(&y).map(|(wk, &yk)| ev.shift(wk, -(yk as i64))).collect();
    let lhs2 = &PointConfig::new(ev, &shifted).vandermonde()? / &PointConfig::new(ev, &w).vandermonde()?;
    let xw = x.weight();
    let mut rhs2 = ev.product();
    rhs2.negate_if(xw % 2 == 1).qpow(xw as i64);
    pc.vandermonde_ratio_into(&mut rhs2, x)?;
    pc.box_factor_into(&mut rhs2, m, x)?;

    // prod_{j<=k} theta(aq w_j w_k) / prod_{j<k} theta(aq^2 w_j w_k)
    let mut lhs3 = ev.product();
    for k in 0..len {
        for j in 0..=k {
            let base = mono!(aq, w[j], w[k]);
            lhs3.theta(&base)?;
            if j < k {
                lhs3.theta_den(&ev.shift(&base, 1))?;
            }
        }
    }
    let mut rhs3 = ev.product();
    cn_box_norm_into(&mut rhs3, a, z, m)?;

    Ok([
        residual(&lhs1.value(), &rhs1.value()),
        residual(&lhs2, &rhs2.value()),
        residual(&lhs3.value(), &rhs3.value()),
    ])
}

/// Draws `p, q, a, z` and returns the residuals of the three collapse
/// identities at the given `x <= m`.
pub fn check_reparametrization(
    m: &MultiIndex,
    x: &MultiIndex,
    cfg: &VerifyConfig,
    trial: u64,
) -> Result<[Real; 3]> {
    if m.len() != x.len() || x.iter().zip(m.iter()).any(|(xk, mk)| xk > mk) {
        return Err(Error::InvalidConfig("x must satisfy 0 <= x <= m"));
    }
    let sc = &cfg.sampler;
    let n = m.len();
    let shape = Shape::bounds(m.clone());
    let mut g = Draw::new(sc, trial_seed(sc.seed, "check_reparametrization", &shape, trial));
    let build = |g: &mut Draw| -> Result<(BigComplex, BigComplex, BigComplex, Vec<BigComplex>)> {
        let p = g.nome(sc, sc.zero_nome);
        let q = g.complex();
        let a = g.complex();
        let z = (0..n).map(|_| g.complex()).collect();
        Ok((p, q, a, z))
    };
    let check = |(p, q, a, z): &(BigComplex, BigComplex, BigComplex, Vec<BigComplex>)| {
        let ev = Evaluator::new(p, q, 64, Mode::Scan)?;
        let z64: Vec<BigComplex> = z.iter().map(|v| v.with_precision(64)).collect();
        for x in Domain::Box(m.clone()).iter() {
            reparametrization_residuals(&ev, &a.with_precision(64), &z64, m, &x)?;
        }
        Ok(())
    };
    let (p, q, a, z) = sample_with(sc, &mut g, build, check)?;
    let ev = Evaluator::new(&p, &q, cfg.precision(), Mode::Evaluate)?;
    reparametrization_residuals(&ev, &a, &z, m, x)
}

/// [`check_reparametrization`] over every `x` in the box, `trials` draws each.
pub fn reparametrization_report(
    m: &MultiIndex,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    let start = clock.now_ns();
    let mut tally = Tally::new("check_reparametrization", Shape::bounds(m.clone()), cfg);
    for trial in 0..trials {
        for x in Domain::Box(m.clone()).iter() {
            match check_reparametrization(m, &x, cfg, trial as u64) {
                Ok(rs) => tally.push_all(rs),
                Err(e @ Error::SamplingExhausted(_)) => return Err(e),
                Err(e) => tally.record(trial, Err(e)),
            }
        }
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}

fn swapped(d: &dyn Identity, ps: &ParameterSet, x: &'static str, y: &'static str) -> Result<ParameterSet> {
    let mut out = ps.clone();
    let (vx, vy) = (ps.scalar(x)?.clone(), ps.scalar(y)?.clone());
    out.set_scalar(x, vy);
    out.set_scalar(y, vx);
    d.derive(&mut out)?;
    Ok(out)
}

/// Both sides of the `C_n` to `A_n` transformation must be unchanged when
/// `d` and `g` are exchanged (with `lambda` recomputed).
pub fn swap_symmetry_check(
    shape: &Shape,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    let d: &dyn Identity = &BAILEY_CN_AN;
    let sc = &cfg.sampler;
    let start = clock.now_ns();
    let mut tally = Tally::new("bailey_cn_an:swap_dg", shape.clone(), cfg);
    for trial in 0..trials {
        let mut g = Draw::new(sc, trial_seed(sc.seed, "bailey_cn_an:swap_dg", shape, trial as u64));
        let build = |g: &mut Draw| -> Result<(ParameterSet, ParameterSet)> {
            let seed = g.stream_seed();
            let ps = sampler::sample(d, shape, &crate::sampler::SamplerConfig { seed, ..sc.clone() }, 0)?;
            let sw = swapped(d, &ps, "d", "g")?;
            Ok((ps, sw))
        };
        let check = |(_, sw): &(ParameterSet, ParameterSet)| scan(d, sw);
        let (ps, sw) = sample_with(sc, &mut g, build, check)?;
        let r = evaluator_for(&ps, cfg.precision()).and_then(|ev| {
            let (l1, r1) = d.evaluate(&ev, &ps)?;
            let (l2, r2) = d.evaluate(&ev, &sw)?;
            Ok([residual(&l1, &l2), residual(&r1, &r2), residual(&l1, &r1)])
        });
        match r {
            Ok(rs) => tally.push_all(rs),
            Err(e) => tally.record(trial, Err(e)),
        }
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}

/// Multiplies every `z_k` by a common unit-modulus constant, re-solves the
/// constraint and checks the identity again.
pub fn gauge_check(
    id: &str,
    shape: &Shape,
    trials: usize,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<VerificationReport> {
    let d = catalog::lookup(id)?;
    let sc = &cfg.sampler;
    let tag = alloc::format!("{id}:gauge");
    let start = clock.now_ns();
    let mut tally = Tally::new(&tag, shape.clone(), cfg);
    for trial in 0..trials {
        let mut g = Draw::new(sc, trial_seed(sc.seed, &tag, shape, trial as u64));
        let build = |g: &mut Draw| -> Result<ParameterSet> {
            let seed = g.stream_seed();
            let mut ps = sampler::sample(d, shape, &crate::sampler::SamplerConfig { seed, ..sc.clone() }, 0)?;
            let t = g.angle();
            let u = BigComplex::from_polar_f64(1.0, t, sc.precision_bits);
            let z: Vec<BigComplex> = ps.list("z_list")?.iter().map(|v| v * &u).collect();
            ps.set_list("z_list", z);
            if let Some(c) = d.constraint() {
                c.solve(&mut ps)?;
            }
            d.derive(&mut ps)?;
            Ok(ps)
        };
        let ps = sample_with(sc, &mut g, build, |ps| scan(d, ps))?;
        let r = super::evaluate(d, &ps, cfg.precision()).map(|(l, r)| residual(&l, &r));
        tally.record(trial, r);
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}

/// The extended partial fraction sum with `t = b_{n+1}` against the plain
/// one: the terms agree one by one and their sum vanishes when
/// `a_1...a_n = b_1...b_n`.
pub fn epf_reduces_to_ww(n: usize, trials: usize, cfg: &VerifyConfig, clock: &dyn Clock) -> Result<VerificationReport> {
    const ID: &str = "pf_epf:ww";
    let ww = catalog::lookup("pf_ww")?;
    let shape = Shape::rank_only(n);
    ww.check_shape(&shape)?;
    let sc = &cfg.sampler;
    let start = clock.now_ns();
    let mut tally = Tally::new(ID, shape.clone(), cfg);
    for trial in 0..trials {
        let mut g = Draw::new(sc, trial_seed(sc.seed, ID, &shape, trial as u64));
        let build = |g: &mut Draw| -> Result<ParameterSet> {
            let seed = g.stream_seed();
            let mut ps = sampler::sample(ww, &shape, &crate::sampler::SamplerConfig { seed, ..sc.clone() }, 0)?;
            let t = g.complex();
            let mut b = ps.list("b_list")?.to_vec();
            b.push(t.clone());
            ps.set_list("b_list", b);
            ps.set_scalar("t", t);
            Ok(ps)
        };
        let ps = sample_with(sc, &mut g, build, |ps| {
            let low = ps.with_precision(crate::arith::MIN_PRECISION);
            let ev = Evaluator::new(&low.p, &low.q, crate::arith::MIN_PRECISION, Mode::Scan)?;
            epf_terms(&ev, low.list("a_list")?, low.list("b_list")?, low.scalar("t")?).map(|_| ())
        })?;
        let r = evaluator_for(&ps, cfg.precision()).and_then(|ev| {
            let (a, b, t) = (ps.list("a_list")?, ps.list("b_list")?, ps.scalar("t")?);
            let ext = epf_terms(&ev, a, b, t)?;
            let plain = ww_terms(&ev, a, &b[..n])?;
            let mut rs: Vec<Real> = ext.iter().zip(&plain).map(|(x, y)| residual(x, y)).collect();
            let (rest, isolated) = isolate(&ext, ev.prec());
            rs.push(residual(&rest, &isolated));
            Ok(rs)
        });
        match r {
            Ok(rs) => tally.push_all(rs),
            Err(e) => tally.record(trial, Err(e)),
        }
    }
    Ok(tally.finish(clock.now_ns().saturating_sub(start)))
}
