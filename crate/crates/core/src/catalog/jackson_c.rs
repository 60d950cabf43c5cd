//! Jackson summations on `C_n`: the box sum and Warnaar's first summation.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    box_shapes, mono, named, need_bounds, need_total, simplex_shapes, sum_over, Atom, Constraint,
    DomainKind, Family, Identity, ParamSpec, Slot,
};
use crate::arith::BigComplex;
use crate::error::Result;
use crate::eval::{Evaluator, Product};
use crate::lattice::{Domain, MultiIndex};
use crate::params::{ParameterSet, Shape};
use crate::weyl::PointConfig;

pub(super) static ALL: &[&dyn Identity] = &[&CN_JACKSON_BOX, &WARNAAR_FIRST];

pub static CN_JACKSON_BOX: CnJacksonBox = CnJacksonBox;
pub static WARNAAR_FIRST: WarnaarFirst = WarnaarFirst;

fn balancing(relation: &'static str, q_power: Atom) -> Constraint {
    Constraint {
        relation,
        solved: Slot::Scalar("e"),
        monomial: vec![
            (Atom::Scalar("a"), 2),
            (q_power, 1),
            (Atom::Scalar("b"), -1),
            (Atom::Scalar("c"), -1),
            (Atom::Scalar("d"), -1),
            (Atom::Scalar("e"), -1),
        ],
    }
}

pub struct CnJacksonBox;

/// One term of a `C_n` box sum with well-poised parameters `params`:
/// the weight, the box truncation and
/// `prod_k prod_s (s z_k)_{y_k} / (aq z_k / s)_{y_k}`.
pub(crate) fn cn_box_term(
    ev: &Evaluator,
    a: &BigComplex,
    z: &[BigComplex],
    m: &MultiIndex,
    params: &[&BigComplex],
    y: &MultiIndex,
) -> Result<BigComplex> {
    let aq = mono!(a, ev.q());
    let pc = PointConfig::new(ev, z);
    let mut t = ev.product();
    pc.vandermonde_ratio_into(&mut t, y)?;
    pc.cn_weight_into(&mut t, a, y)?;
    pc.box_factor_into(&mut t, m, y)?;
    for (j, zj) in z.iter().enumerate() {
        let up = mono!(a, ev.qpow(1 + m[j] as i64), zj);
        for (k, zk) in z.iter().enumerate() {
            t.poch(&mono!(a, zj, zk), y[k])?.poch_den(&mono!(up, zk), y[k])?;
        }
    }
    for (k, zk) in z.iter().enumerate() {
        for &s in params {
            t.poch(&mono!(s, zk), y[k])?.poch_den(&mono!(aq, zk; s), y[k])?;
        }
    }
    t.qpow(y.weight() as i64);
    Ok(t.value())
}

/// `prod_{j,k} (aq z_j z_k)_{m_k} / prod_{j<k} (aq z_j z_k)_{m_j+m_k}`.
pub(crate) fn cn_box_norm_into(
    t: &mut Product<'_>,
    a: &BigComplex,
    z: &[BigComplex],
    m: &MultiIndex,
) -> Result<()> {
    let aq = mono!(a, t.evaluator().q());
    for zj in z {
        for (k, zk) in z.iter().enumerate() {
            t.poch(&mono!(aq, zj, zk), m[k])?;
        }
    }
    for k in 0..z.len() {
        for j in 0..k {
            t.poch_den(&mono!(aq, z[j], z[k]), m[j] + m[k])?;
        }
    }
    Ok(())
}

pub(crate) fn cjt_term(ev: &Evaluator, ps: &ParameterSet, y: &MultiIndex) -> Result<BigComplex> {
    let [a, b, c, d, e] = named(ps, ["a", "b", "c", "d", "e"])?;
    cn_box_term(ev, a, ps.list("z_list")?, ps.bounds()?, &[b, c, d, e], y)
}

pub(crate) fn cjt_rhs(ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
    let [a, b, c, d, e] = named(ps, ["a", "b", "c", "d", "e"])?;
    let z = ps.list("z_list")?;
    let m = ps.bounds()?;
    let aq = mono!(a, ev.q());
    let mut rhs = ev.product();
    cn_box_norm_into(&mut rhs, a, z, m)?;
    let mm = m.weight();
    rhs.poch(&mono!(aq; b, c), mm)?.poch(&mono!(aq; b, d), mm)?.poch(&mono!(aq; c, d), mm)?;
    for (k, zk) in z.iter().enumerate() {
        let mk = m[k];
        rhs.poch_den(&mono!(aq, zk; b), mk)?;
        rhs.poch_den(&mono!(aq, zk; c), mk)?;
        rhs.poch_den(&mono!(aq, zk; d), mk)?;
        rhs.poch_den(&mono!(ev.qpow(-(mk as i64)), e; a, zk), mk)?;
    }
    Ok(rhs.value())
}

impl Identity for CnJacksonBox {
    fn id(&self) -> &'static str {
        "cn_jackson_box"
    }

    fn family(&self) -> Family {
        Family::Cn
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::Box
    }

    fn summary(&self) -> &'static str {
        "C_n Jackson summation over the box 0 <= y <= m, a^2 q^(1+|m|) = bcde"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_bounds(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        box_shapes(2)
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d", "e"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(balancing(
            "a^2 q^(1+|m|) = bcde",
            Atom::QPower { constant: 1, per_size: 1, per_rank: 0 },
        ))
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let domain = Domain::Box(ps.bounds()?.clone());
        let lhs = sum_over(&domain, ev.prec(), |y| cjt_term(ev, ps, y))?;
        Ok((lhs, cjt_rhs(ev, ps)?))
    }
}

/// Warnaar's first summation. The shape carries `N`; the sum runs over the
/// cube `0 <= y_k <= N`.
pub struct WarnaarFirst;

pub(crate) fn wj_term(ev: &Evaluator, ps: &ParameterSet, y: &MultiIndex) -> Result<BigComplex> {
    let [a, b, c, d, e] = named(ps, ["a", "b", "c", "d", "e"])?;
    let z = ps.list("z_list")?;
    let big_n = ps.total()? as i64;
    let aq = mono!(a, ev.q());
    let q_neg_n = ev.qpow(-big_n);
    let top = mono!(a, ev.qpow(big_n + 1));
    let pc = PointConfig::new(ev, z);
    let mut t = ev.product();
    pc.vandermonde_ratio_into(&mut t, y)?;
    pc.cn_weight_into(&mut t, a, y)?;
    for (k, zk) in z.iter().enumerate() {
        let yk = y[k];
        let zk2 = mono!(zk, zk);
        t.poch(&mono!(a, zk2), yk)?.poch(&q_neg_n, yk)?;
        t.poch_den(ev.q(), yk)?.poch_den(&mono!(top, zk2), yk)?;
        for s in [b, c, d, e] {
            t.poch(&mono!(s, zk), yk)?.poch_den(&mono!(aq, zk; s), yk)?;
        }
    }
    t.qpow(y.weight() as i64);
    Ok(t.value())
}

pub(crate) fn wj_rhs(ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
    let [a, b, c, d, e] = named(ps, ["a", "b", "c", "d", "e"])?;
    let z = ps.list("z_list")?;
    let big_n = ps.total()?;
    let n_i = big_n as i64;
    let n = z.len();
    let aq = mono!(a, ev.q());
    let mut rhs = ev.product();
    for k in 0..n {
        for j in 0..k {
            let base = mono!(a, z[j], z[k]);
            rhs.theta(&mono!(base, ev.qpow(n_i)))?.theta_den(&base)?;
        }
    }
    for (idx, zk) in z.iter().enumerate() {
        // k runs from 1 to n
        let shifted = mono!(a, ev.qpow(1 - idx as i64));
        rhs.poch(&mono!(aq, zk, zk), big_n)?;
        rhs.poch(&mono!(shifted; b, c), big_n)?;
        rhs.poch(&mono!(shifted; b, d), big_n)?;
        rhs.poch(&mono!(shifted; c, d), big_n)?;
        rhs.poch_den(&mono!(aq, zk; b), big_n)?;
        rhs.poch_den(&mono!(aq, zk; c), big_n)?;
        rhs.poch_den(&mono!(aq, zk; d), big_n)?;
        rhs.poch_den(&mono!(ev.qpow(-n_i), e; a, zk), big_n)?;
    }
    Ok(rhs.value())
}

impl Identity for WarnaarFirst {
    fn id(&self) -> &'static str {
        "warnaar_first"
    }

    fn family(&self) -> Family {
        Family::Cn
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::Box
    }

    fn summary(&self) -> &'static str {
        "Warnaar's first C_n Jackson summation over 0 <= y_k <= N, a^2 q^(2+N-n) = bcde"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d", "e"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(balancing(
            "a^2 q^(2+N-n) = bcde",
            Atom::QPower { constant: 2, per_size: 1, per_rank: -1 },
        ))
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let domain = Domain::Box(MultiIndex::uniform(ps.rank(), ps.total()?));
        let lhs = sum_over(&domain, ev.prec(), |y| wj_term(ev, ps, y))?;
        Ok((lhs, wj_rhs(ev, ps)?))
    }
}
