//! Jackson summations on `D_n`: the simplex sum, its classical form and the
//! two box sums.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    box_shapes, choose2, mono, named, need_bounds, need_total, simplex_shapes, sum_over, Atom,
    Constraint, DomainKind, Family, Identity, ParamSpec, Slot,
};
use crate::arith::BigComplex;
use crate::error::Result;
use crate::eval::{Evaluator, Product};
use crate::lattice::{Domain, MultiIndex};
use crate::params::{ParameterSet, Shape};
use crate::weyl::PointConfig;

pub(super) static ALL: &[&dyn Identity] =
    &[&DnJacksonSimplex, &DnJacksonClassical, &DnJacksonBox, &DnJacksonBoxReversed];

pub struct DnJacksonSimplex;

impl Identity for DnJacksonSimplex {
    fn id(&self) -> &'static str {
        "dn_jackson_simplex"
    }

    fn family(&self) -> Family {
        Family::Dn
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::SimplexExact
    }

    fn summary(&self) -> &'static str {
        "D_n Jackson summation over |y| = N with the (z_j z_k)_{y_j+y_k} coupling"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["b"]).list("a_list", shape.rank - 1).list("z_list", shape.rank)
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, z, b) = (ps.list("a_list")?, ps.list("z_list")?, ps.scalar("b")?);
        let big_n = ps.total()?;
        let pc = PointConfig::new(ev, z);
        let domain = Domain::SimplexExact { n: ps.rank(), total: big_n };
        let shift_b = &ev.qpow(1 - big_n as i64) / b;
        let lhs = sum_over(&domain, ev.prec(), |y| {
            let mut t = ev.product();
            pc.vandermonde_ratio_into(&mut t, y)?;
            pc.dn_coupling_into(&mut t, y)?;
            for (k, zk) in z.iter().enumerate() {
                t.qpow(choose2(y[k])).mul(&zk.powi(y[k] as i64));
                for aj in a {
                    t.poch(&mono!(zk, aj), y[k])?.poch(&mono!(zk; aj), y[k])?;
                }
                t.poch_den(&mono!(b, zk), y[k])?.poch_den(&mono!(shift_b, zk), y[k])?;
            }
            pc.q_factorials_into(&mut t, y)?;
            Ok(t.value())
        })?;
        let mut rhs = ev.product();
        let lead = -&mono!(ev.qpow(big_n as i64 - 1), b);
        rhs.mul(&lead.powi(big_n as i64));
        for ak in a {
            rhs.poch(&mono!(b, ak), big_n)?.poch(&mono!(b; ak), big_n)?;
        }
        rhs.poch_den(ev.q(), big_n)?;
        for zk in z {
            rhs.poch_den(&mono!(b, zk), big_n)?.poch_den(&mono!(b; zk), big_n)?;
        }
        Ok((lhs, rhs.value()))
    }
}

/// `prod_j (a z_j)_{|y|} (aq/z_j)_{|y| - y_j}`, shared by the `D_n` sums.
fn dn_well_poised_into(
    t: &mut Product<'_>,
    ev: &Evaluator,
    a: &BigComplex,
    z: &[BigComplex],
    y: &MultiIndex,
) -> Result<()> {
    let w = y.weight();
    let aq = mono!(a, ev.q());
    for (j, zj) in z.iter().enumerate() {
        t.poch(&mono!(a, zj), w)?.poch(&mono!(aq; zj), w - y[j])?;
    }
    Ok(())
}

pub struct DnJacksonClassical;

impl Identity for DnJacksonClassical {
    fn id(&self) -> &'static str {
        "dn_jackson_classical"
    }

    fn family(&self) -> Family {
        Family::Dn
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::SimplexLe
    }

    fn summary(&self) -> &'static str {
        "classical form of the D_n Jackson summation over |y| <= N"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "c"]).list("b_list", shape.rank).list("z_list", shape.rank)
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [a, c] = named(ps, ["a", "c"])?;
        let (b, z) = (ps.list("b_list")?, ps.list("z_list")?);
        let big_n = ps.total()?;
        let n_i = big_n as i64;
        let aq = mono!(a, ev.q());
        let pc = PointConfig::new(ev, z);
        let domain = Domain::SimplexLe { n: ps.rank(), total: big_n };
        let lhs = sum_over(&domain, ev.prec(), |y| {
            let w = y.weight();
            let mut t = ev.product();
            pc.vandermonde_ratio_into(&mut t, y)?;
            pc.an_weight_into(&mut t, a, y)?;
            pc.dn_coupling_into(&mut t, y)?;
            for (k, zk) in z.iter().enumerate() {
                for bj in b {
                    t.poch(&mono!(zk, bj), y[k])?.poch(&mono!(zk; bj), y[k])?;
                }
            }
            pc.q_factorials_into(&mut t, y)?;
            dn_well_poised_into(&mut t, ev, a, z, y)?;
            for bj in b {
                t.poch_den(&mono!(aq, bj), w)?.poch_den(&mono!(aq; bj), w)?;
            }
            t.poch(&ev.qpow(-n_i), w)?.poch(c, w)?.poch(&mono!(a, a, ev.qpow(n_i + 1); c), w)?;
            for (k, zk) in z.iter().enumerate() {
                t.poch_den(&mono!(aq, zk; c), y[k])?;
                t.poch_den(&mono!(ev.qpow(-n_i), c, zk; a), y[k])?;
                t.poch_den(&mono!(ev.qpow(n_i + 1), a, zk), y[k])?;
            }
            t.qpow(w as i64);
            Ok(t.value())
        })?;
        let mut rhs = ev.product();
        for (zk, bk) in z.iter().zip(b) {
            rhs.poch(&mono!(aq, zk), big_n)?.poch(&mono!(aq; zk), big_n)?;
            rhs.poch(&mono!(aq, bk; c), big_n)?.poch(&mono!(aq; bk, c), big_n)?;
            rhs.poch_den(&mono!(aq, zk; c), big_n)?.poch_den(&mono!(aq; zk, c), big_n)?;
            rhs.poch_den(&mono!(aq, bk), big_n)?.poch_den(&mono!(aq; bk), big_n)?;
        }
        Ok((lhs, rhs.value()))
    }
}

pub struct DnJacksonBox;

impl Identity for DnJacksonBox {
    fn id(&self) -> &'static str {
        "dn_jackson_box"
    }

    fn family(&self) -> Family {
        Family::Dn
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::Box
    }

    fn summary(&self) -> &'static str {
        "D_n Jackson summation over the box 0 <= y <= m, a^2 q = bcd"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_bounds(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        box_shapes(2)
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(Constraint {
            relation: "a^2 q = bcd",
            solved: Slot::Scalar("d"),
            monomial: vec![
                (Atom::Scalar("a"), 2),
                (Atom::QPower { constant: 1, per_size: 0, per_rank: 0 }, 1),
                (Atom::Scalar("b"), -1),
                (Atom::Scalar("c"), -1),
                (Atom::Scalar("d"), -1),
            ],
        })
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [a, b, c, d] = named(ps, ["a", "b", "c", "d"])?;
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        let aq = mono!(a, ev.q());
        let pc = PointConfig::new(ev, z);
        let n = ps.rank();
        let domain = Domain::Box(m.clone());
        let lhs = sum_over(&domain, ev.prec(), |y| {
            let w = y.weight();
            let mut t = ev.product();
            pc.vandermonde_ratio_into(&mut t, y)?;
            pc.an_weight_into(&mut t, a, y)?;
            pc.dn_coupling_into(&mut t, y)?;
            for j in 0..n {
                let mj = m[j] as i64;
                for k in 0..n {
                    t.poch(&mono!(ev.qpow(-mj), z[k]; z[j]), y[k])?;
                    t.poch(&mono!(ev.qpow(mj), z[j], z[k]), y[k])?;
                }
            }
            pc.q_factorials_into(&mut t, y)?;
            dn_well_poised_into(&mut t, ev, a, z, y)?;
            for (j, zj) in z.iter().enumerate() {
                let mj = m[j] as i64;
                t.poch_den(&mono!(a, ev.qpow(1 + mj), zj), w)?;
                t.poch_den(&mono!(a, ev.qpow(1 - mj); zj), w)?;
            }
            t.poch(b, w)?.poch(c, w)?.poch(d, w)?;
            for (k, zk) in z.iter().enumerate() {
                t.poch_den(&mono!(aq, zk; b), y[k])?;
                t.poch_den(&mono!(aq, zk; c), y[k])?;
                t.poch_den(&mono!(aq, zk; d), y[k])?;
            }
            t.qpow(w as i64);
            Ok(t.value())
        })?;
        let mut rhs = ev.product();
        for (k, zk) in z.iter().enumerate() {
            let mk = m[k];
            rhs.poch(&mono!(aq, zk), mk)?;
            rhs.poch(&mono!(b, zk; a), mk)?.poch(&mono!(c, zk; a), mk)?.poch(&mono!(d, zk; a), mk)?;
            rhs.poch_den(&mono!(zk; a), mk)?;
            rhs.poch_den(&mono!(aq, zk; b), mk)?;
            rhs.poch_den(&mono!(aq, zk; c), mk)?;
            rhs.poch_den(&mono!(aq, zk; d), mk)?;
        }
        Ok((lhs, rhs.value()))
    }
}

pub struct DnJacksonBoxReversed;

/// The `(aq z_j z_k / e)` coupling common to both sides of the reversed box sum.
fn drb_coupling_into(
    t: &mut Product<'_>,
    ev: &Evaluator,
    a: &BigComplex,
    e: &BigComplex,
    z: &[BigComplex],
    y: &MultiIndex,
) -> Result<()> {
    let aq = mono!(a, ev.q());
    let n = z.len();
    for k in 0..n {
        for j in 0..k {
            t.poch(&mono!(aq, z[j], z[k]; e), y[j] + y[k])?;
        }
    }
    for j in 0..n {
        for k in 0..n {
            t.poch_den(&mono!(aq, z[j], z[k]; e), y[k])?;
        }
    }
    Ok(())
}

fn drb_rhs_common<'e>(ev: &'e Evaluator, ps: &ParameterSet) -> Result<Product<'e>> {
    let [a, b, c, e] = named(ps, ["a", "b", "c", "e"])?;
    let z = ps.list("z_list")?;
    let m = ps.bounds()?;
    let aq = mono!(a, ev.q());
    let mut rhs = ev.product();
    drb_coupling_into(&mut rhs, ev, a, e, z, m)?;
    for (k, zk) in z.iter().enumerate() {
        rhs.poch(&mono!(aq, zk), m[k])?;
        rhs.poch(&mono!(aq, zk; b, e), m[k])?;
        rhs.poch(&mono!(aq, zk; c, e), m[k])?;
    }
    let mm = m.weight();
    rhs.poch_den(&mono!(aq; b), mm)?.poch_den(&mono!(aq; c), mm)?;
    Ok(rhs)
}

/// Right side of the reversed box sum in the alternative form
/// `e^{|m|} q^{sum_{j<k} m_j m_k} / prod z_k^{m_k} prod_k (aqz_k/de)_{m_k} / (aq/d)_{|m|}`
/// for the last two factors.
pub fn drb_symmetric_rhs(ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
    let [a, d, e] = named(ps, ["a", "d", "e"])?;
    let z = ps.list("z_list")?;
    let m = ps.bounds()?;
    let aq = mono!(a, ev.q());
    let mut rhs = drb_rhs_common(ev, ps)?;
    let mm = m.weight();
    rhs.mul(&e.powi(mm as i64));
    let mut cross = 0i64;
    for k in 0..z.len() {
        for j in 0..k {
            cross += (m[j] * m[k]) as i64;
        }
    }
    rhs.qpow(cross);
    for (k, zk) in z.iter().enumerate() {
        rhs.div(&zk.powi(m[k] as i64))?;
        rhs.poch(&mono!(aq, zk; d, e), m[k])?;
    }
    rhs.poch_den(&mono!(aq; d), mm)?;
    Ok(rhs.value())
}

impl Identity for DnJacksonBoxReversed {
    fn id(&self) -> &'static str {
        "dn_jackson_box_reversed"
    }

    fn family(&self) -> Family {
        Family::Dn
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::Box
    }

    fn summary(&self) -> &'static str {
        "D_n Jackson box summation in reversed order with the (aq z_j z_k / e) coupling, a^2 q^(1+|m|) = bcde"
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
        Some(Constraint {
            relation: "a^2 q^(1+|m|) = bcde",
            solved: Slot::Scalar("e"),
            monomial: vec![
                (Atom::Scalar("a"), 2),
                (Atom::QPower { constant: 1, per_size: 1, per_rank: 0 }, 1),
                (Atom::Scalar("b"), -1),
                (Atom::Scalar("c"), -1),
                (Atom::Scalar("d"), -1),
                (Atom::Scalar("e"), -1),
            ],
        })
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [a, b, c, d, e] = named(ps, ["a", "b", "c", "d", "e"])?;
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        let aq = mono!(a, ev.q());
        let pc = PointConfig::new(ev, z);
        let domain = Domain::Box(m.clone());
        let lhs = sum_over(&domain, ev.prec(), |y| {
            let w = y.weight();
            let mut t = ev.product();
            pc.vandermonde_ratio_into(&mut t, y)?;
            pc.an_weight_into(&mut t, a, y)?;
            drb_coupling_into(&mut t, ev, a, e, z, y)?;
            pc.box_factor_into(&mut t, m, y)?;
            for (j, zj) in z.iter().enumerate() {
                t.poch(&mono!(a, zj), w)?.poch(&mono!(e; zj), w)?;
                t.poch_den(&mono!(a, ev.qpow(1 + m[j] as i64), zj), w)?;
                t.poch_den(&mono!(e; zj), w - y[j])?;
            }
            for (k, zk) in z.iter().enumerate() {
                t.poch(&mono!(b, zk), y[k])?.poch(&mono!(c, zk), y[k])?.poch(&mono!(d, zk), y[k])?;
            }
            t.poch_den(&mono!(aq; b), w)?.poch_den(&mono!(aq; c), w)?.poch_den(&mono!(aq; d), w)?;
            t.qpow(w as i64);
            Ok(t.value())
        })?;
        let mm = m.weight();
        let mut rhs = drb_rhs_common(ev, ps)?;
        for (k, zk) in z.iter().enumerate() {
            let shift = 1 + mm as i64 - m[k] as i64;
            rhs.poch(&mono!(a, ev.qpow(shift); b, c, zk), m[k])?;
        }
        rhs.poch_den(&mono!(aq; b, c, e), mm)?;
        Ok((lhs, rhs.value()))
    }
}
