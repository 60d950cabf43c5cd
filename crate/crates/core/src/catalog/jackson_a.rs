//! Jackson summations on `A_n`: the fundamental theorem at `p = 0`, the
//! simplex sum, its classical form and the box sum.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    box_shapes, mono, named, need_bounds, need_total, simplex_shapes, sum_over, Atom, Constraint,
    DomainKind, Family, Identity, ParamSpec, Slot,
};
use crate::arith::BigComplex;
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::lattice::{Domain, MultiIndex};
use crate::params::{ParameterSet, Shape};
use crate::weyl::PointConfig;

pub(super) static ALL: &[&dyn Identity] =
    &[&MILNE_FT, &AN_JACKSON_SIMPLEX, &AN_JACKSON_CLASSICAL, &AN_JACKSON_BOX];

pub static MILNE_FT: MilneFt = MilneFt;
pub static AN_JACKSON_SIMPLEX: AnJacksonSimplex = AnJacksonSimplex;
pub static AN_JACKSON_CLASSICAL: AnJacksonClassical = AnJacksonClassical;
pub static AN_JACKSON_BOX: AnJacksonBox = AnJacksonBox;

fn prod_all(xs: &[BigComplex], one: BigComplex) -> BigComplex {
    xs.iter().fold(one, |acc, v| &acc * v)
}

pub struct MilneFt;

impl Identity for MilneFt {
    fn id(&self) -> &'static str {
        "milne_ft"
    }

    fn family(&self) -> Family {
        Family::An
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::SimplexExact
    }

    fn summary(&self) -> &'static str {
        "sum_{|y|=N} Delta(zq^y)/Delta(z) prod_{j,k} (a_j z_k/z_j)_{y_k} / (q z_k/z_j)_{y_k} = (a_1...a_n)_N / (q)_N  (p = 0)"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::default().list("a_list", shape.rank).list("z_list", shape.rank)
    }

    fn zero_nome_only(&self) -> bool {
        true
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        if !ev.nome().is_zero() {
            return Err(Error::InvalidConfig("milne_ft holds only at p = 0"));
        }
        let (a, z) = (ps.list("a_list")?, ps.list("z_list")?);
        let n = ps.rank();
        let big_n = ps.total()?;
        let pc = PointConfig::new(ev, z);
        let domain = Domain::SimplexExact { n, total: big_n };
        let lhs = sum_over(&domain, ev.prec(), |y| {
            let mut t = ev.product();
            pc.vandermonde_ratio_into(&mut t, y)?;
            for j in 0..n {
                for k in 0..n {
                    t.poch(&mono!(a[j], z[k]; z[j]), y[k])?;
                }
            }
            pc.q_factorials_into(&mut t, y)?;
            Ok(t.value())
        })?;
        let mut rhs = ev.product();
        rhs.poch(&prod_all(a, ev.one()), big_n)?.poch_den(ev.q(), big_n)?;
        Ok((lhs, rhs.value()))
    }
}

pub struct AnJacksonSimplex;

/// One term of the simplex sum at `y` with `|y| = N`.
pub(crate) fn taj_term(
    ev: &Evaluator,
    a: &[BigComplex],
    b: &BigComplex,
    z: &[BigComplex],
    y: &MultiIndex,
) -> Result<BigComplex> {
    let pc = PointConfig::new(ev, z);
    let mut t = ev.product();
    pc.vandermonde_ratio_into(&mut t, y)?;
    for (k, zk) in z.iter().enumerate() {
        for aj in a {
            t.poch(&mono!(aj, zk), y[k])?;
        }
        t.poch_den(&mono!(b, zk), y[k])?;
    }
    pc.q_factorials_into(&mut t, y)?;
    Ok(t.value())
}

/// The closed form `(b/a_1, ..., b/a_{n+1})_N / (q, bz_1, ..., bz_n)_N`.
pub(crate) fn taj_rhs(
    ev: &Evaluator,
    a: &[BigComplex],
    b: &BigComplex,
    z: &[BigComplex],
    big_n: usize,
) -> Result<BigComplex> {
    let mut rhs = ev.product();
    for aj in a {
        rhs.poch(&mono!(b; aj), big_n)?;
    }
    rhs.poch_den(ev.q(), big_n)?;
    for zk in z {
        rhs.poch_den(&mono!(b, zk), big_n)?;
    }
    Ok(rhs.value())
}

impl Identity for AnJacksonSimplex {
    fn id(&self) -> &'static str {
        "an_jackson_simplex"
    }

    fn family(&self) -> Family {
        Family::An
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::SimplexExact
    }

    fn summary(&self) -> &'static str {
        "sum_{|y|=N} Delta(zq^y)/Delta(z) prod_k prod_j (a_j z_k)_{y_k} / ((b z_k)_{y_k} prod_j (q z_k/z_j)_{y_k}) = (b/a_1,...,b/a_{n+1})_N / (q,bz_1,...,bz_n)_N"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["b"]).list("a_list", shape.rank + 1).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(Constraint {
            relation: "b = a_1...a_{n+1} z_1...z_n",
            solved: Slot::Scalar("b"),
            monomial: vec![
                (Atom::Scalar("b"), 1),
                (Atom::ListProduct("a_list"), -1),
                (Atom::ListProduct("z_list"), -1),
            ],
        })
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, z, b) = (ps.list("a_list")?, ps.list("z_list")?, ps.scalar("b")?);
        let big_n = ps.total()?;
        let domain = Domain::SimplexExact { n: ps.rank(), total: big_n };
        let lhs = sum_over(&domain, ev.prec(), |y| taj_term(ev, a, b, z, y))?;
        Ok((lhs, taj_rhs(ev, a, b, z, big_n)?))
    }
}

pub struct AnJacksonClassical;

/// One term of the classical simplex sum at `y` with `|y| <= N`.
pub(crate) fn aaj_term(ev: &Evaluator, ps: &ParameterSet, y: &MultiIndex) -> Result<BigComplex> {
    let (a, c) = (ps.scalar("a")?, ps.scalar("c")?);
    let (b, z) = (ps.list("b_list")?, ps.list("z_list")?);
    let big_n = ps.total()? as i64;
    let w = y.weight();
    let aq = mono!(a, ev.q());
    let pc = PointConfig::new(ev, z);
    let mut t = ev.product();
    pc.vandermonde_ratio_into(&mut t, y)?;
    pc.an_weight_into(&mut t, a, y)?;
    t.poch(&ev.qpow(-big_n), w)?.poch(c, w)?;
    for zj in z {
        t.poch(&mono!(a, zj), w)?;
    }
    for bj in b {
        t.poch_den(&mono!(aq; bj), w)?;
    }
    t.qpow(w as i64);
    for (k, zk) in z.iter().enumerate() {
        for bj in b {
            t.poch(&mono!(bj, zk), y[k])?;
        }
        t.poch_den(&mono!(a, ev.qpow(1 + big_n), zk), y[k])?;
        t.poch_den(&mono!(aq, zk; c), y[k])?;
    }
    pc.q_factorials_into(&mut t, y)?;
    Ok(t.value())
}

pub(crate) fn aaj_rhs(ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
    let (a, c) = (ps.scalar("a")?, ps.scalar("c")?);
    let (b, z) = (ps.list("b_list")?, ps.list("z_list")?);
    let big_n = ps.total()?;
    let aq = mono!(a, ev.q());
    let mut rhs = ev.product();
    rhs.mul(&c.powi(big_n as i64));
    for zk in z {
        rhs.poch(&mono!(aq, zk), big_n)?.poch_den(&mono!(aq, zk; c), big_n)?;
    }
    for bk in b {
        rhs.poch(&mono!(aq; c, bk), big_n)?.poch_den(&mono!(aq; bk), big_n)?;
    }
    Ok(rhs.value())
}

impl Identity for AnJacksonClassical {
    fn id(&self) -> &'static str {
        "an_jackson_classical"
    }

    fn family(&self) -> Family {
        Family::An
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::SimplexLe
    }

    fn summary(&self) -> &'static str {
        "classical form of the A_n Jackson summation over |y| <= N, a^2 q^(1+N) = b_1...b_{n+2} c z_1...z_n"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "c"]).list("b_list", shape.rank + 2).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(Constraint {
            relation: "a^2 q^(1+N) = b_1...b_{n+2} c z_1...z_n",
            solved: Slot::Scalar("c"),
            monomial: vec![
                (Atom::Scalar("a"), 2),
                (Atom::QPower { constant: 1, per_size: 1, per_rank: 0 }, 1),
                (Atom::ListProduct("b_list"), -1),
                (Atom::Scalar("c"), -1),
                (Atom::ListProduct("z_list"), -1),
            ],
        })
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let domain = Domain::SimplexLe { n: ps.rank(), total: ps.total()? };
        let lhs = sum_over(&domain, ev.prec(), |y| aaj_term(ev, ps, y))?;
        Ok((lhs, aaj_rhs(ev, ps)?))
    }
}

pub struct AnJacksonBox;

impl Identity for AnJacksonBox {
    fn id(&self) -> &'static str {
        "an_jackson_box"
    }

    fn family(&self) -> Family {
        Family::An
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::Box
    }

    fn summary(&self) -> &'static str {
        "A_n Jackson summation over the box 0 <= y <= m, a^2 q^(1+|m|) = bcde"
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
            t.poch(b, w)?.poch(c, w)?;
            t.poch_den(&mono!(aq; d), w)?.poch_den(&mono!(aq; e), w)?;
            for (j, zj) in z.iter().enumerate() {
                t.poch(&mono!(a, zj), w)?;
                t.poch_den(&mono!(a, ev.qpow(1 + m[j] as i64), zj), w)?;
            }
            t.qpow(w as i64);
            for (k, zk) in z.iter().enumerate() {
                t.poch(&mono!(d, zk), y[k])?.poch(&mono!(e, zk), y[k])?;
                t.poch_den(&mono!(aq, zk; b), y[k])?.poch_den(&mono!(aq, zk; c), y[k])?;
            }
            pc.box_factor_into(&mut t, m, y)?;
            Ok(t.value())
        })?;
        let mm = m.weight();
        let mut rhs = ev.product();
        rhs.poch(&mono!(aq; c, d), mm)?.poch(&mono!(aq; b, d), mm)?;
        rhs.poch_den(&mono!(aq; d), mm)?.poch_den(&mono!(aq; b, c, d), mm)?;
        for (k, zk) in z.iter().enumerate() {
            rhs.poch(&mono!(aq, zk), m[k])?.poch(&mono!(aq, zk; b, c), m[k])?;
            rhs.poch_den(&mono!(aq, zk; b), m[k])?.poch_den(&mono!(aq, zk; c), m[k])?;
        }
        Ok((lhs, rhs.value()))
    }
}
