//! Bailey transformations: two `A_n` forms, a `C_n` to `A_n` transformation
//! and two `D_n` transformations. Each one rewrites a sum with parameter `a`
//! as a prefactor times a similar sum with parameter `lambda`.

use alloc::vec;
use alloc::vec::Vec;

use super::jackson_c::{cn_box_norm_into, cn_box_term};
use super::{
    mono, named, need_bounds, need_total, sum_over, Atom, Constraint, DomainKind, Family, Identity,
    ParamSpec, Slot,
};
use crate::arith::BigComplex;
use crate::error::Result;
use crate::eval::{Evaluator, Product};
use crate::lattice::{Domain, MultiIndex};
use crate::params::{ParameterSet, Shape};
use crate::weyl::PointConfig;

pub(super) static ALL: &[&dyn Identity] =
    &[&BAILEY_AN_BOX, &BAILEY_AN_SIMPLEX, &BAILEY_CN_AN, &BAILEY_DN, &BAILEY_DN_AN];

pub static BAILEY_AN_BOX: BaileyAnBox = BaileyAnBox;
pub static BAILEY_AN_SIMPLEX: BaileyAnSimplex = BaileyAnSimplex;
pub static BAILEY_CN_AN: BaileyCnAn = BaileyCnAn;
pub static BAILEY_DN: BaileyDn = BaileyDn;
pub static BAILEY_DN_AN: BaileyDnAn = BaileyDnAn;

/// Box shapes with `n <= 2` and bounds at most 2.
fn bailey_box_shapes() -> Vec<Shape> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for m in 0..=2 {
            v.push(Shape::uniform_box(n, m));
        }
    }
    v.push(Shape::bounds(MultiIndex::new(vec![2, 1])));
    v.push(Shape::bounds(MultiIndex::new(vec![0, 2])));
    v
}

fn bailey_simplex_shapes() -> Vec<Shape> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for big_n in 0..=2 {
            v.push(Shape::total(n, big_n));
        }
    }
    v
}

/// `a^3 q^(2 + c S) = prod names`, solving for the last name.
fn cubic_balancing(
    relation: &'static str,
    per_size: i64,
    names: &[&'static str],
    lists: &[&'static str],
) -> Constraint {
    let mut monomial = vec![
        (Atom::Scalar("a"), 3),
        (Atom::QPower { constant: 2, per_size, per_rank: 0 }, 1),
    ];
    monomial.extend(lists.iter().map(|l| (Atom::ListProduct(l), -1)));
    monomial.extend(names.iter().map(|s| (Atom::Scalar(s), -1)));
    Constraint { relation, solved: Slot::Scalar(names[names.len() - 1]), monomial }
}

/// Sets `lambda = a^2 q / (x y w)`.
fn set_lambda(ps: &mut ParameterSet, divisors: [&'static str; 3]) -> Result<()> {
    let [a, x, y, w] = named(ps, ["a", divisors[0], divisors[1], divisors[2]])?;
    let lambda = mono!(a, a, ps.q; x, y, w);
    ps.set_scalar("lambda", lambda);
    Ok(())
}

/// How an `A_n` Bailey sum is cut off.
#[derive(Clone, Copy)]
enum Frame<'m> {
    /// `prod_j (alpha z_j)_{|y|} / (alpha q^{1+m_j} z_j)_{|y|}` and the box truncation.
    Box(&'m MultiIndex),
    /// `prod_j (alpha z_j)_{|y|} / prod_k (alpha q^{1+N} z_k)_{y_k}` over `|y| <= N`.
    Simplex(usize),
}

/// Factor lists of an `A_n` Bailey sum. `num`/`den` enter with length `|y|`;
/// `knum`/`kden` are multiplied by `z_k` and enter with length `y_k`.
struct AnSeries<'x> {
    alpha: &'x BigComplex,
    num: Vec<BigComplex>,
    den: Vec<BigComplex>,
    knum: Vec<BigComplex>,
    kden: Vec<BigComplex>,
}

impl AnSeries<'_> {
    fn term(&self, ev: &Evaluator, z: &[BigComplex], frame: Frame<'_>, y: &MultiIndex) -> Result<BigComplex> {
        let w = y.weight();
        let pc = PointConfig::new(ev, z);
        let mut t = ev.product();
        pc.vandermonde_ratio_into(&mut t, y)?;
        pc.an_weight_into(&mut t, self.alpha, y)?;
        for x in &self.num {
            t.poch(x, w)?;
        }
        for x in &self.den {
            t.poch_den(x, w)?;
        }
        for zj in z {
            t.poch(&mono!(self.alpha, zj), w)?;
        }
        match frame {
            Frame::Box(m) => {
                for (j, zj) in z.iter().enumerate() {
                    t.poch_den(&mono!(self.alpha, ev.qpow(1 + m[j] as i64), zj), w)?;
                }
                pc.box_factor_into(&mut t, m, y)?;
            }
            Frame::Simplex(big_n) => {
                for (k, zk) in z.iter().enumerate() {
                    t.poch_den(&mono!(self.alpha, ev.qpow(1 + big_n as i64), zk), y[k])?;
                }
                pc.q_factorials_into(&mut t, y)?;
            }
        }
        for (k, zk) in z.iter().enumerate() {
            for x in &self.knum {
                t.poch(&mono!(x, zk), y[k])?;
            }
            for x in &self.kden {
                t.poch_den(&mono!(x, zk), y[k])?;
            }
        }
        t.qpow(w as i64);
        Ok(t.value())
    }

    fn sum(&self, ev: &Evaluator, z: &[BigComplex], frame: Frame<'_>) -> Result<BigComplex> {
        let domain = match frame {
            Frame::Box(m) => Domain::Box(m.clone()),
            Frame::Simplex(big_n) => Domain::SimplexLe { n: z.len(), total: big_n },
        };
        sum_over(&domain, ev.prec(), |y| self.term(ev, z, frame, y))
    }
}

/// Factor lists of a `D_n` Bailey sum over a box. Both `D_n` transformations
/// share the weight, the `(z_j z_k)` coupling, the box truncation and
/// `prod_j (alpha z_j)_{|y|} (alpha q/z_j)_{|y|-y_j} / (alpha q^{1+m_j} z_j, alpha q^{1-m_j}/z_j)_{|y|}`.
struct DnSeries<'x> {
    alpha: &'x BigComplex,
    /// `(delta, d)` adds `prod_j (delta/z_j)_{|y|} / (delta/z_j)_{|y|-y_j}` and the
    /// `(aq z_j z_k / d)` coupling.
    delta: Option<(BigComplex, BigComplex)>,
    num: Vec<BigComplex>,
    den: Vec<BigComplex>,
    knum: Vec<BigComplex>,
    kden: Vec<BigComplex>,
}

impl DnSeries<'_> {
    fn term(&self, ev: &Evaluator, ps: &ParameterSet, y: &MultiIndex) -> Result<BigComplex> {
        let a = ps.scalar("a")?;
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        let n = z.len();
        let w = y.weight();
        let alpha_q = mono!(self.alpha, ev.q());
        let pc = PointConfig::new(ev, z);
        let mut t = ev.product();
        pc.vandermonde_ratio_into(&mut t, y)?;
        pc.an_weight_into(&mut t, self.alpha, y)?;
        pc.dn_coupling_into(&mut t, y)?;
        pc.box_factor_into(&mut t, m, y)?;
        for (j, zj) in z.iter().enumerate() {
            let mj = m[j] as i64;
            for (k, zk) in z.iter().enumerate() {
                t.poch(&mono!(ev.qpow(mj), zj, zk), y[k])?;
            }
            t.poch(&mono!(self.alpha, zj), w)?.poch(&mono!(alpha_q; zj), w - y[j])?;
            t.poch_den(&mono!(self.alpha, ev.qpow(1 + mj), zj), w)?;
            t.poch_den(&mono!(self.alpha, ev.qpow(1 - mj); zj), w)?;
        }
        if let Some((delta, d)) = &self.delta {
            let aq_d = mono!(a, ev.q(); d);
            for (j, zj) in z.iter().enumerate() {
                t.poch(&mono!(delta; zj), w)?.poch_den(&mono!(delta; zj), w - y[j])?;
                for (k, zk) in z.iter().enumerate() {
                    t.poch_den(&mono!(aq_d, zj, zk), y[k])?;
                }
            }
            for k in 0..n {
                for j in 0..k {
                    t.poch(&mono!(aq_d, z[j], z[k]), y[j] + y[k])?;
                }
            }
        }
        for x in &self.num {
            t.poch(x, w)?;
        }
        for x in &self.den {
            t.poch_den(x, w)?;
        }
        for (k, zk) in z.iter().enumerate() {
            for x in &self.knum {
                t.poch(&mono!(x, zk), y[k])?;
            }
            for x in &self.kden {
                t.poch_den(&mono!(x, zk), y[k])?;
            }
        }
        t.qpow(w as i64);
        Ok(t.value())
    }

    fn sum(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
        let domain = Domain::Box(ps.bounds()?.clone());
        sum_over(&domain, ev.prec(), |y| self.term(ev, ps, y))
    }
}

/// `prod_k (aq z_k, z_k/lambda, lambda q z_k/u, lambda q z_k/v)_{m_k}
/// / (lambda q z_k, z_k/a, aq z_k/u, aq z_k/v)_{m_k}`, shared by the `D_n` forms.
fn dn_prefactor<'e>(
    ev: &'e Evaluator,
    ps: &ParameterSet,
    u: &BigComplex,
    v: &BigComplex,
) -> Result<Product<'e>> {
    let [a, lambda] = named(ps, ["a", "lambda"])?;
    let z = ps.list("z_list")?;
    let m = ps.bounds()?;
    let aq = mono!(a, ev.q());
    let lq = mono!(lambda, ev.q());
    let mut t = ev.product();
    for (k, zk) in z.iter().enumerate() {
        let mk = m[k];
        t.poch(&mono!(aq, zk), mk)?.poch(&mono!(zk; lambda), mk)?;
        t.poch(&mono!(lq, zk; u), mk)?.poch(&mono!(lq, zk; v), mk)?;
        t.poch_den(&mono!(lq, zk), mk)?.poch_den(&mono!(zk; a), mk)?;
        t.poch_den(&mono!(aq, zk; u), mk)?.poch_den(&mono!(aq, zk; v), mk)?;
    }
    Ok(t)
}

macro_rules! bailey_meta {
    ($id:literal, $summary:literal) => {
        fn id(&self) -> &'static str {
            $id
        }
        fn family(&self) -> Family {
            Family::Bailey
        }
        fn summary(&self) -> &'static str {
            $summary
        }
    };
}

macro_rules! bailey_box_meta {
    ($id:literal, $summary:literal) => {
        bailey_meta!($id, $summary);
        fn domain_kind(&self) -> DomainKind {
            DomainKind::Box
        }
        fn check_shape(&self, shape: &Shape) -> Result<()> {
            need_bounds($id, shape)
        }
        fn suite_shapes(&self) -> Vec<Shape> {
            bailey_box_shapes()
        }
    };
}

pub struct BaileyAnBox;

impl BaileyAnBox {
    fn series<'x>(ev: &Evaluator, ps: &'x ParameterSet, dual: bool) -> Result<AnSeries<'x>> {
        let [a, b, c, d, e, f, g, lambda] = named(ps, ["a", "b", "c", "d", "e", "f", "g", "lambda"])?;
        let aq = mono!(a, ev.q());
        let lq = mono!(lambda, ev.q());
        Ok(if dual {
            AnSeries {
                alpha: lambda,
                num: vec![mono!(lambda, b; a), mono!(lambda, c; a), d.clone()],
                den: vec![mono!(aq; e), mono!(lq; f), mono!(lq; g)],
                knum: vec![mono!(lambda, e; a), f.clone(), g.clone()],
                kden: vec![mono!(aq; b), mono!(aq; c), mono!(lq; d)],
            }
        } else {
            AnSeries {
                alpha: a,
                num: vec![b.clone(), c.clone(), d.clone()],
                den: vec![mono!(aq; e), mono!(aq; f), mono!(aq; g)],
                knum: vec![e.clone(), f.clone(), g.clone()],
                kden: vec![mono!(aq; b), mono!(aq; c), mono!(aq; d)],
            }
        })
    }

    /// `(a/lambda)^{|m|} (lambda q/f, lambda q/g)_{|m|} / (aq/f, aq/g)_{|m|}
    /// prod_k (aq z_k, lambda q z_k/d)_{m_k} / (lambda q z_k, aq z_k/d)_{m_k}`.
    fn prefactor(ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
        let [a, d, f, g, lambda] = named(ps, ["a", "d", "f", "g", "lambda"])?;
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        let mm = m.weight();
        let aq = mono!(a, ev.q());
        let lq = mono!(lambda, ev.q());
        let mut t = ev.product();
        t.mul(&mono!(a; lambda).powi(mm as i64));
        t.poch(&mono!(lq; f), mm)?.poch(&mono!(lq; g), mm)?;
        t.poch_den(&mono!(aq; f), mm)?.poch_den(&mono!(aq; g), mm)?;
        for (k, zk) in z.iter().enumerate() {
            t.poch(&mono!(aq, zk), m[k])?.poch(&mono!(lq, zk; d), m[k])?;
            t.poch_den(&mono!(lq, zk), m[k])?.poch_den(&mono!(aq, zk; d), m[k])?;
        }
        Ok(t.value())
    }

    /// The two box sums with the prefactor kept apart: `(lhs, prefactor, dual sum)`.
    pub fn parts(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<[BigComplex; 3]> {
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        let lhs = Self::series(ev, ps, false)?.sum(ev, z, Frame::Box(m))?;
        let dual = Self::series(ev, ps, true)?.sum(ev, z, Frame::Box(m))?;
        Ok([lhs, Self::prefactor(ev, ps)?, dual])
    }

    /// Terms of both sums at `y`, without the prefactor.
    pub fn terms_at(&self, ev: &Evaluator, ps: &ParameterSet, y: &MultiIndex) -> Result<(BigComplex, BigComplex)> {
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        Ok((
            Self::series(ev, ps, false)?.term(ev, z, Frame::Box(m), y)?,
            Self::series(ev, ps, true)?.term(ev, z, Frame::Box(m), y)?,
        ))
    }
}

impl Identity for BaileyAnBox {
    bailey_box_meta!(
        "bailey_an_box",
        "A_n Bailey transformation between two box sums, a^3 q^(2+|m|) = bcdefg, lambda = a^2 q/bce"
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d", "e", "f", "g"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(cubic_balancing("a^3 q^(2+|m|) = bcdefg", 1, &["b", "c", "d", "e", "f", "g"], &[]))
    }

    fn derive(&self, ps: &mut ParameterSet) -> Result<()> {
        set_lambda(ps, ["b", "c", "e"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [lhs, pre, dual] = self.parts(ev, ps)?;
        Ok((lhs, &pre * &dual))
    }
}

pub struct BaileyAnSimplex;

impl BaileyAnSimplex {
    fn series<'x>(ev: &Evaluator, ps: &'x ParameterSet, dual: bool) -> Result<AnSeries<'x>> {
        let [a, c, d, e, lambda] = named(ps, ["a", "c", "d", "e", "lambda"])?;
        let b = ps.list("b_list")?;
        let big_n = ps.total()? as i64;
        let aq = mono!(a, ev.q());
        let (alpha, top) = if dual { (lambda, mono!(lambda, ev.q())) } else { (a, aq.clone()) };
        let mut knum = vec![if dual { mono!(lambda, e; a) } else { e.clone() }];
        knum.extend(b.iter().cloned());
        let mut den = vec![mono!(aq; e)];
        den.extend(b.iter().map(|bj| mono!(top; bj)));
        let num = if dual {
            vec![ev.qpow(-big_n), mono!(lambda, c; a), mono!(lambda, d; a)]
        } else {
            vec![ev.qpow(-big_n), c.clone(), d.clone()]
        };
        Ok(AnSeries { alpha, num, den, knum, kden: vec![mono!(aq; c), mono!(aq; d)] })
    }

    /// `(a/lambda)^N prod_k (aq z_k)_N / (lambda q z_k)_N prod_j (lambda q/b_j)_N / (aq/b_j)_N`.
    fn prefactor(ev: &Evaluator, ps: &ParameterSet) -> Result<BigComplex> {
        let [a, lambda] = named(ps, ["a", "lambda"])?;
        let (b, z) = (ps.list("b_list")?, ps.list("z_list")?);
        let big_n = ps.total()?;
        let aq = mono!(a, ev.q());
        let lq = mono!(lambda, ev.q());
        let mut t = ev.product();
        t.mul(&mono!(a; lambda).powi(big_n as i64));
        for zk in z {
            t.poch(&mono!(aq, zk), big_n)?.poch_den(&mono!(lq, zk), big_n)?;
        }
        for bj in b {
            t.poch(&mono!(lq; bj), big_n)?.poch_den(&mono!(aq; bj), big_n)?;
        }
        Ok(t.value())
    }
}

impl Identity for BaileyAnSimplex {
    bailey_meta!(
        "bailey_an_simplex",
        "A_n Bailey transformation between two sums over |y| <= N, a^3 q^(2+N) = b_1...b_{n+2} cde z_1...z_n, lambda = a^2 q/cde"
    );

    fn domain_kind(&self) -> DomainKind {
        DomainKind::SimplexLe
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_total(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        bailey_simplex_shapes()
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "c", "d", "e"])
            .list("b_list", shape.rank + 2)
            .list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(cubic_balancing(
            "a^3 q^(2+N) = b_1...b_{n+2} cde z_1...z_n",
            1,
            &["c", "d", "e"],
            &["b_list", "z_list"],
        ))
    }

    fn derive(&self, ps: &mut ParameterSet) -> Result<()> {
        set_lambda(ps, ["c", "d", "e"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let z = ps.list("z_list")?;
        let frame = Frame::Simplex(ps.total()?);
        let lhs = Self::series(ev, ps, false)?.sum(ev, z, frame)?;
        let dual = Self::series(ev, ps, true)?.sum(ev, z, frame)?;
        Ok((lhs, &Self::prefactor(ev, ps)? * &dual))
    }
}

/// `C_n` sum on the left, `A_n` sum on the right. The left side is symmetric
/// in `b, ..., g`; the right side singles out `d` and `g` only through
/// `lambda`, so it must be invariant under `d <-> g`.
pub struct BaileyCnAn;

impl Identity for BaileyCnAn {
    bailey_box_meta!(
        "bailey_cn_an",
        "C_n to A_n Bailey transformation, a^3 q^(2+|m|) = bcdefg, lambda = a^2 q/bcd"
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d", "e", "f", "g"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(cubic_balancing("a^3 q^(2+|m|) = bcdefg", 1, &["b", "c", "d", "e", "f", "g"], &[]))
    }

    fn derive(&self, ps: &mut ParameterSet) -> Result<()> {
        set_lambda(ps, ["b", "c", "d"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [a, b, c, d, e, f, g, lambda] = named(ps, ["a", "b", "c", "d", "e", "f", "g", "lambda"])?;
        let z = ps.list("z_list")?;
        let m = ps.bounds()?;
        let domain = Domain::Box(m.clone());
        let params = [b, c, d, e, f, g];
        let lhs = sum_over(&domain, ev.prec(), |y| cn_box_term(ev, a, z, m, &params, y))?;

        let aq = mono!(a, ev.q());
        let lq = mono!(lambda, ev.q());
        let mm = m.weight();
        let mut pre = ev.product();
        cn_box_norm_into(&mut pre, a, z, m)?;
        pre.poch(&mono!(lq; e), mm)?.poch(&mono!(lq; f), mm)?.poch(&mono!(aq; e, f), mm)?;
        for (k, zk) in z.iter().enumerate() {
            let mk = m[k];
            pre.poch_den(&mono!(lq, zk), mk)?;
            pre.poch_den(&mono!(aq, zk; e), mk)?.poch_den(&mono!(aq, zk; f), mk)?;
            pre.poch_den(&mono!(ev.qpow(-(mk as i64)), g; a, zk), mk)?;
        }
        let dual = AnSeries {
            alpha: lambda,
            num: vec![mono!(lambda, b; a), mono!(lambda, c; a), mono!(lambda, d; a)],
            den: vec![mono!(lq; e), mono!(lq; f), mono!(lq; g)],
            knum: vec![e.clone(), f.clone(), g.clone()],
            kden: vec![mono!(aq; b), mono!(aq; c), mono!(aq; d)],
        }
        .sum(ev, z, Frame::Box(m))?;
        Ok((lhs, &pre.value() * &dual))
    }
}

pub struct BaileyDn;

impl Identity for BaileyDn {
    bailey_box_meta!(
        "bailey_dn",
        "D_n Bailey transformation with the (aq z_j z_k/d) coupling, a^3 q^2 = bcdef, lambda = a^2 q/bcd"
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d", "e", "f"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(cubic_balancing("a^3 q^2 = bcdef", 0, &["b", "c", "d", "e", "f"], &[]))
    }

    fn derive(&self, ps: &mut ParameterSet) -> Result<()> {
        set_lambda(ps, ["b", "c", "d"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [a, b, c, d, e, f, lambda] = named(ps, ["a", "b", "c", "d", "e", "f", "lambda"])?;
        let aq = mono!(a, ev.q());
        let lq = mono!(lambda, ev.q());
        let lhs = DnSeries {
            alpha: a,
            delta: Some((d.clone(), d.clone())),
            num: vec![e.clone(), f.clone()],
            den: vec![mono!(aq; b), mono!(aq; c)],
            knum: vec![b.clone(), c.clone()],
            kden: vec![mono!(aq; e), mono!(aq; f)],
        }
        .sum(ev, ps)?;
        let dual = DnSeries {
            alpha: lambda,
            delta: Some((mono!(lambda, d; a), d.clone())),
            num: vec![e.clone(), f.clone()],
            den: vec![mono!(aq; b), mono!(aq; c)],
            knum: vec![mono!(lambda, b; a), mono!(lambda, c; a)],
            kden: vec![mono!(lq; e), mono!(lq; f)],
        }
        .sum(ev, ps)?;
        let pre = dn_prefactor(ev, ps, e, f)?;
        Ok((lhs, &pre.value() * &dual))
    }
}

pub struct BaileyDnAn;

impl Identity for BaileyDnAn {
    bailey_box_meta!(
        "bailey_dn_an",
        "D_n Bailey transformation with A_n-type parameter blocks, a^3 q^2 = bcdef, lambda = a^2 q/bcf"
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a", "b", "c", "d", "e", "f"]).list("z_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(cubic_balancing("a^3 q^2 = bcdef", 0, &["b", "c", "d", "e", "f"], &[]))
    }

    fn derive(&self, ps: &mut ParameterSet) -> Result<()> {
        set_lambda(ps, ["b", "c", "f"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let [a, b, c, d, e, f, lambda] = named(ps, ["a", "b", "c", "d", "e", "f", "lambda"])?;
        let aq = mono!(a, ev.q());
        let lq = mono!(lambda, ev.q());
        let lhs = DnSeries {
            alpha: a,
            delta: None,
            num: vec![b.clone(), c.clone(), d.clone(), e.clone()],
            den: vec![mono!(aq; f)],
            knum: vec![f.clone()],
            kden: vec![mono!(aq; b), mono!(aq; c), mono!(aq; d), mono!(aq; e)],
        }
        .sum(ev, ps)?;
        let dual = DnSeries {
            alpha: lambda,
            delta: None,
            num: vec![mono!(lambda, b; a), mono!(lambda, c; a), d.clone(), e.clone()],
            den: vec![mono!(aq; f)],
            knum: vec![mono!(lambda, f; a)],
            kden: vec![mono!(aq; b), mono!(aq; c), mono!(lq; d), mono!(lq; e)],
        }
        .sum(ev, ps)?;
        let pre = dn_prefactor(ev, ps, d, e)?;
        Ok((lhs, &pre.value() * &dual))
    }
}
