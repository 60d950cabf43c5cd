//! One descriptor per identity: parameters, balancing constraint, and both
//! sides evaluated at a [`ParameterSet`].

mod bailey;
mod jackson_a;
mod jackson_c;
mod jackson_d;
mod partial_fractions;
mod primitives;

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{residual, BigComplex, Real};
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::lattice::{Domain, MultiIndex};
use crate::params::{ParameterSet, Shape, Size};

/// `acc * x_1 * ... / y_1 / ...` over references, left to right.
macro_rules! mono {
    ($first:expr $(, $rest:expr)* $(; $($den:expr),+)?) => {{
        use ::core::borrow::Borrow as _B;
        #[allow(unused_mut)]
        let mut acc: $crate::arith::BigComplex =
            _B::<$crate::arith::BigComplex>::borrow(&$first).clone();
        $( acc = &acc * _B::<$crate::arith::BigComplex>::borrow(&$rest); )*
        $( $( acc = &acc / _B::<$crate::arith::BigComplex>::borrow(&$den); )+ )?
        acc
    }};
}
pub(crate) use mono;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Primitive,
    PartialFraction,
    An,
    Cn,
    Dn,
    Bailey,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Primitive => "primitive",
            Family::PartialFraction => "partial-fraction",
            Family::An => "A_n",
            Family::Cn => "C_n",
            Family::Dn => "D_n",
            Family::Bailey => "Bailey",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    SimplexExact,
    SimplexLe,
    Box,
    FiniteList,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::SimplexExact => "simplex_exact",
            DomainKind::SimplexLe => "simplex_le",
            DomainKind::Box => "box",
            DomainKind::FiniteList => "finite_list",
        })
    }
}

/// How a small integer parameter is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntDraw {
    /// Uniform in `0..=max`.
    UpTo(usize),
    /// Uniform in `0..=v` where `v` is a previously drawn integer.
    UpToInt(&'static str),
}

/// The free parameters an identity needs at a given shape.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamSpec {
    pub scalars: Vec<&'static str>,
    pub lists: Vec<(&'static str, usize)>,
    pub ints: Vec<(&'static str, IntDraw)>,
    /// A multi-index drawn uniformly from the box given by the shape bounds.
    pub index: Option<&'static str>,
}

impl ParamSpec {
    pub fn scalars(names: &[&'static str]) -> Self {
        ParamSpec { scalars: names.to_vec(), ..Default::default() }
    }

    pub fn list(mut self, name: &'static str, len: usize) -> Self {
        self.lists.push((name, len));
        self
    }

    pub fn int(mut self, name: &'static str, draw: IntDraw) -> Self {
        self.ints.push((name, draw));
        self
    }
}

/// A factor of a balancing monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Scalar(&'static str),
    /// Product of all entries of a list.
    ListProduct(&'static str),
    /// `q^{constant + per_size * S + per_rank * n}` where `S` is `N` or `|m|`.
    QPower { constant: i64, per_size: i64, per_rank: i64 },
}

/// The parameter computed from the others.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Scalar(&'static str),
    ListLast(&'static str),
}

/// A balancing condition `prod atom^k = 1` with one designated solved slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Human-readable form, e.g. `a^2 q^(1+|m|) = bcde`.
    pub relation: &'static str,
    pub solved: Slot,
    pub monomial: Vec<(Atom, i64)>,
}

impl Constraint {
    fn holds_slot(atom: &Atom, slot: &Slot) -> bool {
        match (atom, slot) {
            (Atom::Scalar(a), Slot::Scalar(s)) => a == s,
            (Atom::ListProduct(a), Slot::ListLast(s)) => a == s,
            _ => false,
        }
    }

    /// Value of the monomial, with the solved slot replaced by 1 if `skip` is set.
    fn evaluate(&self, params: &ParameterSet, skip: bool) -> Result<BigComplex> {
        let prec = params.q.prec();
        let mut acc = BigComplex::one(prec);
        for (atom, k) in &self.monomial {
            let base = match atom {
                Atom::Scalar(name) => {
                    if skip && Self::holds_slot(atom, &self.solved) {
                        continue;
                    }
                    params.scalar(name)?.clone()
                }
                Atom::ListProduct(name) => {
                    let list = params.list(name)?;
                    let take = if skip && Self::holds_slot(atom, &self.solved) {
                        list.len().saturating_sub(1)
                    } else {
                        list.len()
                    };
                    list[..take].iter().fold(BigComplex::one(prec), |a, v| &a * v)
                }
                Atom::QPower { constant, per_size, per_rank } => {
                    let e = constant
                        + per_size * params.shape.magnitude() as i64
                        + per_rank * params.rank() as i64;
                    acc = &acc * &params.q.powi(e * k);
                    continue;
                }
            };
            acc = &acc * &base.powi(*k);
        }
        Ok(acc)
    }

    fn solved_exponent(&self) -> i64 {
        self.monomial
            .iter()
            .filter(|(a, _)| Self::holds_slot(a, &self.solved))
            .map(|(_, k)| *k)
            .sum()
    }

    /// Sets the solved slot so that the monomial equals 1.
    pub fn solve(&self, params: &mut ParameterSet) -> Result<()> {
        let rest = self.evaluate(params, true)?;
        let value = match self.solved_exponent() {
            1 => rest.recip(),
            -1 => rest,
            _ => return Err(Error::InvalidConfig("solved slot must appear with exponent +-1")),
        };
        let name = match self.solved {
            Slot::Scalar(s) | Slot::ListLast(s) => s,
        };
        if value.is_zero() || !value.is_finite() {
            return Err(Error::ConstraintUnsolvable(name));
        }
        match self.solved {
            Slot::Scalar(s) => params.set_scalar(s, value),
            Slot::ListLast(s) => {
                let list = params.lists.get_mut(s).ok_or(Error::MissingParameter(s))?;
                let last = list.last_mut().ok_or(Error::MissingParameter(s))?;
                *last = value;
            }
        }
        Ok(())
    }

    /// Relative deviation of the monomial from 1.
    pub fn residual(&self, params: &ParameterSet) -> Result<Real> {
        let v = self.evaluate(params, false)?;
        Ok(residual(&v, &BigComplex::one(v.prec())))
    }

    /// Fails unless the monomial is 1 to within `2^(8 - prec)`.
    pub fn check(&self, params: &ParameterSet) -> Result<()> {
        let prec = params.q.prec();
        let r = self.residual(params)?;
        if r > Real::pow2(8 - prec as i32, prec) {
            return Err(Error::ConstraintViolation(format!(
                "{} off by {:e}",
                self.relation,
                r.to_f64_lossy()
            )));
        }
        Ok(())
    }
}

/// An identity between two expressions, with everything needed to sample,
/// check and evaluate it.
pub trait Identity: Send + Sync {
    fn id(&self) -> &'static str;
    fn family(&self) -> Family;
    fn domain_kind(&self) -> DomainKind;
    /// One-line description for listings.
    fn summary(&self) -> &'static str;
    /// Rejects shapes the identity is not defined for.
    fn check_shape(&self, shape: &Shape) -> Result<()>;
    /// The shapes exercised by the verification suites.
    fn suite_shapes(&self) -> Vec<Shape>;
    fn params(&self, shape: &Shape) -> ParamSpec;
    fn constraint(&self) -> Option<Constraint> {
        None
    }
    /// Computes derived parameters such as `lambda` after the constraint is solved.
    fn derive(&self, _params: &mut ParameterSet) -> Result<()> {
        Ok(())
    }
    /// Identities that only hold at `p = 0`.
    fn zero_nome_only(&self) -> bool {
        false
    }
    /// Identities that cannot be evaluated at `p = 0`.
    fn needs_nonzero_nome(&self) -> bool {
        false
    }
    /// Both sides at `params`; the constraint is assumed to hold.
    fn sides(&self, ev: &Evaluator, params: &ParameterSet) -> Result<(BigComplex, BigComplex)>;

    /// Checks the constraint and returns both sides.
    fn evaluate(&self, ev: &Evaluator, params: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        self.check_shape(&params.shape)?;
        if let Some(c) = self.constraint() {
            c.check(params)?;
        }
        self.sides(ev, params)
    }
}

/// All descriptors in catalog order.
pub fn all() -> Vec<&'static dyn Identity> {
    let mut v: Vec<&'static dyn Identity> = Vec::new();
    v.extend_from_slice(primitives::ALL);
    v.extend_from_slice(partial_fractions::ALL);
    v.extend_from_slice(jackson_a::ALL);
    v.extend_from_slice(jackson_d::ALL);
    v.extend_from_slice(jackson_c::ALL);
    v.extend_from_slice(bailey::ALL);
    v
}

pub fn lookup(id: &str) -> Result<&'static dyn Identity> {
    all()
        .into_iter()
        .find(|d| d.id() == id)
        .ok_or_else(|| Error::UnknownIdentity(id.into()))
}

pub use bailey::{BaileyAnBox, BAILEY_AN_BOX, BAILEY_CN_AN};
pub use jackson_a::{AN_JACKSON_BOX, AN_JACKSON_CLASSICAL, AN_JACKSON_SIMPLEX};
pub use jackson_c::{CN_JACKSON_BOX, WARNAAR_FIRST};
pub use jackson_d::drb_symmetric_rhs;
pub use partial_fractions::{epf_terms, ww_terms};
pub(crate) use partial_fractions::isolate;
pub(crate) use jackson_c::cn_box_norm_into;

fn unsupported(id: &'static str, reason: &str) -> Error {
    Error::UnsupportedShape { id, reason: reason.into() }
}

pub(crate) fn need_unsized(id: &'static str, shape: &Shape, min_rank: usize) -> Result<()> {
    if shape.size != Size::Unsized {
        return Err(unsupported(id, "takes no domain size"));
    }
    if shape.rank < min_rank {
        return Err(unsupported(id, &format!("rank must be at least {min_rank}")));
    }
    Ok(())
}

pub(crate) fn need_total(id: &'static str, shape: &Shape) -> Result<()> {
    match shape.size {
        Size::Total(_) if shape.rank >= 1 => Ok(()),
        Size::Total(_) => Err(unsupported(id, "rank must be at least 1")),
        _ => Err(unsupported(id, "needs a simplex size N")),
    }
}

pub(crate) fn need_bounds(id: &'static str, shape: &Shape) -> Result<()> {
    match &shape.size {
        Size::Bounds(m) if !m.is_empty() && m.len() == shape.rank => Ok(()),
        Size::Bounds(_) => Err(unsupported(id, "bounds must have one entry per coordinate")),
        _ => Err(unsupported(id, "needs box bounds m")),
    }
}

/// Sums `term` over a domain in its lexicographic order.
pub(crate) fn sum_over<F>(domain: &Domain, prec: usize, mut term: F) -> Result<BigComplex>
where
    F: FnMut(&MultiIndex) -> Result<BigComplex>,
{
    let mut acc = BigComplex::zero(prec);
    for y in domain.iter() {
        acc = &acc + &term(&y)?;
    }
    Ok(acc)
}

/// Shapes `n = 1..=3` by `N = 0..=3`.
pub(crate) fn simplex_shapes() -> Vec<Shape> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for big_n in 0..=3 {
            v.push(Shape::total(n, big_n));
        }
    }
    v
}

/// Uniform boxes `n = 1..=3`, `m_k = 0..=max`, plus a few mixed bounds.
pub(crate) fn box_shapes(max: usize) -> Vec<Shape> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for m in 0..=max {
            v.push(Shape::uniform_box(n, m));
        }
    }
    if max >= 2 {
        v.push(Shape::bounds(MultiIndex::new(alloc::vec![2, 1])));
        v.push(Shape::bounds(MultiIndex::new(alloc::vec![0, 2])));
        v.push(Shape::bounds(MultiIndex::new(alloc::vec![2, 0, 1])));
    }
    v
}

/// Looks up several scalars at once.
pub(crate) fn named<'p, const K: usize>(
    ps: &'p ParameterSet,
    names: [&'static str; K],
) -> Result<[&'p BigComplex; K]> {
    let mut out = [&ps.q; K];
    for (slot, name) in out.iter_mut().zip(names) {
        *slot = ps.scalar(name)?;
    }
    Ok(out)
}

/// `C(k, 2)` as a signed exponent.
pub(crate) fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn ids_are_unique_and_resolvable() {
        let mut seen = BTreeSet::new();
        for d in all() {
            assert!(seen.insert(d.id()), "duplicate {}", d.id());
            assert_eq!(lookup(d.id()).unwrap().id(), d.id());
        }
        for id in [
            "pf_rational",
            "pf_ww",
            "pf_epf",
            "pf_epa",
            "pf_dn",
            "pf_dn_alt",
            "milne_ft",
            "an_jackson_simplex",
            "an_jackson_classical",
            "an_jackson_box",
            "dn_jackson_simplex",
            "dn_jackson_classical",
            "dn_jackson_box",
            "dn_jackson_box_reversed",
            "cn_jackson_box",
            "warnaar_first",
            "bailey_an_box",
            "bailey_an_simplex",
            "bailey_cn_an",
            "bailey_dn",
            "bailey_dn_an",
            "addition_ra",
            "det_identity_di",
        ] {
            assert!(seen.contains(id), "missing {id}");
        }
        assert!(matches!(lookup("nope"), Err(Error::UnknownIdentity(_))));
    }

    type TermFn = fn(&Evaluator, &ParameterSet, &MultiIndex) -> Result<BigComplex>;

    fn taj(ev: &Evaluator, ps: &ParameterSet, y: &MultiIndex) -> Result<BigComplex> {
        jackson_a::taj_term(ev, ps.list("a_list")?, ps.scalar("b")?, ps.list("z_list")?, y)
    }

    // Reversing the order of summation and accumulating through a hash map
    // keyed by index must both reproduce the lexicographic sum.
    #[test]
    fn summation_is_order_independent_and_visits_each_point_once() {
        use crate::arith::default_tolerance;
        use crate::sampler::{sample, SamplerConfig};
        use std::collections::HashMap;

        let cases: [(&str, Shape, TermFn); 4] = [
            ("an_jackson_simplex", Shape::total(3, 3), taj),
            ("an_jackson_classical", Shape::total(3, 3), jackson_a::aaj_term),
            ("cn_jackson_box", Shape::bounds(MultiIndex::new(alloc::vec![2, 1, 2])), jackson_c::cjt_term),
            ("warnaar_first", Shape::total(3, 2), jackson_c::wj_term),
        ];
        let cfg = SamplerConfig::default();
        for (id, shape, term) in cases {
            let d = lookup(id).unwrap();
            let ps = sample(d, &shape, &cfg, 0).unwrap();
            let ev = Evaluator::new(&ps.p, &ps.q, 256, crate::eval::Mode::Evaluate).unwrap();
            let domain = match d.domain_kind() {
                DomainKind::SimplexExact => Domain::SimplexExact { n: ps.rank(), total: ps.total().unwrap() },
                DomainKind::SimplexLe => Domain::SimplexLe { n: ps.rank(), total: ps.total().unwrap() },
                DomainKind::Box => match &shape.size {
                    Size::Total(n) => Domain::Box(MultiIndex::uniform(ps.rank(), *n)),
                    _ => Domain::Box(ps.bounds().unwrap().clone()),
                },
                DomainKind::FiniteList => unreachable!(),
            };
            let forward = sum_over(&domain, 256, |y| term(&ev, &ps, y)).unwrap();
            let (lhs, _) = d.sides(&ev, &ps).unwrap();
            assert_eq!(forward, lhs, "{id}");

            let points: Vec<MultiIndex> = domain.iter().collect();
            let reversed = points
                .iter()
                .rev()
                .fold(BigComplex::zero(256), |acc, y| &acc + &term(&ev, &ps, y).unwrap());
            assert!(residual(&forward, &reversed) < default_tolerance(256), "{id}");

            let mut seen = HashMap::new();
            for y in &points {
                assert!(seen.insert(y.clone(), term(&ev, &ps, y).unwrap()).is_none(), "{id}: {y} twice");
            }
            assert_eq!(seen.len(), domain.count(), "{id}");
            let hashed = seen.values().fold(BigComplex::zero(256), |acc, t| &acc + t);
            assert!(residual(&forward, &hashed) < default_tolerance(256), "{id}");
        }
    }

    #[test]
    fn suite_shapes_are_supported() {
        for d in all() {
            for s in d.suite_shapes() {
                d.check_shape(&s).unwrap_or_else(|e| panic!("{}: {s}: {e}", d.id()));
            }
        }
    }

    #[test]
    fn constraint_solve_for_scalar_and_list() {
        let prec = 256;
        let c = |re: f64, im: f64| BigComplex::from_f64(re, im, prec);
        let mut ps = ParameterSet::new(c(0.0, 0.0), c(0.8, 0.3), Shape::uniform_box(2, 1));
        for (name, v) in [("a", c(1.2, 0.1)), ("b", c(0.7, -0.4)), ("c", c(-0.9, 0.5)), ("d", c(1.1, 1.0))] {
            ps.set_scalar(name, v);
        }
        ps.set_scalar("e", c(1.0, 0.0));
        let con = Constraint {
            relation: "a^2 q^(1+|m|) = bcde",
            solved: Slot::Scalar("e"),
            monomial: alloc::vec![
                (Atom::Scalar("a"), 2),
                (Atom::QPower { constant: 1, per_size: 1, per_rank: 0 }, 1),
                (Atom::Scalar("b"), -1),
                (Atom::Scalar("c"), -1),
                (Atom::Scalar("d"), -1),
                (Atom::Scalar("e"), -1),
            ],
        };
        assert!(con.check(&ps).is_err());
        con.solve(&mut ps).unwrap();
        con.check(&ps).unwrap();
        let a = ps.scalar("a").unwrap();
        let want = mono!(a, a, ps.q.powi(3); ps.scalar("b").unwrap(), ps.scalar("c").unwrap(), ps.scalar("d").unwrap());
        assert!(residual(ps.scalar("e").unwrap(), &want).log2() < -240.0);

        ps.set_list("a_list", alloc::vec![c(0.5, 0.5), c(1.5, -0.2)]);
        ps.set_list("b_list", alloc::vec![c(0.9, 0.1), c(1.0, 0.0)]);
        let ww = Constraint {
            relation: "prod a = prod b",
            solved: Slot::ListLast("b_list"),
            monomial: alloc::vec![(Atom::ListProduct("a_list"), 1), (Atom::ListProduct("b_list"), -1)],
        };
        ww.solve(&mut ps).unwrap();
        ww.check(&ps).unwrap();
    }
}
