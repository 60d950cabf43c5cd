//! Rational and elliptic partial fraction expansions.
//!
//! The two expansions whose right-hand side is zero are compared in
//! isolated form: the largest term against minus the sum of the others.
//! A relative residual against an exact zero would otherwise be measured
//! against the absolute floor instead of the size of the terms.

use alloc::vec;
use alloc::vec::Vec;

use super::{mono, need_unsized, Atom, Constraint, DomainKind, Family, Identity, ParamSpec, Slot};
use crate::arith::BigComplex;
use crate::error::Result;
use crate::eval::Evaluator;
use crate::params::{ParameterSet, Shape};

pub(super) static ALL: &[&dyn Identity] = &[&Rational, &Ww, &Epf, &Epa, &Dn, &DnAlt];

fn ranks(from: usize) -> Vec<Shape> {
    (from..=5).map(Shape::rank_only).collect()
}

/// Splits `terms` into `(sum of all but the largest, -largest)`.
pub(crate) fn isolate(terms: &[BigComplex], prec: usize) -> (BigComplex, BigComplex) {
    let mut best = 0;
    let mut best_mag = f64::NEG_INFINITY;
    for (k, t) in terms.iter().enumerate() {
        let m = t.log2_abs();
        if m > best_mag {
            best = k;
            best_mag = m;
        }
    }
    let mut rest = BigComplex::zero(prec);
    for (k, t) in terms.iter().enumerate() {
        if k != best {
            rest = &rest + t;
        }
    }
    let isolated = terms.get(best).map(|t| -t).unwrap_or_else(|| BigComplex::zero(prec));
    (rest, isolated)
}

/// Terms `prod_j theta(a_k/b_j) / prod_{j != k} theta(a_k/a_j)` of the
/// elliptic partial fraction sum.
pub fn ww_terms(ev: &Evaluator, a: &[BigComplex], b: &[BigComplex]) -> Result<Vec<BigComplex>> {
    let mut out = Vec::with_capacity(a.len());
    for (k, ak) in a.iter().enumerate() {
        let mut t = ev.product();
        for bj in b {
            t.theta(&mono!(ak; bj))?;
        }
        for (j, aj) in a.iter().enumerate() {
            if j != k {
                t.theta_den(&mono!(ak; aj))?;
            }
        }
        out.push(t.value());
    }
    Ok(out)
}

/// Terms of the left side of the expansion with the extra point `t`.
pub fn epf_terms(
    ev: &Evaluator,
    a: &[BigComplex],
    b: &[BigComplex],
    t: &BigComplex,
) -> Result<Vec<BigComplex>> {
    let mut out = Vec::with_capacity(a.len());
    for (k, ak) in a.iter().enumerate() {
        let mut term = ev.product();
        for bj in b {
            term.theta(&mono!(ak; bj))?;
        }
        term.theta_den(&mono!(ak; t))?;
        for (j, aj) in a.iter().enumerate() {
            if j != k {
                term.theta_den(&mono!(ak; aj))?;
            }
        }
        out.push(term.value());
    }
    Ok(out)
}

fn sum(terms: &[BigComplex], prec: usize) -> BigComplex {
    terms.iter().fold(BigComplex::zero(prec), |acc, t| &acc + t)
}

macro_rules! pf_meta {
    ($id:literal, $summary:literal, $min_rank:expr) => {
        fn id(&self) -> &'static str {
            $id
        }
        fn family(&self) -> Family {
            Family::PartialFraction
        }
        fn domain_kind(&self) -> DomainKind {
            DomainKind::FiniteList
        }
        fn summary(&self) -> &'static str {
            $summary
        }
        fn check_shape(&self, shape: &Shape) -> Result<()> {
            need_unsized($id, shape, $min_rank)
        }
        fn suite_shapes(&self) -> Vec<Shape> {
            ranks(2)
        }
    };
}

pub struct Rational;

impl Identity for Rational {
    pf_meta!(
        "pf_rational",
        "sum_k prod_j (b_j - a_k) / (a_k prod_{j!=k} (a_j - a_k)) = b_1...b_n / a_1...a_n - 1",
        1
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::default().list("a_list", shape.rank).list("b_list", shape.rank)
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, b) = (ps.list("a_list")?, ps.list("b_list")?);
        let mut lhs = BigComplex::zero(ev.prec());
        for (k, ak) in a.iter().enumerate() {
            let mut t = ev.product();
            for bj in b {
                t.mul(&(bj - ak));
            }
            t.div(ak)?;
            for (j, aj) in a.iter().enumerate() {
                if j != k {
                    t.div(&(aj - ak))?;
                }
            }
            lhs = &lhs + &t.value();
        }
        let pa = a.iter().fold(ev.one(), |acc, v| &acc * v);
        let pb = b.iter().fold(ev.one(), |acc, v| &acc * v);
        let rhs = &(&pb / &pa) - &ev.one();
        Ok((lhs, rhs))
    }
}

pub struct Ww;

impl Identity for Ww {
    pf_meta!(
        "pf_ww",
        "sum_k prod_j theta(a_k/b_j) / prod_{j!=k} theta(a_k/a_j) = 0 when a_1...a_n = b_1...b_n",
        1
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::default().list("a_list", shape.rank).list("b_list", shape.rank)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(Constraint {
            relation: "a_1...a_n = b_1...b_n",
            solved: Slot::ListLast("b_list"),
            monomial: vec![(Atom::ListProduct("a_list"), 1), (Atom::ListProduct("b_list"), -1)],
        })
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let terms = ww_terms(ev, ps.list("a_list")?, ps.list("b_list")?)?;
        Ok(isolate(&terms, ev.prec()))
    }
}

fn extended_constraint() -> Constraint {
    Constraint {
        relation: "b_1...b_{n+1} = a_1...a_n t",
        solved: Slot::ListLast("b_list"),
        monomial: vec![
            (Atom::ListProduct("b_list"), 1),
            (Atom::ListProduct("a_list"), -1),
            (Atom::Scalar("t"), -1),
        ],
    }
}

pub struct Epf;

impl Identity for Epf {
    pf_meta!(
        "pf_epf",
        "sum_k prod_j theta(a_k/b_j) / (theta(a_k/t) prod_{j!=k} theta(a_k/a_j)) = -prod theta(t/b_j) / prod theta(t/a_j)",
        1
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["t"]).list("a_list", shape.rank).list("b_list", shape.rank + 1)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(extended_constraint())
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, b, t) = (ps.list("a_list")?, ps.list("b_list")?, ps.scalar("t")?);
        let lhs = sum(&epf_terms(ev, a, b, t)?, ev.prec());
        let mut rhs = ev.product();
        rhs.negate_if(true);
        for bj in b {
            rhs.theta(&mono!(t; bj))?;
        }
        for aj in a {
            rhs.theta_den(&mono!(t; aj))?;
        }
        Ok((lhs, rhs.value()))
    }
}

pub struct Epa;

impl Identity for Epa {
    pf_meta!(
        "pf_epa",
        "sum_k prod_j theta(a_k/b_j) / (theta(a_k/t) prod_{j!=k} theta(a_k/a_j)) = prod theta(b_j/t) / prod theta(a_j/t)",
        1
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["t"]).list("a_list", shape.rank).list("b_list", shape.rank + 1)
    }

    fn constraint(&self) -> Option<Constraint> {
        Some(extended_constraint())
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, b, t) = (ps.list("a_list")?, ps.list("b_list")?, ps.scalar("t")?);
        let lhs = sum(&epf_terms(ev, a, b, t)?, ev.prec());
        let mut rhs = ev.product();
        for bj in b {
            rhs.theta(&mono!(bj; t))?;
        }
        for aj in a {
            rhs.theta_den(&mono!(aj; t))?;
        }
        Ok((lhs, rhs.value()))
    }
}

pub struct Dn;

impl Identity for Dn {
    pf_meta!(
        "pf_dn",
        "sum_k prod_j theta(a_k b_j, a_k/b_j) / (theta(t a_k, t/a_k) prod_{j!=k} theta(a_k a_j, a_k/a_j)) = prod theta(t b_j, t/b_j) / prod theta(t a_j, t/a_j)",
        1
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["t"]).list("a_list", shape.rank).list("b_list", shape.rank - 1)
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, b, t) = (ps.list("a_list")?, ps.list("b_list")?, ps.scalar("t")?);
        let mut lhs = BigComplex::zero(ev.prec());
        for (k, ak) in a.iter().enumerate() {
            let mut term = ev.product();
            for bj in b {
                term.theta(&mono!(ak, bj))?.theta(&mono!(ak; bj))?;
            }
            term.theta_den(&mono!(t, ak))?.theta_den(&mono!(t; ak))?;
            for (j, aj) in a.iter().enumerate() {
                if j != k {
                    term.theta_den(&mono!(ak, aj))?.theta_den(&mono!(ak; aj))?;
                }
            }
            lhs = &lhs + &term.value();
        }
        let mut rhs = ev.product();
        for bj in b {
            rhs.theta(&mono!(t, bj))?.theta(&mono!(t; bj))?;
        }
        for aj in a {
            rhs.theta_den(&mono!(t, aj))?.theta_den(&mono!(t; aj))?;
        }
        Ok((lhs, rhs.value()))
    }
}

pub struct DnAlt;

impl Identity for DnAlt {
    pf_meta!(
        "pf_dn_alt",
        "sum_k a_k prod_j theta(a_k b_j, a_k/b_j) / prod_{j!=k} theta(a_k a_j, a_k/a_j) = 0",
        2
    );

    fn params(&self, shape: &Shape) -> ParamSpec {
        ParamSpec::default().list("a_list", shape.rank).list("b_list", shape.rank.saturating_sub(2))
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (a, b) = (ps.list("a_list")?, ps.list("b_list")?);
        let mut terms = Vec::with_capacity(a.len());
        for (k, ak) in a.iter().enumerate() {
            let mut term = ev.product();
            term.mul(ak);
            for bj in b {
                term.theta(&mono!(ak, bj))?.theta(&mono!(ak; bj))?;
            }
            for (j, aj) in a.iter().enumerate() {
                if j != k {
                    term.theta_den(&mono!(ak, aj))?.theta_den(&mono!(ak; aj))?;
                }
            }
            terms.push(term.value());
        }
        Ok(isolate(&terms, ev.prec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::residual;
    use crate::eval::Mode;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, 256)
    }

    fn ev() -> Evaluator {
        Evaluator::new(&c(0.2, 0.15), &c(0.9, 0.3), 256, Mode::Evaluate).unwrap()
    }

    #[test]
    fn isolate_picks_largest() {
        let terms = [c(1.0, 0.0), c(-3.0, 0.0), c(2.0, 0.0)];
        let (rest, iso) = isolate(&terms, 256);
        assert_eq!(rest, c(3.0, 0.0));
        assert_eq!(iso, c(3.0, 0.0));
    }

    #[test]
    fn single_rational_term() {
        let e = ev();
        let mut ps = ParameterSet::new(c(0.2, 0.15), c(0.9, 0.3), Shape::rank_only(1));
        ps.set_list("a_list", vec![c(0.75, 0.0)]);
        ps.set_list("b_list", vec![c(1.5, 0.0)]);
        let (l, r) = Rational.evaluate(&e, &ps).unwrap();
        assert_eq!(l, c(1.0, 0.0));
        assert_eq!(r, c(1.0, 0.0));
    }

    #[test]
    fn ww_vanishes_when_b_equals_a() {
        let e = ev();
        let a = [c(0.7, 0.2), c(-0.3, 1.1)];
        let terms = ww_terms(&e, &a, &a).unwrap();
        assert!(terms.iter().all(|t| t.log2_abs() < -200.0));
    }

    #[test]
    fn epf_at_t_equal_last_b_is_ww() {
        let e = ev();
        let a = [c(0.7, 0.2), c(-0.3, 1.1), c(1.2, -0.4)];
        let mut b = vec![c(0.5, 0.5), c(1.3, 0.2), c(0.8, -0.9)];
        let pa = a.iter().fold(e.one(), |x, v| &x * v);
        let pb = b.iter().fold(e.one(), |x, v| &x * v);
        // Solve so that b_{n+1} = t and prod b = prod a * t.
        let t = c(0.6, 0.7);
        b[2] = &(&b[2] * &pa) / &pb;
        let mut bt = b.clone();
        bt.push(t.clone());
        let epf = epf_terms(&e, &a, &bt, &t).unwrap();
        let ww = ww_terms(&e, &a, &b).unwrap();
        for (x, y) in epf.iter().zip(&ww) {
            assert!(residual(x, y).log2() < -240.0);
        }
    }
}
