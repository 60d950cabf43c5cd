//! Functional equations of theta and of the elliptic Pochhammer symbol, and
//! the determinant evaluation used to normalize box sums.

use alloc::vec;
use alloc::vec::Vec;

use super::{choose2, mono, need_bounds, need_unsized, DomainKind, Family, Identity, IntDraw, ParamSpec};
use crate::arith::BigComplex;
use crate::error::Result;
use crate::eval::Evaluator;
use crate::lattice::MultiIndex;
use crate::params::{ParameterSet, Shape};
use crate::weyl::PointConfig;

pub(super) static ALL: &[&dyn Identity] = &[
    &ThetaInversion,
    &ThetaQuasiPeriod,
    &AdditionFormula,
    &PochSplit,
    &PochReverse,
    &PochInvert,
    &PochNomeShift,
    &DetIdentity,
];

/// Maximal Pochhammer length drawn for the primitive checks.
const MAX_LEN: usize = 5;

macro_rules! scalar_primitive {
    ($name:ident, $id:literal, $summary:literal) => {
        pub struct $name;

        impl $name {
            const ID: &'static str = $id;
            const SUMMARY: &'static str = $summary;
        }
    };
}

macro_rules! primitive_meta {
    () => {
        fn id(&self) -> &'static str {
            Self::ID
        }
        fn family(&self) -> Family {
            Family::Primitive
        }
        fn domain_kind(&self) -> DomainKind {
            DomainKind::FiniteList
        }
        fn summary(&self) -> &'static str {
            Self::SUMMARY
        }
        fn check_shape(&self, shape: &Shape) -> Result<()> {
            need_unsized(Self::ID, shape, 1)
        }
        fn suite_shapes(&self) -> Vec<Shape> {
            vec![Shape::rank_only(1)]
        }
    };
}

scalar_primitive!(ThetaInversion, "theta_inversion_ti", "theta(x) = -x theta(1/x)");
scalar_primitive!(ThetaQuasiPeriod, "theta_quasi_period_tqp", "theta(px) = -theta(x)/x");
scalar_primitive!(
    AdditionFormula,
    "addition_ra",
    "theta(xz,x/z,yw,y/w) = (y/z) theta(xy,x/y,zw,z/w) + theta(xw,x/w,yz,y/z)"
);
scalar_primitive!(PochSplit, "poch_split_ap", "(a)_{n+k} = (a)_n (aq^n)_k");
scalar_primitive!(
    PochReverse,
    "poch_reverse_ep",
    "(a)_{n-k} = (-1)^k q^{C(k,2)} (q^{1-n}/a)^k (a)_n / (q^{1-n}/a)_k"
);
scalar_primitive!(PochInvert, "poch_invert_ip", "(a)_n = (-1)^n q^{C(n,2)} a^n (q^{1-n}/a)_n");
scalar_primitive!(PochNomeShift, "poch_nome_shift_qp", "(pa)_k = (-1)^k q^{-C(k,2)} a^{-k} (a)_k");

impl Identity for ThetaInversion {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["x"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let x = ps.scalar("x")?;
        let lhs = ev.theta(x)?;
        let rhs = -&(x * &ev.theta(&x.recip())?);
        Ok((lhs, rhs))
    }
}

impl Identity for ThetaQuasiPeriod {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["x"])
    }

    fn needs_nonzero_nome(&self) -> bool {
        true
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let x = ps.scalar("x")?;
        let lhs = ev.theta(&(ev.nome().value() * x))?;
        let rhs = -&(&ev.theta(x)? / x);
        Ok((lhs, rhs))
    }
}

impl Identity for AdditionFormula {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["w", "x", "y", "z"])
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let (w, x, y, z) = (ps.scalar("w")?, ps.scalar("x")?, ps.scalar("y")?, ps.scalar("z")?);
        let pair = |u: &BigComplex, v: &BigComplex| -> Result<BigComplex> {
            Ok(&ev.theta(&(u * v))? * &ev.theta(&(u / v))?)
        };
        let lhs = &pair(x, z)? * &pair(y, w)?;
        let first = &mono!(y; z) * &(&pair(x, y)? * &pair(z, w)?);
        let second = &pair(x, w)? * &pair(y, z)?;
        Ok((lhs, &first + &second))
    }
}

impl Identity for PochSplit {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a"]).int("n", IntDraw::UpTo(MAX_LEN)).int("k", IntDraw::UpTo(MAX_LEN))
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let a = ps.scalar("a")?;
        let (n, k) = (ps.int("n")?, ps.int("k")?);
        let lhs = ev.poch(a, n + k)?;
        let rhs = &ev.poch(a, n)? * &ev.poch(&ev.shift(a, n as i64), k)?;
        Ok((lhs, rhs))
    }
}

impl Identity for PochReverse {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a"]).int("n", IntDraw::UpTo(MAX_LEN)).int("k", IntDraw::UpToInt("n"))
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let a = ps.scalar("a")?;
        let (n, k) = (ps.int("n")?, ps.int("k")?);
        let lhs = ev.poch(a, n - k)?;
        let b = &ev.qpow(1 - n as i64) / a;
        let mut rhs = ev.product();
        rhs.negate_if(k % 2 == 1).qpow(choose2(k)).mul(&b.powi(k as i64)).poch(a, n)?;
        rhs.poch_den(&b, k)?;
        Ok((lhs, rhs.value()))
    }
}

impl Identity for PochInvert {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a"]).int("n", IntDraw::UpTo(MAX_LEN))
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let a = ps.scalar("a")?;
        let n = ps.int("n")?;
        let lhs = ev.poch(a, n)?;
        let mut rhs = ev.product();
        rhs.negate_if(n % 2 == 1)
            .qpow(choose2(n))
            .mul(&a.powi(n as i64))
            .poch(&(&ev.qpow(1 - n as i64) / a), n)?;
        Ok((lhs, rhs.value()))
    }
}

impl Identity for PochNomeShift {
    primitive_meta!();

    fn params(&self, _: &Shape) -> ParamSpec {
        ParamSpec::scalars(&["a"]).int("k", IntDraw::UpTo(MAX_LEN))
    }

    fn needs_nonzero_nome(&self) -> bool {
        true
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let a = ps.scalar("a")?;
        let k = ps.int("k")?;
        let lhs = ev.poch(&(ev.nome().value() * a), k)?;
        let mut rhs = ev.product();
        rhs.negate_if(k % 2 == 1).qpow(-choose2(k)).mul(&a.powi(-(k as i64))).poch(a, k)?;
        Ok((lhs, rhs.value()))
    }
}

/// `(-1)^{|y|} q^{|y| + C(|y|,2)} Delta(zq^y)/Delta(z)
/// prod_{j,k} (q^{-y_j} z_k/z_j)_{y_k} / (q z_k/z_j)_{y_k} = 1`
/// at a random `y` in the box given by the shape.
pub struct DetIdentity;

impl Identity for DetIdentity {
    fn id(&self) -> &'static str {
        "det_identity_di"
    }

    fn family(&self) -> Family {
        Family::Primitive
    }

    fn domain_kind(&self) -> DomainKind {
        DomainKind::FiniteList
    }

    fn summary(&self) -> &'static str {
        "(-1)^|y| q^(|y|+C(|y|,2)) Delta(zq^y)/Delta(z) prod (q^-y_j z_k/z_j)_y_k/(qz_k/z_j)_y_k = 1"
    }

    fn check_shape(&self, shape: &Shape) -> Result<()> {
        need_bounds(self.id(), shape)
    }

    fn suite_shapes(&self) -> Vec<Shape> {
        vec![Shape::uniform_box(3, 3)]
    }

    fn params(&self, shape: &Shape) -> ParamSpec {
        let mut spec = ParamSpec::default().list("z_list", shape.rank);
        spec.index = Some("y");
        spec
    }

    fn sides(&self, ev: &Evaluator, ps: &ParameterSet) -> Result<(BigComplex, BigComplex)> {
        let z = ps.list("z_list")?;
        let y: &MultiIndex = ps.index("y")?;
        let pc = PointConfig::new(ev, z);
        let w = y.weight();
        let mut prod = ev.product();
        prod.negate_if(w % 2 == 1).qpow(w as i64 + choose2(w));
        pc.vandermonde_ratio_into(&mut prod, y)?;
        pc.box_factor_into(&mut prod, y, y)?;
        Ok((prod.value(), ev.one()))
    }
}
