use ellhyp_core::arith::{default_tolerance, epoch, epoch_multi, theta, theta_by_product, theta_multi};
use ellhyp_core::{residual, BigComplex, Nome, Real, ThetaTruncation};
use proptest::prelude::*;

const PREC: usize = 256;

fn polar(r: f64, t: f64) -> BigComplex {
    BigComplex::from_polar_f64(r, t, PREC)
}

fn tol() -> Real {
    default_tolerance(PREC)
}

fn trunc() -> ThetaTruncation {
    ThetaTruncation::default()
}

fn th(x: &BigComplex, p: &Nome) -> BigComplex {
    theta(x, p, &trunc()).unwrap()
}

fn poch(a: &BigComplex, k: usize, q: &BigComplex, p: &Nome) -> BigComplex {
    epoch(a, k, q, p, &trunc()).unwrap()
}

fn sign(k: usize) -> BigComplex {
    BigComplex::from_i64(if k % 2 == 0 { 1 } else { -1 }, PREC)
}

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

prop_compose! {
    fn point()(r in 0.3f64..3.0, t in 0.0f64..std::f64::consts::TAU) -> BigComplex {
        polar(r, t)
    }
}

prop_compose! {
    fn nome()(r in 0.02f64..0.6, t in 0.0f64..std::f64::consts::TAU) -> Nome {
        Nome::with_default(polar(r, t)).unwrap()
    }
}

prop_compose! {
    fn q_value()(r in 0.5f64..2.0, t in 0.0f64..std::f64::consts::TAU) -> BigComplex {
        polar(r, t)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inversion(x in point(), p in nome()) {
        let rhs = -(&x * &th(&x.recip(), &p));
        prop_assert!(residual(&th(&x, &p), &rhs) < tol());
    }

    #[test]
    fn quasi_periodicity(x in point(), p in nome()) {
        let lhs = th(&(p.value() * &x), &p);
        let rhs = -(&th(&x, &p) / &x);
        prop_assert!(residual(&lhs, &rhs) < tol());
    }

    #[test]
    fn addition_formula(x in point(), y in point(), z in point(), w in point(), p in nome()) {
        let t = |v: BigComplex| th(&v, &p);
        let lhs = &(&t(&x * &z) * &t(&x / &z)) * &(&t(&y * &w) * &t(&y / &w));
        let first = &(&(&y / &z) * &t(&x * &y)) * &(&t(&x / &y) * &(&t(&z * &w) * &t(&z / &w)));
        let second = &(&t(&x * &w) * &t(&x / &w)) * &(&t(&y * &z) * &t(&y / &z));
        prop_assert!(residual(&lhs, &(&first + &second)) < tol());
    }

    #[test]
    fn series_agrees_with_doubled_precision_product(x in point(), p in nome()) {
        let x2 = x.with_precision(2 * PREC);
        let p2 = p.value().with_precision(2 * PREC);
        let oracle = theta_by_product(&x2, &p2, 2 * PREC + 32, 100_000).unwrap();
        prop_assert!(residual(&th(&x, &p), &oracle.with_precision(PREC)) < Real::pow2(-240, PREC));
    }

    #[test]
    fn multi_is_a_product_of_singles(x in point(), y in point(), p in nome()) {
        let xs = [x.clone(), x.recip(), y.clone()];
        let direct = &(&th(&x, &p) * &th(&x.recip(), &p)) * &th(&y, &p);
        prop_assert!(residual(&theta_multi(&xs, &p, &trunc()).unwrap(), &direct) < tol());
        prop_assert_eq!(theta_multi(&xs[..1], &p, &trunc()).unwrap(), th(&x, &p));
    }

    #[test]
    fn pochhammer_split(a in point(), q in q_value(), p in nome(), n in 0usize..=5, k in 0usize..=5) {
        let lhs = poch(&a, n + k, &q, &p);
        let rhs = &poch(&a, n, &q, &p) * &poch(&(&a * &q.powi(n as i64)), k, &q, &p);
        prop_assert!(residual(&lhs, &rhs) < tol());
    }

    #[test]
    fn pochhammer_reversal(a in point(), q in q_value(), p in nome(), n in 0usize..=5, kk in 0usize..=5) {
        let k = kk.min(n);
        let b = &q.powi(1 - n as i64) / &a;
        let rhs = &(&(&sign(k) * &q.powi(choose2(k))) * &b.powi(k as i64))
            * &(&poch(&a, n, &q, &p) / &poch(&b, k, &q, &p));
        prop_assert!(residual(&poch(&a, n - k, &q, &p), &rhs) < tol());
    }

    #[test]
    fn pochhammer_inversion(a in point(), q in q_value(), p in nome(), n in 0usize..=5) {
        let b = &q.powi(1 - n as i64) / &a;
        let rhs = &(&(&sign(n) * &q.powi(choose2(n))) * &a.powi(n as i64)) * &poch(&b, n, &q, &p);
        prop_assert!(residual(&poch(&a, n, &q, &p), &rhs) < tol());
    }

    #[test]
    fn pochhammer_nome_shift(a in point(), q in q_value(), p in nome(), k in 0usize..=5) {
        let lhs = poch(&(p.value() * &a), k, &q, &p);
        let rhs = &(&(&sign(k) * &q.powi(-choose2(k))) * &a.powi(-(k as i64))) * &poch(&a, k, &q, &p);
        prop_assert!(residual(&lhs, &rhs) < tol());
    }

    #[test]
    fn multi_pochhammer_factorizes(a in point(), b in point(), q in q_value(), p in nome(), k in 0usize..=4) {
        let joint = epoch_multi(&[a.clone(), b.clone()], k, &q, &p, &trunc()).unwrap();
        let split = &poch(&a, k, &q, &p) * &poch(&b, k, &q, &p);
        prop_assert!(residual(&joint, &split) < tol());
    }

    // At |p| = 2^(-prec/4) theta differs from 1 - x by about |p| max(|x|, 1/|x|).
    #[test]
    fn continuous_at_zero_nome(x in point(), t in 0.0f64..std::f64::consts::TAU) {
        let tiny = Nome::with_default(polar(libm::exp2(-(PREC as f64) / 4.0), t)).unwrap();
        let linear = &BigComplex::one(PREC) - &x;
        prop_assert!(residual(&th(&x, &tiny), &linear) < Real::pow2(-(PREC as i32) / 4 + 4, PREC));
    }

    #[test]
    fn doubling_max_terms_is_harmless(x in point(), r in 0.02f64..0.9, t in 0.0f64..std::f64::consts::TAU) {
        let p = Nome::with_default(polar(r, t)).unwrap();
        let base = ThetaTruncation::new(2_000, 32).unwrap();
        let doubled = ThetaTruncation::new(4_000, 32).unwrap();
        let a = theta(&x, &p, &base).unwrap();
        let b = theta(&x, &p, &doubled).unwrap();
        prop_assert!(residual(&a, &b) <= Real::pow2(-(PREC as i32) - 32 + 2, PREC));
    }
}

#[test]
fn zero_nome_and_unit_argument() {
    let p0 = Nome::with_default(BigComplex::zero(PREC)).unwrap();
    let x = polar(1.7, 0.4);
    assert_eq!(th(&x, &p0), &BigComplex::one(PREC) - &x);
    let p = Nome::with_default(polar(0.3, 1.0)).unwrap();
    assert!(th(&BigComplex::one(PREC), &p).is_zero());
    assert!(theta(&BigComplex::zero(PREC), &p, &trunc()).is_err());
}

#[test]
fn empty_and_single_products() {
    let p = Nome::with_default(polar(0.3, 1.0)).unwrap();
    let q = polar(0.8, 2.0);
    let a = polar(1.3, -0.7);
    assert!(theta_multi(&[], &p, &trunc()).unwrap().is_one());
    assert!(poch(&a, 0, &q, &p).is_one());
    assert_eq!(poch(&a, 1, &q, &p), th(&a, &p));
    assert!(epoch_multi(&[a.clone(), q.clone()], 0, &q, &p, &trunc()).unwrap().is_one());
    assert_eq!(epoch_multi(std::slice::from_ref(&a), 3, &q, &p, &trunc()).unwrap(), poch(&a, 3, &q, &p));
}

#[test]
fn real_argument_against_product() {
    let x = BigComplex::from_f64(0.5, 0.0, PREC);
    let p = Nome::with_default(BigComplex::from_f64(0.1, 0.0, PREC)).unwrap();
    let oracle = theta_by_product(&x.with_precision(2 * PREC), &BigComplex::from_f64(0.1, 0.0, 2 * PREC), 2 * PREC, 10_000)
        .unwrap();
    assert!(residual(&th(&x, &p), &oracle.with_precision(PREC)) < Real::pow2(-250, PREC));
}
