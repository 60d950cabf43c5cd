use ellhyp_core::arith::default_tolerance;
use ellhyp_core::catalog::{self, drb_symmetric_rhs, lookup, BAILEY_AN_BOX};
use ellhyp_core::eval::{Evaluator, Mode};
use ellhyp_core::lattice::{box_iter, MultiIndex};
use ellhyp_core::params::{ParameterSet, Shape, Size};
use ellhyp_core::sampler::{degenerate_to_q, sample, SamplerConfig};
use ellhyp_core::verifier::{self, check_reparametrization, verify, NoClock, VerifyConfig};
use ellhyp_core::{residual, BigComplex, Error, Real};
use proptest::prelude::*;

const PREC: usize = 256;

fn cfg() -> SamplerConfig {
    SamplerConfig::default()
}

fn evaluator(ps: &ParameterSet) -> Evaluator {
    Evaluator::new(&ps.p, &ps.q, PREC, Mode::Evaluate).unwrap()
}

fn empty_shape(size: &Size, rank: usize) -> Shape {
    match size {
        Size::Total(_) => Shape::total(rank, 0),
        Size::Bounds(_) => Shape::uniform_box(rank, 0),
        Size::Unsized => unreachable!(),
    }
}

#[test]
fn empty_domains_give_one_on_both_sides() {
    let one = BigComplex::one(PREC);
    let mut checked = 0;
    for d in catalog::all() {
        let shapes = d.suite_shapes();
        let Some(template) = shapes.iter().find(|s| s.size != Size::Unsized) else { continue };
        for rank in 1..=3 {
            let shape = empty_shape(&template.size, rank);
            if d.check_shape(&shape).is_err() {
                continue;
            }
            let ps = sample(d, &shape, &cfg(), 0).unwrap_or_else(|e| panic!("{}: {e}", d.id()));
            let (lhs, rhs) = verifier::evaluate(d, &ps, PREC).unwrap();
            assert!(residual(&lhs, &one) < default_tolerance(PREC), "{} {shape}: lhs", d.id());
            assert!(residual(&rhs, &one) < default_tolerance(PREC), "{} {shape}: rhs", d.id());
            checked += 1;
        }
    }
    assert!(checked >= 15);
}

#[test]
fn reversed_box_sum_has_a_symmetric_right_side() {
    let d = lookup("dn_jackson_box_reversed").unwrap();
    for m in [vec![1], vec![2], vec![1, 2], vec![2, 2], vec![1, 1, 1]] {
        let shape = Shape::bounds(MultiIndex::new(m));
        for trial in 0..5 {
            let ps = sample(d, &shape, &cfg(), trial).unwrap();
            let ev = evaluator(&ps);
            let (_, rhs) = d.evaluate(&ev, &ps).unwrap();
            let alt = drb_symmetric_rhs(&ev, &ps).unwrap();
            assert!(residual(&rhs, &alt) < default_tolerance(PREC), "{shape} trial {trial}");
        }
    }
}

// With lambda = a the two Bailey sums coincide term by term and the
// prefactor is 1.
#[test]
fn bailey_box_transformation_is_trivial_at_lambda_equal_a() {
    let d = &BAILEY_AN_BOX;
    let con = catalog::Identity::constraint(d).unwrap();
    for m in [vec![1], vec![2], vec![1, 2], vec![2, 1]] {
        let shape = Shape::bounds(MultiIndex::new(m));
        for trial in 0..4 {
            let mut ps = sample(d, &shape, &cfg(), trial).unwrap();
            let [a, b, c] = ["a", "b", "c"].map(|n| ps.scalar(n).unwrap().clone());
            ps.set_scalar("e", &(&a * &ps.q) / &(&b * &c));
            con.solve(&mut ps).unwrap();
            catalog::Identity::derive(d, &mut ps).unwrap();
            assert!(residual(ps.scalar("lambda").unwrap(), &a) < Real::pow2(-240, PREC));
            let ev = evaluator(&ps);
            let [lhs, pre, dual] = d.parts(&ev, &ps).unwrap();
            assert!(residual(&pre, &ev.one()) < default_tolerance(PREC));
            assert!(residual(&lhs, &dual) < default_tolerance(PREC));
            for y in box_iter(ps.bounds().unwrap()) {
                let (s, t) = d.terms_at(&ev, &ps, &y).unwrap();
                assert!(residual(&s, &t) < default_tolerance(PREC), "{shape} y = {y}");
            }
        }
    }
}

#[test]
fn cn_box_sampling_never_exhausts_at_the_largest_shape() {
    let d = lookup("cn_jackson_box").unwrap();
    let shape = Shape::uniform_box(3, 2);
    for trial in 0..100 {
        if let Err(e) = sample(d, &shape, &cfg(), trial) {
            panic!("trial {trial}: {e}");
        }
    }
}

#[test]
fn q_series_specialization_of_the_box_sum() {
    let d = lookup("an_jackson_box").unwrap();
    for trial in 0..10 {
        let ps = sample(d, &Shape::uniform_box(2, 2), &cfg(), trial).unwrap();
        let z = degenerate_to_q(&ps);
        assert!(z.p.is_zero());
        d.constraint().unwrap().check(&z).unwrap();
        let (lhs, rhs) = verifier::evaluate(d, &z, PREC).unwrap();
        assert!(residual(&lhs, &rhs) < default_tolerance(PREC));
    }
}

#[test]
fn simplex_sum_at_zero_nome_and_milne_sum() {
    let vc = VerifyConfig { sampler: SamplerConfig { zero_nome: true, ..cfg() }, ..Default::default() };
    let r = verify("an_jackson_simplex", &Shape::total(3, 3), 20, &vc, &NoClock).unwrap();
    assert!(r.passed && r.p_zero);
    let r = verify("milne_ft", &Shape::total(3, 3), 20, &VerifyConfig::default(), &NoClock).unwrap();
    assert!(r.passed && r.p_zero);
}

#[test]
fn primary_gate_cn_box() {
    let r = verify("cn_jackson_box", &Shape::uniform_box(2, 2), 50, &VerifyConfig::default(), &NoClock).unwrap();
    assert!(r.passed, "max residual 2^{}", r.max_residual.log2());
    assert!(r.max_residual < Real::pow2(-128, PREC));
    assert_eq!(r.residuals.len(), 50);
}

#[test]
fn reports_are_reproducible() {
    let vc = VerifyConfig::default();
    for (id, shape) in [("warnaar_first", Shape::total(2, 2)), ("bailey_dn", Shape::uniform_box(2, 1))] {
        let a = verify(id, &shape, 5, &vc, &NoClock).unwrap();
        let b = verify(id, &shape, 5, &vc, &NoClock).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn raising_precision_keeps_reports_passing() {
    let lo = VerifyConfig::default();
    let mut hi = VerifyConfig::default();
    hi.sampler.precision_bits = 512;
    for (id, shape) in [
        ("an_jackson_classical", Shape::total(3, 2)),
        ("dn_jackson_box", Shape::uniform_box(2, 2)),
        ("bailey_cn_an", Shape::uniform_box(2, 1)),
    ] {
        let a = verify(id, &shape, 5, &lo, &NoClock).unwrap();
        let b = verify(id, &shape, 5, &hi, &NoClock).unwrap();
        assert!(a.passed && b.passed, "{id}");
        assert!(b.max_residual < Real::pow2(-256, 512), "{id}");
    }
}

#[test]
fn reparametrization_examples() {
    let vc = VerifyConfig::default();
    let tol = default_tolerance(PREC);
    let m = MultiIndex::new(vec![2]);
    let [d1, d2, d3] = check_reparametrization(&m, &MultiIndex::zeros(1), &vc, 0).unwrap();
    assert!(d1 < tol && d2 < tol && d3 < tol);
    let rs = check_reparametrization(&m, &MultiIndex::new(vec![1]), &vc, 0).unwrap();
    assert!(rs.iter().all(|r| *r < tol));
    let m = MultiIndex::new(vec![2, 1]);
    for x in box_iter(&m) {
        let rs = check_reparametrization(&m, &x, &vc, 1).unwrap();
        assert!(rs.iter().all(|r| *r < tol), "x = {x}");
    }
    assert!(matches!(
        check_reparametrization(&m, &MultiIndex::new(vec![3, 0]), &vc, 0),
        Err(Error::InvalidConfig(_))
    ));
}

#[test]
fn cross_checks_at_small_shapes() {
    let vc = VerifyConfig::default();
    let r = verifier::cross_check_cr_vs_aaj(&Shape::bounds(MultiIndex::zeros(1)), 3, &vc, &NoClock).unwrap();
    assert!(r.passed && r.residuals.iter().all(Real::is_zero));
    let r = verifier::cross_check_cr_vs_aaj(&Shape::bounds(MultiIndex::new(vec![1, 2])), 20, &vc, &NoClock).unwrap();
    assert!(r.passed);
    let r = verifier::cross_check_cjt_vs_wj(2, 20, &vc, &NoClock).unwrap();
    assert!(r.passed);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampling_is_deterministic_and_on_the_variety(seed in any::<u64>(), trial in 0u64..1000, which in 0usize..4) {
        let (id, shape) = [
            ("an_jackson_simplex", Shape::total(2, 2)),
            ("cn_jackson_box", Shape::uniform_box(2, 1)),
            ("bailey_an_simplex", Shape::total(2, 1)),
            ("pf_epa", Shape::rank_only(3)),
        ][which].clone();
        let d = lookup(id).unwrap();
        let c = SamplerConfig { seed, ..cfg() };
        let a = sample(d, &shape, &c, trial).unwrap();
        let b = sample(d, &shape, &c, trial).unwrap();
        prop_assert_eq!(&a, &b);
        let r = d.constraint().unwrap().residual(&a).unwrap();
        prop_assert!(r < Real::pow2(8 - PREC as i32, PREC));
        // Accepted draws evaluate without degeneracy at full precision.
        prop_assert!(verifier::evaluate(d, &a, PREC).is_ok());
    }
}
