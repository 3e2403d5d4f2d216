use hyperxform::numerics::{
    gamma_ratio, log_gamma, pochhammer, pochhammer_exact, Complex, ExactComplex, PrecisionContext,
};
use hyperxform::report::relative_difference;
use proptest::prelude::*;
use rug::Rational;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    relative_difference(a, b, 0.0).1
}

fn cplx(re: f64, im: f64) -> Complex {
    Complex::from_f64(re, im, ctx().bits())
}

fn exact(p: i64, q: i64, r: i64, s: i64) -> ExactComplex {
    ExactComplex::new(Rational::from((p, q)), Rational::from((r, s)))
}

prop_compose! {
    fn scalar()(re in -8.0f64..8.0, im in -3.0f64..3.0, real in proptest::bool::weighted(0.5)) -> Complex {
        cplx(re, if real { 0.0 } else { im })
    }
}

prop_compose! {
    fn rational_scalar()(p in -60i64..60, q in 1i64..13, r in -20i64..20, s in 1i64..7, real in proptest::bool::ANY)
        -> ExactComplex {
        exact(p, q, if real { 0 } else { r }, s)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rising_factorial_recurrence(a in scalar(), n in 0u64..=200) {
        let c = ctx();
        let lhs = pochhammer(&a, n + 1, &c);
        let rhs = &pochhammer(&a, n, &c) * &a.add_u64(n);
        let scale = lhs.abs_f64().max(rhs.abs_f64());
        prop_assume!(scale > 0.0);
        prop_assert!(rel(&lhs, &rhs) <= 10.0 * c.target_rel_tol(), "{}", rel(&lhs, &rhs));
    }

    #[test]
    fn splitting_exact(a in rational_scalar(), n in 0u64..=20, m in 0u64..=20) {
        let split = &pochhammer_exact(&a, n) * &pochhammer_exact(&a.add_int(n as i64), m);
        prop_assert_eq!(split, pochhammer_exact(&a, n + m));
    }

    #[test]
    fn splitting_float(a in scalar(), n in 0u64..=60, m in 0u64..=60) {
        let c = ctx();
        let whole = pochhammer(&a, n + m, &c);
        let split = &pochhammer(&a, n, &c) * &pochhammer(&a.add_u64(n), m, &c);
        prop_assume!(whole.abs_f64() > 0.0);
        prop_assert!(rel(&whole, &split) <= 10.0 * c.target_rel_tol());
    }

    #[test]
    fn negation_identity(a in rational_scalar(), m in 0u64..=15, k in 0u64..=15) {
        let n = k.min(m);
        let reflected = ExactComplex::one() - &a - ExactComplex::from_int(m as i64);
        let sign = ExactComplex::from_int(if n % 2 == 0 { 1 } else { -1 });
        let lhs = &(&pochhammer_exact(&a, m - n) * &pochhammer_exact(&reflected, n)) * &sign;
        prop_assert_eq!(lhs, pochhammer_exact(&a, m));
    }

    #[test]
    fn gamma_ratio_of_equal_multisets(values in proptest::collection::vec((0.05f64..12.0, -4.0f64..4.0), 1..6), rot in 0usize..6) {
        let c = ctx();
        let num: Vec<Complex> = values.iter().map(|(re, im)| cplx(*re, *im)).collect();
        let mut den = num.clone();
        den.rotate_left(rot % num.len());
        den.reverse();
        let r = gamma_ratio(&num, &den, &c).unwrap();
        prop_assert!(rel(&r, &cplx(1.0, 0.0)) <= 10.0 * c.target_rel_tol());
    }

    #[test]
    fn log_gamma_recurrence(re in -6.0f64..25.0, im in -15.0f64..15.0) {
        let c = ctx();
        let z = cplx(re, im);
        prop_assume!(z.pole_distance() > 0.05 && z.add_int(1).pole_distance() > 0.05);
        let shifted = (&log_gamma(&z.add_int(1), &c).unwrap() - &log_gamma(&z, &c).unwrap()).exp();
        let err = (&shifted - &z).abs_f64();
        prop_assert!(err <= 10.0 * c.target_rel_tol() * z.abs_f64(), "{err:e}");
    }
}

#[test]
fn pochhammer_named_values() {
    let c = ctx();
    assert_eq!(pochhammer(&cplx(1.0, 0.0), 5, &c).to_f64_pair(), [120.0, 0.0]);
    assert_eq!(pochhammer(&cplx(-3.0, 0.0), 5, &c).to_f64_pair(), [0.0, 0.0]);
    assert_eq!(pochhammer_exact(&exact(1, 2, 0, 1), 3), exact(15, 8, 0, 1));
}
