use hyperxform::numerics::{pochhammer_product, Complex, ExactComplex, PrecisionContext};
use hyperxform::report::relative_difference;
use hyperxform::series::{
    classify, evaluate, evaluate_exact, partial_sum, ConvergenceTag, ExactSeries, HypergeometricSeries,
    ParameterVector, DEFAULT_MAX_TERMS,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn cplx(re: f64, im: f64) -> Complex {
    Complex::from_f64(re, im, ctx().bits())
}

fn params(values: &[(f64, f64)]) -> ParameterVector {
    ParameterVector::new(values.iter().map(|(re, im)| cplx(*re, *im)).collect())
}

fn rel(a: &Complex, b: &Complex) -> f64 {
    relative_difference(a, b, 0.0).1
}

prop_compose! {
    fn param()(re in 0.1f64..3.0, im in -0.5f64..0.5, real in proptest::bool::weighted(0.7)) -> (f64, f64) {
        (re, if real { 0.0 } else { im })
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matching_pair_cancels(
        numer in proptest::collection::vec(param(), 1..4),
        extra in proptest::collection::vec(param(), 0..3),
        shared in param(),
        r in 0.0f64..0.8,
        t in 0.0f64..std::f64::consts::TAU,
    ) {
        let c = ctx();
        // p <= q + 1 keeps every draw convergent inside the disk.
        let denom: Vec<_> = extra.iter().copied().chain(std::iter::repeat((1.5, 0.0))).take(numer.len() - 1).collect();
        let z = cplx(r * t.cos(), r * t.sin());
        let reduced = HypergeometricSeries::new(params(&numer), params(&denom), z.clone());
        let padded = reduced.with_pair(cplx(shared.0, shared.1), cplx(shared.0, shared.1));
        let a = evaluate(&padded, &c, DEFAULT_MAX_TERMS).unwrap().value;
        let b = evaluate(&reduced, &c, DEFAULT_MAX_TERMS).unwrap().value;
        prop_assert!(rel(&a, &b) <= 10.0 * c.target_rel_tol(), "{:e}", rel(&a, &b));
    }

    #[test]
    fn terminating_float_matches_exact(
        n in 0i64..=15,
        others in proptest::collection::vec((-40i64..40, 1i64..9), 1..4),
        denom in proptest::collection::vec((1i64..60, 1i64..9), 1..4),
        zp in -12i64..12,
        zq in 1i64..6,
    ) {
        let c = ctx();
        let to_exact = |(p, q): (i64, i64)| ExactComplex::real(Rational::from((p, q)));
        let mut numer = vec![ExactComplex::from_int(-n)];
        numer.extend(others.iter().copied().map(to_exact));
        let denom: Vec<_> = denom.iter().copied().map(to_exact).collect();
        let s = ExactSeries::new(numer, denom, ExactComplex::ratio(zp, zq));
        let exact = evaluate_exact(&s).unwrap().to_complex(c.bits());
        let float = evaluate(&s.to_float(&c), &c, DEFAULT_MAX_TERMS).unwrap().value;
        let (_, r) = relative_difference(&exact, &float, c.absolute_floor());
        prop_assert!(r <= c.target_rel_tol(), "{r:e}");
    }

    #[test]
    fn recurrence_matches_direct_product(
        numer in proptest::collection::vec(param(), 0..4),
        denom in proptest::collection::vec(param(), 0..4),
        zr in -0.9f64..0.9,
        zi in -0.4f64..0.4,
        n in 0u64..=50,
    ) {
        let c = ctx();
        let z = cplx(zr, zi);
        let s = HypergeometricSeries::new(params(&numer), params(&denom), z.clone());
        let mut direct = &pochhammer_product(&s.numer, n, &c) / &pochhammer_product(&s.denom, n, &c);
        direct = &direct * &z.powu(n);
        direct = direct.div_u64(1);
        let factorial = (1..=n).fold(Complex::one(c.bits()), |acc, k| acc.mul_int(k as i64));
        direct = &direct / &factorial;
        let term = s.term(n, &c);
        prop_assume!(direct.abs_f64() > 1e-300);
        prop_assert!(rel(&term, &direct) <= 10.0 * c.target_rel_tol(), "{:e}", rel(&term, &direct));
    }
}

#[test]
fn algebraic_tail_bounds_remainder() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut covered, total) = (0, 200);
    for _ in 0..total {
        let a: f64 = rng.gen_range(0.1..2.0);
        let b: f64 = rng.gen_range(0.1..2.0);
        let s: f64 = rng.gen_range(1.05..3.0);
        let n: u64 = rng.gen_range(50..400);
        let series =
            HypergeometricSeries::new(params(&[(a, 0.0), (b, 0.0)]), params(&[(a + b + s, 0.0)]), cplx(1.0, 0.0));
        assert_eq!(classify(&series, &c).tag, ConvergenceTag::BoundaryConvergent);
        let short = partial_sum(&series, n, &c).unwrap();
        let long = partial_sum(&series, 10 * n, &c).unwrap();
        let remainder = (&long.value - &short.value).abs_f64();
        if short.tail_estimate >= remainder {
            covered += 1;
        }
    }
    assert!(covered * 100 >= total * 99, "covered {covered} of {total}");
}
