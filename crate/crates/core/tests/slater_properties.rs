use hyperxform::numerics::{Complex, PrecisionContext};
use hyperxform::report::{relative_difference, Verdict};
use hyperxform::series::ParameterVector;
use hyperxform::slater::{
    rearrangement_oracle, slater_lhs, slater_rhs, verify_slater, ExtonParameters, SlaterConfiguration,
    DEFAULT_OUTER_TOL,
};
use proptest::prelude::*;
use rug::Rational;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

#[test]
fn sampled_configurations_agree() {
    let c = ctx();
    for seed in 1000..1030 {
        let cfg = SlaterConfiguration::sample_envelope(seed, c.bits());
        let report = verify_slater(&cfg, &c, 1e-20);
        assert_eq!(report.verdict, Verdict::Pass, "seed {seed}: {report:?}");
    }
}

#[test]
fn parity_flip_negates_inner_argument() {
    let c = ctx();
    for seed in 0..20 {
        let cfg = SlaterConfiguration::sample_envelope(seed, c.bits());
        let mut flipped = cfg.clone();
        if flipped.e.is_empty() {
            flipped.e = ParameterVector::new(vec![Complex::from_f64(1.25, 0.0, c.bits())]);
        } else {
            flipped.e = ParameterVector::new(flipped.e[1..].to_vec());
        }
        assert_eq!(flipped.sign(), -cfg.sign());
        for n in [0u64, 1, 4] {
            let before = cfg.rhs_inner_series(n).unwrap().argument;
            let after = flipped.rhs_inner_series(n).unwrap().argument;
            assert_eq!(after, -before, "seed {seed} n {n}");
        }
    }
}

#[test]
fn kernel_transformation_routes_agree() {
    let c = ctx();
    for seed in 0..10 {
        let params = ExtonParameters::sample(seed, c.bits());
        let cfg = params.specialize();
        let report = verify_slater(&cfg, &c, 1e-20);
        assert_eq!(report.verdict, Verdict::Pass, "seed {seed}: {report:?}");
        let (l, r) = params.direct(&c, DEFAULT_OUTER_TOL).unwrap();
        let floor = 1.0;
        assert!(relative_difference(&l, &r, floor).1 <= 1e-20);
        assert!(relative_difference(&l, report.lhs.as_ref().unwrap(), floor).1 <= 1e-20);
        assert!(relative_difference(&r, report.rhs.as_ref().unwrap(), floor).1 <= 1e-20);
    }
}

#[test]
fn zero_x_gives_one_on_both_sides() {
    let c = ctx();
    for seed in 0..10 {
        let mut cfg = SlaterConfiguration::sample_envelope(seed, c.bits());
        cfg.x = Complex::zero(c.bits());
        let one = Complex::one(c.bits());
        let l = slater_lhs(&cfg, &c, DEFAULT_OUTER_TOL).unwrap();
        let r = slater_rhs(&cfg, &c, DEFAULT_OUTER_TOL).unwrap();
        assert!(relative_difference(&l.value, &one, 1.0).1 <= c.target_rel_tol());
        assert!(relative_difference(&r.value, &one, 1.0).1 <= c.target_rel_tol());
        assert!(cfg.lhs_inner_series(0).argument.is_zero());
    }
}

fn rational_table() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec((-1000i64..1000, 1i64..50), 0..12), 0..12)
        .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(Rational::from).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rearrangement_is_exact(table in rational_table()) {
        let (direct, diagonal) = rearrangement_oracle(&table, Rational::new());
        prop_assert_eq!(direct, diagonal);
    }
}
