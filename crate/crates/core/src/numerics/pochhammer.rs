use super::{Complex, ExactComplex, PrecisionContext};

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, `(a)_0 = 1`.
///
/// Computed as a direct product at `ctx` precision; a zero factor gives an
/// exact zero.
pub fn pochhammer(a: &Complex, n: u64, ctx: &PrecisionContext) -> Complex {
    let prec = ctx.bits();
    let mut acc = Complex::one(prec);
    let mut factor = a.with_prec(prec);
    for _ in 0..n {
        acc *= &factor;
        factor = factor.add_int(1);
    }
    acc
}

/// `((a))_n = (a_1)_n ... (a_A)_n`; the empty product is one.
pub fn pochhammer_product(params: &[Complex], n: u64, ctx: &PrecisionContext) -> Complex {
    params.iter().fold(Complex::one(ctx.bits()), |acc, a| &acc * &pochhammer(a, n, ctx))
}

pub fn pochhammer_exact(a: &ExactComplex, n: u64) -> ExactComplex {
    let mut acc = ExactComplex::one();
    let mut factor = a.clone();
    for _ in 0..n {
        acc *= &factor;
        factor = factor.add_int(1);
    }
    acc
}

pub fn pochhammer_product_exact(params: &[ExactComplex], n: u64) -> ExactComplex {
    params.iter().fold(ExactComplex::one(), |acc, a| &acc * &pochhammer_exact(a, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn real(x: f64) -> Complex {
        Complex::from_f64(x, 0.0, ctx().bits())
    }

    fn close(a: &Complex, b: f64) -> bool {
        (a - &real(b)).abs_f64() <= 1e-45 * b.abs().max(1.0)
    }

    #[test]
    fn named_values() {
        let z = Complex::from_f64(2.7, 0.3, ctx().bits());
        assert_eq!(pochhammer(&z, 0, &ctx()), Complex::one(ctx().bits()));
        assert!(close(&pochhammer(&real(1.0), 5, &ctx()), 120.0));
        assert!(close(&pochhammer(&real(0.5), 3, &ctx()), 1.875));
    }

    #[test]
    fn products() {
        assert!(close(&pochhammer_product(&[], 7, &ctx()), 1.0));
        assert!(close(&pochhammer_product(&[real(1.0), real(1.0)], 3, &ctx()), 36.0));
        assert!(close(&pochhammer_product(&[real(0.5), real(2.0)], 2, &ctx()), 4.5));
    }

    #[test]
    fn nonpositive_integer_start_gives_zero() {
        assert!(pochhammer(&real(-3.0), 4, &ctx()).is_zero());
        assert!(pochhammer(&real(-3.0), 5, &ctx()).is_zero());
        assert!(close(&pochhammer(&real(-3.0), 3, &ctx()), -6.0));
        assert!(pochhammer_exact(&ExactComplex::from_int(-2), 3).is_zero());
    }

    #[test]
    fn exact_matches_hand_product() {
        let half = ExactComplex::ratio(1, 2);
        assert_eq!(pochhammer_exact(&half, 3), ExactComplex::ratio(15, 8));
        let p = pochhammer_product_exact(&[half, ExactComplex::from_int(2)], 2);
        assert_eq!(p, ExactComplex::ratio(9, 2));
    }
}
