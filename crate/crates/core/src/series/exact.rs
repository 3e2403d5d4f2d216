use super::{HypergeometricSeries, ParameterVector};
use crate::error::{Error, Result};
use crate::numerics::{ExactComplex, PrecisionContext};

/// A `pFq` with exact rational (complex) parameters and argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactSeries {
    pub numer: Vec<ExactComplex>,
    pub denom: Vec<ExactComplex>,
    pub argument: ExactComplex,
}

impl ExactSeries {
    pub fn new(numer: Vec<ExactComplex>, denom: Vec<ExactComplex>, argument: ExactComplex) -> Self {
        Self { numer, denom, argument }
    }

    pub fn termination(&self) -> Option<u64> {
        self.numer.iter().filter_map(ExactComplex::nonpositive_integer).min()
    }

    pub fn to_float(&self, ctx: &PrecisionContext) -> HypergeometricSeries {
        let prec = ctx.bits();
        HypergeometricSeries::new(
            ParameterVector(self.numer.iter().map(|a| a.to_complex(prec)).collect()),
            ParameterVector(self.denom.iter().map(|b| b.to_complex(prec)).collect()),
            self.argument.to_complex(prec),
        )
    }
}

/// Exact value of a terminating series.
pub fn evaluate_exact(series: &ExactSeries) -> Result<ExactComplex> {
    let n = series.termination().ok_or(Error::NotTerminating)?;
    let mut sum = ExactComplex::zero();
    let mut term = ExactComplex::one();
    for k in 0..=n {
        sum += &term;
        if k == n {
            break;
        }
        let mut num = series.argument.clone();
        for a in &series.numer {
            num *= &a.add_int(k as i64);
        }
        let mut den = ExactComplex::from_int(k as i64 + 1);
        for b in &series.denom {
            let shifted = b.add_int(k as i64);
            if shifted.is_zero() {
                return Err(Error::Pole(format!(
                    "denominator parameter {b} reaches zero at index {k} before termination at {n}"
                )));
            }
            den *= &shifted;
        }
        term = (&term * &num).checked_div(&den).expect("denominator checked nonzero");
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pochhammer_exact;

    fn q(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    #[test]
    fn two_term_sum() {
        let (b, c, z) = (q("7/3"), q("5/2+1i"), q("2/9"));
        let s = ExactSeries::new(vec![q("-1"), b.clone()], vec![c.clone()], z.clone());
        let expected = &ExactComplex::one() - &(&b * &z).checked_div(&c).unwrap();
        assert_eq!(evaluate_exact(&s).unwrap(), expected);
    }

    #[test]
    fn hand_sum() {
        let s = ExactSeries::new(vec![q("-2"), q("3")], vec![q("4")], q("1"));
        assert_eq!(evaluate_exact(&s).unwrap(), q("1/10"));
    }

    #[test]
    fn terminating_well_poised_4f3() {
        // 4F3(-n, a, 1+a/2, b; a/2, 1+a-b, 1+a+n; 1) with a = 1, b = 1/3, n = 2
        let (a, b, n) = (q("1"), q("1/3"), 2u64);
        let half_a = q("1/2");
        let one = ExactComplex::one();
        let s = ExactSeries::new(
            vec![q("-2"), a.clone(), &one + &half_a, b.clone()],
            vec![half_a.clone(), &(&one + &a) - &b, (&one + &a).add_int(n as i64)],
            one.clone(),
        );
        let half = q("1/2");
        let rhs_num = &pochhammer_exact(&(&one + &a), n) * &pochhammer_exact(&(&(&half + &half_a) - &b), n);
        let rhs_den = &pochhammer_exact(&(&half + &half_a), n) * &pochhammer_exact(&(&(&one + &a) - &b), n);
        assert_eq!(evaluate_exact(&s).unwrap(), rhs_num.checked_div(&rhs_den).unwrap());
    }

    #[test]
    fn errors() {
        let s = ExactSeries::new(vec![q("1/2")], vec![q("3")], q("1/2"));
        assert_eq!(evaluate_exact(&s), Err(Error::NotTerminating));
        let s = ExactSeries::new(vec![q("-3")], vec![q("-1")], q("1/2"));
        assert!(matches!(evaluate_exact(&s), Err(Error::Pole(_))));
        let s = ExactSeries::new(vec![q("-1")], vec![q("-1")], q("1/2"));
        assert!(evaluate_exact(&s).is_ok());
    }
}
