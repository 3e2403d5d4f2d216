use std::sync::OnceLock;

use rug::{Float, Integer, Rational};

use super::{Complex, PrecisionContext};
use crate::error::{Error, Result};

/// Guard bits carried through the Stirling sum and the recurrence lift.
const GUARD_BITS: u32 = 32;
/// Number of Stirling coefficients kept in the table.
const STIRLING_TERMS: usize = 128;

/// `B_{2k} / (2k (2k-1))` for `k = 1..=STIRLING_TERMS`, from tangent numbers.
fn stirling_coefficients() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = STIRLING_TERMS;
        let mut t = vec![Integer::new(); n + 1];
        t[1] = Integer::from(1);
        for k in 2..=n {
            t[k] = Integer::from(&t[k - 1] * (k as u32 - 1));
        }
        for k in 2..=n {
            for j in k..=n {
                let a = Integer::from(&t[j - 1] * (j - k) as u32);
                let b = Integer::from(&t[j] * (j - k + 2) as u32);
                t[j] = a + b;
            }
        }
        (1..=n)
            .map(|k| {
                let four_k = Integer::from(1) << (2 * k as u32);
                let den = Integer::from(&four_k - 1u32) * four_k;
                let mut b2k = Rational::from((Integer::from(&t[k] * (2 * k as u32)), den));
                if k % 2 == 0 {
                    b2k = -b2k;
                }
                b2k / Integer::from(2 * k as u32 * (2 * k as u32 - 1))
            })
            .collect()
    })
}

fn check_pole(z: &Complex, ctx: &PrecisionContext) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::NonFinite("log_gamma argument"));
    }
    if let Some(m) = z.nonpositive_integer(ctx.pole_tolerance()) {
        return Err(Error::Pole(format!("gamma argument at nonpositive integer -{m}")));
    }
    Ok(())
}

/// Principal logarithm of `Gamma(z)`: imaginary part in `(-pi, pi]`.
///
/// The argument is lifted to `Re z >= R` (R grows with the working digits)
/// by the recurrence, then the Stirling series is summed with exact
/// Bernoulli coefficients.
pub fn log_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_pole(z, ctx)?;
    let prec = ctx.bits() + GUARD_BITS;
    let digits = ctx.working_digits() as f64;
    let lift = digits * (digits / 250.0).max(1.0);

    let mut w = z.with_prec(prec);
    let mut lifted = Complex::one(prec);
    let re = w.re.to_f64();
    if re < lift {
        let steps = (lift - re).ceil() as u64;
        for _ in 0..steps {
            lifted *= &w;
            w = w.add_int(1);
        }
    }

    let half = Complex::from_f64(0.5, 0.0, prec);
    let two_pi = Float::with_val(prec, Complex::pi(prec) * 2u32);
    let half_ln_two_pi = Float::with_val(prec, two_pi.ln_ref()) / 2u32;

    let ln_w = w.ln();
    let mut sum = &(&(&w - &half) * &ln_w) - &w;
    sum.re += &half_ln_two_pi;

    let inv = w.recip();
    let inv_sq = &inv * &inv;
    let mut power = inv;
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    for coeff in stirling_coefficients() {
        let term = power.scale(&Float::with_val(prec, coeff));
        sum += &term;
        if term.abs() < Float::with_val(prec, &eps * &sum.abs()) {
            break;
        }
        power *= &inv_sq;
    }

    let mut result = &sum - &lifted.ln();
    let turns = Float::with_val(prec, &result.im / &two_pi).round();
    result.im -= Float::with_val(prec, &turns * &two_pi);
    let pi = Complex::pi(prec);
    if result.im <= Float::with_val(prec, -&pi) {
        result.im += &two_pi;
    }
    let out = result.with_prec(ctx.bits());
    if !out.is_finite() {
        return Err(Error::NonFinite("log_gamma"));
    }
    Ok(out)
}

pub fn gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    Ok(log_gamma(z, ctx)?.exp())
}

/// Handling of gamma arguments that sit on poles in [`gamma_ratio_with_policy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolePolicy {
    /// Any pole is an error.
    #[default]
    Strict,
    /// Poles are treated as the equal-rate limit `Gamma(-m + t)`, `t -> 0`:
    /// balanced pole counts leave the ratio of residues, an excess of
    /// denominator poles gives zero, an excess of numerator poles is an error.
    Limit,
}

/// `prod Gamma(num_i) / prod Gamma(den_j)` evaluated in log space.
pub fn gamma_ratio(num: &[Complex], den: &[Complex], ctx: &PrecisionContext) -> Result<Complex> {
    gamma_ratio_with_policy(num, den, ctx, PolePolicy::Strict)
}

pub fn gamma_ratio_with_policy(
    num: &[Complex],
    den: &[Complex],
    ctx: &PrecisionContext,
    policy: PolePolicy,
) -> Result<Complex> {
    let tol = ctx.pole_tolerance();
    let prec = ctx.bits();
    let num_poles: Vec<Option<u64>> = num.iter().map(|z| z.nonpositive_integer(tol)).collect();
    let den_poles: Vec<Option<u64>> = den.iter().map(|z| z.nonpositive_integer(tol)).collect();
    let n_num = num_poles.iter().flatten().count();
    let n_den = den_poles.iter().flatten().count();

    match policy {
        PolePolicy::Strict => {
            if let Some(m) = den_poles.iter().flatten().next() {
                return Err(Error::Pole(format!("denominator gamma argument at nonpositive integer -{m}")));
            }
            if let Some(m) = num_poles.iter().flatten().next() {
                return Err(Error::NumeratorPole(format!("numerator gamma argument at nonpositive integer -{m}")));
            }
        }
        PolePolicy::Limit => {
            if n_num > n_den {
                return Err(Error::NumeratorPole(format!("{n_num} numerator poles against {n_den} denominator poles")));
            }
            if n_num < n_den {
                return Ok(Complex::zero(prec));
            }
        }
    }

    // Residue of Gamma at -m is (-1)^m / m!.
    let mut residues = Rational::from(1);
    for m in num_poles.iter().flatten() {
        residues *= residue(*m);
    }
    for m in den_poles.iter().flatten() {
        residues /= residue(*m);
    }

    let mut log_sum = Complex::zero(prec);
    for (z, pole) in num.iter().zip(&num_poles) {
        if pole.is_none() {
            log_sum += &log_gamma(z, ctx)?;
        }
    }
    for (z, pole) in den.iter().zip(&den_poles) {
        if pole.is_none() {
            log_sum -= &log_gamma(z, ctx)?;
        }
    }
    let value = log_sum.exp().scale(&Float::with_val(prec, &residues));
    if !value.is_finite() {
        return Err(Error::NonFinite("gamma_ratio"));
    }
    Ok(value)
}

fn residue(m: u64) -> Rational {
    let fact = Integer::from(Integer::factorial(m as u32));
    let r = Rational::from((Integer::from(1), fact));
    if m % 2 == 1 {
        -r
    } else {
        r
    }
}
