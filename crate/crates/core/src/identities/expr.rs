//! Side expressions of the registry identities over exact parameters.

use crate::error::{Error, Result};
use crate::numerics::{
    gamma_ratio, pochhammer_product, pochhammer_product_exact, Complex, ExactComplex, PrecisionContext,
};
use crate::series::{
    algebraic_tail, classify, divergence_reason, evaluate, evaluate_exact, extrapolated_sum, AlgebraicDecay,
    EvaluationResult, ExactSeries, HypergeometricSeries, ParameterVector, DEFAULT_MAX_TERMS, MIN_UNIT_EXCESS,
};

/// Extra digits for the terminating inner polynomials of a [`KernelSum`].
const KERNEL_GUARD_DIGITS: u32 = 20;

/// `sum_n (c)_n (d)_n / ((f)_n n!) F[-n, (g); f+n, (h); -y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSum {
    pub c: ExactComplex,
    pub d: ExactComplex,
    pub f: ExactComplex,
    pub g: Vec<ExactComplex>,
    pub h: Vec<ExactComplex>,
    pub y: ExactComplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(ExactComplex),
    Series(ExactSeries),
    /// `prod Gamma(num) / prod Gamma(den)`.
    Gamma {
        num: Vec<ExactComplex>,
        den: Vec<ExactComplex>,
    },
    /// `((num))_n / ((den))_n`.
    Pochhammer {
        num: Vec<ExactComplex>,
        den: Vec<ExactComplex>,
        n: u64,
    },
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
    Kernel(KernelSum),
}

/// Removes entries common to both lists (as multisets), then sorts both.
fn cancel_sorted(num: &mut Vec<ExactComplex>, den: &mut Vec<ExactComplex>, keep: impl Fn(&ExactComplex) -> bool) {
    let mut i = 0;
    while i < num.len() {
        if keep(&num[i]) {
            i += 1;
            continue;
        }
        if let Some(j) = den.iter().position(|b| *b == num[i]) {
            num.remove(i);
            den.remove(j);
        } else {
            i += 1;
        }
    }
    num.sort();
    den.sort();
}

impl Expr {
    /// Canonical form: common gamma/Pochhammer/series entries cancelled and
    /// sorted, constants folded, gamma and same-degree Pochhammer factors of
    /// a product merged, zero terms dropped.
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Kernel(_) => self.clone(),
            Expr::Series(s) => {
                if s.argument.is_zero() {
                    return Expr::Const(ExactComplex::one());
                }
                let (mut num, mut den) = (s.numer.clone(), s.denom.clone());
                // a nonpositive integer entry may be what terminates the series
                cancel_sorted(&mut num, &mut den, |a| a.nonpositive_integer().is_some());
                Expr::Series(ExactSeries::new(num, den, s.argument.clone()))
            }
            Expr::Gamma { num, den } => {
                let (mut num, mut den) = (num.clone(), den.clone());
                cancel_sorted(&mut num, &mut den, |_| false);
                if num.is_empty() && den.is_empty() {
                    Expr::Const(ExactComplex::one())
                } else {
                    Expr::Gamma { num, den }
                }
            }
            Expr::Pochhammer { num, den, n } => {
                let (mut num, mut den) = (num.clone(), den.clone());
                cancel_sorted(&mut num, &mut den, |_| false);
                if *n == 0 || (num.is_empty() && den.is_empty()) {
                    Expr::Const(ExactComplex::one())
                } else {
                    Expr::Pochhammer { num, den, n: *n }
                }
            }
            Expr::Product(factors) => simplify_product(factors),
            Expr::Sum(terms) => simplify_sum(terms),
        }
    }

    /// Value in exact arithmetic; `None` when the expression needs gamma
    /// functions or an infinite sum.
    pub fn evaluate_exact(&self) -> Result<Option<ExactComplex>> {
        Ok(match self {
            Expr::Const(c) => Some(c.clone()),
            Expr::Series(s) => match s.termination() {
                Some(_) => Some(evaluate_exact(s)?),
                None => None,
            },
            Expr::Gamma { .. } | Expr::Kernel(_) => None,
            Expr::Pochhammer { num, den, n } => {
                let d = pochhammer_product_exact(den, *n);
                let q = pochhammer_product_exact(num, *n)
                    .checked_div(&d)
                    .ok_or_else(|| Error::Pole("Pochhammer denominator vanishes".into()))?;
                Some(q)
            }
            Expr::Product(factors) => {
                let mut acc = ExactComplex::one();
                for f in factors {
                    match f.evaluate_exact()? {
                        Some(v) => acc = acc * v,
                        None => return Ok(None),
                    }
                }
                Some(acc)
            }
            Expr::Sum(terms) => {
                let mut acc = ExactComplex::zero();
                for t in terms {
                    match t.evaluate_exact()? {
                        Some(v) => acc += &v,
                        None => return Ok(None),
                    }
                }
                Some(acc)
            }
        })
    }

    /// Value at working precision. `terms_used` adds up the series terms
    /// summed; `tail_estimate` is a first-order absolute error bound.
    pub fn evaluate(&self, ctx: &PrecisionContext) -> Result<EvaluationResult> {
        let prec = ctx.bits();
        let done = |value: Complex, terms_used, tail_estimate| {
            if value.is_finite() {
                Ok(EvaluationResult { value, terms_used, tail_estimate, converged: true })
            } else {
                Err(Error::NonFinite("identity side"))
            }
        };
        match self {
            Expr::Const(c) => done(c.to_complex(prec), 0, 0.0),
            Expr::Series(s) => evaluate(&s.to_float(ctx), ctx, DEFAULT_MAX_TERMS),
            Expr::Gamma { num, den } => {
                let num: Vec<Complex> = num.iter().map(|a| a.to_complex(prec)).collect();
                let den: Vec<Complex> = den.iter().map(|a| a.to_complex(prec)).collect();
                done(gamma_ratio(&num, &den, ctx)?, 0, 0.0)
            }
            Expr::Pochhammer { num, den, n } => {
                let num: Vec<Complex> = num.iter().map(|a| a.to_complex(prec)).collect();
                let den: Vec<Complex> = den.iter().map(|a| a.to_complex(prec)).collect();
                let d = pochhammer_product(&den, *n, ctx);
                if d.is_zero() {
                    return Err(Error::Pole("Pochhammer denominator vanishes".into()));
                }
                done(&pochhammer_product(&num, *n, ctx) / &d, 0, 0.0)
            }
            Expr::Product(factors) => {
                let mut value = Complex::one(prec);
                let mut terms = 0;
                let mut rel_tail = 0.0;
                for f in factors {
                    let r = f.evaluate(ctx)?;
                    let mag = r.value.abs_f64();
                    if mag > 0.0 {
                        rel_tail += r.tail_estimate / mag;
                    }
                    terms += r.terms_used;
                    value *= &r.value;
                }
                let tail = rel_tail * value.abs_f64();
                done(value, terms, tail)
            }
            Expr::Sum(parts) => {
                let mut value = Complex::zero(prec);
                let mut terms = 0;
                let mut tail = 0.0;
                for p in parts {
                    let r = p.evaluate(ctx)?;
                    terms += r.terms_used;
                    tail += r.tail_estimate;
                    value += &r.value;
                }
                done(value, terms, tail)
            }
            Expr::Kernel(k) => kernel_sum(k, ctx, DEFAULT_MAX_TERMS),
        }
    }

    /// Every series (including kernel sums, as their outer `2F1`-shaped
    /// coefficient series) in the expression.
    pub(crate) fn visit_series(&self, out: &mut Vec<ExactSeries>) {
        match self {
            Expr::Series(s) => out.push(s.clone()),
            Expr::Kernel(k) => out.push(k.outer_series()),
            Expr::Product(xs) | Expr::Sum(xs) => xs.iter().for_each(|x| x.visit_series(out)),
            _ => {}
        }
    }

    /// Gamma arguments, Pochhammer denominators and series denominators.
    pub(crate) fn visit_pole_arguments(&self, out: &mut Vec<ExactComplex>) {
        match self {
            Expr::Gamma { num, den } => out.extend(num.iter().chain(den).cloned()),
            Expr::Pochhammer { den, .. } => out.extend(den.iter().cloned()),
            Expr::Series(s) => out.extend(s.denom.iter().cloned()),
            Expr::Kernel(k) => {
                out.push(k.f.clone());
                out.extend(k.h.iter().cloned());
            }
            Expr::Product(xs) | Expr::Sum(xs) => xs.iter().for_each(|x| x.visit_pole_arguments(out)),
            Expr::Const(_) => {}
        }
    }
}

fn simplify_product(factors: &[Expr]) -> Expr {
    let mut constant = ExactComplex::one();
    let mut gamma: Option<(Vec<ExactComplex>, Vec<ExactComplex>)> = None;
    let mut pochhammer: Vec<(u64, Vec<ExactComplex>, Vec<ExactComplex>)> = Vec::new();
    let mut rest = Vec::new();

    let mut queue: Vec<Expr> = factors.iter().map(Expr::simplify).collect();
    queue.reverse();
    while let Some(f) = queue.pop() {
        match f {
            Expr::Const(c) => constant = constant * c,
            Expr::Gamma { num, den } => {
                let g = gamma.get_or_insert_with(Default::default);
                g.0.extend(num);
                g.1.extend(den);
            }
            Expr::Pochhammer { num, den, n } => match pochhammer.iter_mut().find(|p| p.0 == n) {
                Some(p) => {
                    p.1.extend(num);
                    p.2.extend(den);
                }
                None => pochhammer.push((n, num, den)),
            },
            Expr::Product(inner) => queue.extend(inner.into_iter().rev()),
            other => rest.push(other),
        }
    }
    if constant.is_zero() {
        return Expr::Const(constant);
    }

    let mut out = Vec::new();
    if constant != ExactComplex::one() {
        out.push(Expr::Const(constant));
    }
    if let Some((num, den)) = gamma {
        match (Expr::Gamma { num, den }).simplify() {
            Expr::Const(_) => {}
            g => out.push(g),
        }
    }
    for (n, num, den) in pochhammer {
        match (Expr::Pochhammer { num, den, n }).simplify() {
            Expr::Const(_) => {}
            p => out.push(p),
        }
    }
    out.extend(rest);
    match out.len() {
        0 => Expr::Const(ExactComplex::one()),
        1 => out.pop().expect("one factor"),
        _ => Expr::Product(out),
    }
}

fn simplify_sum(terms: &[Expr]) -> Expr {
    let mut constant = ExactComplex::zero();
    let mut out = Vec::new();
    let mut queue: Vec<Expr> = terms.iter().map(Expr::simplify).collect();
    queue.reverse();
    while let Some(t) = queue.pop() {
        match t {
            Expr::Const(c) => constant += &c,
            Expr::Sum(inner) => queue.extend(inner.into_iter().rev()),
            other => out.push(other),
        }
    }
    if !constant.is_zero() {
        out.insert(0, Expr::Const(constant));
    }
    match out.len() {
        0 => Expr::Const(ExactComplex::zero()),
        1 => out.pop().expect("one term"),
        _ => Expr::Sum(out),
    }
}

impl KernelSum {
    /// The series with the outer coefficients `(c)_n (d)_n / ((f)_n n!)` at 1.
    pub fn outer_series(&self) -> ExactSeries {
        ExactSeries::new(vec![self.c.clone(), self.d.clone()], vec![self.f.clone()], ExactComplex::one())
    }

    fn float_parts(&self, prec: u32) -> KernelFloat {
        KernelFloat {
            c: self.c.to_complex(prec),
            d: self.d.to_complex(prec),
            f: self.f.to_complex(prec),
            g: ParameterVector::new(self.g.iter().map(|x| x.to_complex(prec)).collect()),
            h: ParameterVector::new(self.h.iter().map(|x| x.to_complex(prec)).collect()),
            minus_y: (-&self.y).to_complex(prec),
        }
    }
}

struct KernelFloat {
    c: Complex,
    d: Complex,
    f: Complex,
    g: ParameterVector,
    h: ParameterVector,
    minus_y: Complex,
}

impl KernelFloat {
    fn inner(&self, n: u64, ctx: &PrecisionContext) -> Result<Complex> {
        let prec = ctx.bits();
        let mut numer = vec![Complex::from_int(-(n as i64), prec)];
        numer.extend(self.g.iter().cloned());
        let mut denom = vec![self.f.add_u64(n)];
        denom.extend(self.h.iter().cloned());
        let series = HypergeometricSeries::new(numer.into(), denom.into(), self.minus_y.clone());
        Ok(evaluate(&series, ctx, n + 1)?.value)
    }

    /// `coeff_{n+1} / coeff_n = (c+n)(d+n) / ((f+n)(n+1))`.
    fn step(&self, coeff: &Complex, n: u64) -> Complex {
        let prec = coeff.prec();
        let num = &self.c.add_u64(n) * &self.d.add_u64(n);
        let den = &self.f.add_u64(n) * &Complex::from_int(n as i64 + 1, prec);
        &(coeff * &num) / &den
    }
}

fn kernel_context(ctx: &PrecisionContext) -> Result<PrecisionContext> {
    PrecisionContext::new(ctx.working_digits() + KERNEL_GUARD_DIGITS, ctx.target_rel_tol())
}

/// Checks the outer coefficient series converges at 1 and returns its
/// parametric excess `f - c - d`.
fn kernel_excess(k: &KernelSum, ctx: &PrecisionContext) -> Result<Complex> {
    let outer = k.outer_series().to_float(ctx);
    let class = classify(&outer, ctx);
    if !class.tag.is_evaluable() {
        return Err(Error::DivergentSeries(format!("kernel sum: {}", divergence_reason(&outer, &class, ctx))));
    }
    let s = outer.parametric_excess(ctx.bits());
    if k.outer_series().termination().is_none() && s.re.to_f64() < MIN_UNIT_EXCESS {
        return Err(Error::DivergentSeries(format!(
            "kernel sum too close to the convergence edge: Re(f - c - d) = {} < {MIN_UNIT_EXCESS}",
            s.re.to_f64()
        )));
    }
    Ok(s)
}

/// Infinite kernel sum; the outer terms decay like `n^{c+d-f-1}`, so the
/// partial sums are extrapolated with remainder exponent `f - c - d`.
pub fn kernel_sum(k: &KernelSum, ctx: &PrecisionContext, max_terms: u64) -> Result<EvaluationResult> {
    let s = kernel_excess(k, ctx)?;
    let work = kernel_context(ctx)?;
    let parts = k.float_parts(work.bits());
    let excess_re = s.re.to_f64();
    let mut coeff = Complex::one(work.bits());
    let mut next = 0u64;
    extrapolated_sum(
        |n| {
            debug_assert_eq!(n, next);
            if n > 0 {
                coeff = parts.step(&coeff, n - 1);
            }
            next = n + 1;
            if coeff.is_zero() {
                return Ok(coeff.clone());
            }
            Ok(&coeff * &parts.inner(n, &work)?)
        },
        &AlgebraicDecay { exponent: s, alternating: false },
        |n, t| t * n as f64 / excess_re,
        ctx,
        max_terms,
    )
}

/// First `n_terms` terms of a kernel sum, with the integral-comparison tail
/// used for unit-argument partial sums.
pub fn kernel_partial_sum(k: &KernelSum, n_terms: u64, ctx: &PrecisionContext) -> Result<EvaluationResult> {
    let s = kernel_excess(k, ctx)?;
    let work = kernel_context(ctx)?;
    let parts = k.float_parts(work.bits());
    let mut coeff = Complex::one(work.bits());
    let mut sum = Complex::zero(work.bits());
    let mut last = 0.0;
    for n in 0..n_terms {
        last = 0.0;
        if !coeff.is_zero() {
            let t = &coeff * &parts.inner(n, &work)?;
            last = t.abs_f64();
            sum += &t;
        }
        coeff = parts.step(&coeff, n);
    }
    let next = if coeff.is_zero() { 0.0 } else { (&coeff * &parts.inner(n_terms, &work)?).abs_f64() };
    let tail = if n_terms == 0 {
        f64::INFINITY
    } else if last == 0.0 && next == 0.0 {
        0.0
    } else {
        algebraic_tail(last, next, n_terms, s.re.to_f64())
    };
    Ok(EvaluationResult {
        value: sum.with_prec(ctx.bits()),
        terms_used: n_terms,
        tail_estimate: tail,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    #[test]
    fn zero_weight_drops_term() {
        let s1 = Expr::Series(ExactSeries::new(vec![q("1/3"), q("2")], vec![q("5")], q("1")));
        let s2 = Expr::Series(ExactSeries::new(vec![q("1/4")], vec![q("7")], q("1")));
        let e = Expr::Sum(vec![
            Expr::Product(vec![Expr::Const(q("1")), s1.clone()]),
            Expr::Product(vec![Expr::Const(q("0")), s2]),
        ]);
        assert_eq!(e.simplify(), s1.simplify());
    }

    #[test]
    fn gamma_factors_merge_and_cancel() {
        let e = Expr::Product(vec![
            Expr::Gamma { num: vec![q("3/2"), q("1/3")], den: vec![q("2")] },
            Expr::Gamma { num: vec![q("2")], den: vec![q("1/5")] },
        ]);
        assert_eq!(e.simplify(), Expr::Gamma { num: vec![q("1/3"), q("3/2")], den: vec![q("1/5")] });
    }

    #[test]
    fn series_cancellation_keeps_terminating_entry() {
        let s = Expr::Series(ExactSeries::new(vec![q("-2"), q("1/2")], vec![q("-2"), q("1/2")], q("1")));
        match s.simplify() {
            Expr::Series(t) => assert_eq!(t.numer, vec![q("-2")]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_and_float_agree() {
        let e = Expr::Product(vec![
            Expr::Const(q("3/7")),
            Expr::Pochhammer { num: vec![q("1/2")], den: vec![q("5/3+1i")], n: 4 },
            Expr::Series(ExactSeries::new(vec![q("-3"), q("2/9")], vec![q("4/5")], q("1"))),
        ]);
        let ctx = PrecisionContext::default();
        let exact = e.evaluate_exact().unwrap().unwrap().to_complex(ctx.bits());
        let float = e.evaluate(&ctx).unwrap().value;
        assert!((&exact - &float).abs_f64() < 1e-45 * exact.abs_f64());
    }
}
