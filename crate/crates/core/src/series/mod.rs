//! Generalized hypergeometric series `pFq(a; b; z)`: data model,
//! convergence classification and summation.

mod boundary;
mod exact;

pub use boundary::{extrapolated_sum, AlgebraicDecay};
pub use exact::{evaluate_exact, ExactSeries};

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::numerics::{pochhammer_product, Complex, PrecisionContext};

/// Default cap on the number of summed terms.
pub const DEFAULT_MAX_TERMS: u64 = 500_000;
/// Smallest `Re(s)` for which a `z = 1` series is summed.
pub const MIN_UNIT_EXCESS: f64 = 0.25;
/// Smallest `Re(s)` for which a `z = -1` series is summed.
pub const MIN_ALTERNATING_EXCESS: f64 = -0.75;

/// Ordered parameter list `(a_1, ..., a_A)`; empty is allowed.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ParameterVector(pub Vec<Complex>);

impl ParameterVector {
    pub fn new(entries: Vec<Complex>) -> Self {
        Self(entries)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_reals(values: &[f64], prec: u32) -> Self {
        Self(values.iter().map(|&x| Complex::from_f64(x, 0.0, prec)).collect())
    }

    /// Every entry shifted by the integer `k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a.add_int(k)).collect())
    }

    /// `k - entry` for every entry, i.e. the `1-n-(e)` style reflection.
    pub fn reflected(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| (-a).add_int(k)).collect())
    }

    pub fn sum(&self, prec: u32) -> Complex {
        self.0.iter().fold(Complex::zero(prec), |acc, a| &acc + a)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self(self.0.iter().map(|a| a.with_prec(prec)).collect())
    }

    pub fn concat(parts: &[&ParameterVector]) -> Self {
        Self(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }
}

impl Deref for ParameterVector {
    type Target = [Complex];
    fn deref(&self) -> &[Complex] {
        &self.0
    }
}

impl From<Vec<Complex>> for ParameterVector {
    fn from(v: Vec<Complex>) -> Self {
        Self(v)
    }
}

/// `pFq` with numerator parameters `numer`, denominator parameters `denom`
/// and argument `argument`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeometricSeries {
    pub numer: ParameterVector,
    pub denom: ParameterVector,
    pub argument: Complex,
}

impl HypergeometricSeries {
    pub fn new(numer: ParameterVector, denom: ParameterVector, argument: Complex) -> Self {
        Self { numer, denom, argument }
    }

    pub fn p(&self) -> usize {
        self.numer.len()
    }

    pub fn q(&self) -> usize {
        self.denom.len()
    }

    /// `sum(denom) - sum(numer)`.
    pub fn parametric_excess(&self, prec: u32) -> Complex {
        &self.denom.sum(prec) - &self.numer.sum(prec)
    }

    /// The n-th term from Pochhammer products directly, without the recurrence.
    pub fn term(&self, n: u64, ctx: &PrecisionContext) -> Complex {
        let num = pochhammer_product(&self.numer, n, ctx);
        let den = pochhammer_product(&self.denom, n, ctx);
        let fact = pochhammer_product(&[Complex::one(ctx.bits())], n, ctx);
        let zn = self.argument.with_prec(ctx.bits()).powu(n);
        &(&num * &zn) / &(&den * &fact)
    }

    /// Same series with one parameter appended on each side.
    pub fn with_pair(&self, upper: Complex, lower: Complex) -> Self {
        let mut s = self.clone();
        s.numer.0.push(upper);
        s.denom.0.push(lower);
        s
    }
}

/// Smallest `n` such that some numerator entry equals `-n`.
pub fn detect_termination(numer: &[Complex], ctx: &PrecisionContext) -> Option<u64> {
    numer.iter().filter_map(|a| a.nonpositive_integer(ctx.pole_tolerance())).min()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvergenceTag {
    Terminating(u64),
    Entire,
    InsideUnitDisk,
    BoundaryConvergent,
    BoundaryDivergent,
    Divergent,
}

impl ConvergenceTag {
    pub fn is_evaluable(&self) -> bool {
        !matches!(self, Self::BoundaryDivergent | Self::Divergent)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceClass {
    pub tag: ConvergenceTag,
    /// Defined when `p = q + 1`.
    pub parametric_excess: Option<Complex>,
}

/// Where the argument sits relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum UnitPosition {
    Inside,
    One,
    MinusOne,
    OtherOnCircle,
    Outside,
}

fn unit_position(z: &Complex, ctx: &PrecisionContext) -> UnitPosition {
    let tol = ctx.pole_tolerance();
    let one = Complex::one(z.prec());
    if (z - &one).abs_f64() < tol {
        return UnitPosition::One;
    }
    if (z + &one).abs_f64() < tol {
        return UnitPosition::MinusOne;
    }
    let r = z.abs_f64();
    if (r - 1.0).abs() < tol {
        UnitPosition::OtherOnCircle
    } else if r < 1.0 {
        UnitPosition::Inside
    } else {
        UnitPosition::Outside
    }
}

/// Convergence class of a series.
///
/// Termination dominates; `p <= q` is entire; for `p = q + 1` the unit disk
/// interior converges, the boundary is decided by the parametric excess
/// (`Re s > 0` at `z = 1` and elsewhere on the circle, `Re s > -1` at
/// `z = -1`); everything else diverges.
pub fn classify(series: &HypergeometricSeries, ctx: &PrecisionContext) -> ConvergenceClass {
    let (p, q) = (series.p(), series.q());
    let parametric_excess = (p == q + 1).then(|| series.parametric_excess(ctx.bits()));
    let tag = if let Some(n) = detect_termination(&series.numer, ctx) {
        ConvergenceTag::Terminating(n)
    } else if p <= q {
        ConvergenceTag::Entire
    } else if p > q + 1 {
        ConvergenceTag::Divergent
    } else {
        let s = parametric_excess.as_ref().map(|s| s.re.to_f64()).unwrap_or(0.0);
        match unit_position(&series.argument, ctx) {
            UnitPosition::Inside => ConvergenceTag::InsideUnitDisk,
            UnitPosition::Outside => ConvergenceTag::Divergent,
            UnitPosition::MinusOne if s > -1.0 => ConvergenceTag::BoundaryConvergent,
            UnitPosition::One | UnitPosition::OtherOnCircle if s > 0.0 => ConvergenceTag::BoundaryConvergent,
            _ => ConvergenceTag::BoundaryDivergent,
        }
    };
    ConvergenceClass { tag, parametric_excess }
}

/// Human-readable reason a non-evaluable class was assigned.
pub fn divergence_reason(series: &HypergeometricSeries, class: &ConvergenceClass, ctx: &PrecisionContext) -> String {
    let (p, q) = (series.p(), series.q());
    match class.tag {
        ConvergenceTag::BoundaryDivergent => {
            let s = class.parametric_excess.as_ref().map(|s| s.re.to_f64()).unwrap_or(f64::NAN);
            match unit_position(&series.argument, ctx) {
                UnitPosition::MinusOne => {
                    format!("boundary divergent: Re(s) = {s} <= -1 at z = -1")
                }
                UnitPosition::One => format!("boundary divergent: Re(s) = {s} <= 0 at z = 1"),
                _ => format!("boundary divergent: Re(s) = {s} <= 0 on |z| = 1"),
            }
        }
        ConvergenceTag::Divergent if p > q + 1 => {
            format!("divergent: p = {p} exceeds q + 1 = {} for a nonterminating series", q + 1)
        }
        ConvergenceTag::Divergent => {
            format!("divergent: |z| = {} > 1 with p = q + 1", series.argument.abs_f64())
        }
        _ => "convergent".to_string(),
    }
}

/// Outcome of a summation.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationResult {
    pub value: Complex,
    pub terms_used: u64,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl EvaluationResult {
    fn exact(value: Complex, terms_used: u64) -> Self {
        Self { value, terms_used, tail_estimate: 0.0, converged: true }
    }
}

/// Denominator entries on nonpositive integers are legal only when the
/// series terminates no later than the pole.
fn check_denominator_poles(
    series: &HypergeometricSeries,
    termination: Option<u64>,
    ctx: &PrecisionContext,
) -> Result<()> {
    for b in series.denom.iter() {
        if let Some(m) = b.nonpositive_integer(ctx.pole_tolerance()) {
            match termination {
                Some(n) if n <= m => {}
                _ => return Err(Error::Pole(format!("denominator parameter -{m} is not shielded by termination"))),
            }
        }
    }
    Ok(())
}

/// Successive terms `t_n` via `t_{n+1} = t_n prod(a+n)/prod(b+n) z/(n+1)`.
pub(crate) struct TermRecurrence {
    numer: Vec<Complex>,
    denom: Vec<Complex>,
    argument: Complex,
    index: u64,
    term: Complex,
}

impl TermRecurrence {
    pub(crate) fn new(series: &HypergeometricSeries, prec: u32) -> Self {
        Self {
            numer: series.numer.iter().map(|a| a.with_prec(prec)).collect(),
            denom: series.denom.iter().map(|b| b.with_prec(prec)).collect(),
            argument: series.argument.with_prec(prec),
            index: 0,
            term: Complex::one(prec),
        }
    }

    /// Current term `t_index`.
    pub(crate) fn current(&self) -> &Complex {
        &self.term
    }

    pub(crate) fn index(&self) -> u64 {
        self.index
    }

    pub(crate) fn advance(&mut self) {
        let prec = self.term.prec();
        let mut num = self.argument.clone();
        for a in &mut self.numer {
            num *= a;
            *a = a.add_int(1);
        }
        let mut den = Complex::from_int(self.index as i64 + 1, prec);
        for b in &mut self.denom {
            den *= b;
            *b = b.add_int(1);
        }
        self.term = &(&self.term * &num) / &den;
        self.index += 1;
    }
}

/// Sums a convergent series.
///
/// Terminating series are summed to their last nonzero term. Off the unit
/// circle the stopping rule is a geometric tail bound below
/// `target_rel_tol` for three consecutive terms. At `z = +-1` partial sums
/// are extrapolated along the known algebraic decay of the terms.
pub fn evaluate(series: &HypergeometricSeries, ctx: &PrecisionContext, max_terms: u64) -> Result<EvaluationResult> {
    let prec = ctx.bits();
    if series.argument.is_zero() {
        return Ok(EvaluationResult::exact(Complex::one(prec), 1));
    }
    let class = classify(series, ctx);
    let termination = match class.tag {
        ConvergenceTag::Terminating(n) => Some(n),
        _ => None,
    };
    check_denominator_poles(series, termination, ctx)?;

    match class.tag {
        ConvergenceTag::Terminating(n) => {
            if n + 1 > max_terms {
                return Err(Error::NoConvergence { terms_used: max_terms, tail_estimate: f64::INFINITY });
            }
            let mut terms = TermRecurrence::new(series, prec);
            let mut sum = Complex::zero(prec);
            for _ in 0..n {
                sum += terms.current();
                terms.advance();
            }
            sum += terms.current();
            finite(EvaluationResult::exact(sum, n + 1))
        }
        ConvergenceTag::Entire | ConvergenceTag::InsideUnitDisk => {
            let ratio_floor = if series.p() == series.q() + 1 { series.argument.abs_f64() } else { 0.0 };
            sum_geometric(series, ctx, max_terms, ratio_floor)
        }
        ConvergenceTag::BoundaryConvergent => {
            let s = class.parametric_excess.expect("boundary class implies p = q + 1");
            match unit_position(&series.argument, ctx) {
                UnitPosition::One => {
                    if s.re.to_f64() < MIN_UNIT_EXCESS {
                        return Err(Error::DivergentSeries(format!(
                            "too close to the convergence edge: Re(s) = {} < {MIN_UNIT_EXCESS} at z = 1",
                            s.re.to_f64()
                        )));
                    }
                    sum_unit(series, &s, false, ctx, max_terms)
                }
                UnitPosition::MinusOne => {
                    if s.re.to_f64() < MIN_ALTERNATING_EXCESS {
                        return Err(Error::DivergentSeries(format!(
                            "too close to the convergence edge: Re(s) = {} < {MIN_ALTERNATING_EXCESS} at z = -1",
                            s.re.to_f64()
                        )));
                    }
                    sum_unit(series, &s.add_int(1), true, ctx, max_terms)
                }
                _ => sum_algebraic_direct(series, &s, ctx, max_terms),
            }
        }
        ConvergenceTag::BoundaryDivergent | ConvergenceTag::Divergent => {
            Err(Error::DivergentSeries(divergence_reason(series, &class, ctx)))
        }
    }
}

fn finite(result: EvaluationResult) -> Result<EvaluationResult> {
    if result.value.is_finite() {
        Ok(result)
    } else {
        Err(Error::NonFinite("series evaluation"))
    }
}

fn sum_geometric(
    series: &HypergeometricSeries,
    ctx: &PrecisionContext,
    max_terms: u64,
    ratio_floor: f64,
) -> Result<EvaluationResult> {
    let prec = ctx.bits();
    let tol = ctx.target_rel_tol();
    let floor = ctx.absolute_floor();
    let mut terms = TermRecurrence::new(series, prec);
    let mut sum = Complex::zero(prec);
    let mut streak = 0;
    let mut tail = f64::INFINITY;
    while terms.index() < max_terms {
        sum += terms.current();
        let last = terms.current().abs_f64();
        terms.advance();
        let next = terms.current().abs_f64();
        tail = geometric_tail(last, next, ratio_floor);
        if tail <= tol * sum.abs_f64().max(floor) {
            streak += 1;
            if streak == 3 {
                return finite(EvaluationResult {
                    value: sum,
                    terms_used: terms.index(),
                    tail_estimate: tail,
                    converged: true,
                });
            }
        } else {
            streak = 0;
        }
    }
    Err(Error::NoConvergence { terms_used: max_terms, tail_estimate: tail })
}

/// `|t_N| r / (1 - r)` with `r` the observed ratio `|t_{N+1} / t_N|`.
fn geometric_tail(last: f64, next: f64, ratio_floor: f64) -> f64 {
    if last == 0.0 {
        return 0.0;
    }
    let r = (next / last).max(ratio_floor);
    if r >= 1.0 {
        f64::INFINITY
    } else {
        last * r / (1.0 - r)
    }
}

/// `|t_N| N / Re(s)`: integral comparison for terms decaying like `n^{-1-s}`.
/// Integral-comparison tail `|t_N| N / s` from the last included term
/// `t_N`, with `s` capped by the decay rate observed between `t_N` and the
/// next term so that a slower pre-asymptotic decay still gives a bound.
pub(crate) fn algebraic_tail(last: f64, next: f64, n: u64, excess_re: f64) -> f64 {
    let n = n as f64;
    let local = if last > 0.0 && next > 0.0 { -n * (next / last).ln() - 1.0 } else { excess_re };
    let s = excess_re.min(local);
    if s <= 0.0 {
        f64::INFINITY
    } else {
        last * n / s
    }
}

fn sum_unit(
    series: &HypergeometricSeries,
    sigma: &Complex,
    alternating: bool,
    ctx: &PrecisionContext,
    max_terms: u64,
) -> Result<EvaluationResult> {
    let guard = ctx.bits() + boundary::GUARD_BITS;
    let mut terms = TermRecurrence::new(series, guard);
    let excess_re = if alternating { sigma.re.to_f64() - 1.0 } else { sigma.re.to_f64() };
    let decay = AlgebraicDecay { exponent: sigma.clone(), alternating };
    extrapolated_sum(
        |_| {
            let t = terms.current().clone();
            terms.advance();
            Ok(t)
        },
        &decay,
        |n, next_term| {
            if alternating {
                next_term
            } else if excess_re > 0.0 {
                next_term * n as f64 / excess_re
            } else {
                f64::INFINITY
            }
        },
        ctx,
        max_terms,
    )
}

fn sum_algebraic_direct(
    series: &HypergeometricSeries,
    s: &Complex,
    ctx: &PrecisionContext,
    max_terms: u64,
) -> Result<EvaluationResult> {
    let prec = ctx.bits();
    let tol = ctx.target_rel_tol();
    let floor = ctx.absolute_floor();
    let excess_re = s.re.to_f64();
    let mut terms = TermRecurrence::new(series, prec);
    let mut sum = Complex::zero(prec);
    let mut streak = 0;
    let mut tail = f64::INFINITY;
    while terms.index() < max_terms {
        sum += terms.current();
        let last = terms.current().abs_f64();
        terms.advance();
        tail = algebraic_tail(last, terms.current().abs_f64(), terms.index(), excess_re);
        if tail <= tol * sum.abs_f64().max(floor) {
            streak += 1;
            if streak == 3 {
                return finite(EvaluationResult {
                    value: sum,
                    terms_used: terms.index(),
                    tail_estimate: tail,
                    converged: true,
                });
            }
        } else {
            streak = 0;
        }
    }
    Err(Error::NoConvergence { terms_used: max_terms, tail_estimate: tail })
}

/// Plain partial sum of the first `n_terms` terms with the tail estimate of
/// the class (geometric off the circle, integral comparison on it).
pub fn partial_sum(series: &HypergeometricSeries, n_terms: u64, ctx: &PrecisionContext) -> Result<EvaluationResult> {
    let class = classify(series, ctx);
    if !class.tag.is_evaluable() {
        return Err(Error::DivergentSeries(divergence_reason(series, &class, ctx)));
    }
    let prec = ctx.bits();
    let mut terms = TermRecurrence::new(series, prec);
    let mut sum = Complex::zero(prec);
    let mut last = 0.0;
    for _ in 0..n_terms {
        sum += terms.current();
        last = terms.current().abs_f64();
        terms.advance();
    }
    let next = terms.current().abs_f64();
    let tail = match (&class.tag, &class.parametric_excess) {
        (ConvergenceTag::Terminating(n), _) if n_terms > *n => 0.0,
        (ConvergenceTag::BoundaryConvergent, Some(s)) => algebraic_tail(last, next, n_terms, s.re.to_f64()),
        _ => {
            let floor = if series.p() == series.q() + 1 { series.argument.abs_f64() } else { 0.0 };
            geometric_tail(last, next, floor)
        }
    };
    Ok(EvaluationResult { value: sum, terms_used: n_terms, tail_estimate: tail, converged: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn pv(v: &[f64]) -> ParameterVector {
        ParameterVector::from_reals(v, ctx().bits())
    }

    fn z(re: f64) -> Complex {
        Complex::from_f64(re, 0.0, ctx().bits())
    }

    fn series(num: &[f64], den: &[f64], arg: f64) -> HypergeometricSeries {
        HypergeometricSeries::new(pv(num), pv(den), z(arg))
    }

    fn value(s: &HypergeometricSeries) -> Complex {
        evaluate(s, &ctx(), DEFAULT_MAX_TERMS).unwrap().value
    }

    fn rel(a: &Complex, b: &Complex) -> f64 {
        (a - b).abs_f64() / b.abs_f64()
    }

    #[test]
    fn termination_detection() {
        let c = ctx();
        assert_eq!(detect_termination(&pv(&[-3.0, 0.5]), &c), Some(3));
        assert_eq!(detect_termination(&pv(&[1.5, 2.5]), &c), None);
        assert_eq!(detect_termination(&pv(&[-5.0, -2.0]), &c), Some(2));
        assert_eq!(detect_termination(&pv(&[-0.5]), &c), None);
        assert_eq!(detect_termination(&pv(&[0.0]), &c), Some(0));
    }

    #[test]
    fn classification_examples() {
        let c = ctx();
        assert_eq!(classify(&series(&[0.3, 0.4], &[2.0], 0.5), &c).tag, ConvergenceTag::InsideUnitDisk);
        let k = classify(&series(&[1.0, 1.0, 1.0], &[3.0, 3.0], 1.0), &c);
        assert_eq!(k.tag, ConvergenceTag::BoundaryConvergent);
        assert!(rel(k.parametric_excess.as_ref().unwrap(), &z(3.0)) < 1e-45);
        // s = -1.2 at z = -1
        let k = classify(&series(&[1.0, 1.0, 1.0, 1.0, 1.2], &[1.0, 1.0, 1.0, 1.0], -1.0), &c);
        assert_eq!(k.tag, ConvergenceTag::BoundaryDivergent);
        assert_eq!(classify(&series(&[1.0], &[2.0, 3.0], 40.0), &c).tag, ConvergenceTag::Entire);
        assert_eq!(classify(&series(&[1.0, 1.0, 1.0], &[2.0], 0.1), &c).tag, ConvergenceTag::Divergent);
        assert_eq!(classify(&series(&[1.0, 1.0], &[2.0], 1.5), &c).tag, ConvergenceTag::Divergent);
        assert_eq!(classify(&series(&[-2.0, 1.0, 1.0], &[2.0], 7.0), &c).tag, ConvergenceTag::Terminating(2));
        assert_eq!(classify(&series(&[1.0, 1.0], &[2.0], 1.0), &c).tag, ConvergenceTag::BoundaryDivergent);
        assert_eq!(classify(&series(&[1.0, 1.0], &[1.5], -1.0), &c).tag, ConvergenceTag::BoundaryConvergent);
    }

    #[test]
    fn zero_argument_is_one() {
        let r = evaluate(&series(&[1.0, 1.0, 1.0], &[2.0], 0.0), &ctx(), 10).unwrap();
        assert_eq!(r.value, Complex::one(ctx().bits()));
        assert_eq!(r.terms_used, 1);
    }

    #[test]
    fn inside_disk_closed_forms() {
        let two_ln2 = z(2.0).ln().mul_int(2);
        let got = value(&series(&[1.0, 1.0], &[2.0], 0.5));
        assert!(rel(&got, &two_ln2) < 1e-30);
        let got = value(&series(&[2.0], &[], 0.25));
        assert!(rel(&got, &(&z(16.0) / &z(9.0))) < 1e-30);
    }

    #[test]
    fn entire_series_exp() {
        let got = value(&series(&[], &[], 3.5));
        assert!(rel(&got, &z(3.5).exp()) < 1e-30);
        let got = value(&series(&[], &[], -20.0));
        assert!(rel(&got, &z(-20.0).exp()) < 1e-25);
    }

    #[test]
    fn terminating_sum_at_one() {
        let r = evaluate(&series(&[-2.0, 3.0], &[4.0], 1.0), &ctx(), 100).unwrap();
        assert!(rel(&r.value, &(&z(1.0) / &z(10.0))) < 1e-45);
        assert_eq!(r.terms_used, 3);
        assert_eq!(r.tail_estimate, 0.0);
    }

    #[test]
    fn shielded_and_unshielded_poles() {
        // 2F1(-2, 1; -3; z) is a legal polynomial; 2F1(-4, 1; -3; z) is not.
        assert!(evaluate(&series(&[-2.0, 1.0], &[-3.0], 0.5), &ctx(), 100).is_ok());
        assert!(evaluate(&series(&[-3.0, 1.0], &[-3.0], 0.5), &ctx(), 100).is_ok());
        assert!(matches!(evaluate(&series(&[-4.0, 1.0], &[-3.0], 0.5), &ctx(), 100), Err(Error::Pole(_))));
        assert!(matches!(evaluate(&series(&[1.0], &[-1.0], 0.5), &ctx(), 100), Err(Error::Pole(_))));
    }

    #[test]
    fn divergent_and_slow_series_are_refused() {
        let e = evaluate(&series(&[1.0, 1.0, 1.0], &[2.0], 1.0), &ctx(), 100).unwrap_err();
        assert!(matches!(e, Error::DivergentSeries(ref m) if m.contains("p = 3")), "{e}");
        let e = evaluate(&series(&[1.0, 1.0], &[2.1], 1.0), &ctx(), 100).unwrap_err();
        assert!(matches!(e, Error::DivergentSeries(ref m) if m.contains("edge")), "{e}");
    }

    #[test]
    fn max_terms_is_enforced() {
        let e = evaluate(&series(&[1.0], &[], 0.99), &ctx(), 50).unwrap_err();
        assert!(matches!(e, Error::NoConvergence { terms_used: 50, .. }));
    }

    #[test]
    fn recurrence_matches_direct_terms() {
        let s = HypergeometricSeries::new(
            ParameterVector(vec![Complex::from_f64(0.7, 0.2, ctx().bits()), z(-1.3)]),
            pv(&[2.2]),
            Complex::from_f64(0.4, -0.3, ctx().bits()),
        );
        let mut rec = TermRecurrence::new(&s, ctx().bits());
        for n in 0..=50 {
            let direct = s.term(n, &ctx());
            assert!(rel(rec.current(), &direct) < 1e-44, "term {n}");
            rec.advance();
        }
    }

    #[test]
    fn partial_sum_reports_tail() {
        let s = series(&[1.0, 1.0], &[3.5], 1.0);
        let p = partial_sum(&s, 100, &ctx()).unwrap();
        assert_eq!(p.terms_used, 100);
        assert!(p.tail_estimate > 0.0 && p.tail_estimate.is_finite());
    }
}
