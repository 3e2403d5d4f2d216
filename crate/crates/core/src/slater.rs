//! The general double-series transformation
//!
//! ```text
//! sum_n ((a))_n ((d))_n ((v))_2n / (((h))_n ((g))_n ((f))_2n n!) x^n y^n z^2n
//!     * F[(u), (d)+n, (v)+2n; (e), (g)+n, (f)+2n; xwz]
//!   = sum_n ((d))_n ((u))_n ((v))_n / (((e))_n ((f))_n ((g))_n n!) (xwz)^n
//!     * F[-n, (a), 1-n-(e), (v)+n; (h), 1-n-(u), (f)+n; (-1)^(1+E-U) yz/w]
//! ```
//!
//! with both sides summed independently, and its specialization to the
//! `2F1`-kernel transformation.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::{pochhammer, pochhammer_product, Complex, PrecisionContext};
use crate::report::{relative_difference, Verdict, VerificationReport};
use crate::series::{classify, divergence_reason, evaluate, HypergeometricSeries, ParameterVector};

/// Default relative size below which an outer term counts as negligible.
pub const DEFAULT_OUTER_TOL: f64 = 1e-25;
/// Hard cap on outer terms per side.
pub const MAX_OUTER_TERMS: u64 = 400;
/// Extra decimal digits carried through the outer sums and the terminating
/// inner polynomials.
const GUARD_DIGITS: u32 = 20;
/// Cap on terms for each nonterminating inner series.
const INNER_MAX_TERMS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SlaterConfiguration {
    pub a: ParameterVector,
    pub d: ParameterVector,
    pub v: ParameterVector,
    pub h: ParameterVector,
    pub g: ParameterVector,
    pub f: ParameterVector,
    pub u: ParameterVector,
    pub e: ParameterVector,
    pub x: Complex,
    pub y: Complex,
    pub z: Complex,
    pub w: Complex,
}

/// Summary of the inner-series evaluations behind one side.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerSummary {
    pub evaluations: u64,
    pub min_terms: u64,
    pub max_terms: u64,
    pub worst_tail: f64,
}

impl InnerSummary {
    fn new() -> Self {
        Self { evaluations: 0, min_terms: u64::MAX, max_terms: 0, worst_tail: 0.0 }
    }

    fn record(&mut self, terms: u64, tail: f64) {
        self.evaluations += 1;
        self.min_terms = self.min_terms.min(terms);
        self.max_terms = self.max_terms.max(terms);
        self.worst_tail = self.worst_tail.max(tail);
    }

    fn finish(mut self) -> Self {
        if self.evaluations == 0 {
            self.min_terms = 0;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlaterSideResult {
    pub value: Complex,
    pub outer_terms: u64,
    pub inner: InnerSummary,
}

impl SlaterConfiguration {
    /// All sequences empty, all scalars zero.
    pub fn empty(prec: u32) -> Self {
        let zero = Complex::zero(prec);
        Self {
            a: ParameterVector::empty(),
            d: ParameterVector::empty(),
            v: ParameterVector::empty(),
            h: ParameterVector::empty(),
            g: ParameterVector::empty(),
            f: ParameterVector::empty(),
            u: ParameterVector::empty(),
            e: ParameterVector::empty(),
            x: zero.clone(),
            y: zero.clone(),
            z: zero.clone(),
            w: zero,
        }
    }

    /// `(-1)^(1 + E - U)`.
    pub fn sign(&self) -> i64 {
        if (1 + self.e.len() + self.u.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    fn sequences(&self) -> [(&'static str, &ParameterVector); 8] {
        [
            ("a", &self.a),
            ("d", &self.d),
            ("v", &self.v),
            ("h", &self.h),
            ("g", &self.g),
            ("f", &self.f),
            ("u", &self.u),
            ("e", &self.e),
        ]
    }

    /// Rejects denominator sequences with entries on nonpositive integers.
    pub fn validate(&self, ctx: &PrecisionContext) -> Result<()> {
        for (name, seq) in [("h", &self.h), ("g", &self.g), ("f", &self.f), ("e", &self.e)] {
            for (i, p) in seq.iter().enumerate() {
                if let Some(m) = p.nonpositive_integer(ctx.pole_tolerance()) {
                    return Err(Error::Pole(format!("{name}{} = -{m} is a denominator pole", i + 1)));
                }
            }
        }
        let scalars = [&self.x, &self.y, &self.z, &self.w];
        if !scalars.iter().all(|s| s.is_finite()) {
            return Err(Error::NonFinite("configuration scalar"));
        }
        // With yz = 0 every right-side term but the first carries a power of
        // w, so w = 0 is the harmless limit; otherwise yz/w is undefined.
        if self.w.is_zero() && !(&self.y * &self.z).is_zero() {
            return Err(Error::InvalidConfiguration("w must be nonzero".into()));
        }
        Ok(())
    }

    /// Left-side inner series at outer index `n`.
    pub fn lhs_inner_series(&self, n: u64) -> HypergeometricSeries {
        let n = n as i64;
        let numer = ParameterVector::concat(&[&self.u, &self.d.shifted(n), &self.v.shifted(2 * n)]);
        let denom = ParameterVector::concat(&[&self.e, &self.g.shifted(n), &self.f.shifted(2 * n)]);
        let argument = &(&self.x * &self.w) * &self.z;
        HypergeometricSeries::new(numer, denom, argument)
    }

    /// Right-side terminating inner series of degree `n`.
    pub fn rhs_inner_series(&self, n: u64) -> Result<HypergeometricSeries> {
        if self.w.is_zero() {
            return Err(Error::InvalidConfiguration("w must be nonzero".into()));
        }
        let prec = self.x.prec();
        let k = n as i64;
        let minus_n = ParameterVector::new(vec![Complex::from_int(-k, prec)]);
        let numer = ParameterVector::concat(&[&minus_n, &self.a, &self.e.reflected(1 - k), &self.v.shifted(k)]);
        let denom = ParameterVector::concat(&[&self.h, &self.u.reflected(1 - k), &self.f.shifted(k)]);
        let argument = (&(&self.y * &self.z) / &self.w).mul_int(self.sign());
        Ok(HypergeometricSeries::new(numer, denom, argument))
    }

    /// Flattened `name -> [re, im]` view, sequence entries numbered from 1.
    pub fn assignment(&self) -> BTreeMap<String, [f64; 2]> {
        let mut out = BTreeMap::new();
        for (name, seq) in self.sequences() {
            for (i, p) in seq.iter().enumerate() {
                out.insert(format!("{name}{}", i + 1), p.to_f64_pair());
            }
        }
        for (name, s) in [("x", &self.x), ("y", &self.y), ("z", &self.z), ("w", &self.w)] {
            out.insert(name.to_string(), s.to_f64_pair());
        }
        out
    }

    /// Seeded draw from the envelope where both sides converge safely:
    /// sequence lengths at most 2, real parameters in `[0.1, 2.5]`, complex
    /// scalars of modulus at most 0.6 (`|w| >= 0.05`).
    ///
    /// Lengths are redrawn until the double series has no factorial growth
    /// in either summation index.
    pub fn sample_envelope(seed: u64, prec: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lens = loop {
            let l: [usize; 8] = std::array::from_fn(|_| rng.gen_range(0..=2));
            let [a, d, v, h, g, f, u, e] = l.map(|x| x as i64);
            let outer = a + d + 2 * v - h - g - 2 * f - 1;
            let inner = u + d + v - e - g - f - 1;
            if outer <= 0 && inner <= 0 {
                break l;
            }
        };
        let mut seq = |len: usize| {
            ParameterVector::new((0..len).map(|_| Complex::from_f64(rng.gen_range(0.1..2.5), 0.0, prec)).collect())
        };
        let [la, ld, lv, lh, lg, lf, lu, le] = lens;
        let (a, d, v, h, g, f, u, e) = (seq(la), seq(ld), seq(lv), seq(lh), seq(lg), seq(lf), seq(lu), seq(le));
        let mut scalar = |min: f64| {
            let r: f64 = rng.gen_range(min..0.6);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex::from_f64(r * t.cos(), r * t.sin(), prec)
        };
        let (x, y, z, w) = (scalar(0.0), scalar(0.0), scalar(0.0), scalar(0.05));
        Self { a, d, v, h, g, f, u, e, x, y, z, w }
    }
}

fn guarded(ctx: &PrecisionContext) -> Result<PrecisionContext> {
    PrecisionContext::new(ctx.working_digits() + GUARD_DIGITS, ctx.target_rel_tol())
}

/// `prod (p + shift)` over a parameter list.
fn shifted_product(params: &[Complex], shift: u64, prec: u32) -> Complex {
    params.iter().fold(Complex::one(prec), |acc, p| &acc * &p.add_u64(shift))
}

/// Running sum with the three-consecutive-negligible-terms stop rule.
struct OuterSum {
    sum: Complex,
    streak: u32,
    last_rel: f64,
    tol: f64,
    floor: f64,
}

impl OuterSum {
    fn new(prec: u32, tol: f64, floor: f64) -> Self {
        Self { sum: Complex::zero(prec), streak: 0, last_rel: f64::INFINITY, tol, floor }
    }

    /// Adds a term; true once three consecutive terms were negligible.
    fn push(&mut self, term: &Complex) -> bool {
        self.sum += term;
        let scale = self.sum.abs_f64().max(self.floor);
        self.last_rel = term.abs_f64() / scale;
        if self.last_rel < self.tol {
            self.streak += 1;
        } else {
            self.streak = 0;
        }
        self.streak >= 3
    }
}

/// Left side: outer coefficients by recurrence, inner series by
/// [`evaluate`] at argument `xwz`.
pub fn slater_lhs(cfg: &SlaterConfiguration, ctx: &PrecisionContext, outer_tol: f64) -> Result<SlaterSideResult> {
    cfg.validate(ctx)?;
    let work = guarded(ctx)?;
    let prec = work.bits();
    let cfg_prec = with_prec(cfg, prec);
    let step = &(&(&cfg_prec.x * &cfg_prec.y) * &cfg_prec.z) * &cfg_prec.z;

    let mut coeff = Complex::one(prec);
    let mut outer = OuterSum::new(prec, outer_tol, ctx.absolute_floor());
    let mut inner = InnerSummary::new();
    for n in 0..MAX_OUTER_TERMS {
        let term = if coeff.is_zero() {
            coeff.clone()
        } else {
            let series = cfg_prec.lhs_inner_series(n);
            let class = classify(&series, &work);
            if !class.tag.is_evaluable() {
                return Err(Error::DivergentInner { index: n, reason: divergence_reason(&series, &class, &work) });
            }
            let r = evaluate(&series, &work, INNER_MAX_TERMS).map_err(|e| match e {
                Error::DivergentSeries(reason) => Error::DivergentInner { index: n, reason },
                other => other,
            })?;
            inner.record(r.terms_used, r.tail_estimate);
            &coeff * &r.value
        };
        if outer.push(&term) {
            return finish(outer.sum, n + 1, inner, ctx);
        }

        let mut num = step.clone();
        num *= &shifted_product(&cfg_prec.a, n, prec);
        num *= &shifted_product(&cfg_prec.d, n, prec);
        num *= &shifted_product(&cfg_prec.v, 2 * n, prec);
        num *= &shifted_product(&cfg_prec.v, 2 * n + 1, prec);
        let mut den = Complex::from_int(n as i64 + 1, prec);
        den *= &shifted_product(&cfg_prec.h, n, prec);
        den *= &shifted_product(&cfg_prec.g, n, prec);
        den *= &shifted_product(&cfg_prec.f, 2 * n, prec);
        den *= &shifted_product(&cfg_prec.f, 2 * n + 1, prec);
        coeff = &(&coeff * &num) / &den;
    }
    Err(Error::NoConvergence { terms_used: MAX_OUTER_TERMS, tail_estimate: outer.last_rel })
}

/// Right side: outer coefficients by recurrence, each terminating inner
/// polynomial summed in full (`n + 1` terms).
pub fn slater_rhs(cfg: &SlaterConfiguration, ctx: &PrecisionContext, outer_tol: f64) -> Result<SlaterSideResult> {
    cfg.validate(ctx)?;
    if cfg.w.is_zero() {
        return Ok(SlaterSideResult {
            value: Complex::one(ctx.bits()),
            outer_terms: 1,
            inner: InnerSummary::new().finish(),
        });
    }
    let work = guarded(ctx)?;
    let prec = work.bits();
    let cfg_prec = with_prec(cfg, prec);
    let step = &(&cfg_prec.x * &cfg_prec.w) * &cfg_prec.z;

    let mut coeff = Complex::one(prec);
    let mut outer = OuterSum::new(prec, outer_tol, ctx.absolute_floor());
    let mut inner = InnerSummary::new();
    for n in 0..MAX_OUTER_TERMS {
        let term = if coeff.is_zero() {
            coeff.clone()
        } else {
            let series = cfg_prec.rhs_inner_series(n)?;
            let r = evaluate(&series, &work, n + 1)?;
            inner.record(r.terms_used, r.tail_estimate);
            &coeff * &r.value
        };
        if outer.push(&term) {
            return finish(outer.sum, n + 1, inner, ctx);
        }

        let mut num = step.clone();
        num *= &shifted_product(&cfg_prec.d, n, prec);
        num *= &shifted_product(&cfg_prec.u, n, prec);
        num *= &shifted_product(&cfg_prec.v, n, prec);
        let mut den = Complex::from_int(n as i64 + 1, prec);
        den *= &shifted_product(&cfg_prec.e, n, prec);
        den *= &shifted_product(&cfg_prec.f, n, prec);
        den *= &shifted_product(&cfg_prec.g, n, prec);
        coeff = &(&coeff * &num) / &den;
    }
    Err(Error::NoConvergence { terms_used: MAX_OUTER_TERMS, tail_estimate: outer.last_rel })
}

fn with_prec(cfg: &SlaterConfiguration, prec: u32) -> SlaterConfiguration {
    SlaterConfiguration {
        a: cfg.a.with_prec(prec),
        d: cfg.d.with_prec(prec),
        v: cfg.v.with_prec(prec),
        h: cfg.h.with_prec(prec),
        g: cfg.g.with_prec(prec),
        f: cfg.f.with_prec(prec),
        u: cfg.u.with_prec(prec),
        e: cfg.e.with_prec(prec),
        x: cfg.x.with_prec(prec),
        y: cfg.y.with_prec(prec),
        z: cfg.z.with_prec(prec),
        w: cfg.w.with_prec(prec),
    }
}

fn finish(sum: Complex, outer_terms: u64, inner: InnerSummary, ctx: &PrecisionContext) -> Result<SlaterSideResult> {
    if !sum.is_finite() {
        return Err(Error::NonFinite("outer sum"));
    }
    Ok(SlaterSideResult { value: sum.with_prec(ctx.bits()), outer_terms, inner: inner.finish() })
}

/// Sums both sides and compares them with `|L - R| / max(|L|, |R|, 1)`.
/// Evaluation errors give an inconclusive report.
pub fn verify_slater(cfg: &SlaterConfiguration, ctx: &PrecisionContext, tol: f64) -> VerificationReport {
    let outer_tol = DEFAULT_OUTER_TOL.max(ctx.target_rel_tol());
    let assignment = cfg.assignment();
    let lhs = match slater_lhs(cfg, ctx, outer_tol) {
        Ok(r) => r,
        Err(e) => {
            return VerificationReport::inconclusive(
                "slater",
                assignment,
                ctx.working_digits(),
                format!("left side: {e}"),
            )
        }
    };
    let rhs = match slater_rhs(cfg, ctx, outer_tol) {
        Ok(r) => r,
        Err(e) => {
            return VerificationReport::inconclusive(
                "slater",
                assignment,
                ctx.working_digits(),
                format!("right side: {e}"),
            )
        }
    };
    let (abs_err, rel_err) = relative_difference(&lhs.value, &rhs.value, 1.0);
    VerificationReport {
        identity: "slater".into(),
        assignment,
        lhs: Some(lhs.value),
        rhs: Some(rhs.value),
        abs_err,
        rel_err,
        terms_lhs: lhs.outer_terms,
        terms_rhs: rhs.outer_terms,
        digits: ctx.working_digits(),
        exact: false,
        verdict: if rel_err <= tol { Verdict::Pass } else { Verdict::Fail },
        reason: None,
    }
}

/// Configuration reproducing the `2F1`-kernel transformation: `(a) <- (g)`,
/// `(h) <- (h)`, `(d) <- (c, d)`, `(f) <- (f)`, the rest empty, `w = z = 1`.
pub fn exton_specialize(
    g_seq: &ParameterVector,
    h_seq: &ParameterVector,
    c: &Complex,
    d: &Complex,
    f: &Complex,
    x: &Complex,
    y: &Complex,
) -> SlaterConfiguration {
    let prec = x.prec();
    SlaterConfiguration {
        a: g_seq.clone(),
        d: ParameterVector::new(vec![c.clone(), d.clone()]),
        f: ParameterVector::new(vec![f.clone()]),
        h: h_seq.clone(),
        x: x.clone(),
        y: y.clone(),
        z: Complex::one(prec),
        w: Complex::one(prec),
        ..SlaterConfiguration::empty(prec)
    }
}

/// Inputs of the `2F1`-kernel transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtonParameters {
    pub g: ParameterVector,
    pub h: ParameterVector,
    pub c: Complex,
    pub d: Complex,
    pub f: Complex,
    pub x: Complex,
    pub y: Complex,
}

impl ExtonParameters {
    pub fn specialize(&self) -> SlaterConfiguration {
        exton_specialize(&self.g, &self.h, &self.c, &self.d, &self.f, &self.x, &self.y)
    }

    /// Seeded draw: `G <= H + 1 <= 3`, real parameters in `[0.1, 2.5]`,
    /// complex `x`, `y` of modulus at most 0.6.
    pub fn sample(seed: u64, prec: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lh = rng.gen_range(0..=2usize);
        let lg = rng.gen_range(0..=(lh + 1).min(2));
        let mut real = || Complex::from_f64(rng.gen_range(0.1..2.5), 0.0, prec);
        let g = ParameterVector::new((0..lg).map(|_| real()).collect());
        let h = ParameterVector::new((0..lh).map(|_| real()).collect());
        let (c, d, f) = (real(), real(), real());
        let mut scalar = || {
            let r: f64 = rng.gen_range(0.0..0.6);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex::from_f64(r * t.cos(), r * t.sin(), prec)
        };
        let (x, y) = (scalar(), scalar());
        Self { g, h, c, d, f, x, y }
    }

    /// Both sides of
    ///
    /// ```text
    /// sum_n ((g))_n (c)_n (d)_n / (((h))_n (f)_2n) (xy)^n/n! 2F1(c+n, d+n; f+2n; x)
    ///   = sum_n (c)_n (d)_n / (f)_n x^n/n! F[-n, (g); f+n, (h); -y]
    /// ```
    ///
    /// summed straight from Pochhammer products, without going through the
    /// general configuration.
    pub fn direct(&self, ctx: &PrecisionContext, outer_tol: f64) -> Result<(Complex, Complex)> {
        let work = guarded(ctx)?;
        let prec = work.bits();
        let one = Complex::one(prec);
        let (c, d, f) = (self.c.with_prec(prec), self.d.with_prec(prec), self.f.with_prec(prec));
        let (x, y) = (self.x.with_prec(prec), self.y.with_prec(prec));
        let (g, h) = (self.g.with_prec(prec), self.h.with_prec(prec));
        let xy = &x * &y;
        let minus_y = -&y;

        let mut lhs = OuterSum::new(prec, outer_tol, ctx.absolute_floor());
        let mut lhs_done = false;
        let mut rhs = OuterSum::new(prec, outer_tol, ctx.absolute_floor());
        let mut rhs_done = false;
        for n in 0..MAX_OUTER_TERMS {
            let fact = pochhammer(&one, n, &work);
            let cd = &pochhammer(&c, n, &work) * &pochhammer(&d, n, &work);
            if !lhs_done {
                let num = &(&cd * &pochhammer_product(&g, n, &work)) * &xy.powu(n);
                let den = &(&pochhammer_product(&h, n, &work) * &pochhammer(&f, 2 * n, &work)) * &fact;
                let k = n as i64;
                let kernel = HypergeometricSeries::new(
                    ParameterVector::new(vec![c.add_int(k), d.add_int(k)]),
                    ParameterVector::new(vec![f.add_int(2 * k)]),
                    x.clone(),
                );
                let value = evaluate(&kernel, &work, INNER_MAX_TERMS)?.value;
                lhs_done = lhs.push(&(&(&num / &den) * &value));
            }
            if !rhs_done {
                let outer = &(&cd * &x.powu(n)) / &(&pochhammer(&f, n, &work) * &fact);
                let f_n = f.add_u64(n);
                let minus_n = Complex::from_int(-(n as i64), prec);
                let mut poly = Complex::zero(prec);
                for k in 0..=n {
                    let num = &(&pochhammer(&minus_n, k, &work) * &pochhammer_product(&g, k, &work)) * &minus_y.powu(k);
                    let den = &(&pochhammer(&f_n, k, &work) * &pochhammer_product(&h, k, &work))
                        * &pochhammer(&one, k, &work);
                    poly += &(&num / &den);
                }
                rhs_done = rhs.push(&(&outer * &poly));
            }
            if lhs_done && rhs_done {
                let (l, r) = (lhs.sum.with_prec(ctx.bits()), rhs.sum.with_prec(ctx.bits()));
                if !(l.is_finite() && r.is_finite()) {
                    return Err(Error::NonFinite("direct kernel transformation"));
                }
                return Ok((l, r));
            }
        }
        Err(Error::NoConvergence { terms_used: MAX_OUTER_TERMS, tail_estimate: lhs.last_rel.max(rhs.last_rel) })
    }
}

/// Sums a finite double array both ways: `table[n][k]` holds `A(k, n)`.
///
/// Returns `(sum_n sum_k A(k, n), sum_m sum_{k <= m} A(k, m - k))`; entries
/// outside the array (including ragged rows) count as zero.
pub fn rearrangement_oracle<T>(table: &[Vec<T>], zero: T) -> (T, T)
where
    T: Clone + for<'a> AddAssign<&'a T>,
{
    let mut direct = zero.clone();
    for row in table {
        for entry in row {
            direct += entry;
        }
    }
    let width = table.iter().map(Vec::len).max().unwrap_or(0);
    let mut diagonal = zero;
    if width > 0 {
        for m in 0..table.len() + width - 1 {
            for k in 0..=m {
                if let Some(entry) = table.get(m - k).and_then(|row| row.get(k)) {
                    diagonal += entry;
                }
            }
        }
    }
    (direct, diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExactComplex;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im, ctx().bits())
    }

    fn seq(values: &[f64]) -> ParameterVector {
        ParameterVector::from_reals(values, ctx().bits())
    }

    #[test]
    fn empty_sequences_give_exponentials() {
        // xyz^2 = 0.3 and xwz = 0.2
        let mut cfg = SlaterConfiguration::empty(ctx().bits());
        cfg.x = c(1.0, 0.0);
        cfg.y = c(1.2, 0.0);
        cfg.z = c(0.5, 0.0);
        cfg.w = c(0.4, 0.0);
        let expected = c(0.5, 0.0).exp();
        let lhs = slater_lhs(&cfg, &ctx(), DEFAULT_OUTER_TOL).unwrap();
        let rhs = slater_rhs(&cfg, &ctx(), DEFAULT_OUTER_TOL).unwrap();
        assert!((&lhs.value - &expected).abs_f64() < 1e-24);
        assert!((&rhs.value - &expected).abs_f64() < 1e-24);
    }

    #[test]
    fn zero_scalars_give_one() {
        let cfg = SlaterConfiguration::empty(ctx().bits());
        let lhs = slater_lhs(&cfg, &ctx(), DEFAULT_OUTER_TOL).unwrap();
        assert_eq!(lhs.value, Complex::one(ctx().bits()));
        assert!(lhs.outer_terms >= 1);
        let rhs = slater_rhs(&cfg, &ctx(), DEFAULT_OUTER_TOL).unwrap();
        assert_eq!(rhs.value, Complex::one(ctx().bits()));

        let mut cfg = cfg;
        cfg.y = Complex::from_f64(0.2, 0.0, ctx().bits());
        cfg.z = Complex::from_f64(0.3, 0.0, ctx().bits());
        let err = slater_rhs(&cfg, &ctx(), DEFAULT_OUTER_TOL).unwrap_err();
        assert_eq!(err, Error::InvalidConfiguration("w must be nonzero".into()));
    }

    #[test]
    fn small_configuration_sides_agree() {
        let cfg = SlaterConfiguration {
            a: seq(&[0.3]),
            d: seq(&[0.4]),
            v: seq(&[0.6]),
            h: seq(&[1.1]),
            g: seq(&[1.3]),
            f: seq(&[1.7]),
            u: seq(&[0.2]),
            e: seq(&[1.9]),
            x: c(0.2, 0.0),
            y: c(0.3, 0.0),
            z: c(0.5, 0.0),
            w: c(0.7, 0.0),
        };
        let report = verify_slater(&cfg, &ctx(), 1e-20);
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    }

    #[test]
    fn rhs_inner_is_binomial_without_sequences() {
        let mut cfg = SlaterConfiguration::empty(ctx().bits());
        cfg.y = c(0.3, 0.1);
        cfg.z = c(0.5, 0.0);
        cfg.w = c(0.25, 0.0);
        let series = cfg.rhs_inner_series(6).unwrap();
        let value = evaluate(&series, &ctx(), 7).unwrap().value;
        let expected = (&Complex::one(ctx().bits()) - &series.argument).powu(6);
        assert!((&value - &expected).abs_f64() < 1e-45);
    }

    #[test]
    fn sign_follows_parity() {
        let mut cfg = SlaterConfiguration::empty(ctx().bits());
        cfg.y = c(0.3, 0.0);
        cfg.z = c(0.5, 0.0);
        cfg.w = c(0.25, 0.0);
        assert_eq!(cfg.sign(), -1);
        let before = cfg.rhs_inner_series(2).unwrap().argument;
        cfg.e = seq(&[1.5]);
        assert_eq!(cfg.sign(), 1);
        let after = cfg.rhs_inner_series(2).unwrap().argument;
        assert_eq!(after, -&before);
    }

    #[test]
    fn denominator_poles_rejected() {
        let mut cfg = SlaterConfiguration::empty(ctx().bits());
        cfg.g = seq(&[-2.0]);
        assert!(matches!(cfg.validate(&ctx()), Err(Error::Pole(_))));
    }

    #[test]
    fn exton_shapes() {
        let cfg = exton_specialize(
            &seq(&[]),
            &seq(&[]),
            &c(0.4, 0.0),
            &c(0.7, 0.0),
            &c(1.9, 0.0),
            &c(0.3, 0.0),
            &c(0.2, 0.0),
        );
        let inner = cfg.rhs_inner_series(3).unwrap();
        assert_eq!(inner.p(), 1);
        assert_eq!(inner.q(), 1);
        assert_eq!(inner.denom[0], c(1.9, 0.0).add_int(3));
        assert_eq!(inner.argument, c(-0.2, 0.0));
        assert_eq!(cfg.lhs_inner_series(0).p(), 2);
    }

    #[test]
    fn exton_routes_agree() {
        let params = ExtonParameters {
            g: seq(&[0.8]),
            h: seq(&[1.4]),
            c: c(0.4, 0.0),
            d: c(0.7, 0.0),
            f: c(1.9, 0.0),
            x: c(0.3, 0.1),
            y: c(-0.2, 0.3),
        };
        let report = verify_slater(&params.specialize(), &ctx(), 1e-20);
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        let (l, r) = params.direct(&ctx(), DEFAULT_OUTER_TOL).unwrap();
        let lhs = report.lhs.unwrap();
        assert!(relative_difference(&l, &lhs, 1.0).1 < 1e-20);
        assert!(relative_difference(&r, &lhs, 1.0).1 < 1e-20);
    }

    #[test]
    fn rearrangement_small_tables() {
        let (a, b) = rearrangement_oracle(&[vec![ExactComplex::ratio(3, 7)]], ExactComplex::zero());
        assert_eq!(a, ExactComplex::ratio(3, 7));
        assert_eq!(a, b);
        let (a, b) = rearrangement_oracle::<ExactComplex>(&[], ExactComplex::zero());
        assert_eq!((a, b), (ExactComplex::zero(), ExactComplex::zero()));
        let ragged =
            vec![vec![ExactComplex::from_int(1)], vec![], vec![ExactComplex::from_int(2), ExactComplex::from_int(5)]];
        let (a, b) = rearrangement_oracle(&ragged, ExactComplex::zero());
        assert_eq!(a, ExactComplex::from_int(8));
        assert_eq!(a, b);
    }
}
