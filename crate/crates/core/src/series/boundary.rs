//! Summation of algebraically decaying series.
//!
//! For terms with an asymptotic expansion `t_n ~ n^{-1-s} (c_0 + c_1/n + ...)`
//! the remainder after `N` terms behaves like `N^{-s} (d_0 + d_1/N + ...)`;
//! for alternating terms, sampled at even `N`, like `N^{-1-s} (...)`. With
//! the leading exponent known, the limit is the value `S` for which
//! `(S_N - S) N^sigma` is a polynomial in `1/N` through the sampled nodes,
//! i.e. whose divided difference of full order vanishes.

use rug::Float;

use super::EvaluationResult;
use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext};

pub(crate) const GUARD_BITS: u32 = 64;
const FIRST_NODE: u64 = 20;
const NODE_STEP: u64 = 10;
const WINDOW: usize = 40;

/// Leading decay of the remainder: `N^{-exponent}`, sampled at even `N`
/// when `alternating`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicDecay {
    pub exponent: Complex,
    pub alternating: bool,
}

struct Node {
    inv_n: Float,
    weight: Complex,
    partial: Complex,
}

fn next_node(node: u64) -> u64 {
    node + NODE_STEP.max(node / 20 * 2)
}

/// Limit of the partial sums of `next_term(0), next_term(1), ...`.
///
/// `direct_tail(N, |t_N|)` bounds the remainder after `N` terms; it is
/// consulted first and ends the summation when it already meets the
/// tolerance. Otherwise partial sums at nodes `N = 20, 30, ...` (spacing
/// widening to 10%) are extrapolated over a sliding window of 41 nodes until
/// two consecutive estimates agree to `target_rel_tol`.
pub fn extrapolated_sum<T, B>(
    mut next_term: T,
    decay: &AlgebraicDecay,
    direct_tail: B,
    ctx: &PrecisionContext,
    max_terms: u64,
) -> Result<EvaluationResult>
where
    T: FnMut(u64) -> Result<Complex>,
    B: Fn(u64, f64) -> f64,
{
    let guard = ctx.bits() + GUARD_BITS;
    let tol = ctx.target_rel_tol();
    let floor = ctx.absolute_floor();
    let exponent = decay.exponent.with_prec(guard);

    let mut sum = Complex::zero(guard);
    let mut n = 0u64;
    let mut pending = next_term(0)?.with_prec(guard);
    let mut node = FIRST_NODE;
    let mut nodes: Vec<Node> = Vec::new();
    let mut previous: Option<Complex> = None;
    let mut streak = 0;
    let mut last_diff = f64::INFINITY;

    loop {
        if node > max_terms {
            return Err(Error::NoConvergence { terms_used: n, tail_estimate: last_diff });
        }
        while n < node {
            sum += &pending;
            n += 1;
            pending = next_term(n)?.with_prec(guard);
        }
        if !sum.is_finite() {
            return Err(Error::NonFinite("extrapolated summation"));
        }

        let direct = direct_tail(n, pending.abs_f64());
        if direct <= tol * sum.abs_f64().max(floor) {
            return Ok(EvaluationResult {
                value: sum.with_prec(ctx.bits()),
                terms_used: n,
                tail_estimate: direct,
                converged: true,
            });
        }

        let ln_n = Float::with_val(guard, n).ln();
        nodes.push(Node {
            inv_n: Float::with_val(guard, n).recip(),
            weight: exponent.scale(&ln_n).exp(),
            partial: sum.clone(),
        });

        if nodes.len() >= 3 {
            let start = nodes.len().saturating_sub(WINDOW + 1);
            let estimate = extrapolate(&nodes[start..], guard);
            if let Some(prev) = &previous {
                last_diff = (&estimate - prev).abs_f64();
                if last_diff <= tol * estimate.abs_f64().max(floor) {
                    streak += 1;
                } else {
                    streak = 0;
                }
                if streak >= 2 {
                    return Ok(EvaluationResult {
                        value: estimate.with_prec(ctx.bits()),
                        terms_used: n,
                        tail_estimate: last_diff,
                        converged: true,
                    });
                }
            }
            previous = Some(estimate);
        }
        node = next_node(node);
    }
}

/// `sum_j w_j S_j N_j^sigma / sum_j w_j N_j^sigma`, `w_j = 1/prod_{i!=j}(h_j - h_i)`.
fn extrapolate(nodes: &[Node], prec: u32) -> Complex {
    let mut num = Complex::zero(prec);
    let mut den = Complex::zero(prec);
    for (j, node) in nodes.iter().enumerate() {
        let mut w = Float::with_val(prec, 1);
        for (i, other) in nodes.iter().enumerate() {
            if i != j {
                w *= Float::with_val(prec, &node.inv_n - &other.inv_n);
            }
        }
        let w = w.recip();
        let weighted = node.weight.scale(&w);
        num += &(&weighted * &node.partial);
        den += &weighted;
    }
    &num / &den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn node_spacing_is_even_and_widening() {
        let mut n = FIRST_NODE;
        let mut seen = vec![n];
        for _ in 0..60 {
            n = next_node(n);
            seen.push(n);
        }
        assert!(seen.iter().all(|n| n % 2 == 0));
        assert_eq!(&seen[..4], &[20, 30, 40, 50]);
        assert!(seen.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn zeta_two_from_unit_terms() {
        // sum 1/(n+1)^2 = pi^2/6; remainder ~ N^{-1}
        let prec = ctx().bits() + GUARD_BITS;
        let decay = AlgebraicDecay { exponent: Complex::one(prec), alternating: false };
        let r = extrapolated_sum(
            |n| Ok(Complex::from_int(((n + 1) * (n + 1)) as i64, prec).recip()),
            &decay,
            |n, t| t * n as f64,
            &ctx(),
            100_000,
        )
        .unwrap();
        let pi = Complex::pi(prec);
        let expected = Float::with_val(prec, &pi * &pi) / 6u32;
        let err = Float::with_val(prec, &r.value.re - &expected).to_f64().abs();
        assert!(err < 1e-29, "err {err}");
        assert!(r.terms_used < 2_000);
    }

    #[test]
    fn alternating_log_two() {
        // sum (-1)^n/(n+1) = ln 2; remainder ~ N^{-1} at even N
        let prec = ctx().bits() + GUARD_BITS;
        let decay = AlgebraicDecay { exponent: Complex::one(prec), alternating: true };
        let r = extrapolated_sum(
            |n| {
                let t = Complex::from_int(n as i64 + 1, prec).recip();
                Ok(if n % 2 == 1 { -t } else { t })
            },
            &decay,
            |_, t| t,
            &ctx(),
            100_000,
        )
        .unwrap();
        let ln2 = Float::with_val(prec, 2).ln();
        let err = Float::with_val(prec, &r.value.re - &ln2).to_f64().abs();
        assert!(err < 1e-29, "err {err}");
    }
}
