//! Seeded draws of admissible assignments and of deliberate proviso
//! violations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use super::{sampling_admissible, Binding, IdentityId, ParameterAssignment};
use crate::error::{Error, Result};
use crate::numerics::ExactComplex;

/// Candidates tried before giving up.
pub const MAX_DRAWS: u32 = 10_000;

/// Gamma arguments and denominators stay this far from the poles.
const POLE_DISTANCE: f64 = 0.1;
const GRID: i64 = 1_000_000;
const COMPLEX_FRACTION: f64 = 0.2;
const MAX_DEGREE: u64 = 12;
const MAX_DENOMINATOR: i64 = 12;
const SLOT_RANGE: (f64, f64) = (-1.5, 3.5);
const Y_RADIUS: f64 = 0.5;

fn rng_for(id: IdentityId, seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64 + 1);
    rng
}

fn on_grid(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Rational {
    let k = rng.gen_range((lo * GRID as f64) as i64..=(hi * GRID as f64) as i64);
    Rational::from((k, GRID))
}

fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let q = rng.gen_range(1..=MAX_DENOMINATOR);
    let p = rng.gen_range(lo * q..=hi * q);
    Rational::from((p, q))
}

/// One unconstrained candidate for `id`.
fn candidate(id: IdentityId, rng: &mut ChaCha8Rng) -> ParameterAssignment {
    let desc = id.descriptor();
    let mut p = ParameterAssignment::new();
    if desc.terminating {
        for slot in desc.slots.iter().filter(|s| **s != "n") {
            p.insert(slot, ExactComplex::real(small_rational(rng, -2, 4)));
        }
        p.insert("n", ExactComplex::from_int(rng.gen_range(0..=MAX_DEGREE) as i64));
        return p;
    }
    let complex = rng.gen_bool(COMPLEX_FRACTION);
    let scalar = |rng: &mut ChaCha8Rng| {
        let re = on_grid(rng, SLOT_RANGE.0, SLOT_RANGE.1);
        let im = if complex { on_grid(rng, -0.5, 0.5) } else { Rational::new() };
        ExactComplex::new(re, im)
    };
    for slot in desc.slots.iter().filter(|s| **s != "y") {
        p.insert(slot, scalar(rng));
    }
    if id == IdentityId::KernelTransform {
        let g = rng.gen_range(0..=2usize);
        let h = rng.gen_range(g.saturating_sub(1)..=2usize);
        for i in 1..=g {
            p.insert(&format!("g{i}"), scalar(rng));
        }
        for i in 1..=h {
            p.insert(&format!("h{i}"), scalar(rng));
        }
        let y = loop {
            let re = on_grid(rng, -Y_RADIUS, Y_RADIUS);
            let im = if complex { on_grid(rng, -Y_RADIUS, Y_RADIUS) } else { Rational::new() };
            let y = ExactComplex::new(re, im);
            if y.norm_sqr() <= (1, 4) {
                break y;
            }
        };
        p.insert("y", y);
    }
    p
}

/// A seeded assignment satisfying every proviso of `id` with slack
/// `margin`, with gamma arguments and denominators at least 0.1 from the
/// poles and `Re(s) >= 1` for every nonterminating unit-argument series.
/// Deterministic in `(id, seed, margin)`.
pub fn random_admissible(id: IdentityId, seed: u64, margin: f64) -> Result<ParameterAssignment> {
    let mut rng = rng_for(id, seed);
    for _ in 0..MAX_DRAWS {
        let p = candidate(id, &mut rng);
        if sampling_admissible(id, &p, margin, POLE_DISTANCE).is_ok() {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(MAX_DRAWS))
}

/// A draw for `general` with `binding` applied, admissible for both
/// `general` and the projection onto `special`.
pub fn sample_reduction(
    general: IdentityId,
    special: IdentityId,
    binding: &Binding,
    seed: u64,
    margin: f64,
) -> Result<ParameterAssignment> {
    let mut rng = rng_for(general, seed ^ 0x5e_ed0f_0bd5);
    for _ in 0..MAX_DRAWS {
        let mut p = candidate(general, &mut rng);
        binding.apply(&mut p)?;
        if sampling_admissible(general, &p, margin, POLE_DISTANCE).is_ok()
            && sampling_admissible(special, &p.project(special), margin, POLE_DISTANCE).is_ok()
        {
            return Ok(p);
        }
    }
    Err(Error::SamplingExhausted(MAX_DRAWS))
}

/// An assignment that breaks the governing proviso of `id`: the
/// convergence condition for nonterminating entries, a half-integer degree
/// for terminating ones.
pub fn negative_control(id: IdentityId, seed: u64) -> Result<ParameterAssignment> {
    let mut p = random_admissible(id, seed, 0.0)?;
    let mut rng = rng_for(id, seed.wrapping_add(0x9e37_79b9));
    let u = ExactComplex::real(on_grid(&mut rng, 0.0, 0.5));
    let get = |p: &ParameterAssignment, s: &str| p.get(s).cloned().expect("sampled slot");
    let r = ExactComplex::ratio;
    match id {
        IdentityId::GaussUnit => {
            let c = get(&p, "a") + get(&p, "b") - r(1, 2) - u;
            p.insert("c", c);
        }
        IdentityId::WellPoised4F3 | IdentityId::ShiftedPair4F3 => {
            let c = (get(&p, "a") - get(&p, "b") - get(&p, "b") + r(3, 2) + u).half();
            p.insert("c", c);
        }
        IdentityId::WellPoised5F4 => {
            let d = get(&p, "a") - get(&p, "b") - get(&p, "c") + r(3, 2) + u;
            p.insert("d", d);
        }
        IdentityId::KernelTransform => {
            let d = get(&p, "f") - get(&p, "c") + r(1, 2) + u;
            p.insert("d", d);
        }
        IdentityId::WellPoised5F4MinusOne | IdentityId::ShiftedPair5F4MinusOne => {
            let d = get(&p, "a") - get(&p, "c") + r(3, 2) + u;
            p.insert("d", d);
        }
        IdentityId::ShiftedPair3F2MinusOne => p.insert("c", ExactComplex::one() + u),
        IdentityId::TerminatingWellPoised4F3
        | IdentityId::TerminatingWellPoised5F4
        | IdentityId::TerminatingShiftedPair4F3 => {
            let k = rng.gen_range(0..MAX_DEGREE as i64);
            p.insert("n", r(2 * k + 1, 2));
        }
    }
    Ok(p)
}
