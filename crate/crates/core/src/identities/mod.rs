//! Registry of closed-form summations and transformations, each with its
//! side builders and admissibility predicate, plus single checks and
//! reduction checks between related entries.

mod expr;
mod sampler;

pub use expr::{kernel_partial_sum, kernel_sum, Expr, KernelSum};
pub use sampler::{negative_control, random_admissible, sample_reduction, MAX_DRAWS};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::Rational;

use crate::error::{Error, Result};
use crate::numerics::{ExactComplex, PrecisionContext};
use crate::report::{relative_difference, Verdict, VerificationReport};
use crate::series::{EvaluationResult, ExactSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    GaussUnit,
    WellPoised4F3,
    WellPoised5F4,
    TerminatingWellPoised4F3,
    TerminatingWellPoised5F4,
    KernelTransform,
    WellPoised5F4MinusOne,
    ShiftedPair4F3,
    ShiftedPair5F4MinusOne,
    TerminatingShiftedPair4F3,
    ShiftedPair3F2MinusOne,
}

/// Static description of a registry entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityDescriptor {
    pub id: IdentityId,
    pub name: &'static str,
    /// Required scalar slots.
    pub slots: &'static [&'static str],
    /// Numbered sequence slots (`g1, g2, ...`), possibly empty.
    pub sequences: &'static [&'static str],
    /// Sides are finite sums checked in exact arithmetic.
    pub terminating: bool,
    pub summary: &'static str,
}

impl IdentityId {
    pub const ALL: [IdentityId; 11] = [
        IdentityId::GaussUnit,
        IdentityId::WellPoised4F3,
        IdentityId::WellPoised5F4,
        IdentityId::TerminatingWellPoised4F3,
        IdentityId::TerminatingWellPoised5F4,
        IdentityId::KernelTransform,
        IdentityId::WellPoised5F4MinusOne,
        IdentityId::ShiftedPair4F3,
        IdentityId::ShiftedPair5F4MinusOne,
        IdentityId::TerminatingShiftedPair4F3,
        IdentityId::ShiftedPair3F2MinusOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::GaussUnit => "gauss_2f1_unit",
            IdentityId::WellPoised4F3 => "eq14_4f3",
            IdentityId::WellPoised5F4 => "eq15_5f4",
            IdentityId::TerminatingWellPoised4F3 => "eq16_terminating_4f3",
            IdentityId::TerminatingWellPoised5F4 => "eq17_terminating_5f4",
            IdentityId::KernelTransform => "eq18_exton_transform",
            IdentityId::WellPoised5F4MinusOne => "eq19_5f4_minus1",
            IdentityId::ShiftedPair4F3 => "eq110_4f3_shifted",
            IdentityId::ShiftedPair5F4MinusOne => "thm1_5f4_minus1_shifted",
            IdentityId::TerminatingShiftedPair4F3 => "eq33_terminating_4f3_shifted",
            IdentityId::ShiftedPair3F2MinusOne => "eq34_3f2_minus1",
        }
    }

    /// Short name: the full name up to the first underscore.
    pub fn alias(self) -> &'static str {
        let name = self.name();
        &name[..name.find('_').unwrap_or(name.len())]
    }

    pub fn descriptor(self) -> IdentityDescriptor {
        let (slots, sequences, terminating, summary): (
            &'static [&'static str],
            &'static [&'static str],
            bool,
            &'static str,
        ) = match self {
            IdentityId::GaussUnit => (&["a", "b", "c"], &[], false, "2F1(a,b;c;1) as a gamma ratio"),
            IdentityId::WellPoised4F3 => (&["a", "b", "c"], &[], false, "well-poised 4F3(1) with the 1+a/2 pair"),
            IdentityId::WellPoised5F4 => (&["a", "b", "c", "d"], &[], false, "well-poised 5F4(1) with the 1+a/2 pair"),
            IdentityId::TerminatingWellPoised4F3 => (&["a", "b", "n"], &[], true, "terminating well-poised 4F3(1)"),
            IdentityId::TerminatingWellPoised5F4 => {
                (&["a", "b", "c", "n"], &[], true, "terminating well-poised 5F4(1)")
            }
            IdentityId::KernelTransform => (
                &["c", "d", "f", "y"],
                &["g", "h"],
                false,
                "(G+2)F(H+2)(y) as a gamma ratio times a sum of terminating (G+1)F(H+1)(-y)",
            ),
            IdentityId::WellPoised5F4MinusOne => {
                (&["a", "b", "c", "d"], &[], false, "well-poised 5F4(-1) as a gamma ratio times 3F2(1)")
            }
            IdentityId::ShiftedPair4F3 => {
                (&["a", "b", "c", "d"], &[], false, "4F3(1) with a (d+1, d) pair as two weighted gamma ratios")
            }
            IdentityId::ShiftedPair5F4MinusOne => {
                (&["a", "b", "c", "d", "e"], &[], false, "5F4(-1) with a (1+e, e) pair as two weighted 3F2(1) series")
            }
            IdentityId::TerminatingShiftedPair4F3 => {
                (&["a", "b", "e", "n"], &[], true, "terminating 4F3(1) with a (e+1, e) pair")
            }
            IdentityId::ShiftedPair3F2MinusOne => {
                (&["a", "c", "e"], &[], false, "3F2(-1) with a (1+e, e) pair as two weighted gamma ratios")
            }
        };
        IdentityDescriptor { id: self, name: self.name(), slots, sequences, terminating, summary }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts the full name or the alias.
impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s || id.alias() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// Slot name to exact value. The termination degree lives in slot `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterAssignment(BTreeMap<String, ExactComplex>);

impl ParameterAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, slot: &str, value: ExactComplex) -> Self {
        self.insert(slot, value);
        self
    }

    pub fn insert(&mut self, slot: &str, value: ExactComplex) {
        self.0.insert(slot.to_string(), value);
    }

    pub fn get(&self, slot: &str) -> Option<&ExactComplex> {
        self.0.get(slot)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &ExactComplex)> {
        self.0.iter()
    }

    fn slot(&self, slot: &str) -> Result<ExactComplex> {
        self.0.get(slot).cloned().ok_or_else(|| Error::Inadmissible(format!("missing slot {slot}")))
    }

    /// `prefix1, prefix2, ...` up to the first gap.
    pub fn sequence(&self, prefix: &str) -> Vec<ExactComplex> {
        (1..).map_while(|i| self.0.get(&format!("{prefix}{i}")).cloned()).collect()
    }

    /// The degree slot `n` as a nonnegative integer.
    pub fn degree(&self) -> Result<u64> {
        let n = self.slot("n")?;
        n.nonnegative_integer().ok_or_else(|| Error::Inadmissible(format!("n = {n} must be a nonnegative integer")))
    }

    pub fn to_f64_map(&self) -> BTreeMap<String, [f64; 2]> {
        self.0.iter().map(|(k, v)| (k.clone(), v.to_f64_pair())).collect()
    }

    /// Keeps only the slots (and sequences) of `id`.
    pub fn project(&self, id: IdentityId) -> Self {
        let desc = id.descriptor();
        let mut out = Self::new();
        for (k, v) in &self.0 {
            let in_sequence = desc.sequences.iter().any(|p| {
                k.strip_prefix(p).is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
            });
            if desc.slots.contains(&k.as_str()) || in_sequence {
                out.0.insert(k.clone(), v.clone());
            }
        }
        out
    }
}

impl fmt::Display for ParameterAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

fn q(n: i64, d: i64) -> ExactComplex {
    ExactComplex::ratio(n, d)
}

fn one() -> ExactComplex {
    ExactComplex::one()
}

fn series(numer: Vec<ExactComplex>, denom: Vec<ExactComplex>, z: i64) -> Expr {
    Expr::Series(ExactSeries::new(numer, denom, ExactComplex::from_int(z)))
}

fn gamma(num: Vec<ExactComplex>, den: Vec<ExactComplex>) -> Expr {
    Expr::Gamma { num, den }
}

/// `(a/(2x), 1 - a/(2x))`.
fn weight_pair(a: &ExactComplex, x: &ExactComplex) -> Result<(ExactComplex, ExactComplex)> {
    let w = a
        .checked_div(&(&ExactComplex::from_int(2) * x))
        .ok_or_else(|| Error::Pole("weight denominator 2x vanishes".into()))?;
    Ok((w.clone(), one() - w))
}

fn weighted(weights: (ExactComplex, ExactComplex), first: Expr, second: Expr) -> Expr {
    Expr::Sum(vec![
        Expr::Product(vec![Expr::Const(weights.0), first]),
        Expr::Product(vec![Expr::Const(weights.1), second]),
    ])
}

/// The weights `(a/(2x), 1 - a/(2x))` of the two-term right sides.
pub fn weights(id: IdentityId, p: &ParameterAssignment) -> Result<Option<(ExactComplex, ExactComplex)>> {
    let x = match id {
        IdentityId::ShiftedPair4F3 => "d",
        IdentityId::ShiftedPair5F4MinusOne
        | IdentityId::TerminatingShiftedPair4F3
        | IdentityId::ShiftedPair3F2MinusOne => "e",
        _ => return Ok(None),
    };
    weight_pair(&p.slot("a")?, &p.slot(x)?).map(Some)
}

/// Left and right side expressions.
pub fn sides(id: IdentityId, p: &ParameterAssignment) -> Result<(Expr, Expr)> {
    let get = |s: &str| p.slot(s);
    Ok(match id {
        IdentityId::GaussUnit => {
            let (a, b, c) = (get("a")?, get("b")?, get("c")?);
            let lhs = series(vec![a.clone(), b.clone()], vec![c.clone()], 1);
            let rhs = gamma(vec![c.clone(), &c - &a - &b], vec![&c - &a, &c - &b]);
            (lhs, rhs)
        }
        IdentityId::WellPoised4F3 => {
            let (a, b, c) = (get("a")?, get("b")?, get("c")?);
            let ha = a.half();
            let lhs = series(
                vec![a.clone(), one() + &ha, b.clone(), c.clone()],
                vec![ha.clone(), one() + &a - &b, one() + &a - &c],
                1,
            );
            let half = q(1, 2);
            let rhs = gamma(
                vec![one() + &a - &b, one() + &a - &c, &ha + &half, &ha - &b - &c + &half],
                vec![one() + &a, one() + &a - &b - &c, &ha - &b + &half, &ha - &c + &half],
            );
            (lhs, rhs)
        }
        IdentityId::WellPoised5F4 => {
            let (a, b, c, d) = (get("a")?, get("b")?, get("c")?, get("d")?);
            let ha = a.half();
            let lhs = series(
                vec![a.clone(), one() + &ha, b.clone(), c.clone(), d.clone()],
                vec![ha, one() + &a - &b, one() + &a - &c, one() + &a - &d],
                1,
            );
            let rhs = gamma(
                vec![one() + &a - &b, one() + &a - &c, one() + &a - &d, one() + &a - &b - &c - &d],
                vec![one() + &a, one() + &a - &b - &c, one() + &a - &b - &d, one() + &a - &c - &d],
            );
            (lhs, rhs)
        }
        IdentityId::TerminatingWellPoised4F3 => {
            let (a, b, n) = (get("a")?, get("b")?, p.degree()?);
            let ha = a.half();
            let m = ExactComplex::from_int(n as i64);
            let lhs = series(
                vec![-&m, a.clone(), one() + &ha, b.clone()],
                vec![ha.clone(), one() + &a - &b, one() + &a + &m],
                1,
            );
            let rhs = Expr::Pochhammer {
                num: vec![one() + &a, q(1, 2) + &ha - &b],
                den: vec![q(1, 2) + &ha, one() + &a - &b],
                n,
            };
            (lhs, rhs)
        }
        IdentityId::TerminatingWellPoised5F4 => {
            let (a, b, c, n) = (get("a")?, get("b")?, get("c")?, p.degree()?);
            let ha = a.half();
            let m = ExactComplex::from_int(n as i64);
            let lhs = series(
                vec![-&m, a.clone(), one() + &ha, b.clone(), c.clone()],
                vec![ha, one() + &a - &b, one() + &a - &c, one() + &a + &m],
                1,
            );
            let rhs = Expr::Pochhammer {
                num: vec![one() + &a, one() + &a - &b - &c],
                den: vec![one() + &a - &b, one() + &a - &c],
                n,
            };
            (lhs, rhs)
        }
        IdentityId::KernelTransform => {
            let (c, d, f, y) = (get("c")?, get("d")?, get("f")?, get("y")?);
            let (g, h) = (p.sequence("g"), p.sequence("h"));
            let mut numer = g.clone();
            numer.extend([c.clone(), d.clone()]);
            let mut denom = h.clone();
            denom.extend([&f - &c, &f - &d]);
            let lhs = Expr::Series(ExactSeries::new(numer, denom, y.clone()));
            let rhs = Expr::Product(vec![
                gamma(vec![&f - &c, &f - &d], vec![f.clone(), &f - &c - &d]),
                Expr::Kernel(KernelSum { c, d, f, g, h, y }),
            ]);
            (lhs, rhs)
        }
        IdentityId::WellPoised5F4MinusOne => {
            let (a, b, c, d) = (get("a")?, get("b")?, get("c")?, get("d")?);
            let ha = a.half();
            let lhs = series(
                vec![a.clone(), one() + &ha, b.clone(), c.clone(), d.clone()],
                vec![ha.clone(), one() + &a - &b, one() + &a - &c, one() + &a - &d],
                -1,
            );
            let rhs = Expr::Product(vec![
                gamma(vec![one() + &a - &c, one() + &a - &d], vec![one() + &a, one() + &a - &c - &d]),
                series(vec![c.clone(), d.clone(), q(1, 2) + &ha - &b], vec![q(1, 2) + &ha, one() + &a - &b], 1),
            ]);
            (lhs, rhs)
        }
        IdentityId::ShiftedPair4F3 => {
            let (a, b, c, d) = (get("a")?, get("b")?, get("c")?, get("d")?);
            let ha = a.half();
            let half = q(1, 2);
            let lhs = series(
                vec![a.clone(), b.clone(), c.clone(), one() + &d],
                vec![one() + &a - &b, one() + &a - &c, d.clone()],
                1,
            );
            let rhs = Expr::Product(vec![
                gamma(vec![one() + &a - &b, one() + &a - &c], vec![one() + &a, one() + &a - &b - &c]),
                weighted(
                    weight_pair(&a, &d)?,
                    gamma(vec![&half + &ha, &half + &ha - &b - &c], vec![&half + &ha - &b, &half + &ha - &c]),
                    gamma(vec![one() + &ha, one() + &ha - &b - &c], vec![one() + &ha - &b, one() + &ha - &c]),
                ),
            ]);
            (lhs, rhs)
        }
        IdentityId::ShiftedPair5F4MinusOne => {
            let (a, b, c, d, e) = (get("a")?, get("b")?, get("c")?, get("d")?, get("e")?);
            let ha = a.half();
            let lhs = series(
                vec![a.clone(), b.clone(), c.clone(), d.clone(), one() + &e],
                vec![one() + &a - &b, one() + &a - &c, one() + &a - &d, e.clone()],
                -1,
            );
            let rhs = Expr::Product(vec![
                gamma(vec![one() + &a - &c, one() + &a - &d], vec![one() + &a, one() + &a - &c - &d]),
                weighted(
                    weight_pair(&a, &e)?,
                    series(vec![c.clone(), d.clone(), q(1, 2) + &ha - &b], vec![q(1, 2) + &ha, one() + &a - &b], 1),
                    series(vec![c.clone(), d.clone(), one() + &ha - &b], vec![one() + &ha, one() + &a - &b], 1),
                ),
            ]);
            (lhs, rhs)
        }
        IdentityId::TerminatingShiftedPair4F3 => {
            let (a, b, e, n) = (get("a")?, get("b")?, get("e")?, p.degree()?);
            let ha = a.half();
            let m = ExactComplex::from_int(n as i64);
            let lhs = series(
                vec![-&m, a.clone(), b.clone(), one() + &e],
                vec![one() + &a - &b, one() + &a + &m, e.clone()],
                1,
            );
            let rhs = Expr::Product(vec![
                Expr::Pochhammer { num: vec![one() + &a], den: vec![one() + &a - &b], n },
                weighted(
                    weight_pair(&a, &e)?,
                    Expr::Pochhammer { num: vec![q(1, 2) + &ha - &b], den: vec![q(1, 2) + &ha], n },
                    Expr::Pochhammer { num: vec![one() + &ha - &b], den: vec![one() + &ha], n },
                ),
            ]);
            (lhs, rhs)
        }
        IdentityId::ShiftedPair3F2MinusOne => {
            let (a, c, e) = (get("a")?, get("c")?, get("e")?);
            let ha = a.half();
            let lhs = series(vec![a.clone(), c.clone(), one() + &e], vec![one() + &a - &c, e.clone()], -1);
            let rhs = Expr::Product(vec![
                gamma(vec![one() + &a - &c], vec![one() + &a]),
                weighted(
                    weight_pair(&a, &e)?,
                    gamma(vec![q(1, 2) + &ha], vec![q(1, 2) + &ha - &c]),
                    gamma(vec![one() + &ha], vec![one() + &ha - &c]),
                ),
            ]);
            (lhs, rhs)
        }
    })
}

/// Both sides after [`Expr::simplify`].
pub fn simplified_sides(id: IdentityId, p: &ParameterAssignment) -> Result<(Expr, Expr)> {
    let (l, r) = sides(id, p)?;
    Ok((l.simplify(), r.simplify()))
}

/// A stated proviso `value > threshold`.
#[derive(Clone, Debug, PartialEq)]
pub struct Proviso {
    pub label: &'static str,
    pub value: f64,
    pub threshold: f64,
}

impl Proviso {
    fn holds(&self, margin: f64) -> bool {
        if margin > 0.0 {
            self.value >= self.threshold + margin
        } else {
            self.value > self.threshold
        }
    }
}

fn re(x: &ExactComplex) -> f64 {
    x.re.to_f64()
}

/// The identity's stated convergence provisos.
pub fn provisos(id: IdentityId, p: &ParameterAssignment) -> Result<Vec<Proviso>> {
    let get = |s: &str| p.slot(s).map(|x| re(&x));
    let pv = |label, value, threshold| Proviso { label, value, threshold };
    Ok(match id {
        IdentityId::GaussUnit => vec![pv("Re(c-a-b) > 0", get("c")? - get("a")? - get("b")?, 0.0)],
        IdentityId::WellPoised4F3 | IdentityId::ShiftedPair4F3 => {
            vec![pv("Re(a-2b-2c) > -1", get("a")? - 2.0 * get("b")? - 2.0 * get("c")?, -1.0)]
        }
        IdentityId::WellPoised5F4 => vec![pv("Re(a-b-c-d) > -1", get("a")? - get("b")? - get("c")? - get("d")?, -1.0)],
        IdentityId::TerminatingWellPoised4F3
        | IdentityId::TerminatingWellPoised5F4
        | IdentityId::TerminatingShiftedPair4F3 => Vec::new(),
        IdentityId::KernelTransform => vec![pv("Re(f-c-d) > 0", get("f")? - get("c")? - get("d")?, 0.0)],
        IdentityId::WellPoised5F4MinusOne | IdentityId::ShiftedPair5F4MinusOne => {
            let (a, b, c, d) = (get("a")?, get("b")?, get("c")?, get("d")?);
            vec![pv("Re(a-c-d) > -1", a - c - d, -1.0), pv("Re(a-c-d) > Re(b)-3/2", a - c - d - b, -1.5)]
        }
        IdentityId::ShiftedPair3F2MinusOne => vec![pv("Re(c) < 1/2", -get("c")?, -0.5)],
    })
}

/// Structural requirements that carry no margin: complete slots, integer
/// degree, `G <= H + 1` and `|y| < 1` when `G = H + 1`.
fn structural(id: IdentityId, p: &ParameterAssignment) -> std::result::Result<(), String> {
    let desc = id.descriptor();
    for slot in desc.slots {
        if p.get(slot).is_none() {
            return Err(format!("missing slot {slot}"));
        }
    }
    if desc.terminating {
        p.degree().map_err(|e| e.to_string())?;
    }
    if id == IdentityId::KernelTransform {
        let (g, h) = (p.sequence("g").len(), p.sequence("h").len());
        if g > h + 1 {
            return Err(format!("G = {g} exceeds H + 1 = {}", h + 1));
        }
        let y = p.get("y").expect("checked above");
        let y_abs = re(y).hypot(y.im.to_f64());
        if g == h + 1 && y_abs >= 1.0 {
            return Err(format!("|y| = {y_abs} must be below 1 when G = H + 1"));
        }
    }
    Ok(())
}

/// Proviso check. `margin > 0` requires each proviso with that slack;
/// `margin = 0` is the strict stated form. Parameters on poles are rejected
/// at the pole tolerance of `ctx`.
pub fn admissible(
    id: IdentityId,
    p: &ParameterAssignment,
    margin: f64,
    ctx: &PrecisionContext,
) -> std::result::Result<(), String> {
    structural(id, p)?;
    for pv in provisos(id, p).map_err(|e| e.to_string())? {
        if !pv.holds(margin) {
            return Err(if margin > 0.0 {
                format!("proviso {} violated with margin {margin}: value {}", pv.label, pv.value)
            } else {
                format!("proviso {} violated: value {}", pv.label, pv.value)
            });
        }
    }
    let (lhs, rhs) = sides(id, p).map_err(|e| e.to_string())?;
    let mut args = Vec::new();
    lhs.visit_pole_arguments(&mut args);
    rhs.visit_pole_arguments(&mut args);
    if let Some(x) = args.iter().find(|x| x.nonpositive_integer().is_some() || x.pole_distance() < ctx.pole_tolerance())
    {
        if !terminating_shield(id, p, x) {
            return Err(format!("parameter {x} sits on a gamma or denominator pole"));
        }
    }
    Ok(())
}

/// In terminating identities a denominator `-m` with `m >= n` never vanishes.
fn terminating_shield(id: IdentityId, p: &ParameterAssignment, x: &ExactComplex) -> bool {
    if !id.descriptor().terminating {
        return false;
    }
    match (p.degree(), x.nonpositive_integer()) {
        (Ok(n), Some(m)) => m >= n,
        _ => false,
    }
}

/// The stricter sampling envelope: provisos with `margin`, every gamma
/// argument and denominator at least `min_pole_distance` from the poles,
/// and every nonterminating series at `|z| = 1` with `Re(s) >= 1`.
pub fn sampling_admissible(
    id: IdentityId,
    p: &ParameterAssignment,
    margin: f64,
    min_pole_distance: f64,
) -> std::result::Result<(), String> {
    structural(id, p)?;
    for pv in provisos(id, p).map_err(|e| e.to_string())? {
        if !pv.holds(margin) {
            return Err(format!("proviso {} violated with margin {margin}", pv.label));
        }
    }
    let (lhs, rhs) = sides(id, p).map_err(|e| e.to_string())?;
    let mut args = Vec::new();
    lhs.visit_pole_arguments(&mut args);
    rhs.visit_pole_arguments(&mut args);
    if let Some(x) = args.iter().find(|x| x.pole_distance() < min_pole_distance) {
        return Err(format!("{x} within {min_pole_distance} of a pole"));
    }
    let mut all = Vec::new();
    lhs.visit_series(&mut all);
    rhs.visit_series(&mut all);
    for s in all {
        if s.termination().is_some() || s.numer.len() != s.denom.len() + 1 {
            continue;
        }
        let z = &s.argument;
        if z.is_real() && (z.re == 1 || z.re == -1) {
            let excess = s.denom.iter().map(re).sum::<f64>() - s.numer.iter().map(re).sum::<f64>();
            if excess < 1.0 {
                return Err(format!("unit-argument series with Re(s) = {excess} < 1"));
            }
        }
    }
    Ok(())
}

pub fn lhs_value(id: IdentityId, p: &ParameterAssignment, ctx: &PrecisionContext) -> Result<EvaluationResult> {
    sides(id, p)?.0.evaluate(ctx)
}

pub fn rhs_value(id: IdentityId, p: &ParameterAssignment, ctx: &PrecisionContext) -> Result<EvaluationResult> {
    sides(id, p)?.1.evaluate(ctx)
}

/// Compares both sides: exactly for terminating identities, otherwise at
/// working precision with `rel_err <= tol` for a pass. Inadmissible
/// assignments and evaluation errors give an inconclusive report.
pub fn check_identity(id: IdentityId, p: &ParameterAssignment, ctx: &PrecisionContext, tol: f64) -> VerificationReport {
    let assignment = p.to_f64_map();
    let digits = ctx.working_digits();
    if let Err(reason) = admissible(id, p, 0.0, ctx) {
        return VerificationReport::inconclusive(id.name(), assignment, digits, format!("inadmissible: {reason}"));
    }
    let (lhs, rhs) = match sides(id, p) {
        Ok(s) => s,
        Err(e) => return VerificationReport::inconclusive(id.name(), assignment, digits, e.to_string()),
    };
    if id.descriptor().terminating {
        return exact_report(id.name().to_string(), assignment, &lhs, &rhs, ctx);
    }
    let l = match lhs.evaluate(ctx) {
        Ok(r) => r,
        Err(e) => return VerificationReport::inconclusive(id.name(), assignment, digits, format!("left side: {e}")),
    };
    let r = match rhs.evaluate(ctx) {
        Ok(r) => r,
        Err(e) => return VerificationReport::inconclusive(id.name(), assignment, digits, format!("right side: {e}")),
    };
    float_report(id.name().to_string(), assignment, l, r, ctx, tol)
}

fn float_report(
    identity: String,
    assignment: BTreeMap<String, [f64; 2]>,
    l: EvaluationResult,
    r: EvaluationResult,
    ctx: &PrecisionContext,
    tol: f64,
) -> VerificationReport {
    let (abs_err, rel_err) = relative_difference(&l.value, &r.value, ctx.absolute_floor());
    VerificationReport {
        identity,
        assignment,
        lhs: Some(l.value),
        rhs: Some(r.value),
        abs_err,
        rel_err,
        terms_lhs: l.terms_used,
        terms_rhs: r.terms_used,
        digits: ctx.working_digits(),
        exact: false,
        verdict: if rel_err <= tol { Verdict::Pass } else { Verdict::Fail },
        reason: None,
    }
}

fn exact_report(
    identity: String,
    assignment: BTreeMap<String, [f64; 2]>,
    lhs: &Expr,
    rhs: &Expr,
    ctx: &PrecisionContext,
) -> VerificationReport {
    let digits = ctx.working_digits();
    let values = lhs.evaluate_exact().and_then(|l| Ok((l, rhs.evaluate_exact()?)));
    let (l, r) = match values {
        Ok((Some(l), Some(r))) => (l, r),
        Ok(_) => return VerificationReport::inconclusive(identity, assignment, digits, "side is not exactly summable"),
        Err(e) => return VerificationReport::inconclusive(identity, assignment, digits, e.to_string()),
    };
    let terms = terminating_terms(lhs);
    let (lf, rf) = (l.to_complex(ctx.bits()), r.to_complex(ctx.bits()));
    let equal = l == r;
    let (abs_err, rel_err) = if equal { (0.0, 0.0) } else { relative_difference(&lf, &rf, ctx.absolute_floor()) };
    VerificationReport {
        identity,
        assignment,
        lhs: Some(lf),
        rhs: Some(rf),
        abs_err,
        rel_err,
        terms_lhs: terms,
        terms_rhs: 1,
        digits,
        exact: true,
        verdict: if equal { Verdict::Pass } else { Verdict::Fail },
        reason: None,
    }
}

fn terminating_terms(e: &Expr) -> u64 {
    match e {
        Expr::Series(s) => s.termination().map_or(0, |n| n + 1),
        Expr::Product(xs) | Expr::Sum(xs) => xs.iter().map(terminating_terms).sum(),
        _ => 0,
    }
}

/// `target = constant + sum coeff * slot`, applied to an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub target: String,
    pub constant: ExactComplex,
    pub terms: Vec<(String, ExactComplex)>,
}

impl Binding {
    pub fn new(target: &str, constant: ExactComplex, terms: &[(&str, ExactComplex)]) -> Self {
        Self {
            target: target.to_string(),
            constant,
            terms: terms.iter().map(|(s, c)| (s.to_string(), c.clone())).collect(),
        }
    }

    pub fn apply(&self, p: &mut ParameterAssignment) -> Result<()> {
        let mut value = self.constant.clone();
        for (slot, coeff) in &self.terms {
            value = value + coeff * &p.slot(slot)?;
        }
        p.insert(&self.target, value);
        Ok(())
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=", self.target)?;
        let mut first = true;
        if !self.constant.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (slot, coeff) in &self.terms {
            let negative = coeff.is_real() && coeff.re.cmp0().is_lt();
            let magnitude = if negative { -coeff } else { coeff.clone() };
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if magnitude != one() {
                write!(f, "({magnitude})*")?;
            }
            f.write_str(slot)?;
            first = false;
        }
        Ok(())
    }
}

/// Parses `e=a/2`, `d=1+a-b`, `c=-3/2*b+1`.
impl FromStr for Binding {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed binding {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (target, expr) = text.split_once('=').ok_or_else(bad)?;
        if target.is_empty() || !target.chars().all(|c| c.is_ascii_alphanumeric()) || expr.is_empty() {
            return Err(bad());
        }
        let mut constant = ExactComplex::zero();
        let mut terms: Vec<(String, ExactComplex)> = Vec::new();
        let mut start = 0;
        let bytes = expr.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len()
                || (matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'*' | b'/'))
            {
                pieces.push(&expr[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-1, &piece[1..]),
                b'+' => (1, &piece[1..]),
                _ => (1, piece),
            };
            let slot_pos = body.find(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E').or_else(|| {
                // a bare `e` slot, not an exponent
                body.find(['e', 'E']).filter(|&i| i == 0 || body.as_bytes()[i - 1] == b'*')
            });
            match slot_pos {
                None => constant = constant + ExactComplex::from_int(sign) * body.parse::<ExactComplex>()?,
                Some(pos) => {
                    let slot_end =
                        body[pos..].find(|c: char| !c.is_ascii_alphanumeric()).map_or(body.len(), |k| pos + k);
                    let slot = &body[pos..slot_end];
                    let mut coeff = ExactComplex::from_int(sign);
                    let prefix = &body[..pos];
                    if !prefix.is_empty() {
                        let num = prefix.strip_suffix('*').ok_or_else(bad)?;
                        coeff = coeff * num.parse::<ExactComplex>()?;
                    }
                    let suffix = &body[slot_end..];
                    if !suffix.is_empty() {
                        let den = suffix.strip_prefix('/').ok_or_else(bad)?.parse::<Rational>().map_err(|_| bad())?;
                        if den.cmp0().is_eq() {
                            return Err(bad());
                        }
                        coeff = coeff.scale(&den.recip());
                    }
                    terms.push((slot.to_string(), coeff));
                }
            }
        }
        Ok(Self { target: target.to_string(), constant, terms })
    }
}

/// The specializations between registry entries: general, special, binding.
pub fn standard_reductions() -> Vec<(IdentityId, IdentityId, Binding)> {
    let half = q(1, 2);
    vec![
        (
            IdentityId::ShiftedPair5F4MinusOne,
            IdentityId::WellPoised5F4MinusOne,
            Binding::new("e", ExactComplex::zero(), &[("a", half.clone())]),
        ),
        (
            IdentityId::ShiftedPair4F3,
            IdentityId::WellPoised4F3,
            Binding::new("d", ExactComplex::zero(), &[("a", half.clone())]),
        ),
        (
            IdentityId::ShiftedPair5F4MinusOne,
            IdentityId::ShiftedPair3F2MinusOne,
            Binding::new("d", one(), &[("a", one()), ("b", ExactComplex::from_int(-1))]),
        ),
        (
            IdentityId::TerminatingShiftedPair4F3,
            IdentityId::TerminatingWellPoised4F3,
            Binding::new("e", ExactComplex::zero(), &[("a", half)]),
        ),
    ]
}

/// Draws an assignment for `general` under `binding`, then requires all four
/// side values (both sides of both identities, the special one on the
/// projected assignment) to agree pairwise within `tol`, or exactly when
/// both identities are terminating.
pub fn reduction_check(
    general: IdentityId,
    special: IdentityId,
    binding: &Binding,
    seed: u64,
    margin: f64,
    ctx: &PrecisionContext,
    tol: f64,
) -> VerificationReport {
    let identity = format!("{}->{}", general.alias(), special.alias());
    let digits = ctx.working_digits();
    let p = match sample_reduction(general, special, binding, seed, margin) {
        Ok(p) => p,
        Err(e) => return VerificationReport::inconclusive(identity, BTreeMap::new(), digits, e.to_string()),
    };
    reduction_report(identity, general, special, &p, ctx, tol)
}

/// Four-way comparison on a given (already bound) assignment.
pub fn reduction_report(
    identity: String,
    general: IdentityId,
    special: IdentityId,
    p: &ParameterAssignment,
    ctx: &PrecisionContext,
    tol: f64,
) -> VerificationReport {
    let assignment = p.to_f64_map();
    let digits = ctx.working_digits();
    let sp = p.project(special);
    let built = sides(general, p).and_then(|g| Ok((g, sides(special, &sp)?)));
    let ((gl, gr), (sl, sr)) = match built {
        Ok(x) => x,
        Err(e) => return VerificationReport::inconclusive(identity, assignment, digits, e.to_string()),
    };
    let exprs = [&gl, &gr, &sl, &sr];

    if general.descriptor().terminating && special.descriptor().terminating {
        let mut exact = Vec::new();
        for e in exprs {
            match e.evaluate_exact() {
                Ok(Some(v)) => exact.push(v),
                Ok(None) => {
                    return VerificationReport::inconclusive(
                        identity,
                        assignment,
                        digits,
                        "side is not exactly summable",
                    )
                }
                Err(err) => return VerificationReport::inconclusive(identity, assignment, digits, err.to_string()),
            }
        }
        let equal = exact.iter().all(|v| *v == exact[0]);
        let floats: Vec<_> = exact.iter().map(|v| v.to_complex(ctx.bits())).collect();
        let (abs_err, rel_err) = worst_pair(&floats, ctx);
        return VerificationReport {
            identity,
            assignment,
            lhs: Some(floats[0].clone()),
            rhs: Some(floats[3].clone()),
            abs_err: if equal { 0.0 } else { abs_err },
            rel_err: if equal { 0.0 } else { rel_err },
            terms_lhs: terminating_terms(&gl),
            terms_rhs: terminating_terms(&sl),
            digits,
            exact: true,
            verdict: if equal { Verdict::Pass } else { Verdict::Fail },
            reason: None,
        };
    }

    let mut values = Vec::new();
    let mut terms = Vec::new();
    for (e, label) in exprs.iter().zip(["general left", "general right", "special left", "special right"]) {
        match e.evaluate(ctx) {
            Ok(r) => {
                terms.push(r.terms_used);
                values.push(r.value);
            }
            Err(err) => {
                return VerificationReport::inconclusive(identity, assignment, digits, format!("{label}: {err}"))
            }
        }
    }
    let (abs_err, rel_err) = worst_pair(&values, ctx);
    VerificationReport {
        identity,
        assignment,
        lhs: Some(values[0].clone()),
        rhs: Some(values[3].clone()),
        abs_err,
        rel_err,
        terms_lhs: terms[0] + terms[1],
        terms_rhs: terms[2] + terms[3],
        digits,
        exact: false,
        verdict: if rel_err <= tol { Verdict::Pass } else { Verdict::Fail },
        reason: None,
    }
}

fn worst_pair(values: &[crate::numerics::Complex], ctx: &PrecisionContext) -> (f64, f64) {
    let mut worst = (0.0, 0.0);
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let (abs, rel) = relative_difference(&values[i], &values[j], ctx.absolute_floor());
            if rel > worst.1 {
                worst = (abs, rel);
            }
        }
    }
    worst
}
