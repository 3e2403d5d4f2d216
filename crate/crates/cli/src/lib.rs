//! Command-line front end: series evaluation, identity checks, seeded
//! campaigns and double-series verification, with JSON-lines reports.

pub mod args;
pub mod config;
pub mod record;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use hyperxform::identities::{check_identity, random_admissible, IdentityId, ParameterAssignment};
use hyperxform::numerics::{ExactComplex, PrecisionContext};
use hyperxform::report::{Verdict, VerificationReport};
use hyperxform::series::{classify, evaluate, ConvergenceTag, HypergeometricSeries, ParameterVector};
use hyperxform::slater::verify_slater;
use hyperxform::Error;
use rayon::prelude::*;

use args::{CampaignArgs, CheckArgs, Cli, Command, EvalArgs, SlaterArgs, SlotArgs};
use record::ReportRecord;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    InputError = 2,
    Inconclusive = 3,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }

    fn from_verdict(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Fail => Outcome::Fail,
            Verdict::Inconclusive => Outcome::Inconclusive,
        }
    }
}

/// Bad flags, unreadable files and unusable inputs; reported with exit 2.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<Outcome> {
    let ctx = PrecisionContext::with_digits(cli.digits)?;
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(InputError(format!("tolerance must be positive, got {}", cli.tol)));
    }
    let text_digits = cli.digits.min(40) as usize;
    let mut text = String::new();
    let outcome = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &ctx, &mut text, text_digits)?,
        Command::Check(a) => {
            let report = cmd_check(a, &ctx, cli.tol)?;
            describe(&report, &mut text, text_digits);
            write_records(cli.out.as_deref(), &[ReportRecord::from_report(&report, None)])?;
            Outcome::from_verdict(report.verdict)
        }
        Command::Campaign(a) => {
            let results = campaign(a, &ctx, cli.tol)?;
            let outcome = summarize(&results, &mut text);
            let records: Vec<_> = results.iter().map(|(r, seed)| ReportRecord::from_report(r, Some(*seed))).collect();
            write_records(cli.out.as_deref(), &records)?;
            outcome
        }
        Command::Slater(a) => {
            let report = cmd_slater(a, &ctx, cli.tol)?;
            describe(&report, &mut text, text_digits);
            write_records(cli.out.as_deref(), &[ReportRecord::from_report(&report, None)])?;
            Outcome::from_verdict(report.verdict)
        }
        Command::List => {
            for id in IdentityId::ALL {
                let d = id.descriptor();
                let mut slots: Vec<String> = d.slots.iter().map(|s| s.to_string()).collect();
                slots.extend(d.sequences.iter().map(|s| format!("{s}1..")));
                let _ = writeln!(text, "{:<8} {:<30} [{}] {}", id.alias(), id.name(), slots.join(" "), d.summary);
            }
            Outcome::Pass
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| InputError(format!("writing output: {e}")))?;
    Ok(outcome)
}

fn parse_list(text: &str, prec: u32) -> CliResult<ParameterVector> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<ExactComplex>().map(|x| x.to_complex(prec)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ParameterVector::new(values))
}

fn class_name(tag: &ConvergenceTag) -> String {
    match tag {
        ConvergenceTag::Terminating(n) => format!("terminating (degree {n})"),
        ConvergenceTag::Entire => "entire".into(),
        ConvergenceTag::InsideUnitDisk => "inside unit disk".into(),
        ConvergenceTag::BoundaryConvergent => "boundary convergent".into(),
        ConvergenceTag::BoundaryDivergent => "boundary divergent".into(),
        ConvergenceTag::Divergent => "divergent".into(),
    }
}

fn cmd_eval(a: &EvalArgs, ctx: &PrecisionContext, text: &mut String, digits: usize) -> CliResult<Outcome> {
    let prec = ctx.bits();
    let z = a.arg.parse::<ExactComplex>()?.to_complex(prec);
    let series = HypergeometricSeries::new(parse_list(&a.num, prec)?, parse_list(&a.den, prec)?, z);
    let class = classify(&series, ctx);
    let result = match evaluate(&series, ctx, a.max_terms) {
        Ok(r) => r,
        Err(e @ Error::NoConvergence { .. }) => {
            let _ = writeln!(text, "class: {}", class_name(&class.tag));
            let _ = writeln!(text, "inconclusive: {e}");
            return Ok(Outcome::Inconclusive);
        }
        Err(e) => return Err(e.into()),
    };
    let [re, im] = [&result.value.re, &result.value.im].map(|x| x.to_string_radix(10, Some(digits)));
    let _ = writeln!(text, "value: {re} {im}");
    let _ = writeln!(text, "terms_used: {}", result.terms_used);
    let _ = writeln!(text, "tail_estimate: {:e}", result.tail_estimate);
    match &class.parametric_excess {
        Some(s) => {
            let [sr, si] = s.to_f64_pair();
            let _ = writeln!(text, "class: {} (s = {sr}{:+}i)", class_name(&class.tag), si);
        }
        None => {
            let _ = writeln!(text, "class: {}", class_name(&class.tag));
        }
    }
    Ok(Outcome::Pass)
}

/// Builds the assignment for `id` from the slot flags; every slot of the
/// identity is required and no other slot is accepted.
pub fn assignment_from_slots(id: IdentityId, slots: &SlotArgs) -> CliResult<ParameterAssignment> {
    let desc = id.descriptor();
    let scalars = [
        ("a", &slots.a),
        ("b", &slots.b),
        ("c", &slots.c),
        ("d", &slots.d),
        ("e", &slots.e),
        ("f", &slots.f),
        ("n", &slots.n),
        ("y", &slots.y),
    ];
    let mut p = ParameterAssignment::new();
    for (name, value) in scalars {
        match (value, desc.slots.contains(&name)) {
            (Some(v), true) => {
                let x = v.parse::<ExactComplex>().map_err(|e| InputError(format!("--{name}: {e}")))?;
                p.insert(name, x);
            }
            (Some(_), false) => return Err(InputError(format!("{} has no slot {name}", id.name()))),
            (None, true) => return Err(InputError(format!("{} needs --{name}", id.name()))),
            (None, false) => {}
        }
    }
    for (name, value) in [("g", &slots.g), ("h", &slots.h)] {
        let Some(list) = value else { continue };
        if !desc.sequences.contains(&name) {
            return Err(InputError(format!("{} has no sequence {name}", id.name())));
        }
        let items = list.split(',').map(str::trim).filter(|s| !s.is_empty());
        for (i, item) in items.enumerate() {
            let x = item.parse::<ExactComplex>().map_err(|e| InputError(format!("--{name}: {e}")))?;
            p.insert(&format!("{name}{}", i + 1), x);
        }
    }
    Ok(p)
}

fn cmd_check(a: &CheckArgs, ctx: &PrecisionContext, tol: f64) -> CliResult<VerificationReport> {
    let id: IdentityId = a.identity.parse()?;
    let p = assignment_from_slots(id, &a.slots)?;
    Ok(check_identity(id, &p, ctx, tol))
}

/// Seed of draw `index` in a campaign seeded with `seed` (SplitMix64).
pub fn draw_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One check per (identity, draw), in identity order then draw order.
pub fn campaign(a: &CampaignArgs, ctx: &PrecisionContext, tol: f64) -> CliResult<Vec<(VerificationReport, u64)>> {
    if a.draws == 0 {
        return Err(InputError("draws must be at least 1".into()));
    }
    if !(a.margin.is_finite() && a.margin >= 0.0) {
        return Err(InputError(format!("margin must be nonnegative, got {}", a.margin)));
    }
    let ids: Vec<IdentityId> = if a.identity == "all" { IdentityId::ALL.to_vec() } else { vec![a.identity.parse()?] };
    let jobs: Vec<(IdentityId, u64)> = ids.iter().flat_map(|id| (0..a.draws).map(move |i| (*id, i))).collect();
    Ok(jobs
        .par_iter()
        .map(|&(id, i)| {
            let seed = draw_seed(a.seed, i);
            let report = match random_admissible(id, seed, a.margin) {
                Ok(p) => check_identity(id, &p, ctx, tol),
                Err(e) => {
                    VerificationReport::inconclusive(id.name(), Default::default(), ctx.working_digits(), e.to_string())
                }
            };
            (report, seed)
        })
        .collect())
}

/// Per-identity table; exit status 1 on any failure, 3 when more than a
/// tenth of the checks are inconclusive.
fn summarize(results: &[(VerificationReport, u64)], text: &mut String) -> Outcome {
    let _ = writeln!(
        text,
        "{:<30} {:>6} {:>6} {:>6} {:>13} {:>14}",
        "identity", "draws", "pass", "fail", "inconclusive", "worst_rel_err"
    );
    let mut names: Vec<&str> = Vec::new();
    for (r, _) in results {
        if !names.contains(&r.identity.as_str()) {
            names.push(&r.identity);
        }
    }
    let (mut fails, mut inconclusive) = (0usize, 0usize);
    for name in names {
        let rows: Vec<_> = results.iter().filter(|(r, _)| r.identity == name).collect();
        let count = |v: Verdict| rows.iter().filter(|(r, _)| r.verdict == v).count();
        let (p, f, i) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Inconclusive));
        let worst = rows.iter().map(|(r, _)| r.rel_err).filter(|e| e.is_finite()).fold(0.0, f64::max);
        let _ = writeln!(text, "{name:<30} {:>6} {p:>6} {f:>6} {i:>13} {worst:>14.3e}", rows.len());
        for (r, seed) in rows.iter().filter(|(r, _)| r.verdict != Verdict::Pass) {
            let detail = r.reason.clone().unwrap_or_else(|| format!("rel_err {:e}", r.rel_err));
            let _ = writeln!(text, "  {} seed {seed}: {detail}", r.verdict);
        }
        fails += f;
        inconclusive += i;
    }
    if fails > 0 {
        Outcome::Fail
    } else if inconclusive * 10 > results.len() {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    }
}

fn cmd_slater(a: &SlaterArgs, ctx: &PrecisionContext, tol: f64) -> CliResult<VerificationReport> {
    let text = fs::read_to_string(&a.config).map_err(|e| InputError(format!("{}: {e}", a.config.display())))?;
    let cfg = config::parse_configuration(&text, ctx.bits())
        .map_err(|e| InputError(format!("{}: {e}", a.config.display())))?;
    cfg.validate(ctx)?;
    Ok(verify_slater(&cfg, ctx, tol))
}

fn describe(r: &VerificationReport, text: &mut String, digits: usize) {
    let _ = writeln!(text, "identity: {}", r.identity);
    let assignment: Vec<String> = r
        .assignment
        .iter()
        .map(|(k, [re, im])| if *im == 0.0 { format!("{k}={re}") } else { format!("{k}={re}{im:+}i") })
        .collect();
    let _ = writeln!(text, "assignment: {}", assignment.join(", "));
    for (label, side) in [("lhs", &r.lhs), ("rhs", &r.rhs)] {
        if let Some(v) = side {
            let _ = writeln!(text, "{label}: {}", v.to_string_digits(digits));
        }
    }
    if r.rel_err.is_finite() {
        let _ = writeln!(text, "rel_err: {:e}{}", r.rel_err, if r.exact { " (exact)" } else { "" });
    }
    let _ = writeln!(text, "verdict: {}", r.verdict);
    if let Some(reason) = &r.reason {
        let _ = writeln!(text, "reason: {reason}");
    }
}

fn write_records(path: Option<&Path>, records: &[ReportRecord]) -> CliResult<()> {
    let Some(path) = path else { return Ok(()) };
    let mut body = String::new();
    for r in records {
        body.push_str(&r.to_line());
        body.push('\n');
    }
    fs::write(path, body).map_err(|e| InputError(format!("{}: {e}", path.display())))
}
