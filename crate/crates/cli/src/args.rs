use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "hyperxform", version, about = "Evaluate hypergeometric series and verify identities between them")]
pub struct Cli {
    /// Working precision in decimal digits (at least 16).
    #[arg(long, global = true, env = "HYPERXFORM_DIGITS", default_value_t = 50)]
    pub digits: u32,

    /// Relative tolerance for a pass.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Write one JSON report record per check to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sum a single pFq series.
    Eval(EvalArgs),
    /// Check one identity at one assignment.
    Check(CheckArgs),
    /// Check an identity (or all of them) on seeded random assignments.
    Campaign(CampaignArgs),
    /// Verify the double-series transformation for a JSON configuration.
    Slater(SlaterArgs),
    /// List the registered identities.
    List,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Numerator parameters, comma separated (`re` or `re+imi`).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub num: String,
    /// Denominator parameters, comma separated.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub den: String,
    /// Argument z.
    #[arg(long, allow_hyphen_values = true)]
    pub arg: String,
    #[arg(long, default_value_t = hyperxform::series::DEFAULT_MAX_TERMS)]
    pub max_terms: u64,
}

/// Slot values for `check`. Unused slots must be left out.
#[derive(Debug, Args, Default)]
pub struct SlotArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Extra numerator sequence, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Extra denominator sequence, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Identity name or short alias (see `list`).
    pub identity: String,
    #[command(flatten)]
    pub slots: SlotArgs,
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    /// Identity name, short alias, or `all`.
    pub identity: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub draws: u64,
    /// Slack required on every convergence proviso.
    #[arg(long, default_value_t = 1.0)]
    pub margin: f64,
}

#[derive(Debug, Args)]
pub struct SlaterArgs {
    /// JSON configuration file.
    pub config: PathBuf,
}
