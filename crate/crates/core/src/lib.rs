//! Extended-precision generalized hypergeometric series, together with
//! machinery for checking transformation and summation formulas on both
//! sides: exact rational arithmetic for terminating forms, multiprecision
//! complex arithmetic with certified truncation for the rest.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: precision context, complex and exact-rational scalars,
//!   Pochhammer symbols, log-gamma and gamma ratios.
//! - [`series`]: the `pFq` data model, convergence classification and
//!   summation (direct, unit-argument extrapolated, and exact).
//! - [`slater`]: the general double-series transformation with its
//!   specialization to the `2F1`-kernel transformation.
//! - [`identities`]: the registry of closed forms and transformations with
//!   admissibility predicates and a seeded sampler.
//! - [`report`]: verification records shared by the above.

pub mod error;
pub mod identities;
pub mod numerics;
pub mod report;
pub mod series;
pub mod slater;

pub use error::{Error, Result};
pub use identities::{
    check_identity, lhs_value, random_admissible, reduction_check, rhs_value, Binding, IdentityDescriptor, IdentityId,
    ParameterAssignment,
};
pub use numerics::{
    gamma_ratio, log_gamma, pochhammer, pochhammer_product, Complex, ExactComplex, PolePolicy, PrecisionContext,
};
pub use report::{Verdict, VerificationReport};
pub use series::{
    classify, detect_termination, evaluate, evaluate_exact, ConvergenceClass, ConvergenceTag, EvaluationResult,
    ExactSeries, HypergeometricSeries, ParameterVector,
};
pub use slater::{
    exton_specialize, rearrangement_oracle, slater_lhs, slater_rhs, verify_slater, SlaterConfiguration,
    SlaterSideResult,
};
