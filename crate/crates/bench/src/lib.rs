//! Shared fixtures for the criterion benches.

use hyperxform::identities::{random_admissible, IdentityId, ParameterAssignment};
use hyperxform::numerics::{Complex, PrecisionContext};
use hyperxform::series::{HypergeometricSeries, ParameterVector};

pub fn context(digits: u32) -> PrecisionContext {
    PrecisionContext::with_digits(digits).expect("supported precision")
}

/// Real-parameter series builder.
pub fn series(numer: &[f64], denom: &[f64], z: f64, ctx: &PrecisionContext) -> HypergeometricSeries {
    let prec = ctx.bits();
    HypergeometricSeries::new(
        ParameterVector::from_reals(numer, prec),
        ParameterVector::from_reals(denom, prec),
        Complex::from_f64(z, 0.0, prec),
    )
}

pub fn draw(id: IdentityId, seed: u64) -> ParameterAssignment {
    random_admissible(id, seed, 1.0).expect("admissible draw")
}
