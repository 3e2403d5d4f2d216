//! Precision arithmetic kernel: scalars, Pochhammer symbols and gamma ratios.

mod complex;
mod exact;
mod gamma;
mod pochhammer;

pub use complex::Complex;
pub use exact::ExactComplex;
pub use gamma::{gamma, gamma_ratio, gamma_ratio_with_policy, log_gamma, PolePolicy};
pub use pochhammer::{pochhammer, pochhammer_exact, pochhammer_product, pochhammer_product_exact};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision and requested relative accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    working_digits: u32,
    target_rel_tol: f64,
}

impl PrecisionContext {
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const MIN_DIGITS: u32 = 16;

    pub fn new(working_digits: u32, target_rel_tol: f64) -> Result<Self> {
        if working_digits < Self::MIN_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "working digits must be at least {}, got {working_digits}",
                Self::MIN_DIGITS
            )));
        }
        let floor = Self::tolerance_floor(working_digits);
        if !(target_rel_tol.is_finite() && target_rel_tol >= floor) {
            return Err(Error::InvalidPrecision(format!(
                "target tolerance {target_rel_tol:e} is below 1e{} for {working_digits} digits",
                4 - working_digits as i64
            )));
        }
        Ok(Self { working_digits, target_rel_tol })
    }

    /// Context at `digits` with the default tolerance for that precision
    /// (`1e-30` at 50 digits).
    pub fn with_digits(digits: u32) -> Result<Self> {
        let d = digits as i32;
        let exponent = (d - 20).max(d / 2);
        let tol = format!("1e-{exponent}").parse::<f64>().expect("valid literal");
        let tol = tol.max(Self::tolerance_floor(digits));
        Self::new(digits, tol)
    }

    /// Same precision, different target tolerance.
    pub fn with_tolerance(&self, target_rel_tol: f64) -> Result<Self> {
        Self::new(self.working_digits, target_rel_tol)
    }

    fn tolerance_floor(digits: u32) -> f64 {
        format!("1e{}", 4 - digits as i64).parse().expect("valid literal")
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn target_rel_tol(&self) -> f64 {
        self.target_rel_tol
    }

    /// Mantissa bits carrying `working_digits` decimal digits.
    pub fn bits(&self) -> u32 {
        (self.working_digits as f64 * LOG2_10).ceil() as u32
    }

    /// Distance below which a value counts as a nonpositive integer.
    pub fn pole_tolerance(&self) -> f64 {
        10f64.powi(2 - self.working_digits as i32)
    }

    /// Magnitude below which a sum is treated as zero for relative tests.
    pub fn absolute_floor(&self) -> f64 {
        10f64.powi(-(self.working_digits as i32) / 2)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { working_digits: Self::DEFAULT_DIGITS, target_rel_tol: 1e-30 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_context() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.working_digits(), 50);
        assert_eq!(ctx.target_rel_tol(), 1e-30);
        assert_eq!(ctx.bits(), 167);
        assert_eq!(PrecisionContext::with_digits(50).unwrap(), ctx);
    }

    #[test]
    fn rejects_low_digits_and_tight_tolerance() {
        assert!(PrecisionContext::new(15, 1e-8).is_err());
        assert!(PrecisionContext::new(16, 1e-13).is_err());
        assert!(PrecisionContext::new(16, 1e-12).is_ok());
        assert!(PrecisionContext::new(50, 0.0).is_err());
        assert!(PrecisionContext::with_digits(16).is_ok());
        assert!(PrecisionContext::with_digits(120).is_ok());
    }
}
