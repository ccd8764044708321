//! Scalar special functions: Bernoulli numbers, Gamma and the Riemann zeta
//! function.

mod bernoulli;
mod gamma;
mod trig;
mod zeta;

use std::fmt::Debug;

use num_complex::{Complex64, ComplexFloat};

use crate::error::{Error, Result};

pub use bernoulli::{bernoulli, zeta_neg_int_exact, BernoulliCache, DEFAULT_BERNOULLI_CAP};
pub use gamma::{gamma, gamma_real, ln_gamma, ln_gamma_real, GammaValue};
pub use trig::{cos_pi, sin_pi, sin_pi_complex};
pub use zeta::{riemann_zeta, zeta, zeta_euler_maclaurin};

pub(crate) use zeta::power_sum_tail;

/// Largest imaginary part accepted by [`riemann_zeta`].
pub const MAX_IM: f64 = 50.0;

/// Numeric scalar the evaluators are generic over: `f64` on the real line,
/// `Complex64` off it.
pub trait Scalar:
    ComplexFloat<Real = f64>
    + std::ops::Mul<f64, Output = Self>
    + std::ops::Add<f64, Output = Self>
    + std::ops::Sub<f64, Output = Self>
    + std::ops::Div<f64, Output = Self>
    + std::ops::AddAssign
    + std::ops::MulAssign
    + Send
    + Sync
    + Debug
    + 'static
{
    const IS_REAL: bool;

    fn real(x: f64) -> Self;

    /// `m^(-self)` for a positive base `m`.
    fn base_pow_neg(self, m: f64) -> Self;

    fn sin_pi(self) -> Self;

    /// `ln Gamma(self)` for `Re self >= 1/2`.
    fn ln_gamma_right(self) -> Self;

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re(), self.im())
    }
}

impl Scalar for f64 {
    const IS_REAL: bool = true;

    fn real(x: f64) -> Self {
        x
    }

    fn base_pow_neg(self, m: f64) -> Self {
        m.powf(-self)
    }

    fn sin_pi(self) -> Self {
        trig::sin_pi(self)
    }

    fn ln_gamma_right(self) -> Self {
        gamma::ln_gamma_right_real(self)
    }
}

impl Scalar for Complex64 {
    const IS_REAL: bool = false;

    fn real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn base_pow_neg(self, m: f64) -> Self {
        let l = m.ln();
        let mag = m.powf(-self.re);
        let (sin, cos) = (-self.im * l).sin_cos();
        Complex64::new(mag * cos, mag * sin)
    }

    fn sin_pi(self) -> Self {
        trig::sin_pi_complex(self)
    }

    fn ln_gamma_right(self) -> Self {
        gamma::ln_gamma_right(self)
    }
}

/// Tuning of the Euler–Maclaurin zeta evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaParams {
    /// Summation cutoff N (a floor; it is raised for large |s|).
    pub em_cutoff: usize,
    /// Number K of Bernoulli correction terms.
    pub em_terms: usize,
    /// Below this real part the functional equation is used.
    pub reflect_threshold: f64,
    /// Radius around each pole inside which results are flagged `near_pole`.
    pub pole_radius: f64,
}

impl Default for ZetaParams {
    fn default() -> Self {
        ZetaParams {
            em_cutoff: 30,
            em_terms: 12,
            reflect_threshold: 0.5,
            pole_radius: 1e-9,
        }
    }
}

impl ZetaParams {
    pub const MAX_EM_TERMS: usize = 30;
    pub const MIN_EM_CUTOFF: usize = 10;

    pub fn validate(&self) -> Result<()> {
        if self.em_terms == 0 || self.em_terms > Self::MAX_EM_TERMS {
            return Err(Error::InvalidParams(format!(
                "em_terms must lie in 1..={}, got {}",
                Self::MAX_EM_TERMS,
                self.em_terms
            )));
        }
        if self.em_cutoff < Self::MIN_EM_CUTOFF {
            return Err(Error::InvalidParams(format!(
                "em_cutoff must be at least {}, got {}",
                Self::MIN_EM_CUTOFF,
                self.em_cutoff
            )));
        }
        if !(0.0..=1.0).contains(&self.reflect_threshold) {
            return Err(Error::InvalidParams(format!(
                "reflect_threshold must lie in [0, 1], got {}",
                self.reflect_threshold
            )));
        }
        if !(self.pole_radius >= 0.0 && self.pole_radius.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "pole_radius must be finite and nonnegative, got {}",
                self.pole_radius
            )));
        }
        Ok(())
    }
}

/// A floating-point value with an (estimated, not guaranteed) absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub abs_err_est: f64,
    pub near_pole: bool,
    /// The error estimate exceeds `1e-12 * max(1, |value|)`.
    pub degraded: bool,
}

/// Relative accuracy target used for the `degraded` flag.
pub const TARGET_REL_ERR: f64 = 1e-12;

impl<T: Scalar> EvalResult<T> {
    pub(crate) fn new(value: T, abs_err_est: f64, near_pole: bool) -> Self {
        let degraded = near_pole
            || !abs_err_est.is_finite()
            || abs_err_est > TARGET_REL_ERR * value.abs().max(1.0);
        EvalResult {
            value,
            abs_err_est,
            near_pole,
            degraded,
        }
    }

    pub(crate) fn exact(value: T) -> Self {
        Self::new(value, 0.0, false)
    }
}
