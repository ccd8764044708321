//! Multiple zeta functions with identical arguments,
//! `zeta_r(s) = sum_{1 <= m_1 < ... < m_r} (m_1 ... m_r)^{-s}`, on the real
//! line: evaluation, exact values at nonpositive integers, pole structure,
//! real-zero census and numerical verification of Rouché-type inequalities.
//!
//! ```
//! use multizeta_core::multizeta::{eval_exact, eval_zeta_r};
//! use multizeta_core::{Rational, ZetaParams};
//!
//! assert_eq!(eval_exact(1, 2).unwrap().values[2], Rational::new(1, 288));
//! let z = eval_zeta_r(2.0, 2, &ZetaParams::default()).unwrap();
//! assert!((z.value - std::f64::consts::PI.powi(4) / 120.0).abs() < 1e-14);
//! ```

pub mod asymptote;
pub mod error;
pub mod multizeta;
pub mod rational;
pub mod rouche;
pub mod special;
pub mod table;
pub mod zeros;

pub use error::{Error, Result};
pub use rational::{DecimalRounding, Rational};
pub use special::{EvalResult, Scalar, ZetaParams};
