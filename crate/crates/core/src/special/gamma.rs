//! Gamma and log-gamma for real and complex arguments.
//!
//! Stirling series after an upward shift to `Re z >= 15`, reflection for
//! `Re z < 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::trig::{sin_pi, sin_pi_complex};

/// `B_{2k} / (2k (2k - 1))`, k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT_TO: f64 = 15.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Result of [`gamma`]. On overflow `value` holds an infinity carrying the
/// phase of the true value and `overflow` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub value: Complex64,
    pub overflow: bool,
}

fn stirling_tail_real(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = 0.0;
    for c in STIRLING {
        acc += c * pow;
        pow *= inv2;
    }
    acc
}

fn stirling_tail(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        acc += pow * c;
        pow *= inv2;
    }
    acc
}

/// `ln Gamma(x)` for `x >= 1/2`, where Gamma is positive.
pub(crate) fn ln_gamma_right_real(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let mut x = x;
    let mut prod = 1.0;
    while x < SHIFT_TO {
        prod *= x;
        x += 1.0;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_tail_real(x) - prod.ln()
}

/// `ln Gamma(z)` for `Re z >= 1/2`, principal-ish branch (the imaginary part
/// is only meaningful modulo 2 pi).
pub(crate) fn ln_gamma_right(z: Complex64) -> Complex64 {
    debug_assert!(z.re >= 0.5);
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while w.re < SHIFT_TO {
        prod *= w;
        w += 1.0;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + stirling_tail(w) - prod.ln()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln|Gamma(x)|, sign Gamma(x))` for real `x`.
pub fn ln_gamma_real(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            k: 0,
            location: x,
        });
    }
    if x >= 0.5 {
        return Ok((ln_gamma_right_real(x), 1.0));
    }
    // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_right_real(1.0 - x);
    Ok((lg, s.signum()))
}

/// Complex `ln Gamma(z)`; the imaginary part is defined modulo `2 pi`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("gamma of non-finite argument"));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole {
            k: 0,
            location: z.re,
        });
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    let s = sin_pi_complex(z);
    Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(Complex64::new(1.0, 0.0) - z))
}

pub fn gamma(s: Complex64) -> Result<GammaValue> {
    if s.im == 0.0 {
        let (lg, sign) = ln_gamma_real(s.re)?;
        let mag = lg.exp();
        return Ok(GammaValue {
            value: Complex64::new(sign * mag, 0.0),
            overflow: mag.is_infinite(),
        });
    }
    let lg = ln_gamma(s)?;
    let mag = lg.re.exp();
    let (sin, cos) = lg.im.sin_cos();
    if mag.is_infinite() {
        return Ok(GammaValue {
            value: Complex64::new(inf_signed(cos), inf_signed(sin)),
            overflow: true,
        });
    }
    Ok(GammaValue {
        value: Complex64::new(mag * cos, mag * sin),
        overflow: false,
    })
}

fn inf_signed(c: f64) -> f64 {
    if c == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(c)
    }
}

/// Real Gamma; `+-inf` on overflow.
pub fn gamma_real(x: f64) -> Result<f64> {
    let (lg, sign) = ln_gamma_real(x)?;
    Ok(sign * lg.exp())
}
