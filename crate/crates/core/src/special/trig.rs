//! `sin(pi x)` and `cos(pi x)` with exact argument reduction, so that zeros at
//! integers come out as exact zeros and large arguments keep full accuracy.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Splits `|x|` as `n/2 + f` with `|f| <= 1/4`; returns `(n mod 4, pi f)`.
fn reduce(x: f64) -> (u8, f64) {
    let y = x.abs();
    let n = (2.0 * y).round();
    let f = y - 0.5 * n;
    let quadrant = (n % 4.0) as u8;
    (quadrant, PI * f)
}

pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (q, t) = reduce(x);
    let v = match q {
        0 => t.sin(),
        1 => t.cos(),
        2 => -t.sin(),
        _ => -t.cos(),
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let (q, t) = reduce(x);
    match q {
        0 => t.cos(),
        1 => -t.sin(),
        2 => -t.cos(),
        _ => t.sin(),
    }
}

pub fn sin_pi_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(sin_pi(z.re), 0.0);
    }
    let py = PI * z.im;
    Complex64::new(sin_pi(z.re) * py.cosh(), cos_pi(z.re) * py.sinh())
}
