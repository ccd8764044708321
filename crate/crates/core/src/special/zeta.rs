//! Riemann zeta via Euler–Maclaurin summation, with the functional equation
//! on the left of `reflect_threshold`.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use super::{bernoulli, EvalResult, Scalar, ZetaParams, MAX_IM};
use crate::error::{Error, Result};

/// `B_{2k} / (2k)!` for `k = 0..=ZetaParams::MAX_EM_TERMS + 1` (index 0 unused).
fn em_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let kmax = ZetaParams::MAX_EM_TERMS + 1;
        let mut out = vec![0.0; kmax + 1];
        let mut fact = crate::rational::Rational::one();
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            fact = fact * crate::rational::Rational::from(((2 * k - 1) * (2 * k)) as i64);
            let b = bernoulli(2 * k).expect("index far below the cap");
            *slot = (b / &fact).to_f64();
        }
        out
    })
}

/// Smallest Euler–Maclaurin cutoff for which the correction series decays
/// geometrically at argument `s` with `k_terms` terms.
fn em_floor<T: Scalar>(s: T, cutoff: usize, k_terms: usize) -> usize {
    let by_height = (10.0 + 1.3 * s.im().abs()).ceil() as usize;
    let by_size = ((s.abs() + 2.0 * k_terms as f64) / 3.0).ceil() as usize;
    cutoff.max(by_height).max(by_size)
}

/// Euler–Maclaurin evaluation of `sum_{m >= start} m^{-s}` with an explicit
/// summation cutoff `n` (`n >= start`). Returns the value and an error
/// estimate (first omitted correction plus accumulated rounding).
fn em_sum<T: Scalar>(s: T, start: usize, n: usize, k_terms: usize) -> (T, f64) {
    debug_assert!(start >= 1 && n >= start);
    let mut direct = T::real(0.0);
    let mut magnitude = 0.0;
    for m in (start..n).rev() {
        let t = s.base_pow_neg(m as f64);
        magnitude += t.abs();
        direct += t;
    }
    let nf = n as f64;
    let base = s.base_pow_neg(nf);
    let integral = base * nf / (s - 1.0);
    let half = base * 0.5;
    magnitude += integral.abs() + half.abs();

    let c = em_coefficients();
    let inv_n2 = 1.0 / (nf * nf);
    let mut x = s * base / nf;
    let mut corr = T::real(0.0);
    for (k, &ck) in c.iter().enumerate().take(k_terms + 1).skip(1) {
        if k > 1 {
            let a = 2.0 * k as f64;
            x = x * (s + (a - 3.0)) * (s + (a - 2.0)) * inv_n2;
        }
        let t = x * ck;
        magnitude += t.abs();
        corr += t;
    }
    let next = {
        let a = 2.0 * (k_terms + 1) as f64;
        let x = x * (s + (a - 3.0)) * (s + (a - 2.0)) * inv_n2;
        (x * c[k_terms + 1]).abs()
    };
    let value = direct + integral + half + corr;
    let err = next + 4.0 * f64::EPSILON * magnitude;
    (value, err)
}

/// `sum_{m >= start} m^{-s}` for `Re s > 1`, cutoff chosen automatically.
pub(crate) fn power_sum_tail<T: Scalar>(s: T, start: usize, params: &ZetaParams) -> (T, f64) {
    let floor = em_floor(s, params.em_cutoff, params.em_terms);
    let n = (start - 1 + params.em_cutoff).max(floor);
    em_sum(s, start, n, params.em_terms)
}

/// Unreflected Euler–Maclaurin value of zeta with an explicit cutoff `n` and
/// `k_terms` corrections. Valid (though possibly ill-conditioned) for any
/// `s != 1`; mostly useful as an independent check of [`riemann_zeta`].
pub fn zeta_euler_maclaurin<T: Scalar>(s: T, n: usize, k_terms: usize) -> Result<EvalResult<T>> {
    if k_terms == 0 || k_terms > ZetaParams::MAX_EM_TERMS {
        return Err(Error::InvalidParams(format!(
            "k_terms must lie in 1..={}, got {k_terms}",
            ZetaParams::MAX_EM_TERMS
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParams("cutoff must be positive".into()));
    }
    check_argument(s)?;
    let (value, err) = em_sum(s, 1, n, k_terms);
    Ok(EvalResult::new(value, err, false))
}

fn check_argument<T: Scalar>(s: T) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::domain(format!("zeta of non-finite argument {s:?}")));
    }
    if s.im().abs() > MAX_IM {
        return Err(Error::domain(format!(
            "|Im s| = {} exceeds the supported strip {MAX_IM}",
            s.im().abs()
        )));
    }
    if s.re() == 1.0 && s.im() == 0.0 {
        return Err(Error::Pole {
            k: 1,
            location: 1.0,
        });
    }
    Ok(())
}

/// Riemann zeta function. Returns a pole error exactly at `s = 1`; within
/// `params.pole_radius` of it the value is returned with `near_pole` set.
pub fn riemann_zeta<T: Scalar>(s: T, params: &ZetaParams) -> Result<EvalResult<T>> {
    params.validate()?;
    check_argument(s)?;
    if s.re() == 0.0 && s.im() == 0.0 {
        return Ok(EvalResult::exact(T::real(-0.5)));
    }
    let near_pole = (s - 1.0).abs() <= params.pole_radius;
    if s.re() >= params.reflect_threshold {
        let n = em_floor(s, params.em_cutoff, params.em_terms);
        let (value, err) = em_sum(s, 1, n, params.em_terms);
        return Ok(EvalResult::new(value, err, near_pole));
    }
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let w = T::real(1.0) - s;
    let n = em_floor(w, params.em_cutoff, params.em_terms);
    let (zw, zw_err) = em_sum(w, 1, n, params.em_terms);
    let log_factor = s * LN_2 + (s - 1.0) * PI.ln() + w.ln_gamma_right();
    let factor = log_factor.exp() * (s * 0.5).sin_pi();
    let value = factor * zw;
    let err = factor.abs() * zw_err + value.abs() * f64::EPSILON * (log_factor.abs() + 8.0);
    Ok(EvalResult::new(value, err, near_pole))
}

/// Real zeta with default parameters.
pub fn zeta(s: f64) -> Result<f64> {
    riemann_zeta(s, &ZetaParams::default()).map(|r| r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::zeta_neg_int_exact;
    use num_complex::Complex64;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn coefficients() {
        let c = em_coefficients();
        assert!((c[1] - 1.0 / 12.0).abs() < 1e-17);
        assert!((c[2] + 1.0 / 720.0).abs() < 1e-18);
        assert!((c[3] - 1.0 / 30240.0).abs() < 1e-20);
    }

    #[test]
    fn classical_values() {
        let p = ZetaParams::default();
        let z2 = riemann_zeta(2.0, &p).unwrap();
        assert!(rel(z2.value, PI * PI / 6.0) < 1e-15);
        assert!(!z2.degraded && !z2.near_pole);
        assert!(rel(zeta(4.0).unwrap(), PI.powi(4) / 90.0) < 1e-15);
        assert!(rel(zeta(-1.0).unwrap(), -1.0 / 12.0) < 1e-15);
        assert_eq!(zeta(0.0).unwrap(), -0.5);
        assert_eq!(zeta(-2.0).unwrap(), 0.0);
        assert!(rel(zeta(0.5).unwrap(), -1.460_354_508_809_586_8) < 1e-14);
        assert!(rel(zeta(3.0).unwrap(), 1.202_056_903_159_594_3) < 1e-15);
    }

    #[test]
    fn half_agrees_across_three_paths() {
        let want = -1.460_354_508_809_586_8;
        let a = riemann_zeta(0.5, &ZetaParams::default()).unwrap().value;
        let b = riemann_zeta(
            0.5,
            &ZetaParams {
                em_cutoff: 57,
                em_terms: 20,
                ..ZetaParams::default()
            },
        )
        .unwrap()
        .value;
        let c = riemann_zeta(
            0.5,
            &ZetaParams {
                reflect_threshold: 0.6,
                ..ZetaParams::default()
            },
        )
        .unwrap()
        .value;
        for v in [a, b, c] {
            assert!((v - want).abs() < 1e-11);
        }
    }

    #[test]
    fn pole_handling() {
        let p = ZetaParams::default();
        assert!(matches!(riemann_zeta(1.0, &p), Err(Error::Pole { k: 1, .. })));
        let s = 1.0 + 1e-10;
        let r = riemann_zeta(s, &p).unwrap();
        assert!(r.near_pole && r.degraded);
        assert!(rel(r.value, 1.0 / (s - 1.0) + 0.577_215_664_901_532_9) < 1e-12);
        let r = riemann_zeta(1.0 + 1e-6, &p).unwrap();
        assert!(!r.near_pole);
    }

    #[test]
    fn rejects_bad_input() {
        let p = ZetaParams::default();
        assert!(matches!(riemann_zeta(f64::NAN, &p), Err(Error::Domain(_))));
        assert!(matches!(riemann_zeta(Complex64::new(0.2, 60.0), &p), Err(Error::Domain(_))));
        let bad = ZetaParams {
            em_terms: 31,
            ..p
        };
        assert!(matches!(riemann_zeta(2.0, &bad), Err(Error::InvalidParams(_))));
        let bad = ZetaParams {
            em_cutoff: 9,
            ..p
        };
        assert!(bad.validate().is_err());
        let bad = ZetaParams {
            reflect_threshold: 1.5,
            ..p
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn negative_integers_match_exact_values() {
        for n in 0..=100usize {
            let exact = zeta_neg_int_exact(n).unwrap();
            let got = riemann_zeta(-(n as f64), &ZetaParams::default()).unwrap();
            if exact.is_zero() {
                assert_eq!(got.value, 0.0, "n = {n}");
                continue;
            }
            let want = exact.to_f64();
            assert!(
                (got.value - want).abs() <= 1e-10 * want.abs().max(1.0),
                "n = {n}: {} vs {want}",
                got.value
            );
            assert!(got.value.signum() == exact.signum() as f64);
        }
    }

    #[test]
    fn accuracy_target_on_real_line() {
        let p = ZetaParams::default();
        for i in 0..=1200 {
            let s = -60.0 + 0.1 * i as f64 + 0.013;
            let r = riemann_zeta(s, &p).unwrap();
            assert!(!r.degraded, "s = {s}: err {}", r.abs_err_est);
        }
    }

    #[test]
    fn complex_known_values() {
        let p = ZetaParams::default();
        // First nontrivial zero.
        let rho = Complex64::new(0.5, 14.134_725_141_734_693);
        let z = riemann_zeta(rho, &p).unwrap();
        assert!(z.value.norm() < 1e-12, "{:?}", z);
        // zeta(2 + i)
        let z = riemann_zeta(Complex64::new(2.0, 1.0), &p).unwrap().value;
        assert!((z - Complex64::new(1.150_355_703_254_902_7, -0.437_530_865_919_607_8)).norm() < 1e-13);
        // Reflection path: zeta(-1 + 2i)
        let z = riemann_zeta(Complex64::new(-1.0, 2.0), &p).unwrap().value;
        let direct = zeta_euler_maclaurin(Complex64::new(-1.0, 2.0), 60, 20).unwrap().value;
        assert!((z - direct).norm() < 1e-11 * direct.norm().max(1.0));
        // Real and complex paths agree on the real axis.
        for s in [-7.3, -0.4, 0.3, 0.8, 2.5] {
            let a = riemann_zeta(s, &p).unwrap().value;
            let b = riemann_zeta(Complex64::new(s, 0.0), &p).unwrap().value;
            assert!((b.re - a).abs() < 1e-13 * a.abs().max(1.0) && b.im.abs() < 1e-13);
        }
    }

    #[test]
    fn tail_sums() {
        let p = ZetaParams::default();
        let (t, err) = power_sum_tail(2.0, 11, &p);
        let head: f64 = (1..=10).map(|m| 1.0 / (m * m) as f64).sum();
        assert!((t - (PI * PI / 6.0 - head)).abs() < 1e-15);
        assert!(err < 1e-16);
        // Large exponents: the tail is dominated by its first term.
        let (t, _) = power_sum_tail(240.0, 17, &p);
        let first = 17f64.powf(-240.0);
        assert!(((t - first) / first - (17.0f64 / 18.0).powf(240.0)).abs() < 1e-6);
    }
}
