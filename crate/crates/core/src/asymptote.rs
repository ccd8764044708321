//! Pole structure of `zeta_r` and growth models.
//!
//! `zeta_r` has poles at `s = 1/k` (`1 <= k <= r`) of order `floor(r/k)`,
//! with `zeta_r(s) ~ C_r(k) (ks - 1)^{-floor(r/k)}`.

use crate::error::{Error, Result};
use crate::multizeta::{eval_exact, eval_profile, Sign};
use crate::rational::Rational;
use crate::special::{riemann_zeta, ZetaParams};

/// One pole of `zeta_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSpec {
    pub r: usize,
    pub k: usize,
    pub location: Rational,
    pub order: usize,
    pub coefficient: f64,
    /// `sign(coefficient) == (-1)^{r + order}`.
    pub sign_matches: bool,
}

impl PoleSpec {
    pub fn expected_sign(&self) -> Sign {
        Sign::from_parity(self.r + self.order)
    }
}

fn check_rk(r: usize, k: usize) -> Result<()> {
    if r == 0 || k == 0 || k > r {
        return Err(Error::domain(format!("need 1 <= k <= r, got r = {r}, k = {k}")));
    }
    Ok(())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

fn parity_sign(e: usize) -> f64 {
    if e.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `C_r(k)` from the closed forms: `1/r!` for `k = 1`, `(-1)^{r-1}/r` for
/// `k = r`, and for `r = kq + l`,
/// `(-1)^{(k-1)q} / (k^q q!) * zeta_l(1/k)` (the zeta factor absent when `l = 0`).
pub fn coefficient_closed_form(r: usize, k: usize, params: &ZetaParams) -> Result<f64> {
    check_rk(r, k)?;
    if k == 1 {
        return Ok(1.0 / factorial(r));
    }
    if k == r {
        return Ok(parity_sign(r - 1) / r as f64);
    }
    let q = r / k;
    let l = r % k;
    let base = parity_sign((k - 1) * q) / ((k as f64).powi(q as i32) * factorial(q));
    if l == 0 {
        return Ok(base);
    }
    let z = eval_profile(1.0 / k as f64, l, params)?;
    Ok(base * z.values[l].value)
}

/// `C_r(k)` through the recursion of the existence proof, built bottom-up
/// from `C_k(k) = (-1)^{k-1}/k`:
///
/// `C_m = (1/m) [ sum*_j (-1)^{j-1} zeta(j/k) C_{m-j} + (-1)^{k-1} D_{m-k} ]`
///
/// where `sum*` runs over `j <= m-k`, `j != k`, `floor((m-j)/k) = floor(m/k)`,
/// and `D_{m-k} = C_{m-k}` if `2k <= m`, else `zeta_{m-k}(1/k)`.
pub fn coefficient_recursive(r: usize, k: usize, params: &ZetaParams) -> Result<f64> {
    check_rk(r, k)?;
    let kf = k as f64;
    // zeta(j/k) for j < k and zeta_l(1/k) for l < k are the only transcendental inputs.
    let mut zeta_jk = vec![0.0; k];
    for (j, slot) in zeta_jk.iter_mut().enumerate().skip(1) {
        *slot = riemann_zeta(j as f64 / kf, params)?.value;
    }
    let low = if k > 1 {
        eval_profile(1.0 / kf, k - 1, params)?
            .values
            .iter()
            .map(|v| v.value)
            .collect::<Vec<_>>()
    } else {
        vec![1.0]
    };
    // c[m] = C_m(k) for m >= k.
    let mut c = vec![0.0; r + 1];
    c[k] = parity_sign(k - 1) / kf;
    for m in (k + 1)..=r {
        let mut acc = 0.0;
        for j in 1..=(m - k) {
            if j == k || (m - j) / k != m / k {
                continue;
            }
            acc += parity_sign(j - 1) * zeta_jk[j] * c[m - j];
        }
        let d = if 2 * k <= m { c[m - k] } else { low[m - k] };
        acc += parity_sign(k - 1) * d;
        c[m] = acc / m as f64;
    }
    Ok(c[r])
}

/// All poles of `zeta_r`, `k = 1..=r`.
pub fn pole_table(r: usize, params: &ZetaParams) -> Result<Vec<PoleSpec>> {
    if r == 0 {
        return Ok(Vec::new());
    }
    (1..=r)
        .map(|k| {
            let coefficient = coefficient_closed_form(r, k, params)?;
            let order = r / k;
            let expected = Sign::from_parity(r + order);
            Ok(PoleSpec {
                r,
                k,
                location: Rational::new(1, k as i64),
                order,
                coefficient,
                sign_matches: Sign::of(coefficient) == expected,
            })
        })
        .collect()
}

/// Leading-term model `C_r(k) (ks - 1)^{-floor(r/k)}` near `s = 1/k`, valid
/// for `0 < |s - 1/k| <= 0.1/k`.
pub fn near_pole_model(r: usize, k: usize, s: f64, params: &ZetaParams) -> Result<f64> {
    check_rk(r, k)?;
    let kf = k as f64;
    let d = (s - 1.0 / kf).abs();
    if !(d > 0.0 && d <= 0.1 / kf) {
        return Err(Error::domain(format!("s = {s} is outside the window 0 < |s - 1/{k}| <= {}", 0.1 / kf)));
    }
    let c = coefficient_closed_form(r, k, params)?;
    Ok(c * (kf * s - 1.0).powi(-((r / k) as i32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthModel {
    /// `zeta_r(s) ~ (r!)^{-s}` as `s -> +inf`.
    LargeSFactorial,
    /// Odd `r`: `zeta_r(-k) ~ zeta(-rk)/r`.
    NegOddROdd,
    /// `zeta_2(-k) = zeta(-k)^2 / 2` exactly.
    NegOddR2,
    /// Even `r >= 4`: `zeta_r(-k) ~ zeta(-k) zeta(-(r-1)k) / (r-1)`.
    NegOddREven,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `s -> +inf` (requires `s > 1`).
    LargeS(f64),
    /// `s = -k` with odd `k -> +inf`.
    NegOdd(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthPrediction {
    pub model: GrowthModel,
    pub r: usize,
    /// `ln |leading term|`, computed exactly from Bernoulli numbers where
    /// they enter.
    pub predicted_log_abs: f64,
    pub predicted_sign: Sign,
    /// `ln |leading term|` with every `zeta(-n)` replaced by its Stirling
    /// approximation (the closed elementary form). Equals
    /// `predicted_log_abs` for the large-s model.
    pub stirling_log_abs: f64,
}

/// `ln |zeta(-n)|` from Stirling: `|zeta(-n)| ~ 2 sqrt(2 pi n) (n / (2 pi e))^n / (2 pi)`.
fn stirling_ln_zeta_neg(n: f64) -> f64 {
    use std::f64::consts::PI;
    2f64.ln() + 0.5 * (2.0 * PI * n).ln() - (2.0 * PI).ln() + n * (n / (2.0 * PI * std::f64::consts::E)).ln()
}

fn exact_zeta_neg(n: usize) -> Result<Rational> {
    crate::special::zeta_neg_int_exact(n)
}

pub fn growth_prediction(r: usize, regime: Regime) -> Result<GrowthPrediction> {
    if r == 0 {
        return Err(Error::domain("r must be positive"));
    }
    match regime {
        Regime::LargeS(s) => {
            if !(s > 1.0) || !s.is_finite() {
                return Err(Error::domain(format!("large-s model needs s > 1, got {s}")));
            }
            let l = -s * ln_factorial(r);
            Ok(GrowthPrediction {
                model: GrowthModel::LargeSFactorial,
                r,
                predicted_log_abs: l,
                predicted_sign: Sign::Positive,
                stirling_log_abs: l,
            })
        }
        Regime::NegOdd(k) => {
            if k % 2 == 0 {
                return Err(Error::domain(format!("k must be odd, got {k}")));
            }
            let kf = k as f64;
            let lead = neg_odd_leading_term(r, k)?.ln_abs();
            if r % 2 == 1 {
                let n = r * k;
                let rf = r as f64;
                Ok(GrowthPrediction {
                    model: GrowthModel::NegOddROdd,
                    r,
                    predicted_log_abs: lead,
                    predicted_sign: Sign::from_parity(n.div_ceil(2)),
                    stirling_log_abs: stirling_ln_zeta_neg(n as f64) - rf.ln(),
                })
            } else if r == 2 {
                Ok(GrowthPrediction {
                    model: GrowthModel::NegOddR2,
                    r,
                    predicted_log_abs: lead,
                    predicted_sign: Sign::Positive,
                    stirling_log_abs: 2.0 * stirling_ln_zeta_neg(kf) - 2f64.ln(),
                })
            } else {
                let rm1 = (r - 1) as f64;
                Ok(GrowthPrediction {
                    model: GrowthModel::NegOddREven,
                    r,
                    predicted_log_abs: lead,
                    predicted_sign: Sign::from_parity(r / 2 - 1),
                    stirling_log_abs: stirling_ln_zeta_neg(kf) + stirling_ln_zeta_neg(rm1 * kf) - rm1.ln(),
                })
            }
        }
    }
}

/// Exact leading term of `zeta_r(-k)` for odd `k`: `zeta(-rk)/r` for odd
/// `r`, `zeta(-k)^2/2` for `r = 2`, `zeta(-k) zeta(-(r-1)k)/(r-1)` for even
/// `r >= 4`.
pub fn neg_odd_leading_term(r: usize, k: usize) -> Result<Rational> {
    if r == 0 || k.is_multiple_of(2) {
        return Err(Error::domain(format!("need r >= 1 and odd k, got r = {r}, k = {k}")));
    }
    let rr = Rational::from(r as i64);
    if r % 2 == 1 {
        Ok(exact_zeta_neg(r * k)? / rr)
    } else {
        let a = exact_zeta_neg(k)?;
        let b = exact_zeta_neg((r - 1) * k)?;
        Ok(a * b / Rational::from(r as i64 - 1))
    }
}

/// Deviation of the exact `zeta_r(-k)` from its predicted leading term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegOddGap {
    /// `|ln |zeta_r(-k)| - L| / |L|` with `L` the exact leading term's log,
    /// evaluated from the exact ratio so it resolves gaps far below 1e-16.
    pub exact_term: f64,
    /// The same with `L` taken from the Stirling form.
    pub stirling: f64,
    pub sign_matches: bool,
}

pub fn neg_odd_gap(r: usize, k: usize) -> Result<NegOddGap> {
    let pred = growth_prediction(r, Regime::NegOdd(k))?;
    let lead = neg_odd_leading_term(r, k)?;
    let exact = eval_exact(k, r)?;
    let v = &exact.values[r];
    let delta = v.checked_div(&lead).ok_or_else(|| Error::domain("vanishing leading term"))? - Rational::one();
    let exact_term = delta.to_f64().ln_1p().abs() / pred.predicted_log_abs.abs();
    let stirling = (v.ln_abs() - pred.stirling_log_abs).abs() / pred.stirling_log_abs.abs();
    Ok(NegOddGap {
        exact_term,
        stirling,
        sign_matches: v.signum() == pred.predicted_sign.as_i32(),
    })
}

/// `Π_{k=2}^{r} (1 + ((k-1)/k)^s (1 + k/(s-1))) (1 + r/(s-1))`, the upper
/// bound for `zeta_r(s) (r!)^s`.
pub fn upper_bound_factor(r: usize, s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(format!("bound needs s > 1, got {s}")));
    }
    if r == 0 {
        return Err(Error::domain("r must be positive"));
    }
    let mut prod = 1.0 + r as f64 / (s - 1.0);
    for k in 2..=r {
        let kf = k as f64;
        prod *= 1.0 + ((kf - 1.0) / kf).powf(s) * (1.0 + kf / (s - 1.0));
    }
    Ok(prod)
}

/// Explicit upper bound for `zeta_r(s)`, `s > 1`.
pub fn upper_bound_large_s(r: usize, s: f64) -> Result<f64> {
    let f = upper_bound_factor(r, s)?;
    Ok(f * (-s * ln_factorial(r)).exp())
}
