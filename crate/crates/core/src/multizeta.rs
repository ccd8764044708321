//! Evaluation of `zeta_r(s)` through Newton's identities
//! `r zeta_r(s) = sum_{j=1}^{r} (-1)^{j-1} zeta_{r-j}(s) zeta(j s)`,
//! an exact path at nonpositive integers and a truncated-series oracle.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::special::{power_sum_tail, riemann_zeta, zeta_neg_int_exact, EvalResult, Scalar, ZetaParams, MAX_IM};

/// Left end of the floating-point domain; integer arguments beyond it are
/// served by [`eval_exact`].
pub const MIN_FLOAT_ARG: f64 = -60.0;

/// `zeta_0 .. zeta_{r_max}` at one argument.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiZetaProfile<T> {
    pub r_max: usize,
    pub argument: T,
    /// `values[j]` is `zeta_j(argument)`; `values[0]` is exactly 1.
    pub values: Vec<EvalResult<T>>,
}

impl<T: Scalar> MultiZetaProfile<T> {
    /// `zeta_r(argument)`, panicking if `r > r_max`.
    pub fn get(&self, r: usize) -> &EvalResult<T> {
        &self.values[r]
    }

    pub fn top(&self) -> &EvalResult<T> {
        &self.values[self.r_max]
    }
}

/// Exact `zeta_j(-n)` for `j = 0..=r_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactProfile {
    pub r_max: usize,
    pub n: usize,
    pub values: Vec<Rational>,
}

/// Finite version `sum_{1 <= m_1 < ... < m_r <= cutoff} (m_1 ... m_r)^{-s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub cutoff: usize,
    pub r: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn from_parity(exponent: usize) -> Sign {
        if exponent.is_multiple_of(2) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_i32() as f64
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// Rejects arguments on (or within `radius` of) a pole `1/k`, `k <= r_max`.
pub fn check_poles<T: Scalar>(s: T, r_max: usize, radius: f64) -> Result<()> {
    if s.im() != 0.0 && s.im().abs() > radius {
        return Ok(());
    }
    for k in 1..=r_max {
        let loc = 1.0 / k as f64;
        if (s - loc).abs() <= radius || (s * k as f64 - 1.0).abs() == 0.0 {
            return Err(Error::Pole {
                k: k as u32,
                location: loc,
            });
        }
    }
    Ok(())
}

/// One Newton step: `v_r = (1/r) sum_j (-1)^{j-1} v_{r-j} p_j` with
/// first-order error propagation. `vals`/`errs` hold levels `0..r`,
/// `p`/`p_err` are indexed from 1.
fn newton_step<T: Scalar>(r: usize, vals: &[T], errs: &[f64], p: &[T], p_err: &[f64]) -> (T, f64) {
    let mut acc = T::real(0.0);
    let mut magnitude = 0.0;
    let mut prop = 0.0;
    for j in 1..=r {
        let term = vals[r - j] * p[j];
        magnitude += term.abs();
        prop += errs[r - j] * p[j].abs() + vals[r - j].abs() * p_err[j];
        if j % 2 == 1 {
            acc += term;
        } else {
            acc += -term;
        }
    }
    let rf = r as f64;
    (acc / rf, (prop + 2.0 * f64::EPSILON * magnitude) / rf)
}

fn validate_float_arg<T: Scalar>(s: T, r_max: usize, params: &ZetaParams) -> Result<()> {
    params.validate()?;
    if !s.is_finite() {
        return Err(Error::domain(format!("non-finite argument {s:?}")));
    }
    if s.re() < MIN_FLOAT_ARG {
        return Err(Error::domain(format!(
            "Re s = {} is below {MIN_FLOAT_ARG}; use the exact path for integers",
            s.re()
        )));
    }
    if r_max > 0 && s.im().abs() * r_max as f64 > MAX_IM {
        return Err(Error::domain(format!(
            "|Im s| = {} exceeds {MAX_IM}/{r_max}",
            s.im().abs()
        )));
    }
    check_poles(s, r_max, params.pole_radius)
}

/// `zeta_j(s)` for `j = 0..=r_max`, bottom-up.
///
/// For `Re s > 1` the alternating recursion cancels badly once `zeta_r(s)`
/// drops far below `zeta(s)^r`, so there the sum is split at `M`: the head
/// `m <= M` is summed exactly as elementary symmetric polynomials, and only
/// the tail power sums go through Newton's identities.
pub fn eval_profile<T: Scalar>(s: T, r_max: usize, params: &ZetaParams) -> Result<MultiZetaProfile<T>> {
    validate_float_arg(s, r_max, params)?;
    let values = if s.re() > 1.0 && r_max >= 2 {
        profile_split(s, r_max, params)
    } else {
        profile_newton(s, r_max, params)?
    };
    if let Some(j) = values.iter().position(|v| !v.value.is_finite()) {
        return Err(Error::Overflow(format!("zeta_{j}({s:?}) exceeds the double range")));
    }
    Ok(MultiZetaProfile {
        r_max,
        argument: s,
        values,
    })
}

fn profile_newton<T: Scalar>(s: T, r_max: usize, params: &ZetaParams) -> Result<Vec<EvalResult<T>>> {
    let mut p = vec![T::real(0.0); r_max + 1];
    let mut p_err = vec![0.0; r_max + 1];
    for j in 1..=r_max {
        let z = riemann_zeta(s * j as f64, params).map_err(|e| match e {
            Error::Pole { .. } => Error::Pole {
                k: j as u32,
                location: 1.0 / j as f64,
            },
            other => other,
        })?;
        p[j] = z.value;
        p_err[j] = z.abs_err_est;
    }
    let mut vals = vec![T::real(1.0)];
    let mut errs = vec![0.0];
    for r in 1..=r_max {
        let (v, e) = newton_step(r, &vals, &errs, &p, &p_err);
        vals.push(v);
        errs.push(e);
    }
    Ok(vals
        .into_iter()
        .zip(errs)
        .enumerate()
        .map(|(j, (v, e))| if j == 0 { EvalResult::exact(v) } else { EvalResult::new(v, e, false) })
        .collect())
}

fn profile_split<T: Scalar>(s: T, r_max: usize, params: &ZetaParams) -> Vec<EvalResult<T>> {
    let m_head = (2 * r_max).max(16);
    // Head: e_j over {1..M}; every update adds a product of terms, so the
    // only error is rounding.
    let mut head = vec![T::real(0.0); r_max + 1];
    head[0] = T::real(1.0);
    for m in 1..=m_head {
        let x = s.base_pow_neg(m as f64);
        for j in (1..=r_max.min(m)).rev() {
            let add = head[j - 1] * x;
            head[j] += add;
        }
    }
    // Tail: power sums over m > M, then Newton.
    let mut q = vec![T::real(0.0); r_max + 1];
    let mut q_err = vec![0.0; r_max + 1];
    for j in 1..=r_max {
        let (v, e) = power_sum_tail(s * j as f64, m_head + 1, params);
        q[j] = v;
        q_err[j] = e;
    }
    let mut tail = vec![T::real(1.0)];
    let mut tail_err = vec![0.0];
    for r in 1..=r_max {
        let (v, e) = newton_step(r, &tail, &tail_err, &q, &q_err);
        tail.push(v);
        tail_err.push(e);
    }
    let mut out = Vec::with_capacity(r_max + 1);
    out.push(EvalResult::exact(T::real(1.0)));
    for r in 1..=r_max {
        let mut acc = T::real(0.0);
        let mut magnitude = 0.0;
        let mut prop = 0.0;
        for i in 0..=r {
            let term = head[i] * tail[r - i];
            acc += term;
            magnitude += term.abs();
            prop += head[i].abs() * tail_err[r - i];
        }
        let err = prop + (m_head as f64 + 2.0 * r as f64) * f64::EPSILON * magnitude;
        out.push(EvalResult::new(acc, err, false));
    }
    out
}

/// `zeta_r(s)` alone.
pub fn eval_zeta_r<T: Scalar>(s: T, r: usize, params: &ZetaParams) -> Result<EvalResult<T>> {
    eval_profile(s, r, params).map(|p| p.values[r])
}

/// Profiles at many real arguments, evaluated in parallel; output order
/// matches input order.
pub fn eval_grid(points: &[f64], r_max: usize, params: &ZetaParams) -> Vec<Result<MultiZetaProfile<f64>>> {
    points.par_iter().map(|&s| eval_profile(s, r_max, params)).collect()
}

/// Exact `zeta_j(-n)`, `j <= r_max`, from exact `zeta(-j n)`.
pub fn eval_exact(n: usize, r_max: usize) -> Result<ExactProfile> {
    let mut p = Vec::with_capacity(r_max + 1);
    p.push(Rational::zero());
    for j in 1..=r_max {
        let idx = j.checked_mul(n).ok_or_else(|| Error::Resource("argument index overflow".into()))?;
        p.push(zeta_neg_int_exact(idx)?);
    }
    let mut values = vec![Rational::one()];
    for r in 1..=r_max {
        let mut acc = Rational::zero();
        for j in 1..=r {
            let term = &values[r - j] * &p[j];
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        values.push(acc / Rational::from(r as i64));
    }
    Ok(ExactProfile { r_max, n, values })
}

/// Truncated series over indices `<= cutoff`, via the triangular dynamic
/// program `e_j(m) = e_j(m-1) + e_{j-1}(m-1) m^{-s}`; a strict lower bound of
/// `zeta_r(s)` for `s > 1`.
pub fn eval_series_oracle(s: f64, trunc: SeriesTruncation) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(format!("series oracle needs s > 1, got {s}")));
    }
    let r = trunc.r;
    if trunc.cutoff < r {
        return Ok(0.0);
    }
    let mut e = vec![0.0; r + 1];
    e[0] = 1.0;
    for m in 1..=trunc.cutoff {
        let x = (m as f64).powf(-s);
        for j in (1..=r.min(m)).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    Ok(e[r])
}

/// Closed forms for `r = 2, 3, 4` written out in Riemann zeta values; an
/// independent cross-check of [`eval_profile`].
pub fn explicit_smallr<T: Scalar>(s: T, r: usize, params: &ZetaParams) -> Result<EvalResult<T>> {
    // (coefficient, exponents of zeta(s), zeta(2s), zeta(3s), zeta(4s))
    const R2: &[(f64, [i32; 4])] = &[(1.0, [2, 0, 0, 0]), (-1.0, [0, 1, 0, 0])];
    const R3: &[(f64, [i32; 4])] = &[(1.0, [3, 0, 0, 0]), (-3.0, [1, 1, 0, 0]), (2.0, [0, 0, 1, 0])];
    const R4: &[(f64, [i32; 4])] = &[
        (1.0, [4, 0, 0, 0]),
        (-6.0, [2, 1, 0, 0]),
        (3.0, [0, 2, 0, 0]),
        (8.0, [1, 0, 1, 0]),
        (-6.0, [0, 0, 0, 1]),
    ];
    let (terms, denom) = match r {
        2 => (R2, 2.0),
        3 => (R3, 6.0),
        4 => (R4, 24.0),
        _ => return Err(Error::domain(format!("explicit forms exist for r = 2, 3, 4 only, got {r}"))),
    };
    validate_float_arg(s, r, params)?;
    let mut z = [T::real(0.0); 4];
    let mut rel = [0.0; 4];
    for j in 1..=r {
        let v = riemann_zeta(s * j as f64, params)?;
        z[j - 1] = v.value;
        rel[j - 1] = if v.value.abs() > 0.0 { v.abs_err_est / v.value.abs() } else { 0.0 };
    }
    let mut acc = T::real(0.0);
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for (c, pows) in terms {
        let mut t = T::real(*c);
        let mut t_rel = 0.0;
        for (i, &p) in pows.iter().enumerate() {
            if p > 0 {
                t *= z[i].powi(p);
                t_rel += p as f64 * rel[i];
            }
        }
        acc += t;
        magnitude += t.abs();
        err += t.abs() * t_rel;
    }
    let err = (err + 4.0 * f64::EPSILON * magnitude) / denom;
    Ok(EvalResult::new(acc / denom, err, false))
}

/// Predicted sign of `zeta_r` on `[0, 1/r)`: `(-1)^r`.
pub fn sign_on_initial_interval(s: f64, r: usize) -> Result<Sign> {
    if r == 0 {
        return Err(Error::domain("r must be positive"));
    }
    if !(s >= 0.0 && s < 1.0 / r as f64) {
        return Err(Error::domain(format!("s = {s} lies outside [0, 1/{r})")));
    }
    Ok(Sign::from_parity(r))
}
