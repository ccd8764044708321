//! Real zeros of `zeta_r`: inter-asymptotic zeros (IAZ) between consecutive
//! poles in `(0, 1)`, inter-trivial zeros (ITZ) between consecutive trivial
//! zeros on the negative axis, and the trivial zeros `-2n` themselves.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multizeta::{eval_exact, eval_zeta_r};
use crate::special::ZetaParams;

/// Pole margin for IAZ intervals is `IAZ_POLE_MARGIN / k`.
pub const IAZ_POLE_MARGIN: f64 = 1e-4;
/// Endpoint margin for ITZ intervals.
pub const ITZ_EPSILON: f64 = 1e-4;
pub const DEFAULT_GRID: usize = 512;
pub const MIN_GRID: usize = 16;
pub const BRACKET_TOL: f64 = 1e-12;
pub const RESIDUAL_REL_TOL: f64 = 1e-9;
pub const MAX_BISECTIONS: usize = 200;
pub const DERIVATIVE_STEP: f64 = 1e-6;
pub const EXTREMUM_TOL: f64 = 1e-8;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZeroKind {
    Iaz,
    Itz,
    Trivial,
}

impl ZeroKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ZeroKind::Iaz => "IAZ",
            ZeroKind::Itz => "ITZ",
            ZeroKind::Trivial => "TRIVIAL",
        }
    }
}

/// One located zero. For sign-change zeros `interval` is the final bracket,
/// whose endpoints carry opposite signs; trivial zeros are exact and have a
/// degenerate interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub r: usize,
    pub kind: ZeroKind,
    pub interval: (f64, f64),
    pub location: f64,
    /// `|zeta_r(location)|`.
    pub residual: f64,
    pub bracket_width: f64,
    /// Larger of `|zeta_r|` at the two sample points that first bracketed
    /// the zero; the residual target is relative to it.
    pub local_scale: f64,
}

/// Observed versus expected zero counts.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConjectureReport {
    pub r: usize,
    /// `k -> I_r(k)`, the number of zeros in `(1/k, 1/(k-1))`.
    pub iaz_counts: BTreeMap<usize, usize>,
    /// `k -> floor(r/k)`.
    pub expected: BTreeMap<usize, usize>,
    /// `n -> ` number of zeros in `(-2n, -2(n-1))`.
    pub itz_counts: BTreeMap<usize, usize>,
    pub expected_itz: usize,
    pub all_match: bool,
}

impl ConjectureReport {
    fn finish(mut self) -> Self {
        let iaz_ok = self.iaz_counts.iter().all(|(k, c)| self.expected.get(k) == Some(c));
        let itz_ok = self.itz_counts.values().all(|&c| c == self.expected_itz);
        self.all_match = iaz_ok && itz_ok;
        self
    }

    /// Merges the IAZ part of `self` with the ITZ part of `other`.
    pub fn merge(mut self, other: ConjectureReport) -> Self {
        self.itz_counts.extend(other.itz_counts);
        self.expected_itz = other.expected_itz;
        self.finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

impl ExtremumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExtremumKind::Min => "min",
            ExtremumKind::Max => "max",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub location: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Sample points on `[lo, hi]`: `grid` base steps, with the outer tenth on
/// each side sampled four times as densely.
pub fn sample_grid(lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let edge = grid.div_ceil(10).max(1);
    let mid = grid.saturating_sub(2 * edge).max(1);
    let len = hi - lo;
    let edge_len = len * edge as f64 / grid as f64;
    let a = lo + edge_len;
    let b = hi - edge_len;
    let mut pts = Vec::with_capacity(8 * edge + mid + 1);
    let fine = 4 * edge;
    for i in 0..fine {
        pts.push(lo + edge_len * i as f64 / fine as f64);
    }
    for i in 0..mid {
        pts.push(a + (b - a) * i as f64 / mid as f64);
    }
    for i in 0..fine {
        pts.push(b + edge_len * i as f64 / fine as f64);
    }
    pts.push(hi);
    pts
}

fn check_interval(r: usize, lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::domain(format!("invalid interval ({lo}, {hi})")));
    }
    for k in 1..=r {
        let p = 1.0 / k as f64;
        if lo < p && p < hi {
            return Err(Error::PoleInInterval {
                r: r as u32,
                k: k as u32,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

fn kind_of(location: f64) -> ZeroKind {
    if location > 0.0 {
        ZeroKind::Iaz
    } else {
        ZeroKind::Itz
    }
}

fn bisect(r: usize, a: f64, b: f64, fa: f64, fb: f64, params: &ZetaParams) -> Result<ZeroRecord> {
    let (mut a, mut b, mut fa) = (a, b, fa);
    let local_scale = fa.abs().max(fb.abs());
    let target = RESIDUAL_REL_TOL * local_scale;
    for _ in 0..MAX_BISECTIONS {
        let m = a + 0.5 * (b - a);
        let at_float_limit = m <= a || m >= b;
        let fm = if at_float_limit { f64::NAN } else { eval_zeta_r(m, r, params)?.value };
        if fm == 0.0 {
            return Ok(ZeroRecord {
                r,
                kind: kind_of(m),
                interval: (a, b),
                location: m,
                residual: 0.0,
                bracket_width: b - a,
                local_scale,
            });
        }
        if !at_float_limit {
            if (fm < 0.0) == (fa < 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        if b - a <= BRACKET_TOL || at_float_limit {
            let loc = a + 0.5 * (b - a);
            let res = eval_zeta_r(loc, r, params)?.value.abs();
            if res <= target {
                return Ok(ZeroRecord {
                    r,
                    kind: kind_of(loc),
                    interval: (a, b),
                    location: loc,
                    residual: res,
                    bracket_width: b - a,
                    local_scale,
                });
            }
            if at_float_limit {
                break;
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "zeta_{r}: residual target {target:e} not met in bracket ({a}, {b})"
    )))
}

/// All sign-change zeros of `zeta_r` in `[lo, hi]`, sorted by location.
/// Zeros of even multiplicity are invisible to this search.
pub fn find_zeros_in_interval(
    r: usize,
    lo: f64,
    hi: f64,
    grid: usize,
    params: &ZetaParams,
) -> Result<Vec<ZeroRecord>> {
    if grid < MIN_GRID {
        return Err(Error::InvalidParams(format!("grid must be at least {MIN_GRID}, got {grid}")));
    }
    if r == 0 {
        return Ok(Vec::new());
    }
    check_interval(r, lo, hi)?;
    let pts = sample_grid(lo, hi, grid);
    let vals = pts
        .par_iter()
        .map(|&s| eval_zeta_r(s, r, params).map(|v| v.value))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for i in 0..pts.len() {
        if vals[i] == 0.0 {
            let prev = if i > 0 { pts[i - 1] } else { pts[i] };
            let next = if i + 1 < pts.len() { pts[i + 1] } else { pts[i] };
            out.push(ZeroRecord {
                r,
                kind: kind_of(pts[i]),
                interval: (prev, next),
                location: pts[i],
                residual: 0.0,
                bracket_width: next - prev,
                local_scale: 0.0,
            });
        }
    }
    let brackets: Vec<usize> = (0..pts.len() - 1)
        .filter(|&i| vals[i] * vals[i + 1] < 0.0)
        .collect();
    let refined = brackets
        .par_iter()
        .map(|&i| bisect(r, pts[i], pts[i + 1], vals[i], vals[i + 1], params))
        .collect::<Result<Vec<_>>>()?;
    out.extend(refined);
    out.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok(out)
}

/// IAZ census over `(1/k + d_k, 1/(k-1) - d_k)`, `k = r..2`.
pub fn enumerate_iaz(r: usize, params: &ZetaParams) -> Result<(Vec<ZeroRecord>, ConjectureReport)> {
    enumerate_iaz_with_grid(r, DEFAULT_GRID, params)
}

pub fn enumerate_iaz_with_grid(
    r: usize,
    grid: usize,
    params: &ZetaParams,
) -> Result<(Vec<ZeroRecord>, ConjectureReport)> {
    if !(2..=12).contains(&r) {
        return Err(Error::domain(format!("IAZ census supports 2 <= r <= 12, got {r}")));
    }
    let per_k = (2..=r)
        .into_par_iter()
        .map(|k| {
            let d = IAZ_POLE_MARGIN / k as f64;
            let lo = 1.0 / k as f64 + d;
            let hi = 1.0 / (k - 1) as f64 - d;
            find_zeros_in_interval(r, lo, hi, grid, params).map(|z| (k, z))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ConjectureReport {
        r,
        expected_itz: r - 1,
        ..Default::default()
    };
    let mut zeros = Vec::new();
    for (k, z) in per_k {
        report.iaz_counts.insert(k, z.len());
        report.expected.insert(k, r / k);
        zeros.extend(z);
    }
    zeros.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok((zeros, report.finish()))
}

/// ITZ census over `(-2n + eps, -2(n-1) - eps)`, `n = 1..=n_max`, plus the
/// trivial zeros `-2n` (certified exactly).
pub fn enumerate_itz(r: usize, n_max: usize, params: &ZetaParams) -> Result<(Vec<ZeroRecord>, ConjectureReport)> {
    enumerate_itz_with_grid(r, n_max, DEFAULT_GRID, params)
}

pub fn enumerate_itz_with_grid(
    r: usize,
    n_max: usize,
    grid: usize,
    params: &ZetaParams,
) -> Result<(Vec<ZeroRecord>, ConjectureReport)> {
    if !(2..=8).contains(&r) {
        return Err(Error::domain(format!("ITZ census supports 2 <= r <= 8, got {r}")));
    }
    if n_max == 0 || 2.0 * n_max as f64 > -crate::multizeta::MIN_FLOAT_ARG {
        return Err(Error::domain(format!("n_max must lie in 1..=30, got {n_max}")));
    }
    let per_n = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let lo = -2.0 * n as f64 + ITZ_EPSILON;
            let hi = -2.0 * (n - 1) as f64 - ITZ_EPSILON;
            find_zeros_in_interval(r, lo, hi, grid, params).map(|z| (n, z))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ConjectureReport {
        r,
        expected_itz: r - 1,
        ..Default::default()
    };
    let mut zeros = Vec::new();
    for (n, z) in per_n {
        report.itz_counts.insert(n, z.len());
        zeros.extend(z);
        let exact = eval_exact(2 * n, r)?;
        if exact.values[r].is_zero() {
            let loc = -2.0 * n as f64;
            zeros.push(ZeroRecord {
                r,
                kind: ZeroKind::Trivial,
                interval: (loc, loc),
                location: loc,
                residual: 0.0,
                bracket_width: 0.0,
                local_scale: 0.0,
            });
        }
    }
    zeros.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok((zeros, report.finish()))
}

/// Both censuses; the IAZ part needs `r <= 12`, the ITZ part `r <= 8`.
pub fn conjecture_report(r: usize, n_max: usize, params: &ZetaParams) -> Result<ConjectureReport> {
    let (_, iaz) = enumerate_iaz(r, params)?;
    let (_, itz) = enumerate_itz(r, n_max, params)?;
    Ok(iaz.merge(itz))
}

/// Predicted number of IAZs, three ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IazCount {
    pub r: usize,
    /// `sum_{k=2}^{r} floor(r/k)`.
    pub sum: u64,
    /// `sum_{l <= r} d(l) - r` from a divisor sieve.
    pub divisor_sum: u64,
    /// `r log r - 2 (1 - gamma) r`.
    pub asymptotic: f64,
}

fn floor_sum(r: usize) -> u64 {
    (2..=r).map(|k| (r / k) as u64).sum()
}

fn asymptotic_count(r: usize) -> f64 {
    let rf = r as f64;
    rf * rf.ln() - 2.0 * (1.0 - EULER_GAMMA) * rf
}

/// `d(l)` for `l = 0..=n` (`d(0) = 0`).
pub fn divisor_counts(n: usize) -> Vec<u32> {
    let mut d = vec![0u32; n + 1];
    for i in 1..=n {
        for j in (i..=n).step_by(i) {
            d[j] += 1;
        }
    }
    d
}

pub fn iaz_count_formula(r: usize) -> Result<IazCount> {
    if r < 2 {
        return Err(Error::domain(format!("r must be at least 2, got {r}")));
    }
    let d = divisor_counts(r);
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    Ok(IazCount {
        r,
        sum: floor_sum(r),
        divisor_sum: total - r as u64,
        asymptotic: asymptotic_count(r),
    })
}

/// [`iaz_count_formula`] for every `r` in `2..=r_max`, sharing one sieve.
pub fn iaz_count_table(r_max: usize) -> Vec<IazCount> {
    if r_max < 2 {
        return Vec::new();
    }
    let d = divisor_counts(r_max);
    let mut prefix = 1u64; // d(1)
    let mut rows = Vec::with_capacity(r_max - 1);
    for r in 2..=r_max {
        prefix += d[r] as u64;
        rows.push(IazCount {
            r,
            sum: floor_sum(r),
            divisor_sum: prefix - r as u64,
            asymptotic: asymptotic_count(r),
        });
    }
    rows
}

fn golden_section(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Interior local extrema of `zeta_r` on a pole-free `[lo, hi]`: sign
/// changes of a central-difference derivative on the sampling grid, then
/// golden-section refinement.
pub fn extremum_scan(r: usize, lo: f64, hi: f64, params: &ZetaParams) -> Result<Vec<Extremum>> {
    extremum_scan_with_grid(r, lo, hi, DEFAULT_GRID, params)
}

pub fn extremum_scan_with_grid(
    r: usize,
    lo: f64,
    hi: f64,
    grid: usize,
    params: &ZetaParams,
) -> Result<Vec<Extremum>> {
    if grid < MIN_GRID {
        return Err(Error::InvalidParams(format!("grid must be at least {MIN_GRID}, got {grid}")));
    }
    check_interval(r, lo, hi)?;
    let h = DERIVATIVE_STEP;
    let f = |s: f64| eval_zeta_r(s, r, params).map(|v| v.value);
    let inner_lo = lo + 2.0 * h;
    let inner_hi = hi - 2.0 * h;
    if inner_lo >= inner_hi {
        return Ok(Vec::new());
    }
    let pts = sample_grid(inner_lo, inner_hi, grid);
    let deriv = pts
        .par_iter()
        .map(|&s| Ok((f(s + h)? - f(s - h)?) / (2.0 * h)))
        .collect::<Result<Vec<_>>>()?;
    let candidates: Vec<(usize, ExtremumKind)> = (0..pts.len() - 1)
        .filter_map(|i| {
            let (a, b) = (deriv[i], deriv[i + 1]);
            if a < 0.0 && b >= 0.0 {
                Some((i, ExtremumKind::Min))
            } else if a > 0.0 && b <= 0.0 {
                Some((i, ExtremumKind::Max))
            } else {
                None
            }
        })
        .collect();
    let mut out = candidates
        .par_iter()
        .map(|&(i, kind)| {
            let (a, b) = (pts[i], pts[i + 1]);
            let loc = match kind {
                ExtremumKind::Min => golden_section(f, a, b, EXTREMUM_TOL)?,
                ExtremumKind::Max => golden_section(|s| f(s).map(|v| -v), a, b, EXTREMUM_TOL)?,
            };
            Ok(Extremum {
                location: loc,
                value: f(loc)?,
                kind,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok(out)
}
