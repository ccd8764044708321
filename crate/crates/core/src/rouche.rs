//! Sampled verification of the boundary inequalities that let Rouché's
//! theorem transfer the zero of `zeta(rs)` in each rectangle `R_k(r)` to
//! `zeta_r(s)`.
//!
//! Sampling cannot prove an inequality; this is a falsification harness that
//! reports the smallest observed margin (LHS - RHS) for every inequality.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multizeta::eval_profile;
use crate::special::{ln_gamma, riemann_zeta, sin_pi_complex, ZetaParams};
use crate::zeros::{enumerate_itz, find_zeros_in_interval, ZeroKind, ZeroRecord, DEFAULT_GRID};

/// `epsilon` used for `R_0(r)` by [`check_lemma3_and_rouche`].
pub const R0_EPSILON: f64 = 1e-3;
pub const MIN_PER_SIDE: usize = 8;
/// Samples this close to a zero of `zeta(rs)` are nudged along the boundary.
const JITTER_RADIUS: f64 = 1e-9;

/// `R_k(a+b)`: real part in `[-2-(2k+1)/(a+b), -2-(2k-1)/(a+b)]` for `k > 0`
/// and `[-2-1/(a+b), -2-epsilon]` for `k = 0`; imaginary part in
/// `[-1/(a+b), 1/(a+b)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle {
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub epsilon: f64,
}

impl Rectangle {
    pub fn new(a: u32, b: u32, k: u32, epsilon: f64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidParams("a and b must be positive".into()));
        }
        let n = (a + b) as f64;
        if k > 0 && epsilon != 0.0 {
            return Err(Error::InvalidParams("epsilon must be 0 for k > 0".into()));
        }
        if !(0.0..=1.0 / (2.0 * n)).contains(&epsilon) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie in [0, {}], got {epsilon}",
                1.0 / (2.0 * n)
            )));
        }
        Ok(Rectangle { a, b, k, epsilon })
    }

    /// The rectangle for `zeta_r`; the split of `r` into `a + b` does not
    /// affect the region, so `a = r - 1, b = 1`.
    pub fn for_r(r: u32, k: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r must be at least 2, got {r}")));
        }
        Rectangle::new(r - 1, 1, k, if k == 0 { R0_EPSILON } else { 0.0 })
    }

    pub fn sum(&self) -> u32 {
        self.a + self.b
    }

    pub fn re_range(&self) -> (f64, f64) {
        let n = self.sum() as f64;
        if self.k == 0 {
            (-2.0 - 1.0 / n, -2.0 - self.epsilon)
        } else {
            let k = self.k as f64;
            (-2.0 - (2.0 * k + 1.0) / n, -2.0 - (2.0 * k - 1.0) / n)
        }
    }

    pub fn im_range(&self) -> (f64, f64) {
        let h = 1.0 / self.sum() as f64;
        (-h, h)
    }
}

/// `4 * per_side` boundary points, counter-clockwise from the lower-left
/// corner; each side contributes its starting corner.
pub fn sample_boundary(rect: &Rectangle, per_side: usize) -> Result<Vec<Complex64>> {
    if per_side < MIN_PER_SIDE {
        return Err(Error::InvalidParams(format!(
            "per_side must be at least {MIN_PER_SIDE}, got {per_side}"
        )));
    }
    let (x0, x1) = rect.re_range();
    let (y0, y1) = rect.im_range();
    let n = per_side as f64;
    let mut pts = Vec::with_capacity(4 * per_side);
    for i in 0..per_side {
        pts.push(Complex64::new(x0 + (x1 - x0) * i as f64 / n, y0));
    }
    for i in 0..per_side {
        pts.push(Complex64::new(x1, y0 + (y1 - y0) * i as f64 / n));
    }
    for i in 0..per_side {
        pts.push(Complex64::new(x1 - (x1 - x0) * i as f64 / n, y1));
    }
    for i in 0..per_side {
        pts.push(Complex64::new(x0, y1 - (y1 - y0) * i as f64 / n));
    }
    Ok(pts)
}

/// Worst observed margin of one inequality `LHS > RHS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityMargin {
    pub name: &'static str,
    /// `min (LHS - RHS)`; `+inf` when every sample hit a degenerate point
    /// where the LHS is `+inf` by convention.
    pub min_margin: f64,
    /// `min LHS / RHS`.
    pub min_ratio: f64,
    pub worst_point: Complex64,
}

impl InequalityMargin {
    fn new(name: &'static str) -> Self {
        InequalityMargin {
            name,
            min_margin: f64::INFINITY,
            min_ratio: f64::INFINITY,
            worst_point: Complex64::new(f64::NAN, f64::NAN),
        }
    }

    fn observe(&mut self, lhs: f64, rhs: f64, at: Complex64) {
        let margin = lhs - rhs;
        // NaN margins must register as failures.
        if margin.is_nan() || margin < self.min_margin {
            self.min_margin = margin;
            self.worst_point = at;
        }
        let ratio = lhs / rhs;
        if ratio.is_nan() || ratio < self.min_ratio {
            self.min_ratio = ratio;
        }
    }

    fn merge(&mut self, other: &InequalityMargin) {
        if other.min_margin.is_nan() || other.min_margin < self.min_margin {
            self.min_margin = other.min_margin;
            self.worst_point = other.worst_point;
        }
        if other.min_ratio.is_nan() || other.min_ratio < self.min_ratio {
            self.min_ratio = other.min_ratio;
        }
    }

    pub fn passes(&self) -> bool {
        self.min_margin > 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCheckReport {
    pub rectangle: Rectangle,
    pub samples: usize,
    pub margins: Vec<InequalityMargin>,
    pub all_pass: bool,
    /// Sample attaining the smallest `LHS / RHS` over all inequalities.
    pub worst_point: Complex64,
}

impl BoundaryCheckReport {
    fn assemble(rectangle: Rectangle, samples: usize, margins: Vec<InequalityMargin>) -> Self {
        let all_pass = margins.iter().all(InequalityMargin::passes);
        let worst_point = margins
            .iter()
            .min_by(|a, b| a.min_ratio.total_cmp(&b.min_ratio))
            .map(|m| m.worst_point)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        BoundaryCheckReport {
            rectangle,
            samples,
            margins,
            all_pass,
            worst_point,
        }
    }

    pub fn margin(&self, name: &str) -> Option<&InequalityMargin> {
        self.margins.iter().find(|m| m.name == name)
    }
}

/// `|sin(pi (a+b) s / 2) / (sin(pi a s / 2) sin(pi b s / 2))| > 2/(a+b)` on
/// the boundary; a vanishing denominator counts as `+inf`. Pure trigonometry,
/// independent of any evaluation parameters.
pub fn check_lemma1(rect: &Rectangle, per_side: usize) -> Result<BoundaryCheckReport> {
    let pts = sample_boundary(rect, per_side)?;
    let (a, b) = (rect.a as f64, rect.b as f64);
    let rhs = 2.0 / (a + b);
    let mut m = InequalityMargin::new("trig_ratio");
    for &s in &pts {
        let num = sin_pi_complex(s * ((a + b) / 2.0));
        let den = sin_pi_complex(s * (a / 2.0)) * sin_pi_complex(s * (b / 2.0));
        let lhs = if den.norm() == 0.0 { f64::INFINITY } else { (num / den).norm() };
        m.observe(lhs, rhs, s);
    }
    Ok(BoundaryCheckReport::assemble(*rect, pts.len(), vec![m]))
}

/// `|Gamma(1-(a+b)s) / (Gamma(1-as) Gamma(1-bs))| *
///  |zeta(1-(a+b)s) / (zeta(1-as) zeta(1-bs))| > (a+b)^2 / (2 pi)`,
/// evaluated in log space.
pub fn check_lemma2(rect: &Rectangle, per_side: usize, params: &ZetaParams) -> Result<BoundaryCheckReport> {
    let pts = sample_boundary(rect, per_side)?;
    let (a, b) = (rect.a as f64, rect.b as f64);
    let rhs = (a + b) * (a + b) / (2.0 * PI);
    let one = Complex64::new(1.0, 0.0);
    let values = pts
        .par_iter()
        .map(|&s| {
            let lg = ln_gamma(one - s * (a + b))?.re - ln_gamma(one - s * a)?.re - ln_gamma(one - s * b)?.re;
            let lz = riemann_zeta(one - s * (a + b), params)?.value.norm().ln()
                - riemann_zeta(one - s * a, params)?.value.norm().ln()
                - riemann_zeta(one - s * b, params)?.value.norm().ln();
            Ok((s, (lg + lz).exp()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = InequalityMargin::new("gamma_zeta_ratio");
    for (s, lhs) in values {
        m.observe(lhs, rhs, s);
    }
    Ok(BoundaryCheckReport::assemble(*rect, pts.len(), vec![m]))
}

/// Zeros of `zeta(rs)` on the real axis sit at `s = -2m/r`.
fn near_zeta_rs_zero(s: Complex64, r: f64) -> bool {
    if s.im.abs() > JITTER_RADIUS {
        return false;
    }
    let m = -s.re * r / 2.0;
    m > 0.5 && (s.re + 2.0 * m.round() / r).abs() < JITTER_RADIUS
}

/// On `R_k(r)`: for every `0 < j < r`,
/// `|zeta(rs) / (zeta((r-j)s) zeta(js))| > r` (`"zeta_ratio"`);
/// `|zeta_r(s)| < |zeta(rs)|` (`"dominance"`); and
/// `|sum_{j=1}^{r-1} (-1)^{j-1} zeta_{r-j}(s) zeta(js)| < |zeta(rs)|`
/// (`"rouche"`).
pub fn check_lemma3_and_rouche(
    r: usize,
    k: usize,
    per_side: usize,
    params: &ZetaParams,
) -> Result<BoundaryCheckReport> {
    if !(2..=6).contains(&r) || k > 10 {
        return Err(Error::domain(format!("supported grid is 2 <= r <= 6, k <= 10; got r = {r}, k = {k}")));
    }
    let rect = Rectangle::for_r(r as u32, k as u32)?;
    let mut pts = sample_boundary(&rect, per_side)?;
    let rf = r as f64;
    let step = {
        let (x0, x1) = rect.re_range();
        (x1 - x0) / per_side as f64
    };
    for p in pts.iter_mut() {
        if near_zeta_rs_zero(*p, rf) {
            // Vertical sides only reach the real axis at odd multiples of
            // 1/r, so this is a safety net; move along the boundary.
            *p = Complex64::new(p.re, p.im + 0.5 * step);
        }
    }
    let partials = pts
        .par_iter()
        .map(|&s| {
            let prof = eval_profile(s, r, params)?;
            let mut zjs = vec![Complex64::new(0.0, 0.0); r + 1];
            for (j, z) in zjs.iter_mut().enumerate().skip(1) {
                *z = riemann_zeta(s * j as f64, params)?.value;
            }
            let zr = zjs[r].norm();
            let mut ratio = InequalityMargin::new("zeta_ratio");
            for j in 1..r {
                let den = zjs[r - j] * zjs[j];
                let lhs = if den.norm() == 0.0 { f64::INFINITY } else { zr / den.norm() };
                ratio.observe(lhs, rf, s);
            }
            let mut dominance = InequalityMargin::new("dominance");
            dominance.observe(zr, prof.values[r].value.norm(), s);
            let mut partial = Complex64::new(0.0, 0.0);
            for j in 1..r {
                let t = prof.values[r - j].value * zjs[j];
                partial += if j % 2 == 1 { t } else { -t };
            }
            let mut rouche = InequalityMargin::new("rouche");
            rouche.observe(zr, partial.norm(), s);
            Ok([ratio, dominance, rouche])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = [
        InequalityMargin::new("zeta_ratio"),
        InequalityMargin::new("dominance"),
        InequalityMargin::new("rouche"),
    ];
    for part in &partials {
        for (a, p) in acc.iter_mut().zip(part) {
            a.merge(p);
        }
    }
    Ok(BoundaryCheckReport::assemble(rect, pts.len(), acc.to_vec()))
}

/// Every check for `R_k(r)`: the trigonometric and Gamma/zeta factors for
/// each split `r = (r-j) + j`, then the zeta-ratio, dominance and Rouché
/// inequalities.
pub fn check_all(r: usize, k: usize, per_side: usize, params: &ZetaParams) -> Result<BoundaryCheckReport> {
    let main = check_lemma3_and_rouche(r, k, per_side, params)?;
    let mut trig = InequalityMargin::new("trig_ratio");
    let mut gz = InequalityMargin::new("gamma_zeta_ratio");
    let eps = if k == 0 { R0_EPSILON } else { 0.0 };
    for j in 1..r {
        let rect = Rectangle::new((r - j) as u32, j as u32, k as u32, eps)?;
        trig.merge(&check_lemma1(&rect, per_side)?.margins[0]);
        gz.merge(&check_lemma2(&rect, per_side, params)?.margins[0]);
    }
    let mut margins = vec![trig, gz];
    margins.extend(main.margins);
    Ok(BoundaryCheckReport::assemble(main.rectangle, main.samples, margins))
}

/// [`check_all`] over `2 <= r <= r_max`, `0 <= k <= k_max`, in parallel;
/// results ordered by `(r, k)`.
pub fn verify_family(
    r_max: usize,
    k_max: usize,
    per_side: usize,
    params: &ZetaParams,
) -> Result<Vec<(usize, usize, BoundaryCheckReport)>> {
    let jobs: Vec<(usize, usize)> = (2..=r_max).flat_map(|r| (0..=k_max).map(move |k| (r, k))).collect();
    jobs.par_iter()
        .map(|&(r, k)| check_all(r, k, per_side, params).map(|rep| (r, k, rep)))
        .collect()
}

/// Real zeros of `zeta_r` on the real section of `R_k(r)`, and for `k > 0`
/// the census record (ITZ or trivial zero) each one coincides with.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorZeros {
    pub r: usize,
    pub k: usize,
    pub zeros: Vec<ZeroRecord>,
    pub matches: Vec<Option<ZeroRecord>>,
}

pub fn interior_real_zeros(r: usize, k: usize, params: &ZetaParams) -> Result<InteriorZeros> {
    let rect = Rectangle::for_r(r as u32, k as u32)?;
    let (lo, hi) = rect.re_range();
    let zeros = find_zeros_in_interval(r, lo, hi, DEFAULT_GRID, params)?;
    let n_max = ((-lo) / 2.0).ceil() as usize;
    let census = if r <= 8 { enumerate_itz(r, n_max, params)?.0 } else { Vec::new() };
    let matches = zeros
        .iter()
        .map(|z| {
            census
                .iter()
                .find(|c| matches!(c.kind, ZeroKind::Itz | ZeroKind::Trivial) && (c.location - z.location).abs() < 1e-8)
                .copied()
        })
        .collect();
    Ok(InteriorZeros { r, k, zeros, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> ZetaParams {
        ZetaParams::default()
    }

    #[test]
    fn rectangle_geometry() {
        let r = Rectangle::new(1, 1, 1, 0.0).unwrap();
        assert_eq!(r.re_range(), (-3.5, -2.5));
        assert_eq!(r.im_range(), (-0.5, 0.5));
        let r0 = Rectangle::new(1, 2, 0, 0.01).unwrap();
        let (lo, hi) = r0.re_range();
        assert!((lo + 2.0 + 1.0 / 3.0).abs() < 1e-15 && hi == -2.01);
        assert!(Rectangle::new(1, 1, 1, 0.1).is_err());
        assert!(Rectangle::new(1, 1, 0, 0.3).is_err());
        assert!(Rectangle::new(0, 1, 0, 0.0).is_err());
    }

    #[test]
    fn boundary_samples() {
        let r = Rectangle::new(1, 1, 1, 0.0).unwrap();
        let pts = sample_boundary(&r, 8).unwrap();
        assert_eq!(pts.len(), 32);
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                assert!(a != b);
            }
        }
        for corner in [(-3.5, -0.5), (-2.5, -0.5), (-2.5, 0.5), (-3.5, 0.5)] {
            assert_eq!(pts.iter().filter(|p| (p.re, p.im) == corner).count(), 1);
        }
        assert!(sample_boundary(&r, 7).is_err());
    }

    #[test]
    fn lemma1_cases() {
        let rep = check_lemma1(&Rectangle::new(1, 1, 1, 0.0).unwrap(), 250).unwrap();
        assert!(rep.all_pass);
        // Corner of R_0 with epsilon = 0: LHS >= tanh(pi a / 2n) + tanh(pi b / 2n).
        for (a, b) in [(1u32, 1u32), (2, 1), (3, 2)] {
            let n = (a + b) as f64;
            let s = Complex64::new(-2.0, 1.0 / n);
            let num = sin_pi_complex(s * (n / 2.0));
            let den = sin_pi_complex(s * (a as f64 / 2.0)) * sin_pi_complex(s * (b as f64 / 2.0));
            let lhs = (num / den).norm();
            let bound = (PI * a as f64 / (2.0 * n)).tanh() + (PI * b as f64 / (2.0 * n)).tanh();
            assert!(lhs >= bound * (1.0 - 1e-12));
        }
        // a = b gives LHS >= 1 everywhere.
        for k in 0..4 {
            let eps = if k == 0 { 1e-3 } else { 0.0 };
            let rep = check_lemma1(&Rectangle::new(2, 2, k, eps).unwrap(), 64).unwrap();
            assert!(rep.margins[0].min_ratio * 2.0 / 4.0 >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn lemma1_ignores_params() {
        let rect = Rectangle::new(2, 3, 2, 0.0).unwrap();
        let a = check_lemma1(&rect, 64).unwrap();
        let b = check_lemma1(&rect, 64).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn lemma2_cases() {
        let rep = check_lemma2(&Rectangle::new(1, 2, 0, 0.05).unwrap(), 250, &p()).unwrap();
        assert!(rep.all_pass);
        // G(2) = binom(2a+2b, 2a) at s = -2.
        let g = ((ln_gamma(Complex64::new(5.0, 0.0)).unwrap()
            - ln_gamma(Complex64::new(3.0, 0.0)).unwrap()
            - ln_gamma(Complex64::new(3.0, 0.0)).unwrap())
        .re)
            .exp();
        assert!((g - 6.0).abs() < 1e-12 && g >= 3.0 * 4.0 / (2.0 * PI));
        // |zeta(x + iy)| between 2 - zeta(3) and zeta(3) for x >= 3.
        let z3 = crate::special::zeta(3.0).unwrap();
        for (x, y) in [(3.0, 0.0), (3.0, 1.0), (4.5, -0.7), (9.0, 0.3)] {
            let v = riemann_zeta(Complex64::new(x, y), &p()).unwrap().value.norm();
            assert!(v >= 2.0 - z3 && v <= z3);
        }
    }

    #[test]
    fn small_family_passes() {
        for r in 2..=3 {
            for k in 0..=3 {
                let rep = check_all(r, k, 64, &p()).unwrap();
                assert!(rep.all_pass, "r={r} k={k}: {:?}", rep.margins);
                assert_eq!(rep.margins.len(), 5);
            }
        }
        assert!(check_lemma3_and_rouche(7, 0, 64, &p()).is_err());
    }

    #[test]
    fn interior_zeros() {
        // R_0(3) has no zero; R_2(2) holds the trivial zero -4; R_1(2) an ITZ.
        assert!(interior_real_zeros(3, 0, &p()).unwrap().zeros.is_empty());
        let z = interior_real_zeros(2, 2, &p()).unwrap();
        assert_eq!(z.zeros.len(), 1);
        assert_eq!(z.matches[0].unwrap().kind, ZeroKind::Trivial);
        let z = interior_real_zeros(2, 1, &p()).unwrap();
        assert_eq!(z.zeros.len(), 1);
        assert_eq!(z.matches[0].unwrap().kind, ZeroKind::Itz);
    }
}
