use std::collections::BTreeMap;

use multizeta_core::asymptote::{coefficient_recursive, neg_odd_gap, pole_table};
use multizeta_core::multizeta::{eval_exact, eval_grid, eval_profile, eval_series_oracle, SeriesTruncation};
use multizeta_core::rouche::{verify_family, BoundaryCheckReport, MIN_PER_SIDE};
use multizeta_core::table::{rounded_cell, value_table};
use multizeta_core::zeros::{enumerate_iaz, enumerate_itz, ConjectureReport, ZeroRecord};
use multizeta_core::{DecimalRounding, Error, Rational, ZetaParams};
use serde_json::Value;

use crate::output::{fmt_f64, num, obj, Report};
use crate::{CliError, CoeffsArgs, EvalArgs, PlotArgs, Suite, TableArgs, VerifyArgs, ZerosArgs};

type Result<T> = std::result::Result<T, CliError>;

const EXACT_DECIMALS: usize = 30;

fn rational_json(v: &Rational) -> Value {
    obj([
        ("exact", v.to_string().into()),
        ("decimal", v.to_decimal(EXACT_DECIMALS, DecimalRounding::HalfAwayFromZero).into()),
    ])
}

pub(crate) fn eval(a: &EvalArgs, params: &ZetaParams) -> Result<Report> {
    let mut rep = Report::default();
    rep.param("r", a.r);
    rep.param("s", num(a.s));
    rep.param("exact", a.exact);
    rep.param("profile", a.profile);
    let depths: Vec<usize> = if a.profile { (1..=a.r).collect() } else { vec![a.r] };

    if a.exact {
        if a.s.fract() != 0.0 || a.s > 0.0 || a.s < -(u32::MAX as f64) {
            return Err(Error::Domain(format!("--exact needs a nonpositive integer s, got {}", a.s)).into());
        }
        let n = (-a.s) as usize;
        let p = eval_exact(n, a.r)?;
        let mut rows = Vec::new();
        for &j in &depths {
            let v = &p.values[j];
            rep.line(format!(
                "zeta_{j}({}) = {v} = {}",
                a.s,
                v.to_decimal(EXACT_DECIMALS, DecimalRounding::HalfAwayFromZero)
            ));
            let mut row = rational_json(v);
            row["r"] = j.into();
            rows.push(row);
        }
        rep.results = Value::from(rows);
        return Ok(rep);
    }

    if let Some(m) = a.oracle {
        rep.param("oracle", m);
        let mut rows = Vec::new();
        for &j in &depths {
            let v = eval_series_oracle(a.s, SeriesTruncation { cutoff: m, r: j })?;
            rep.line(format!("zeta_{j}({}) truncated at {m} = {}", a.s, fmt_f64(v)));
            rows.push(obj([("r", j.into()), ("value", num(v))]));
        }
        rep.results = Value::from(rows);
        return Ok(rep);
    }

    let p = eval_profile(a.s, a.r, params)?;
    let mut rows = Vec::new();
    for &j in if a.r == 0 { &[0usize][..] } else { &depths[..] } {
        let v = &p.values[j];
        let mut flags = String::new();
        if v.near_pole {
            flags.push_str(" near-pole");
        }
        if v.degraded {
            flags.push_str(" degraded");
            rep.warnings.push(format!("zeta_{j}({}) is degraded (error estimate {:.2e})", a.s, v.abs_err_est));
        }
        rep.line(format!(
            "zeta_{j}({}) = {}  (err {:.2e}){flags}",
            a.s,
            fmt_f64(v.value),
            v.abs_err_est
        ));
        rows.push(obj([
            ("r", j.into()),
            ("value", num(v.value)),
            ("abs_err_est", num(v.abs_err_est)),
            ("near_pole", v.near_pole.into()),
            ("degraded", v.degraded.into()),
        ]));
    }
    rep.results = Value::from(rows);
    Ok(rep)
}

pub(crate) fn table(a: &TableArgs) -> Result<Report> {
    let mut rep = Report::default();
    rep.param("r_max", a.r_max);
    rep.param("args", a.args.clone());
    let mut ns = Vec::new();
    for &x in &a.args {
        if x > 0 {
            return Err(CliError::Usage(format!("--arg must be a nonpositive integer, got {x}")));
        }
        ns.push(x.unsigned_abs() as usize);
    }
    let rows = value_table(a.r_max, &ns)?;
    let widths: Vec<usize> = (0..ns.len())
        .map(|c| rows.iter().map(|row| row.values[c].1.to_string().len()).max().unwrap_or(0).max(5))
        .collect();
    let mut header = String::from(" r");
    for (&x, w) in a.args.iter().zip(&widths) {
        header.push_str(&format!("  {:>22}  {:<w$}", format!("zeta_r({x})"), "exact"));
    }
    rep.line(header.trim_end());
    let mut out = Vec::new();
    for row in &rows {
        let mut line = format!("{:>2}", row.r);
        let mut cells = Vec::new();
        for ((x, (n, v)), w) in a.args.iter().zip(&row.values).zip(&widths) {
            let rounded = rounded_cell(v, *n);
            line.push_str(&format!("  {rounded:>22}  {:<w$}", v.to_string()));
            let mut cell = rational_json(v);
            cell["s"] = (*x).into();
            cell["rounded"] = rounded.into();
            cells.push(cell);
        }
        rep.line(line.trim_end());
        out.push(obj([("r", row.r.into()), ("values", cells.into())]));
    }
    rep.results = Value::from(out);
    Ok(rep)
}

fn record_json(z: &ZeroRecord) -> Value {
    obj([
        ("kind", z.kind.as_str().into()),
        ("location", num(z.location)),
        ("interval", Value::from(vec![num(z.interval.0), num(z.interval.1)])),
        ("residual", num(z.residual)),
        ("bracket_width", num(z.bracket_width)),
        ("local_scale", num(z.local_scale)),
    ])
}

fn counts_json(m: &BTreeMap<usize, usize>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect())
}

pub(crate) fn zeros(a: &ZerosArgs, params: &ZetaParams) -> Result<Report> {
    let mut rep = Report::default();
    rep.param("r", a.r);
    let (records, report): (Vec<ZeroRecord>, ConjectureReport) = match a.negative {
        Some(n) => {
            rep.param("negative", n);
            enumerate_itz(a.r, n, params)?
        }
        None => {
            rep.param("positive", true);
            enumerate_iaz(a.r, params)?
        }
    };
    if a.csv {
        rep.line("r,kind,location,lo,hi,residual,bracket_width,local_scale");
        for z in &records {
            rep.line(format!(
                "{},{},{},{},{},{},{},{}",
                z.r,
                z.kind.as_str(),
                fmt_f64(z.location),
                fmt_f64(z.interval.0),
                fmt_f64(z.interval.1),
                fmt_f64(z.residual),
                fmt_f64(z.bracket_width),
                fmt_f64(z.local_scale)
            ));
        }
    } else {
        for z in &records {
            rep.line(format!(
                "{:<7} {}  residual {:.2e}  bracket {:.2e}",
                z.kind.as_str(),
                fmt_f64(z.location),
                z.residual,
                z.bracket_width
            ));
        }
    }
    let verdict = if report.all_match { "MATCH" } else { "MISMATCH" };
    let summary = if a.negative.is_some() {
        let c: Vec<String> = report.itz_counts.values().map(|c| c.to_string()).collect();
        format!("ITZ counts for n = 1..: {} (expected {} each)", c.join(","), report.expected_itz)
    } else {
        let c: Vec<String> = report.iaz_counts.iter().rev().map(|(_, c)| c.to_string()).collect();
        format!("{} IAZs; counts for k = {}..2: {}", records.len(), a.r, c.join(","))
    };
    let conj = format!("conjecture: {verdict}");
    if a.csv {
        eprintln!("{summary}");
        eprintln!("{conj}");
    } else {
        rep.line(summary);
        rep.line(&conj);
    }
    rep.failed = !report.all_match;
    rep.results = obj([
        ("records", records.iter().map(record_json).collect::<Vec<_>>().into()),
        (
            "conjecture",
            obj([
                ("iaz_counts", counts_json(&report.iaz_counts)),
                ("iaz_expected", counts_json(&report.expected)),
                ("itz_counts", counts_json(&report.itz_counts)),
                ("itz_expected", report.expected_itz.into()),
                ("all_match", report.all_match.into()),
            ]),
        ),
    ]);
    Ok(rep)
}

pub(crate) fn coeffs(a: &CoeffsArgs, params: &ZetaParams) -> Result<Report> {
    if a.r == 0 || a.r > 12 {
        return Err(Error::Domain(format!("r must be in 1..=12, got {}", a.r)).into());
    }
    let mut rep = Report::default();
    rep.param("r", a.r);
    rep.line(" k  pole   order  C_r(k)                     sign  |closed - recursive|");
    let mut rows = Vec::new();
    for p in pole_table(a.r, params)? {
        let rec = coefficient_recursive(a.r, p.k, params)?;
        let residual = (p.coefficient - rec).abs();
        if !p.sign_matches {
            rep.warnings.push(format!("C_{}({}) has sign opposite to (-1)^(r + order)", a.r, p.k));
        }
        rep.line(format!(
            "{:>2}  {:<5}  {:>5}  {:<25}  {:<4}  {:.2e}",
            p.k,
            p.location.to_string(),
            p.order,
            fmt_f64(p.coefficient),
            if p.sign_matches { "ok" } else { "BAD" },
            residual
        ));
        rows.push(obj([
            ("k", p.k.into()),
            ("location", p.location.to_string().into()),
            ("order", p.order.into()),
            ("coefficient", num(p.coefficient)),
            ("coefficient_recursive", num(rec)),
            ("residual", num(residual)),
            ("expected_sign", p.expected_sign().as_i32().into()),
            ("sign_matches", p.sign_matches.into()),
        ]));
    }
    rep.results = Value::from(rows);
    Ok(rep)
}

pub(crate) fn plotdata(a: &PlotArgs, params: &ZetaParams) -> Result<Report> {
    if a.points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    if !a.lo.is_finite() || !a.hi.is_finite() {
        return Err(CliError::Usage("--lo and --hi must be finite".into()));
    }
    let clip = match a.clip.as_deref() {
        Some(&[lo, hi]) if lo < hi => Some((lo, hi)),
        Some(_) => return Err(CliError::Usage("--clip needs YMIN < YMAX".into())),
        None => None,
    };
    let mut rep = Report::default();
    rep.param("r", a.r.clone());
    rep.param("lo", num(a.lo));
    rep.param("hi", num(a.hi));
    rep.param("points", a.points);
    if let Some((lo, hi)) = clip {
        rep.param("clip", vec![num(lo), num(hi)]);
    }
    let xs: Vec<f64> = if a.points == 1 {
        vec![a.lo]
    } else {
        let step = (a.hi - a.lo) / (a.points - 1) as f64;
        (0..a.points).map(|i| if i + 1 == a.points { a.hi } else { a.lo + step * i as f64 }).collect()
    };
    let r_max = a.r.iter().copied().max().unwrap_or(0);
    let profiles = eval_grid(&xs, r_max, params);

    let mut header = String::from("s");
    for r in &a.r {
        header.push_str(&format!(",zeta_{r}"));
    }
    rep.line(header);
    let (mut poles, mut clipped, mut failed) = (0usize, 0usize, 0usize);
    let mut rows = Vec::with_capacity(xs.len());
    for (&s, prof) in xs.iter().zip(profiles) {
        let mut line = fmt_f64(s);
        let mut row = vec![num(s)];
        for &r in &a.r {
            // A pole of a higher depth in the shared profile does not make
            // the lower depths undefined.
            let cell = match &prof {
                Ok(p) => Ok(p.values[r]),
                Err(_) => eval_profile(s, r, params).map(|p| p.values[r]),
            };
            let value = match cell {
                Ok(v) if v.near_pole => {
                    poles += 1;
                    None
                }
                Ok(v) => match clip {
                    Some((lo, hi)) if !(lo..=hi).contains(&v.value) => {
                        clipped += 1;
                        None
                    }
                    _ => Some(v.value),
                },
                Err(Error::Pole { .. }) => {
                    poles += 1;
                    None
                }
                Err(_) => {
                    failed += 1;
                    None
                }
            };
            line.push(',');
            match value {
                Some(v) => {
                    line.push_str(&fmt_f64(v));
                    row.push(num(v));
                }
                None => row.push(Value::Null),
            }
        }
        rep.line(line);
        rows.push(Value::from(row));
    }
    if poles > 0 {
        rep.warnings.push(format!("{poles} cells within the pole-exclusion radius left empty"));
    }
    if clipped > 0 {
        rep.warnings.push(format!("{clipped} cells outside the clip range left empty"));
    }
    if failed > 0 {
        rep.warnings.push(format!("{failed} cells outside the evaluation domain left empty"));
    }
    let columns: Vec<String> = std::iter::once("s".to_string()).chain(a.r.iter().map(|r| format!("zeta_{r}"))).collect();
    rep.results = obj([("columns", columns.into()), ("rows", rows.into())]);
    Ok(rep)
}

struct Check {
    name: String,
    pass: bool,
    detail: Value,
    summary: String,
}

fn bounded(value: Option<usize>, default: usize, lo: usize, hi: usize, flag: &str) -> Result<usize> {
    let v = value.unwrap_or(default);
    if !(lo..=hi).contains(&v) {
        return Err(CliError::Usage(format!("{flag} must be in {lo}..={hi} for this suite, got {v}")));
    }
    Ok(v)
}

fn stable(a: &BoundaryCheckReport, b: &BoundaryCheckReport) -> bool {
    a.margins.iter().zip(&b.margins).all(|(x, y)| {
        (x.min_margin.is_infinite() && y.min_margin.is_infinite())
            || (x.min_margin - y.min_margin).abs() <= 0.2 * x.min_margin.abs()
    })
}

fn verify_rouche(a: &VerifyArgs, params: &ZetaParams) -> Result<Vec<Check>> {
    let r_max = bounded(a.r_max, 6, 2, 6, "--r-max")?;
    let k_max = bounded(a.k_max, 10, 0, 10, "--k-max")?;
    if a.per_side < MIN_PER_SIDE {
        return Err(CliError::Usage(format!("--per-side must be at least {MIN_PER_SIDE}")));
    }
    let coarse = verify_family(r_max, k_max, a.per_side, params)?;
    let fine = verify_family(r_max, k_max, 2 * a.per_side, params)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|((r, k, c), (_, _, f))| {
            let is_stable = stable(c, f);
            let margins: Vec<Value> = c
                .margins
                .iter()
                .zip(&f.margins)
                .map(|(m, mf)| {
                    obj([
                        ("inequality", m.name.into()),
                        ("min_margin", num(m.min_margin)),
                        ("min_margin_doubled", num(mf.min_margin)),
                        ("min_ratio", num(m.min_ratio)),
                    ])
                })
                .collect();
            let worst = c.margins.iter().map(|m| m.min_ratio).fold(f64::INFINITY, f64::min);
            Check {
                name: format!("rouche r={r} k={k}"),
                pass: c.all_pass && f.all_pass && is_stable,
                detail: obj([("margins", margins.into()), ("stable", is_stable.into())]),
                summary: format!("smallest LHS/RHS {worst:.4}, stable under doubling: {is_stable}"),
            }
        })
        .collect())
}

fn verify_asymptotics(a: &VerifyArgs, params: &ZetaParams) -> Result<Vec<Check>> {
    let r_max = bounded(a.r_max, 10, 1, 12, "--r-max")?;
    let mut checks = Vec::new();
    for r in 1..=r_max {
        let mut worst: f64 = 0.0;
        let mut signs = true;
        for p in pole_table(r, params)? {
            let rec = coefficient_recursive(r, p.k, params)?;
            worst = worst.max((p.coefficient - rec).abs() / p.coefficient.abs().max(1.0));
            signs &= p.sign_matches;
        }
        checks.push(Check {
            name: format!("coefficients r={r}"),
            pass: worst <= 1e-10 && signs,
            detail: obj([("max_scaled_residual", num(worst)), ("signs_match", signs.into())]),
            summary: format!("two-path residual {worst:.2e}, sign law {}", if signs { "holds" } else { "fails" }),
        });
    }
    for r in [1, 3, 5, 4, 6].into_iter().filter(|&r| r <= r_max) {
        let gaps = [21, 41, 61].iter().map(|&k| neg_odd_gap(r, k)).collect::<multizeta_core::Result<Vec<_>>>()?;
        let exact_ok = if r == 1 {
            gaps.iter().all(|g| g.exact_term == 0.0)
        } else {
            gaps.windows(2).all(|w| w[1].exact_term <= w[0].exact_term)
        };
        let stirling_ok = gaps.windows(2).all(|w| w[1].stirling < w[0].stirling);
        let signs_ok = gaps.iter().all(|g| g.sign_matches);
        checks.push(Check {
            name: format!("negative odd trend r={r}"),
            pass: exact_ok && stirling_ok && signs_ok,
            detail: obj([
                ("k", vec![21, 41, 61].into()),
                ("exact_term_gap", gaps.iter().map(|g| num(g.exact_term)).collect::<Vec<_>>().into()),
                ("stirling_gap", gaps.iter().map(|g| num(g.stirling)).collect::<Vec<_>>().into()),
                ("signs_match", signs_ok.into()),
            ]),
            summary: format!(
                "Stirling gaps {:.2e} > {:.2e} > {:.2e}, signs {}",
                gaps[0].stirling,
                gaps[1].stirling,
                gaps[2].stirling,
                if signs_ok { "match" } else { "differ" }
            ),
        });
    }
    Ok(checks)
}

fn verify_conjectures(a: &VerifyArgs, params: &ZetaParams) -> Result<Vec<Check>> {
    let r_max = bounded(a.r_max, 10, 2, 12, "--r-max")?;
    if a.n_max == 0 || a.n_max > 30 {
        return Err(CliError::Usage(format!("--n-max must be in 1..=30, got {}", a.n_max)));
    }
    let mut checks = Vec::new();
    for r in 2..=r_max {
        let (z, rep) = enumerate_iaz(r, params)?;
        checks.push(Check {
            name: format!("IAZ census r={r}"),
            pass: rep.all_match,
            detail: obj([("counts", counts_json(&rep.iaz_counts)), ("expected", counts_json(&rep.expected))]),
            summary: format!("{} zeros, {}", z.len(), if rep.all_match { "MATCH" } else { "MISMATCH" }),
        });
    }
    for r in 2..=r_max.min(8) {
        let (_, rep) = enumerate_itz(r, a.n_max, params)?;
        checks.push(Check {
            name: format!("ITZ census r={r}"),
            pass: rep.all_match,
            detail: obj([("counts", counts_json(&rep.itz_counts)), ("expected", rep.expected_itz.into())]),
            summary: format!("{} per interval, {}", rep.expected_itz, if rep.all_match { "MATCH" } else { "MISMATCH" }),
        });
    }
    Ok(checks)
}

pub(crate) fn verify(a: &VerifyArgs, params: &ZetaParams) -> Result<Report> {
    let mut rep = Report::default();
    let suite = match a.suite {
        Suite::Rouche => "rouche",
        Suite::Asymptotics => "asymptotics",
        Suite::Conjectures => "conjectures",
        Suite::All => "all",
    };
    rep.param("suite", suite);
    if let Some(r) = a.r_max {
        rep.param("r_max", r);
    }
    if let Some(k) = a.k_max {
        rep.param("k_max", k);
    }
    rep.param("n_max", a.n_max);
    rep.param("per_side", a.per_side);
    let mut checks = Vec::new();
    if matches!(a.suite, Suite::Rouche | Suite::All) {
        checks.extend(verify_rouche(a, params)?);
    }
    if matches!(a.suite, Suite::Asymptotics | Suite::All) {
        checks.extend(verify_asymptotics(a, params)?);
    }
    if matches!(a.suite, Suite::Conjectures | Suite::All) {
        checks.extend(verify_conjectures(a, params)?);
    }
    let failures = checks.iter().filter(|c| !c.pass).count();
    for c in &checks {
        rep.line(format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.summary));
    }
    rep.line(format!("verify {suite}: {} passed, {failures} failed", checks.len() - failures));
    rep.failed = failures > 0;
    rep.results = obj([
        (
            "checks",
            checks
                .into_iter()
                .map(|c| obj([("name", c.name.into()), ("pass", c.pass.into()), ("detail", c.detail)]))
                .collect::<Vec<_>>()
                .into(),
        ),
        ("all_pass", (failures == 0).into()),
    ]);
    Ok(rep)
}
