use multizeta_core::rouche::{check_lemma1, interior_real_zeros, Rectangle};
use multizeta_core::zeros::{enumerate_iaz, extremum_scan, ZeroKind};
use multizeta_core::ZetaParams;

/// IAZ locations computed offline at 40 digits.
const IAZ: [(usize, &[f64]); 7] = [
    (2, &[0.626817553773]),
    (3, &[0.385782573246, 0.724901799079]),
    (4, &[0.278854924375, 0.387072279204, 0.571347966549, 0.78344483174]),
    (5, &[0.218315117542, 0.278333838668, 0.423506396433, 0.643860545832, 0.82169884836]),
    (
        6,
        &[
            0.179347900624, 0.217681563544, 0.279817536873, 0.36271606941, 0.419205467643, 0.549629866883,
            0.696745280409, 0.84854657267,
        ],
    ),
    (
        7,
        &[
            0.152168332739, 0.178810955414, 0.217988351007, 0.298653373689, 0.365594038645, 0.442819455699,
            0.605777127177, 0.736271412636, 0.868398784728,
        ],
    ),
    (
        8,
        &[
            0.132132663203, 0.151738032262, 0.178821602323, 0.218978545787, 0.266060073591, 0.295787076994,
            0.392752508576, 0.437321631315, 0.538048328672, 0.650687277031, 0.766793828007, 0.883664330945,
        ],
    ),
];

#[test]
fn iaz_locations_match_reference() {
    let p = ZetaParams::default();
    for &(r, want) in &IAZ {
        let (zeros, report) = enumerate_iaz(r, &p).unwrap();
        assert!(report.all_match);
        let mut got: Vec<f64> = zeros.iter().map(|z| z.location).collect();
        got.sort_by(f64::total_cmp);
        assert_eq!(got.len(), want.len(), "r = {r}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 5e-11, "r = {r}: {g} vs {w}");
        }
        assert!(zeros.iter().all(|z| z.kind == ZeroKind::Iaz && z.bracket_width <= 1e-12));
    }
}

#[test]
fn extrema_match_reference() {
    let p = ZetaParams::default();
    // (r, k) of the asymptote interval (1/k, 1/(k-1)), location, value.
    let cases = [
        (4, 2, 0.6937025976, -4.06997294583),
        (5, 2, 0.7761008829, 6.00381619936),
        (6, 3, 0.3865628227, -2.46309085037),
        (7, 2, 0.8472076167, 21.7289167225),
        (8, 2, 0.8676801407, -45.8276503501),
    ];
    for (r, k, loc, val) in cases {
        let ex = extremum_scan(r, 1.0 / k as f64 + 1e-4, 1.0 / (k - 1) as f64 - 1e-4, &p).unwrap();
        let m = ex
            .iter()
            .min_by(|a, b| (a.location - loc).abs().total_cmp(&(b.location - loc).abs()))
            .unwrap();
        assert!((m.location - loc).abs() < 1e-7, "r = {r}: {m:?}");
        assert!(((m.value - val) / val).abs() < 1e-9, "r = {r}: {m:?}");
    }
}

#[test]
fn rouche_interior_zero_matches_census() {
    let p = ZetaParams::default();
    for r in 2..=6 {
        assert!(interior_real_zeros(r, 0, &p).unwrap().zeros.is_empty(), "R_0({r})");
        for k in 1..=10 {
            let z = interior_real_zeros(r, k, &p).unwrap();
            assert_eq!(z.zeros.len(), 1, "R_{k}({r}): {:?}", z.zeros);
            let m = z.matches[0].unwrap_or_else(|| panic!("R_{k}({r}): no census match"));
            // The box is centred on -2 - 2k/r, a trivial zero exactly when r | k.
            let expected = if k % r == 0 { ZeroKind::Trivial } else { ZeroKind::Itz };
            assert_eq!(m.kind, expected, "R_{k}({r})");
        }
    }
}

#[test]
fn trig_check_is_deterministic() {
    let rect = Rectangle::new(3, 2, 4, 0.0).unwrap();
    let a = check_lemma1(&rect, 128).unwrap();
    let b = check_lemma1(&rect, 128).unwrap();
    assert_eq!(a.margins[0].min_margin.to_bits(), b.margins[0].min_margin.to_bits());
    assert!(a.all_pass);
}
