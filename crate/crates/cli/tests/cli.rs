use std::path::Path;
use std::process::{Command, Output};

use superspec_core::verify::interpolation_ratio;
use superspec_core::NodeFamily;

fn superspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superspec")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = superspec(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Data rows of a CSV as columns of optional floats.
fn rows(csv: &str) -> Vec<Vec<Option<f64>>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().ok()).collect())
        .collect()
}

#[test]
fn nodes_example() {
    let csv = stdout(&["nodes", "--family", "cheb-gauss", "--n", "2"]);
    assert!(csv.starts_with("x,value\n"));
    let xs: Vec<f64> = rows(&csv).iter().map(|r| r[0].unwrap()).collect();
    let want = [-0.8660254, 0.0, 0.8660254];
    assert_eq!(xs.len(), 3);
    for (x, w) in xs.iter().zip(want) {
        assert!((x - w).abs() < 1e-7, "{x}");
    }
}

#[test]
fn identical_runs_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["interp-error", "--family", "cheb-lobatto", "--function", "runge", "--n", "24"];
    let mut files = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let mut a = args.to_vec();
        a.extend(["--output", path.to_str().unwrap()]);
        assert!(superspec(&a).status.success());
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], stdout(&args).into_bytes());
    let head = String::from_utf8_lossy(&files[0]).lines().next().unwrap().to_string();
    assert_eq!(head, "x,value,error,is_superpoint,is_node");
}

#[test]
fn config_errors_exit_1_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.svg");
    let p = path.to_str().unwrap();
    let cases: [&[&str]; 6] = [
        &["figure", "--id", "ch3", "--output", p],
        &["nodes", "--family", "cheb-gauss", "--n", "1", "--output", p],
        &["nodes", "--family", "hermite", "--n", "4", "--output", p],
        &["interp-error", "--family", "cheb-gauss", "--n", "4..5000", "--output", p],
        &["interp-error", "--family", "cheb-gauss", "--n", "4,8", "--output", p],
        &["bounds", "--family", "leg-gauss", "--n", "8", "--output", p],
    ];
    for args in cases {
        let out = superspec(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(!path.exists(), "{args:?} left a file");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn unknown_figure_lists_valid_ids() {
    let out = superspec(&["figure", "--id", "fig11"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    for id in ["ch-lobatto", "ch-radau", "ch1", "ch-lobatto1", "ch-radau1", "ch-diff1", "ch2", "ch-lobatto2", "ch-radau2", "ch-diff2"] {
        assert!(err.contains(id), "{id} missing from: {err}");
    }
}

#[test]
fn every_figure_renders() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["ch-lobatto", "ch-radau", "ch1", "ch-lobatto1", "ch-radau1", "ch-diff1", "ch2", "ch-lobatto2", "ch-radau2", "ch-diff2"] {
        let path = dir.path().join(format!("{id}.svg"));
        let out = superspec(&["figure", "--id", id, "--n", "12", "--output", path.to_str().unwrap()]);
        assert!(out.status.success(), "{id}");
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        if id == "ch-lobatto" || id == "ch-radau" {
            assert!(svg.contains("class=\"extremal\""));
        } else {
            assert!(svg.contains("class=\"superpoint\"") && svg.contains("class=\"node\""), "{id}");
        }
    }
    let csv = stdout(&["figure", "--id", "ch-diff1", "--n", "12", "--format", "csv"]);
    assert!(csv.starts_with("x,value,error,is_superpoint,is_node\n"));
}

#[test]
fn lobatto_profile_is_t17_minus_t15() {
    let csv = stdout(&["figure", "--id", "ch-lobatto", "--n", "16", "--format", "csv"]);
    for r in rows(&csv) {
        let (x, v) = (r[0].unwrap(), r[1].unwrap());
        let t = x.clamp(-1.0, 1.0).acos();
        assert!((v - ((17.0 * t).cos() - (15.0 * t).cos())).abs() < 1e-12);
    }
}

#[test]
fn pole2_value_error_decays_at_the_ellipse_rate() {
    let csv = stdout(&["interp-error", "--family", "cheb-gauss", "--function", "pole2", "--order", "0", "--n", "4..24"]);
    assert!(csv.starts_with("N,max_error,superpoint_max_error,ratio,bound\n"));
    let r = rows(&csv);
    assert_eq!(r.len(), 21);
    // least-squares slope of ln(max_error) against N
    let pts: Vec<(f64, f64)> = r.iter().map(|c| (c[0].unwrap(), c[1].unwrap().ln())).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let rate = slope.exp();
    let want = 1.0 / (2.0 + 3f64.sqrt());
    assert!((rate / want - 1.0).abs() <= 0.15, "rate {rate} vs {want}");
    for c in &r {
        assert!(c[2].is_none() && c[3].is_none());
        assert!(c[4].unwrap() >= c[1].unwrap());
    }
}

#[test]
fn runge_sweep_ratio_column() {
    let csv = stdout(&["interp-error", "--family", "cheb-gauss", "--function", "runge", "--order", "1", "--n", "8,16,32,64"]);
    let r = rows(&csv);
    let ratios: Vec<f64> = r.iter().map(|c| c[3].unwrap()).collect();
    for (c, &got) in r.iter().zip(&ratios) {
        let n = c[0].unwrap() as usize;
        assert_eq!(got, interpolation_ratio(NodeFamily::ChebGauss, n, 1, 2001).unwrap());
        assert!(c[4].unwrap() >= c[1].unwrap());
    }
    assert!(ratios[2] < ratios[1] && ratios[3] < ratios[2], "{ratios:?}");
}

#[test]
fn ode_is_exact_at_value_superpoints_for_polynomials() {
    for n in [6usize, 10, 16] {
        let f = format!("poly:{}", n + 1);
        let csv = stdout(&["ode", "--set", "leg-gauss", "--function", &f, "--n", &n.to_string(), "--sweep"]);
        let r = rows(&csv);
        let sup = r[0][2].unwrap();
        assert!(sup <= 1e-12, "N={n}: {sup}");
        assert!(r[0][1].unwrap() > 1e-6);
        assert!(r[0][4].is_none());
    }
    let csv = stdout(&["ode", "--set", "t34", "--function", "poly:7", "--n", "8"]);
    let worst = rows(&csv).iter().map(|c| c[2].unwrap()).fold(0.0, f64::max);
    assert!(worst <= 1e-13, "degree-7 solution reproduced: {worst}");
}

#[test]
fn bounds_dominate_measured_errors() {
    for q in ["value", "d1", "d2", "d1-super", "d2-super"] {
        let csv = stdout(&["bounds", "--family", "cheb-radau-left", "--quantity", q, "--n", "4..16"]);
        for c in rows(&csv) {
            let measured = if q.ends_with("super") { c[2].unwrap() } else { c[1].unwrap() };
            assert!(c[4].unwrap() >= measured, "{q} N={:?}", c[0]);
        }
    }
}

#[test]
fn verify_exit_code_matches_its_report() {
    let out = superspec(&["verify"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count(), 18);
    let expected = if text.contains("[FAIL]") { 2 } else { 0 };
    assert_eq!(out.status.code(), Some(expected));
}

#[test]
fn writes_into_relative_paths() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_superspec"))
        .current_dir(dir.path())
        .args(["superpoints", "--family", "cheb-radau-right", "--n", "5", "--order", "2", "-o", "sp.csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(Path::new(dir.path()).join("sp.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4);
}
