use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orthospec"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .env("ORTHOSPEC_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

/// Same header, same shape, fields equal as text or as floats to a tight
/// tolerance.
fn assert_matches_golden(actual: &Path, name: &str) {
    let got = rows(actual);
    let want = rows(&golden(name));
    assert_eq!(got[0], want[0], "{name}: header");
    assert_eq!(got.len(), want.len(), "{name}: row count");
    for (i, (g, w)) in got.iter().zip(&want).enumerate().skip(1) {
        assert_eq!(g.len(), w.len(), "{name}: row {i} width");
        for (a, b) in g.iter().zip(w) {
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) => assert!((x - y).abs() <= 1e-9 * y.abs() + 1e-13, "{name}: row {i}: {a} vs {b}"),
                _ => assert_eq!(a, b, "{name}: row {i}"),
            }
        }
    }
}

fn stdout_value(out: &Output, key: &str) -> f64 {
    let text = String::from_utf8_lossy(&out.stdout);
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().parse::<f64>().unwrap()))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

#[test]
fn expand_mt_runge_has_geometric_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["expand", "--basis", "mt", "--n", "32", "--fn", "runge1"]);
    assert!(out.status.success());
    let norm = stdout_value(&out, "parseval_norm");
    assert!((norm - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-6);
    let table = rows(&dir.path().join("expand_mt_runge1_n32.csv"));
    assert_eq!(table[0], ["n", "re", "im"]);
    assert_eq!(table.len(), 66);
    let modulus: Vec<f64> = table[1..]
        .iter()
        .map(|r| r[1].parse::<f64>().unwrap().hypot(r[2].parse::<f64>().unwrap()))
        .collect();
    for n in 0..12 {
        let ratio = modulus[32 + n + 1] / modulus[32 + n];
        assert!((ratio - 1.0 / 3.0).abs() < 1e-9, "n={n}: {ratio}");
    }
}

#[test]
fn expand_basis_function_gives_unit_vector() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi5.csv");
    let out = run(
        dir.path(),
        &[
            "expand",
            "--basis",
            "ultra",
            "--alpha",
            "2",
            "--n",
            "8",
            "--fn",
            "phi5",
            "-o",
            path.to_str().unwrap(),
        ],
    );
    assert!(out.status.success());
    assert_matches_golden(&path, "expand_ultra2_phi5.csv");
}

#[test]
fn usage_errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = run(dir.path(), &["expand", "--basis", "mt", "--n", "4"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = run(dir.path(), &["expand", "--basis", "mt", "--n", "4", "--fn", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&unknown.stderr);
    assert!(msg.contains("runge1") && msg.contains("x_exp2_sin"), "{msg}");
    let combo = run(
        dir.path(),
        &["pde", "schrodinger", "--basis", "mt", "--potential", "harmonic"],
    );
    assert_eq!(combo.status.code(), Some(2));
    let alpha = run(
        dir.path(),
        &["expand", "--basis", "laguerre", "--n", "4", "--fn", "gaussian"],
    );
    assert_eq!(alpha.status.code(), Some(2));
    let low = run(dir.path(), &["index", "--basis", "ultra", "--alpha", "0.5"]);
    assert_eq!(low.status.code(), Some(2));
}

#[test]
fn figures_are_deterministic_and_match_golden() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = run(
            dir.path(),
            &["figures", "fig42b", "--no-meta", "-o", p.to_str().unwrap()],
        );
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_matches_golden(&a, "fig42b.csv");

    let out = run(dir.path(), &["figures", "fig41a"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("fig41a.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# orthospec"));
    assert_eq!(lines.next().unwrap(), "x,err_alpha1,err_alpha2,err_alpha3,err_alpha4");
    assert!(!text.contains('\r'));
}

#[test]
fn figures_all_writes_four_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["figures", "all", "--no-meta"]);
    assert!(out.status.success());
    for name in ["fig41a", "fig41b", "fig42a", "fig42b"] {
        let table = rows(&dir.path().join(format!("{name}.csv")));
        assert_eq!(table[0].len(), 5);
        assert!(table.len() > 1000);
    }
}

#[test]
fn diffusion_reports_heat_decay() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["pde", "diffusion", "--alpha", "2", "--n", "48", "--t", "0.1"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let ratio = stdout_value(&out, "norm_ratio");
    assert!(
        (ratio - (-std::f64::consts::PI.powi(2) / 10.0).exp()).abs() < 1e-5,
        "{ratio}"
    );
    let norms = rows(&dir.path().join("diffusion_norms.csv"));
    assert_eq!(norms[0], ["step", "t", "norm"]);
    assert_eq!(norms.len(), 12);
    let finals = rows(&dir.path().join("diffusion_final.csv"));
    assert_eq!(finals[0], ["x", "re_u", "im_u"]);
}

#[test]
fn schrodinger_conserves_norm() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "pde",
            "schrodinger",
            "--basis",
            "hermite",
            "--potential",
            "harmonic",
            "--n",
            "32",
            "--t",
            "1",
        ],
    );
    assert!(out.status.success());
    assert!((stdout_value(&out, "norm_ratio") - 1.0).abs() < 1e-10);
    let norms = rows(&dir.path().join("schrodinger_norms.csv"));
    assert_eq!(norms.len(), 102);
}

#[test]
fn index_table_matches_golden_and_honours_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "index", "--basis", "ultra", "--alpha", "2", "--sizes", "16,32", "--powers", "3,4",
        ],
    );
    assert!(out.status.success());
    assert_matches_golden(&dir.path().join("index_ultra_alpha2.csv"), "index_ultra2.csv");
}
