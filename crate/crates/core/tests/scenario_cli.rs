//! Configuration parsing, output files and the command-line verbs.

use std::fs;
use std::path::Path;
use std::process::Command;

use peregrine::scenario::{
    parse_config, parse_pairs, read_snapshots, Preset, Scenario, ScenarioId, SolverKind, COEFFICIENTS_FILE, CONFIG_KEYS,
    DIAGNOSTICS_FILE, MANIFEST_FILE, SNAPSHOTS_FILE,
};
use proptest::prelude::*;

const BIN: &str = env!("CARGO_BIN_EXE_peregrine");

fn peregrine(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("spawn peregrine")
}

const FILES: [&str; 4] = [SNAPSHOTS_FILE, DIAGNOSTICS_FILE, COEFFICIENTS_FILE, MANIFEST_FILE];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_text_round_trips(idx in 0usize..9, paper in any::<bool>(), t_end in 0.2..2.0f64, steps in 10usize..5000) {
        let id = ScenarioId::ALL[idx];
        let mut s = Scenario::new(id, if paper { Preset::Paper } else { Preset::Desk });
        s.t_end = s.t0 + t_end;
        s.steps = steps;
        let back = parse_config(&s.to_config_text()).unwrap();
        prop_assert_eq!(back.preset, Preset::Custom);
        s.preset = Preset::Custom;
        // Only the grid of the chosen solver is written out.
        match s.solver {
            SolverKind::Fourier => s.layout = back.layout.clone(),
            SolverKind::Chebyshev => s.fourier = back.fourier,
        }
        prop_assert_eq!(back, s);
    }

    /// Separators and comments do not change the parsed pairs.
    #[test]
    fn commas_and_newlines_are_equivalent(t_end in 0.1..3.0f64, steps in 1usize..10_000) {
        let a = parse_pairs(&format!("scenario = lin-gauss, t_end = {t_end}, steps = {steps}")).unwrap();
        let b = parse_pairs(&format!("# header\nscenario=lin-gauss\n  t_end = {t_end}  # window\nsteps = {steps}\n")).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn every_key_is_documented_once() {
    let mut keys = CONFIG_KEYS.to_vec();
    keys.sort_unstable();
    keys.dedup();
    assert_eq!(keys.len(), CONFIG_KEYS.len());
}

#[test]
fn list_prints_catalog() {
    let out = peregrine(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    for id in ScenarioId::ALL {
        assert!(text.contains(id.as_str()), "{id}");
    }
}

#[test]
fn config_errors_exit_2_without_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let o = out_dir.to_str().unwrap();
    for args in [
        vec!["run", "nope", "--out", o],
        vec!["run", "nl-gauss-t0", "--out", o, "--override", "sigma=1.1"],
        vec!["run", "lin-gauss", "--out", o, "--override", "n=1000"],
        vec!["run", "nl-sigma09-t0", "--out", o, "--override", "sigma=0"],
    ] {
        let r = peregrine(&args);
        assert_eq!(r.status.code(), Some(2), "{args:?}");
        assert!(!out_dir.exists());
    }
}

fn run_small(dir: &Path, name: &str) -> std::path::PathBuf {
    let out = dir.join(name);
    let r = peregrine(&[
        "run",
        "lin-gauss",
        "--preset",
        "desk",
        "--out",
        out.to_str().unwrap(),
        "--override",
        "n=512, steps=100, t_end=0.2",
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    out
}

#[test]
fn run_writes_deterministic_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_small(dir.path(), "a");
    let b = run_small(dir.path(), "b");
    for f in FILES {
        assert!(a.join(f).is_file(), "{f}");
    }
    for f in [SNAPSHOTS_FILE, DIAGNOSTICS_FILE, COEFFICIENTS_FILE] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs between runs");
    }

    let snaps = fs::read_to_string(a.join(SNAPSHOTS_FILE)).unwrap();
    let mut lines = snaps.lines();
    assert_eq!(lines.next(), Some("t,x,re_u,im_u,abs_u"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 5);
    // 17 significant digits.
    assert_eq!(first[2].split('e').next().unwrap().trim_start_matches('-').len(), 18);
    assert!(!snaps.contains('\r'));
    let parsed = read_snapshots(fs::File::open(a.join(SNAPSHOTS_FILE)).map(std::io::BufReader::new).unwrap()).unwrap();
    assert_eq!(parsed.len(), 21);

    let diag = fs::read_to_string(a.join(DIAGNOSTICS_FILE)).unwrap();
    assert!(diag.starts_with("t,E,delta_E,M,max_u,max_diff,parity_err,floor_I,floor_II,floor_III,floor_IV\n"));
    let coeffs = fs::read_to_string(a.join(COEFFICIENTS_FILE)).unwrap();
    assert!(coeffs.starts_with("t,domain,index,magnitude\n"));

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join(MANIFEST_FILE)).unwrap()).unwrap();
    assert_eq!(manifest["status"], "completed");
    assert_eq!(manifest["scenario"]["id"], "lin-gauss");
    assert_eq!(manifest["summary"]["steps_taken"], 100);

    let cmp = peregrine(&["compare", a.to_str().unwrap(), b.to_str().unwrap(), "--x", "-20,20", "--t", "0,0.2"]);
    assert!(cmp.status.success());
    assert!(String::from_utf8(cmp.stdout).unwrap().starts_with("max deviation 0e0"));
}

#[test]
fn chebyshev_snapshots_carry_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cheb");
    let r = peregrine(&[
        "run",
        "nl-sigma11-t0",
        "--out",
        out.to_str().unwrap(),
        "--override",
        "n_i=30, n_ii=40, n_iii=30, n_iv=30, steps=10, t_end=0.02",
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let snaps = fs::read_to_string(out.join(SNAPSHOTS_FILE)).unwrap();
    let rows: Vec<&str> = snaps.lines().skip(1).collect();
    assert!(rows[0].split(',').nth(1) == Some("-inf"));
    assert!(rows.iter().any(|r| r.split(',').nth(1) == Some("inf")));
}

#[test]
fn solver_failure_exits_3_with_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fail");
    let r = peregrine(&[
        "run",
        "nl-gauss-t0",
        "--out",
        out.to_str().unwrap(),
        "--override",
        "n_i=30, n_ii=40, n_iii=30, n_iv=30, steps=4, newton_max_iter=1",
    ]);
    assert_eq!(r.status.code(), Some(3));
    for f in FILES {
        assert!(out.join(f).is_file(), "{f}");
    }
    let manifest = fs::read_to_string(out.join(MANIFEST_FILE)).unwrap();
    assert!(manifest.contains("\"status\": \"failed\""));
}

#[test]
fn spectrum_verb_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let r = peregrine(&["spectrum", "--region", "-1,1,-1,1", "--resolution", "5", "--out", dir.path().to_str().unwrap()]);
    assert!(r.status.success());
    let csv = fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("re_lambda,im_lambda,in_essential,in_absolute"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 25);
    // (0, 0) lies on both spectra; (0.5, 0.5) on neither.
    assert!(rows.iter().any(|r| r.starts_with("0.0000000000000000e0,0.0000000000000000e0,true,true")));
    assert!(rows.iter().any(|r| r.starts_with("5.0000000000000000e-1,5.0000000000000000e-1,false,false")));
}

#[test]
fn bad_region_is_a_config_error() {
    let r = peregrine(&["spectrum", "--region", "1,2,3"]);
    assert_eq!(r.status.code(), Some(2));
}
