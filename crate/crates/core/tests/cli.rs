use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sandwich_coherence::format::{parse_state, write_state, StateFile};
use sandwich_coherence::{maximally_coherent, DensityMatrix, ProbVector};
use tempfile::TempDir;

fn coherence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coherence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Fixtures {
    _dir: TempDir,
    plus2: PathBuf,
    diag: PathBuf,
}

fn fixtures() -> Fixtures {
    let dir = tempfile::tempdir().unwrap();
    let plus2 = dir.path().join("plus2.state");
    let diag = dir.path().join("diag.state");
    write_state(&plus2, &StateFile::Pure(maximally_coherent(2).unwrap())).unwrap();
    let d = DensityMatrix::from_diag(&ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap());
    write_state(&diag, &StateFile::Mixed(d)).unwrap();
    Fixtures {
        _dir: dir,
        plus2,
        diag,
    }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn measure_plus_state_s1_half() {
    let f = fixtures();
    let o = coherence(&[
        "measure",
        "--state",
        p(&f.plus2),
        "--measure",
        "s1",
        "--alpha",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "measure,alpha,value,converged,restarts_agreeing,method"
    );
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    let v: f64 = rows[0][2].parse().unwrap();
    assert!((v - 0.5).abs() < 1e-8, "{v}");
}

#[test]
fn measure_diagonal_state_is_zero() {
    let f = fixtures();
    let o = coherence(&[
        "measure",
        "--state",
        p(&f.diag),
        "--measure",
        "s",
        "--alpha",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = data_rows(&stdout(&o))[0][2].parse().unwrap();
    assert!(v.abs() < 1e-8, "{v}");
}

#[test]
fn measure_rejects_alpha_outside_regime() {
    let f = fixtures();
    let o = coherence(&[
        "measure",
        "--state",
        p(&f.plus2),
        "--measure",
        "s1",
        "--alpha",
        "1.2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn measure_reports_parse_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.state");
    std::fs::write(&bad, "{\n\"dim\": 2,\n\"matrix\": nope}").unwrap();
    let o = coherence(&[
        "measure",
        "--state",
        p(&bad),
        "--measure",
        "s",
        "--alpha",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn measure_with_grid_oracle() {
    let f = fixtures();
    let o = coherence(&[
        "measure",
        "--state",
        p(&f.plus2),
        "--measure",
        "s1",
        "--alpha",
        "0.75",
        "--oracle",
        "grid",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let row = &data_rows(&stdout(&o))[0];
    let v: f64 = row[2].parse().unwrap();
    assert!((v - 0.875).abs() < 1e-8, "{v}");
    assert_eq!(row[5], "grid-oracle");
}

#[test]
fn axioms_pass_for_s1() {
    let o = coherence(&[
        "axioms",
        "--measure",
        "s1",
        "--alpha",
        "0.7",
        "--dim",
        "3",
        "--trials",
        "40",
        "--seed",
        "42",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "measure,alpha,axiom,trials,max_violation,worst_case_seed,status"
    );
    assert_eq!(data_rows(&text).len(), 5);
}

#[test]
fn axioms_skip_c5_for_qubits() {
    let o = coherence(&[
        "axioms",
        "--measure",
        "s",
        "--alpha",
        "2",
        "--dim",
        "2",
        "--trials",
        "40",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&stdout(&o));
    let c5 = rows.iter().find(|r| r[2] == "C5").expect("C5 row");
    assert_eq!(c5[6], "skipped");
}

#[test]
fn axioms_fail_for_broken_measure() {
    let o = coherence(&[
        "axioms",
        "--measure",
        "broken",
        "--dim",
        "3",
        "--trials",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(data_rows(&stdout(&o)).iter().any(|r| r[6] == "fail"));
}

#[test]
fn sweep_plus_state_values() {
    let f = fixtures();
    let o = coherence(&[
        "sweep",
        "--alphas",
        "0.75,0.5",
        "--measures",
        "s1",
        "--state",
        p(&f.plus2),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "state_id,measure,alpha,value,method,converged"
    );
    let rows = data_rows(&text);
    let values: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert!((values[0] - 0.5).abs() < 1e-8);
    assert!((values[1] - 0.875).abs() < 1e-8);
}

#[test]
fn sweep_diagonal_state_is_all_zero() {
    let f = fixtures();
    let o = coherence(&[
        "sweep",
        "--alphas",
        "0.5,0.75,2",
        "--measures",
        "s1,s,geometric",
        "--state",
        p(&f.diag),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&stdout(&o));
    assert!(!rows.is_empty());
    for r in &rows {
        let v: f64 = r[3].parse().unwrap();
        assert!(v.abs() < 1e-8, "{r:?}");
    }
}

#[test]
fn sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<String> = (0..2)
        .map(|k| {
            let out = dir.path().join(format!("run{k}.csv"));
            let o = coherence(&[
                "sweep",
                "--alphas",
                "0.6,2",
                "--measures",
                "s1,s",
                "--generate",
                "3:2:3:5",
                "--seed",
                "9",
                "--out",
                p(&out),
            ]);
            assert_eq!(o.status.code(), Some(0));
            std::fs::read_to_string(out).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0].lines().count(), 1 + 3 * 3);
}

#[test]
fn random_writes_a_valid_state() {
    let o = coherence(&["random", "--dim", "3", "--rank", "2", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let s = parse_state(stdout(&o).trim()).unwrap();
    assert_eq!(s.dim(), 3);
    let o = coherence(&["random", "--dim", "2", "--pure", "--seed", "4"]);
    assert!(matches!(
        parse_state(stdout(&o).trim()).unwrap(),
        StateFile::Pure(_)
    ));
}
