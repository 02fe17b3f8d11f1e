use std::path::Path;
use std::process::{Command, Output};

fn tbmoc(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbmoc"))
        .args(args)
        .current_dir(cwd)
        .env_remove("TBMOC_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn data_lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn simulate_writes_a_conserving_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let o = tbmoc(&["simulate", "-o", "run"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = data_lines(&dir.path().join("run/trajectory.csv"));
    assert_eq!(lines[0], "t,S,L1,I,L2,R,u1,u2");
    assert_eq!(lines[1], "0,19000,9250,1000,500,250,0,0");
    assert_eq!(lines.len(), 242);
    for row in &lines[1..] {
        let v: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
        let total: f64 = v[1..6].iter().sum();
        assert!((total - 30_000.0).abs() <= 1e-8 * 30_000.0, "{row}");
    }
}

#[test]
fn front_level_count_is_passed_through() {
    let dir = tempfile::tempdir().unwrap();
    let o = tbmoc(&["front", "--levels", "5", "--budget", "1500", "-o", "."], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = data_lines(&dir.path().join("front.csv"));
    assert_eq!(lines[0], "eps,f1,f2,status,evaluations");
    assert_eq!(lines.len(), 6);
    let eps: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(eps, vec![0.0, 2.5, 5.0, 7.5, 10.0]);
    let text = std::fs::read_to_string(dir.path().join("front.csv")).unwrap();
    assert!(text.contains("# budget = 1500") && text.contains("# levels = 5") && text.contains("# seed = 0"));
    assert!(dir.path().join("representative_f2_2.5.csv").exists());
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), "[model]\nbeta = 150\nN = 60000\n[output]\ndir = \"cfg_out\"\n").unwrap();
    let o = tbmoc(&["simulate", "--config", "run.toml", "--N", "120", "--u1", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.path().join("cfg_out/trajectory.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("# beta = 150\n") && text.contains("# N = 120\n"));
    assert_eq!(data_lines(&path)[1], "0,76,37,4,2,1,1,0");
}

#[test]
fn output_directory_falls_back_to_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tbmoc"))
        .args(["simulate"])
        .current_dir(dir.path())
        .env("TBMOC_OUTPUT_DIR", "from_env")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("from_env/trajectory.csv").exists());
    let o = tbmoc(&["simulate"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("out/trajectory.csv").exists());
}

#[test]
fn hv_scores_a_front_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("f.csv"),
        "# method = test\neps,f1,f2,status,evaluations\n0,0.25,0.75,converged,1\n1,0.75,0.25,converged,1\n2,0.1,0.1,infeasible,1\n",
    )
    .unwrap();
    let o = tbmoc(&["hv", "f.csv", "--ref", "1,1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "0.3125");
}

#[test]
fn compare_prints_three_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = tbmoc(&["compare", "--levels", "4", "--weights", "3", "--budget", "800", "-o", "."], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert!(rows[0].starts_with("Method") && rows[0].ends_with("Hypervolume"));
    assert!(rows[1].starts_with("epsilon-constraint"));
    assert!(rows[2].starts_with("goal attainment"));
    assert!(rows[3].starts_with("Chebyshev"));
    for r in &rows[1..4] {
        let hv: f64 = r.split_whitespace().last().unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&hv));
    }
    for m in ["epsilon-constraint", "goal-attainment", "chebyshev"] {
        assert!(dir.path().join(format!("compare_{m}.csv")).exists());
    }
    assert_eq!(data_lines(&dir.path().join("hypervolume.csv")).len(), 4);
}

#[test]
fn sweep_writes_one_front_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let o = tbmoc(&["sweep", "--axis", "eps2", "--values", "0.25,0.75", "--levels", "3", "--budget", "800", "-o", "."], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for v in ["0.25", "0.75"] {
        let path = dir.path().join(format!("sweep_eps2_{v}.csv"));
        assert_eq!(data_lines(&path).len(), 4);
        assert!(std::fs::read_to_string(&path).unwrap().contains(&format!("# eps2 = {v}\n")));
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["frobnicate"][..], &["simulate", "--bogus"], &["sweep", "--axis", "gamma"], &[]] {
        let o = tbmoc(args, dir.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn runtime_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "[model]\nbetta = 1\n").unwrap();
    let o = tbmoc(&["simulate", "--config", "bad.toml"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("betta"));
    let o = tbmoc(&["simulate", "--eps1", "2"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = tbmoc(&["hv", "missing.csv", "--ref", "1,1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = tbmoc(&["simulate", "--u1", "1.5"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}
