use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ldpc-exponent"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let rows = body(text);
    let idx = rows[0].split(',').position(|h| h == name).expect("column present");
    rows[1..].iter().map(|r| r.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

// Coarse grids keep the analytic commands to a few seconds.
const FAST: [&str; 6] = ["--epsilon-grid", "40", "--eta-grid", "60", "--pair-grid", "16"];

#[test]
fn exponent_csv_shape_and_monotone_bound() {
    let mut args = vec!["exponent", "--c", "4", "--d", "8", "--steps", "50"];
    args.extend(FAST);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    for key in ["# tool:", "# command: exponent", "# params:", "# seed:", "# rng: chacha8", "# timestamp:"] {
        assert!(text.contains(key), "missing {key}");
    }
    let rows = body(&text);
    assert_eq!(rows[0], "delta,bound_bits,eps_star,eta0,E1,E2,confidence");
    assert_eq!(rows.len(), 51);
    let bound = column(&text, "bound_bits");
    assert!(bound.windows(2).all(|w| w[1] <= w[0]), "{bound:?}");
    assert!(bound[0] > 0.0);
}

#[test]
fn exponent_is_deterministic() {
    let mut args = vec!["exponent", "--c", "3", "--d", "6", "--steps", "12"];
    args.extend(FAST);
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(body(&a), body(&b));
}

#[test]
fn thread_count_does_not_change_output() {
    let mut args = vec!["exponent", "--c", "3", "--d", "6", "--steps", "8"];
    args.extend(FAST);
    let a = bin().args(&args).env("LDPC_EXPONENT_THREADS", "1").output().unwrap();
    let b = bin().args(&args).env("LDPC_EXPONENT_THREADS", "3").output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(body(&stdout(&a)), body(&stdout(&b)));
}

#[test]
fn invalid_ensembles_exit_2() {
    let o = run(&["exponent", "--c", "2", "--d", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expurgation undefined for c <= 2"));
    assert_eq!(run(&["exponent", "--c", "6", "--d", "4"]).status.code(), Some(2));
    assert_eq!(run(&["exponent", "--c", "4", "--d", "8", "--gamma", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["exponent", "--c", "4"]).status.code(), Some(2));
}

#[test]
fn confidence_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("conf.csv");
    let svg = dir.path().join("conf.svg");
    let mut args = vec!["confidence", "--c", "4", "--d", "8", "--steps", "20"];
    args.extend(FAST);
    args.extend(["--out", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(body(&text)[0].starts_with("delta,eta0,x_eta,beta_const,confidence"));
    let conf = column(&text, "confidence");
    assert_eq!(conf.len(), 20);
    assert!(conf.iter().all(|c| (0.0..=1.0).contains(c)));
    assert!(conf.iter().any(|&c| c >= 0.99));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
}

#[test]
fn alpha0_reports_bracket() {
    let o = run(&["alpha0", "--c", "3", "--d", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("alpha0 = ")).unwrap();
    let a: f64 = line.trim_start_matches("alpha0 = ").parse().unwrap();
    assert!((a - 0.017990).abs() < 5e-4, "{a}");
    let g: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("g("))
        .map(|l| l.split("= ").nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(g[0] < 0.0 && g[1] > 0.0, "{g:?}");
    assert!(run(&["alpha0", "--c", "4", "--d", "8"]).status.success());
    assert_eq!(run(&["alpha0", "--c", "2", "--d", "4"]).status.code(), Some(2));
}

#[test]
fn simulate_exact_agrees_with_monte_carlo() {
    let exact = stdout(&run(&["simulate", "--c", "2", "--d", "4", "--N", "8", "--delta", "0.3", "--exact", "--seed", "4"]));
    let mc = stdout(&run(&[
        "simulate", "--c", "2", "--d", "4", "--N", "8", "--delta", "0.3", "--trials", "200000", "--seed", "4",
    ]));
    assert_eq!(body(&exact)[0], "N,delta,p_e,stderr,mode,seed");
    let pe = column(&exact, "p_e")[0];
    let est = column(&mc, "p_e")[0];
    let se = column(&mc, "stderr")[0];
    assert!((pe - est).abs() <= 3.0 * se, "{pe} vs {est} +- {se}");
    assert!(body(&mc)[1].ends_with(",mc,4"));
}

#[test]
fn simulate_edge_cases() {
    let zero = stdout(&run(&["simulate", "--c", "3", "--d", "6", "--N", "12", "--delta", "0", "--trials", "1000"]));
    assert_eq!(column(&zero, "p_e"), vec![0.0]);
    let args = ["simulate", "--c", "3", "--d", "6", "--N", "24,36", "--delta", "0.1,0.2", "--trials", "5000", "--seed", "9"];
    let a = stdout(&run(&args));
    assert_eq!(body(&a).len(), 5);
    assert_eq!(body(&a), body(&stdout(&run(&args))));
    let o = run(&["simulate", "--c", "3", "--d", "6", "--N", "30", "--delta", "0.1", "--exact"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    for suite in ["dawson", "identities", "decoder"] {
        let o = run(&["verify", "--suite", suite, "--budget", "small"]);
        let text = stdout(&o);
        assert!(o.status.success(), "{suite}: {text}");
        assert!(text.lines().last().unwrap().contains("status=PASS"));
    }
}

#[test]
fn verify_canary_fails_with_counterexample() {
    let o = run(&["verify", "--suite", "spectra", "--budget", "small", "--canary-mask-off-by-one"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("counterexample: pair enumerator d = 2"), "{text}");
    assert!(text.contains("status=FAIL"));
}

fn write_exponent_csv(dir: &Path) -> std::path::PathBuf {
    let csv = dir.join("exp.csv");
    let mut args = vec!["exponent", "--c", "4", "--d", "8", "--steps", "15", "--out", csv.to_str().unwrap()];
    args.extend(FAST);
    assert!(run(&args).status.success());
    csv
}

#[test]
fn plot_renders_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write_exponent_csv(dir.path());
    let p = csv.to_str().unwrap();
    let one = run(&["plot", "--input", p, "--x", "delta", "--y", "bound_bits"]);
    assert!(one.status.success());
    let svg = stdout(&one);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 1);
    assert!(svg.contains("exponent c=4 d=8"));
    // the bound decreases left to right, so SVG y grows
    let pts = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    let ys: Vec<f64> = pts.split(' ').map(|p| p.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(ys.windows(2).all(|w| w[1] >= w[0]));

    let two = stdout(&run(&["plot", "--input", p, "--x", "delta", "--y", "E1,E2"]));
    assert_eq!(two.matches("<polyline").count(), 2);
    assert!(two.contains("class=\"legend\""));

    assert_eq!(run(&["plot", "--input", p, "--x", "delta", "--y", "nope"]).status.code(), Some(2));
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "# command: exponent\ndelta,bound_bits\n").unwrap();
    let o = run(&["plot", "--input", empty.to_str().unwrap(), "--x", "delta", "--y", "bound_bits"]);
    assert_eq!(o.status.code(), Some(2));
}
