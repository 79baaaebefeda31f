use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cp-phase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_config(cmd: &str, name: &str) -> Output {
    run(&[cmd, "--config", config(name).to_str().unwrap()])
}

fn run_json(cmd: &str, json: &str, extra: &[&str]) -> Output {
    let dir = tempdir();
    let path = dir.join("job.json");
    std::fs::write(&path, json).unwrap();
    let mut args = vec![cmd, "--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn tempdir() -> PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "cp-phase-cli-{}-{}",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// (mu, re, im) from the fixed-width pattern table.
fn rows(text: &str) -> Vec<(usize, f64, f64)> {
    text.lines()
        .filter_map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            let mu = f.first()?.parse().ok()?;
            Some((mu, f[1].parse().ok()?, f[2].parse().ok()?))
        })
        .collect()
}

fn field(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .map(|v| v.trim().to_string())
        .unwrap_or_default()
}

fn csv(text: &str) -> Vec<(f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("chi,intensity"));
    lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

#[test]
fn pattern_depolarizing() {
    let o = run_config("pattern", "depolarizing.json");
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 4);
    assert!((r[0].1 - 0.7f64.sqrt()).abs() < 1e-12 && r[0].2 == 0.0);
    assert!((r[3].1 - 0.1f64.sqrt() * 0.5).abs() < 1e-12 && r[3].2 == 0.0);
}

#[test]
fn pattern_identity_single_row() {
    let o = run_config("pattern", "identity.json");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&stdout(&o)), vec![(0, 1.0, 0.0)]);
}

#[test]
fn incomplete_kraus_list_is_a_domain_error() {
    let o = run_config("pattern", "kraus_incomplete.json");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("completeness residual"));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_json_reports_location() {
    let o = run_json("pattern", "{\"state\": {\"bloch\": [0, 0,\n", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn non_positive_state_is_a_domain_error() {
    let json = r#"{"state":{"density":[[[1.2,0],[0,0]],[[0,0],[-0.2,0]]]},"channel":{"preset":"identity"}}"#;
    let o = run_json("pattern", json, &[]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("positive semidefinite"));
}

#[test]
fn missing_and_conflicting_fields_are_input_errors() {
    let cases = [
        r#"{"channel":{"preset":"identity"}}"#,
        r#"{"state":{"bloch":[0,0,0],"density":[[[1,0]]]},"channel":{"preset":"identity"}}"#,
        r#"{"state":{"bloch":[0,0,0]},"channel":{"preset":"bogus"}}"#,
        r#"{"state":{"bloch":[0,0,0]},"channel":{"preset":"identity"},"extra":1}"#,
    ];
    for json in cases {
        assert_eq!(run_json("pattern", json, &[]).status.code(), Some(2), "{json}");
    }
}

#[test]
fn fringe_identity_grid() {
    let o = run_config("fringe", "fringe_identity.json");
    assert_eq!(o.status.code(), Some(0));
    let want = [1.0, 0.5, 0.0, 0.5, 1.0];
    let got = csv(&stdout(&o));
    assert_eq!(got.len(), 5);
    for ((_, i), w) in got.iter().zip(want) {
        assert!((i - w).abs() < 1e-12);
    }
}

#[test]
fn fringe_depolarizing_peak() {
    let got = csv(&stdout(&run_config("fringe", "fringe_depolarizing.json")));
    let (chi, peak) = got.iter().copied().fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    assert!((peak - 0.9).abs() < 1e-12);
    assert!(chi.abs() < 1e-12);
}

#[test]
fn fringe_amplitude_damping_peak_at_quarter_turn() {
    let got = csv(&stdout(&run_config("fringe", "fringe_amplitude_damping.json")));
    let (chi, _) = got.iter().copied().fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
    let step = 2.0 * std::f64::consts::PI / 360.0;
    assert!((chi - std::f64::consts::FRAC_PI_2).abs() <= step / 2.0);
}

#[test]
fn fringe_requires_mu_and_grid() {
    let base = r#"{"state":{"bloch":[0,0,0]},"channel":{"preset":"identity"}"#;
    assert_eq!(run_json("fringe", &format!("{base}}}"), &[]).status.code(), Some(2));
    let no_grid = format!(r#"{base},"mu":0}}"#);
    assert_eq!(run_json("fringe", &no_grid, &[]).status.code(), Some(2));
}

#[test]
fn fringe_writes_out_file() {
    let dir = tempdir();
    let out = dir.join("fringe.csv");
    let o = run(&[
        "fringe",
        "--config",
        config("fringe_identity.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert_eq!(text.lines().nth(2), Some("1.5707963267949,0.5"));
}

#[test]
fn verify_passes_for_presets() {
    for name in ["verify_depolarizing.json", "verify_amplitude_damping.json"] {
        let o = run_config("verify", name);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
}

#[test]
fn verify_negative_control_fails() {
    let o = run_config("verify", "verify_negative_control.json");
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.trim_end().ends_with("FAIL"));
    let dev: f64 = field(&text, "max deviation").split_whitespace().next().unwrap().parse().unwrap();
    assert!((dev - 1e-3).abs() < 1e-6);
}

#[test]
fn tol_flag_overrides_threshold() {
    let path = config("verify_negative_control.json");
    let o = run(&["verify", "--config", path.to_str().unwrap(), "--tol", "1e-2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn geomphase_octant() {
    let o = run_config("geomphase", "geomphase_octant.json");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = rows(&text);
    let (s, c) = std::f64::consts::FRAC_PI_4.sin_cos();
    let amp = 0.7f64.sqrt();
    assert!((r[0].1 - amp * c).abs() < 1e-6 && (r[0].2 - amp * 0.5 * s).abs() < 1e-6);
    let omega: f64 = field(&text, "solid_angle").parse().unwrap();
    assert!((omega + std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    let after: f64 = field(&text, "pt_residual_after").parse().unwrap();
    assert!(after < 1e-6);
    assert!(!text.contains("warning"));
}

#[test]
fn geomphase_identity_channel_gives_bare_geometric_phase() {
    let text = stdout(&run_config("geomphase", "geomphase_octant_identity.json"));
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    let (s, c) = std::f64::consts::FRAC_PI_4.sin_cos();
    assert!((r[0].1 - c).abs() < 1e-6 && (r[0].2 - 0.5 * s).abs() < 1e-6);
}

#[test]
fn geomphase_bit_flip() {
    let text = stdout(&run_config("geomphase", "geomphase_bitflip.json"));
    let r = rows(&text);
    assert!((r[1].1 - 0.5 * 0.1f64.sqrt()).abs() < 1e-6 && r[1].2.abs() < 1e-6);
    let line = text.lines().find(|l| l.trim_start().starts_with("1 ")).unwrap();
    let phase: f64 = line.split_whitespace().nth(4).unwrap().parse().unwrap();
    assert!(phase.abs() < 1e-6);
}

#[test]
fn geomphase_degenerate_state() {
    let o = run_config("geomphase", "geomphase_degenerate.json");
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("degenerate"));
}

#[test]
fn dilate_emits_unitary_json() {
    let o = run_config("dilate", "dilate_amplitude_damping.json");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sys_dim"], 2);
    assert_eq!(v["env_dim"], 2);
    assert_eq!(v["unitary"].as_array().unwrap().len(), 4);
    assert_eq!(v["unitary"][0].as_array().unwrap().len(), 4);
    assert!(v["unitarity_residual"].as_f64().unwrap() < 1e-12);
    assert!(v["roundtrip_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn output_is_deterministic() {
    for (cmd, name) in [
        ("pattern", "depolarizing.json"),
        ("geomphase", "geomphase_octant.json"),
        ("dilate", "dilate_amplitude_damping.json"),
    ] {
        assert_eq!(run_config(cmd, name).stdout, run_config(cmd, name).stdout);
    }
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let o = run(&["bogus", "--config", "x.json"]);
    assert_eq!(o.status.code(), Some(2));
}
