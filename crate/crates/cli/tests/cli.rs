use std::path::PathBuf;
use std::process::{Command, Output};

use bdcorr::oracles::ClosedForms;
use bdcorr_cli::{run, run_with_forms, EXIT_CHECK_FAILED, EXIT_DOMAIN, EXIT_OK, EXIT_PARSE};

fn bdcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// Comment lines stripped, header and rows split into fields.
fn table(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i]).collect()
}

fn comment_value(text: &str, key: &str) -> Option<f64> {
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .map(|v| v.parse().unwrap())
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("bdcorr-cli-{}-{name}", std::process::id()))
}

#[test]
fn quantify_reference_state() {
    let o = bdcorr(&["quantify", "1", "-0.6", "0.6"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    assert!(text.starts_with("# bdcorr "));
    let (header, rows) = table(&text);
    assert_eq!(header.join(","), "c1,c2,c3,T,D,C,Tg2,Dg2,Cg2,k");
    assert_eq!(rows.len(), 1);
    let d = column(&header, &rows, "D")[0];
    assert!((d - 0.278072).abs() < 5e-7);
    assert_eq!(column(&header, &rows, "Dg2")[0], 0.36);
    assert_eq!(column(&header, &rows, "k")[0], 1.0);
}

#[test]
fn quantify_maximally_mixed_is_zero() {
    let o = bdcorr(&["quantify", "0", "0", "0"]);
    assert_eq!(code(&o), EXIT_OK);
    let (_, rows) = table(&stdout(&o));
    assert!(rows[0][3..9].iter().all(|&v| v == 0.0));
}

#[test]
fn quantify_rejects_non_physical() {
    let o = bdcorr(&["quantify", "1", "1", "1"]);
    assert_eq!(code(&o), EXIT_DOMAIN);
    assert!(stderr(&o).contains("non-physical state"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn parse_failures_exit_one() {
    for args in [
        &["quantify", "1", "x", "0"][..],
        &["quantify", "1"],
        &["frobnicate"],
        &["evolve", "1", "0", "0", "--steps", "-3"],
        &["inversions", "--quantifier", "Q"],
    ] {
        assert_eq!(code(&bdcorr(args)), EXIT_PARSE, "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let o = bdcorr(&["--help"]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(stdout(&o).contains("quantify"));
    let o = bdcorr(&["--version"]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(stdout(&o).starts_with("bdcorr "));
}

#[test]
fn evolve_entropic_plateau() {
    let o = bdcorr(&["evolve", "1", "-0.6", "0.6", "--nu-max", "3", "--steps", "601", "--tau", "5", "--alpha", "1"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    let crossing = comment_value(&text, "crossing").expect("crossing comment");
    let (header, rows) = table(&text);
    assert_eq!(header.join(","), "nu,c1,c2,c3,T,D,C,Tg2,Dg2,Cg2,k");
    assert_eq!(rows.len(), 601);
    let nu = column(&header, &rows, "nu");
    let d = column(&header, &rows, "D");
    let before: Vec<f64> = nu.iter().zip(&d).filter(|(n, _)| **n < crossing).map(|(_, d)| *d).collect();
    assert!(before.len() >= 2);
    assert!(before.iter().all(|&v| v == before[0]));
    assert!((before[0] - 0.278072).abs() < 5e-7);
    // D drops once c3 takes over
    assert!(d.iter().any(|&v| v < before[0] - 1e-3));
}

#[test]
fn evolve_geometric_plateau() {
    let o = bdcorr(&["evolve", "0.6", "0", "0.4"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    let crossing = comment_value(&text, "crossing").unwrap();
    let (header, rows) = table(&text);
    let nu = column(&header, &rows, "nu");
    let dg = column(&header, &rows, "Dg2");
    for (n, v) in nu.iter().zip(&dg) {
        if *n < crossing {
            assert!((v - 0.08).abs() < 1e-12, "2D_g = {v} at ν = {n}");
        }
    }
}

#[test]
fn evolve_maximally_mixed_stays_zero() {
    let o = bdcorr(&["evolve", "0", "0", "0", "--steps", "11"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    assert!(comment_value(&text, "crossing").is_none());
    let (_, rows) = table(&text);
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r[4..10].iter().all(|&v| v == 0.0)));
}

#[test]
fn evolve_invalid_parameters_exit_two() {
    assert_eq!(code(&bdcorr(&["evolve", "1", "0", "0", "--alpha", "0.01"])), EXIT_DOMAIN);
    assert_eq!(code(&bdcorr(&["evolve", "1", "0", "0", "--steps", "1"])), EXIT_DOMAIN);
    assert_eq!(code(&bdcorr(&["evolve", "1", "0", "0", "--nu-max", "-1"])), EXIT_DOMAIN);
    assert_eq!(code(&bdcorr(&["evolve", "1", "1", "1"])), EXIT_DOMAIN);
}

#[test]
fn scan_default_spec() {
    let o = bdcorr(&["scan"]);
    assert_eq!(code(&o), EXIT_OK);
    let (header, rows) = table(&stdout(&o));
    assert_eq!(header.join(","), "c1,c2,c3,T,D,C,Tg2,Dg2,Cg2,k");
    assert_eq!(rows.len(), 101);
    assert!(column(&header, &rows, "Tg2").iter().all(|v| (v - 0.145).abs() < 1e-12));
    let t = column(&header, &rows, "T");
    let spread = t.iter().cloned().fold(f64::MIN, f64::max) - t.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread > 0.01);
}

#[test]
fn scan_degenerate_and_invalid() {
    let o = bdcorr(&["scan", "--radius", "0", "--c3", "0", "--c1-min", "0", "--c1-max", "0", "--steps", "5"]);
    assert_eq!(code(&o), EXIT_OK);
    let (_, rows) = table(&stdout(&o));
    assert!(rows.iter().all(|r| r[..9].iter().all(|&v| v == 0.0)));

    assert_eq!(code(&bdcorr(&["scan", "--c3", "0.9"])), EXIT_DOMAIN);
    assert_eq!(code(&bdcorr(&["scan", "--c1-min", "-0.7"])), EXIT_DOMAIN);
    assert_eq!(code(&bdcorr(&["scan", "--steps", "1"])), EXIT_DOMAIN);
}

#[test]
fn inversions_lists() {
    let o = bdcorr(&["inversions", "--quantifier", "D"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    let row = text
        .lines()
        .find(|l| l.starts_with("D,-0.3,0.2,"))
        .expect("(-0.3, 0.2) inversion listed");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(&fields[5..], ["0.0325", "0.02", "true", "false"]);

    let o = bdcorr(&["inversions", "-q", "C"]);
    assert_eq!(code(&o), EXIT_OK);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 1, "only the header: {rows:?}");

    let o = bdcorr(&["inversions", "--radius", "0", "--c3", "0", "--c1-min", "0", "--c1-max", "0"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 1);

    assert_eq!(code(&bdcorr(&["inversions", "--steps", "0"])), EXIT_DOMAIN);
}

#[test]
fn check_forced_maximally_mixed_state() {
    let o = bdcorr(&["check", "--seed", "42", "--samples", "1", "--state", "0,0,0"]);
    assert_eq!(code(&o), EXIT_OK, "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[3], "pass");
        let dev: f64 = fields[1].parse().unwrap();
        assert!(dev <= f64::EPSILON, "{row}");
    }
}

#[test]
fn check_seeded_states_pass() {
    let o = bdcorr(&["check", "--seed", "42", "--samples", "3", "--grid-theta", "91", "--grid-phi", "181"]);
    assert_eq!(code(&o), EXIT_OK, "{}", stdout(&o));
    assert!(stdout(&o).contains("# command=check seed=42 samples=3 grid=91x181"));
}

#[test]
fn check_catches_corrupted_closed_form() {
    let forms = ClosedForms {
        geometric_discord: |s| Ok(s.sum_of_squares() / 4.0),
        ..ClosedForms::default()
    };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with_forms(
        ["bdcorr", "check", "--samples", "2", "--grid-theta", "37", "--grid-phi", "73"],
        &forms,
        &mut out,
        &mut err,
    );
    assert_eq!(code, EXIT_CHECK_FAILED);
    let out = String::from_utf8(out).unwrap();
    assert!(out.contains("geometric_discord_vs_bruteforce,"));
    assert!(out.lines().any(|l| l.starts_with("geometric_discord_vs_bruteforce") && l.contains(",fail,")));
}

#[test]
fn check_zero_samples_is_domain_error() {
    assert_eq!(code(&bdcorr(&["check", "--samples", "0"])), EXIT_DOMAIN);
}

#[test]
fn output_is_deterministic() {
    for args in [&["evolve", "0.3", "-0.2", "0.1"][..], &["scan"], &["inversions", "-q", "T"]] {
        let a = bdcorr(args);
        let b = bdcorr(args);
        assert_eq!(code(&a), EXIT_OK);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_flag_writes_file() {
    let path = temp_path("scan.csv");
    let o = bdcorr(&["scan", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, bdcorr(&["scan"]).stdout);
}

#[test]
fn config_file_supplies_defaults() {
    let path = temp_path("config.toml");
    std::fs::write(&path, "# defaults\ntau = 2\nalpha = 0.5\n").unwrap();
    let cfg = path.to_str().unwrap();
    let from_config = bdcorr(&["evolve", "1", "0", "0", "--steps", "5", "--config", cfg]);
    let explicit = bdcorr(&["evolve", "1", "0", "0", "--steps", "5", "--tau", "2", "--alpha", "0.5"]);
    let overridden = bdcorr(&["evolve", "1", "0", "0", "--steps", "5", "--config", cfg, "--tau", "5", "--alpha", "1"]);
    let defaults = bdcorr(&["evolve", "1", "0", "0", "--steps", "5"]);

    std::fs::write(&path, "tua = 2\n").unwrap();
    let typo = bdcorr(&["quantify", "0", "0", "0", "--config", cfg]);
    std::fs::remove_file(&path).unwrap();

    assert_eq!(code(&from_config), EXIT_OK);
    assert_eq!(from_config.stdout, explicit.stdout);
    assert_eq!(overridden.stdout, defaults.stdout);
    assert_ne!(from_config.stdout, defaults.stdout);
    assert_eq!(code(&typo), EXIT_PARSE);
    assert_eq!(code(&bdcorr(&["scan", "--config", "/nonexistent/bdcorr.toml"])), EXIT_PARSE);
}

#[test]
fn in_process_run_matches_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["bdcorr", "quantify", "0.6", "0", "0.4"], &mut out, &mut err);
    assert_eq!(code, EXIT_OK);
    assert!(err.is_empty());
    assert_eq!(out, bdcorr(&["quantify", "0.6", "0", "0.4"]).stdout);
}
