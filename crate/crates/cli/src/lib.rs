//! The `bdcorr` command line. Everything is driven through [`run`], which
//! takes the argument list and output sinks and returns the process exit
//! code, so the binary is a thin wrapper and tests can call it in-process.
//!
//! Exit codes: 0 ok, 1 argument/config parse failure, 2 domain error
//! (non-physical state, invalid parameters), 3 oracle check failed,
//! 4 an optimizer did not converge.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use bdcorr::csv::{
    format_float, inversions_table, report_row, trajectory_row, REPORT_HEADER, TRAJECTORY_HEADER,
};
use bdcorr::dynamics::{first_crossing, trajectory, PhaseFlipParams};
use bdcorr::oracles::{run_checks, seeded_states, CheckOptions, ClosedForms, GridResolution};
use bdcorr::scan::{inversions, scan, Quantifier, ScanSpec};
use bdcorr::{full_report, BellDiagonalState, CorrelationReport, Error};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "bdcorr", version, about = "Correlation quantifiers for Bell-diagonal two-qubit states")]
struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// `key = value` file with defaults for tau, alpha, grid_theta, grid_phi.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
#[command(allow_negative_numbers = true)]
struct StateArgs {
    c1: f64,
    c2: f64,
    c3: f64,
}

impl StateArgs {
    fn state(&self) -> BellDiagonalState {
        BellDiagonalState::new(self.c1, self.c2, self.c3)
    }
}

#[derive(Args, Debug, Clone, Copy)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[arg(long, default_value_t = 0.2)]
    c3: f64,
    #[arg(long, default_value_t = 0.5)]
    radius: f64,
    #[arg(long, default_value_t = -0.5)]
    c1_min: f64,
    #[arg(long, default_value_t = 0.5)]
    c1_max: f64,
    #[arg(long, default_value_t = 101)]
    steps: usize,
}

impl ScanArgs {
    fn spec(&self) -> ScanSpec {
        ScanSpec {
            c3: self.c3,
            radius: self.radius,
            c1_min: self.c1_min,
            c1_max: self.c1_max,
            steps: self.steps,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All quantifiers for one state.
    #[command(allow_negative_numbers = true)]
    Quantify {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Quantifiers along a phase-flip trajectory.
    #[command(allow_negative_numbers = true)]
    Evolve {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 3.0)]
        nu_max: f64,
        #[arg(long, default_value_t = 601)]
        steps: usize,
        /// Memory time (default 5, or from the config file).
        #[arg(long)]
        tau: Option<f64>,
        /// Coupling strength |α| (default 1, or from the config file).
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Quantifiers over states with fixed c3 and c1² + c2² = radius².
    Scan(ScanArgs),
    /// Scan-state pairs ranked oppositely by the entropic and geometric quantifier.
    Inversions {
        #[command(flatten)]
        scan: ScanArgs,
        /// D, C or T.
        #[arg(long, short, default_value = "D")]
        quantifier: Quantifier,
    },
    /// Compare the closed forms against brute-force optimization.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Check this state (`c1,c2,c3`) first; may be repeated.
        #[arg(long = "state", value_name = "C1,C2,C3", allow_hyphen_values = true)]
        states: Vec<BellDiagonalState>,
        #[arg(long)]
        grid_theta: Option<usize>,
        #[arg(long)]
        grid_phi: Option<usize>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    tau: Option<f64>,
    alpha: Option<f64>,
    grid_theta: Option<usize>,
    grid_phi: Option<usize>,
}

impl Config {
    fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

/// Failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
            _ => EXIT_DOMAIN,
        };
        Self { code, message: e.to_string() }
    }
}

/// Runs the CLI and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_forms(args, &ClosedForms::default(), out, err)
}

/// Like [`run`] but `check` compares the oracles against `forms`.
pub fn run_with_forms<I, T>(
    args: I,
    forms: &ClosedForms,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_PARSE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let (text, code) = match execute(&cli, forms) {
        Ok(done) => done,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_DOMAIN;
    }
    if code == EXIT_CHECK_FAILED {
        let _ = writeln!(err, "error: oracle check failed");
    }
    code
}

fn execute(cli: &Cli, forms: &ClosedForms) -> Result<(String, i32), Failure> {
    let config = match &cli.config {
        Some(path) => Config::load(path).map_err(|m| Failure::new(EXIT_PARSE, m))?,
        None => Config::default(),
    };
    let mut out = format!("# bdcorr {}\n", env!("CARGO_PKG_VERSION"));
    let code = match &cli.command {
        Command::Quantify { state } => {
            let s = state.state();
            out += &format!("# command=quantify state={}\n", fmt_state(&s));
            let report = full_report(&s)?;
            out += REPORT_HEADER;
            out.push('\n');
            push_report(&mut out, &report)?;
            EXIT_OK
        }
        Command::Evolve { state, nu_max, steps, tau, alpha } => {
            let s = state.state();
            let tau = tau.or(config.tau).unwrap_or(PhaseFlipParams::default().tau());
            let alpha = alpha.or(config.alpha).unwrap_or(PhaseFlipParams::default().alpha_abs());
            let params = PhaseFlipParams::new(tau, alpha)?;
            let t = trajectory(&s, *nu_max, *steps, &params)?;
            out += &format!(
                "# command=evolve state={} nu_max={} steps={steps} tau={} alpha={} mu={}\n",
                fmt_state(&s),
                format_float(*nu_max),
                format_float(tau),
                format_float(alpha),
                format_float(params.mu())
            );
            if let Some(nu) = first_crossing(&s, &params)? {
                out += &format!("# crossing={}\n", format_float(nu));
            }
            out += TRAJECTORY_HEADER;
            out.push('\n');
            for sample in &t.samples {
                sample.report.state.checked()?;
                out += &trajectory_row(sample.nu, &sample.report);
                out.push('\n');
            }
            EXIT_OK
        }
        Command::Scan(args) => {
            out += &format!("# command=scan {}\n", describe_scan(&args.spec()));
            let reports = scan(&args.spec())?;
            out += REPORT_HEADER;
            out.push('\n');
            for r in &reports {
                push_report(&mut out, r)?;
            }
            EXIT_OK
        }
        Command::Inversions { scan, quantifier } => {
            let spec = scan.spec();
            out += &format!(
                "# command=inversions quantifier={} {}\n",
                quantifier.symbol(),
                describe_scan(&spec)
            );
            out += &inversions_table(&inversions(&spec, *quantifier)?);
            EXIT_OK
        }
        Command::Check { seed, samples, states, grid_theta, grid_phi } => {
            if *samples == 0 {
                return Err(Failure::new(EXIT_DOMAIN, "samples must be at least 1"));
            }
            let default_grid = GridResolution::default();
            let grid = GridResolution::new(
                grid_theta.or(config.grid_theta).unwrap_or(default_grid.theta),
                grid_phi.or(config.grid_phi).unwrap_or(default_grid.phi),
            )?;
            let mut opts = CheckOptions { grid, ..CheckOptions::default() };
            opts.product.seed = *seed;
            let mut checked = states.clone();
            checked.extend(seeded_states(*seed, samples.saturating_sub(states.len())));
            let report = run_checks(&checked, &opts, forms)?;
            out += &format!(
                "# command=check seed={seed} samples={} grid={}x{} forced={}\n",
                report.samples,
                grid.theta,
                grid.phi,
                states.len()
            );
            out += "check,max_deviation,tolerance,status,worst_c1,worst_c2,worst_c3\n";
            for line in &report.lines {
                let worst = match line.worst_state {
                    Some(s) => fmt_state(&s),
                    None => ",,".into(),
                };
                out += &format!(
                    "{},{:e},{:e},{},{worst}\n",
                    line.name,
                    line.max_deviation,
                    line.tolerance,
                    if line.passed() { "pass" } else { "fail" }
                );
            }
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
    };
    Ok((out, code))
}

fn push_report(out: &mut String, r: &CorrelationReport) -> Result<(), Failure> {
    r.state.checked()?;
    out.push_str(&report_row(r));
    out.push('\n');
    Ok(())
}

fn fmt_state(s: &BellDiagonalState) -> String {
    [s.c1, s.c2, s.c3].map(format_float).join(",")
}

fn describe_scan(spec: &ScanSpec) -> String {
    format!(
        "c3={} radius={} c1_min={} c1_max={} steps={}",
        format_float(spec.c3),
        format_float(spec.radius),
        format_float(spec.c1_min),
        format_float(spec.c1_max),
        spec.steps
    )
}
