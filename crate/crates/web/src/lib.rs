//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string. The JSON builders are plain Rust
//! functions so they can be tested natively; the `#[wasm_bindgen]` wrappers
//! only convert errors into JavaScript exceptions.

use bdcorr::dynamics::{first_crossing, trajectory, PhaseFlipParams};
use bdcorr::scan::{find_inversions, scan, Quantifier, ScanSpec};
use bdcorr::{full_report, BellDiagonalState, CorrelationReport, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Quantifier columns, geometric ones doubled to share a scale with the
/// entropic ones.
#[derive(Debug, Default, Serialize)]
pub struct Columns {
    #[serde(rename = "T")]
    pub total: Vec<f64>,
    #[serde(rename = "D")]
    pub discord: Vec<f64>,
    #[serde(rename = "C")]
    pub classical: Vec<f64>,
    #[serde(rename = "Tg2")]
    pub geo_total: Vec<f64>,
    #[serde(rename = "Dg2")]
    pub geo_discord: Vec<f64>,
    #[serde(rename = "Cg2")]
    pub geo_classical: Vec<f64>,
}

impl Columns {
    fn push(&mut self, r: &CorrelationReport) {
        self.total.push(r.total);
        self.discord.push(r.discord);
        self.classical.push(r.classical);
        self.geo_total.push(r.geo_total_norm);
        self.geo_discord.push(r.geo_discord_norm);
        self.geo_classical.push(r.geo_classical_norm);
    }

    fn from_reports<'a>(reports: impl IntoIterator<Item = &'a CorrelationReport>) -> Self {
        let mut c = Self::default();
        for r in reports {
            c.push(r);
        }
        c
    }
}

#[derive(Debug, Serialize)]
pub struct TrajectoryData {
    pub nu: Vec<f64>,
    pub crossing: Option<f64>,
    pub columns: Columns,
}

#[derive(Debug, Serialize)]
pub struct Pair {
    pub c1_first: f64,
    pub c1_second: f64,
}

#[derive(Debug, Serialize)]
pub struct ScanData {
    pub c1: Vec<f64>,
    pub columns: Columns,
    pub discord_inversions: Vec<Pair>,
    pub classical_inversions: usize,
}

#[derive(Debug, Serialize)]
pub struct StateData {
    pub physical: bool,
    pub entangled: bool,
    pub bell_eigenvalues: [f64; 4],
    pub report: Option<Columns>,
    pub dominant_index: Option<usize>,
}

pub fn trajectory_data(
    c: [f64; 3],
    tau: f64,
    alpha: f64,
    nu_max: f64,
    steps: usize,
) -> Result<TrajectoryData> {
    let s0 = BellDiagonalState::from_coeffs(c);
    let params = PhaseFlipParams::new(tau, alpha)?;
    let t = trajectory(&s0, nu_max, steps, &params)?;
    Ok(TrajectoryData {
        nu: t.nus().collect(),
        crossing: first_crossing(&s0, &params)?,
        columns: Columns::from_reports(t.samples.iter().map(|s| &s.report)),
    })
}

pub fn scan_data(c3: f64, radius: f64, steps: usize) -> Result<ScanData> {
    let spec = ScanSpec {
        c3,
        radius,
        c1_min: -radius,
        c1_max: radius,
        steps,
    };
    let reports = scan(&spec)?;
    let discord_inversions = find_inversions(&reports, Quantifier::Discord)
        .iter()
        .map(|r| Pair { c1_first: r.c1_first, c1_second: r.c1_second })
        .collect();
    Ok(ScanData {
        c1: reports.iter().map(|r| r.state.c1).collect(),
        columns: Columns::from_reports(&reports),
        discord_inversions,
        classical_inversions: find_inversions(&reports, Quantifier::Classical).len(),
    })
}

/// Non-physical states are reported rather than rejected so the page can
/// say why nothing is plotted.
pub fn state_data(c: [f64; 3]) -> StateData {
    let s = BellDiagonalState::from_coeffs(c);
    let report = full_report(&s).ok();
    StateData {
        physical: s.is_physical(),
        entangled: s.is_entangled().unwrap_or(false),
        bell_eigenvalues: s.bell_eigenvalues().as_array(),
        report: report.as_ref().map(|r| Columns::from_reports([r])),
        dominant_index: report.map(|r| r.dominant_index),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain numeric data serializes")
}

#[wasm_bindgen(js_name = trajectoryJson)]
pub fn trajectory_json(
    c1: f64,
    c2: f64,
    c3: f64,
    tau: f64,
    alpha: f64,
    nu_max: f64,
    steps: usize,
) -> Result<String, JsError> {
    trajectory_data([c1, c2, c3], tau, alpha, nu_max, steps)
        .map(|d| to_json(&d))
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = scanJson)]
pub fn scan_json(c3: f64, radius: f64, steps: usize) -> Result<String, JsError> {
    scan_data(c3, radius, steps)
        .map(|d| to_json(&d))
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = stateJson)]
pub fn state_json(c1: f64, c2: f64, c3: f64) -> String {
    to_json(&state_data([c1, c2, c3]))
}
