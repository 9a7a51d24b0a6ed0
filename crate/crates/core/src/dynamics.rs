//! Local non-Markovian phase-flip (random telegraph) dephasing of
//! Bell-diagonal states.
//!
//! Both qubits see the same channel. In the dimensionless time `ν = t/2τ`
//! the transverse coefficients decay as `c_{1,2}(ν) = c_{1,2}(0) Λ(ν)²` and
//! `c_3` is untouched, with
//! `Λ(ν) = e^{−ν} [cos(μν) + sin(μν)/μ]` and `μ = √((4|α|τ)² − 1)`.

use crate::correlations::{full_report, CorrelationReport};
use crate::error::{Error, Result};
use crate::qstate::BellDiagonalState;

/// Sampling step used to bracket the first crossing before bisection.
pub const CROSSING_SCAN_STEP: f64 = 1e-4;
/// Upper end of the crossing search.
pub const CROSSING_NU_MAX: f64 = 20.0;
const CROSSING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFlipParams {
    tau: f64,
    alpha_abs: f64,
    mu: f64,
}

impl Default for PhaseFlipParams {
    /// τ = 5 s, |α| = 1 s⁻¹.
    fn default() -> Self {
        Self::new(5.0, 1.0).expect("default channel parameters are valid")
    }
}

impl PhaseFlipParams {
    /// Only the oscillatory regime `4|α|τ > 1` is supported.
    pub fn new(tau: f64, alpha_abs: f64) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        if !(alpha_abs.is_finite() && alpha_abs > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "|alpha| must be positive, got {alpha_abs}"
            )));
        }
        let x = 4.0 * alpha_abs * tau;
        if x <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "4|alpha|tau = {x} must exceed 1 (oscillatory regime)"
            )));
        }
        Ok(Self {
            tau,
            alpha_abs,
            mu: (x * x - 1.0).sqrt(),
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn alpha_abs(&self) -> f64 {
        self.alpha_abs
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// `Λ(ν) = e^{−ν} [cos(μν) + sin(μν)/μ]`.
pub fn lambda_factor(nu: f64, p: &PhaseFlipParams) -> f64 {
    let mu = p.mu;
    (-nu).exp() * ((mu * nu).cos() + (mu * nu).sin() / mu)
}

fn evolve_unchecked(s0: &BellDiagonalState, nu: f64, p: &PhaseFlipParams) -> BellDiagonalState {
    let decay = lambda_factor(nu, p).powi(2);
    BellDiagonalState::new(s0.c1 * decay, s0.c2 * decay, s0.c3)
}

pub fn evolve(s0: &BellDiagonalState, nu: f64, p: &PhaseFlipParams) -> Result<BellDiagonalState> {
    let s0 = s0.checked()?;
    if !(nu >= 0.0) {
        return Err(Error::InvalidParameter(format!("nu must be non-negative, got {nu}")));
    }
    Ok(evolve_unchecked(&s0, nu, p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub nu: f64,
    pub state: BellDiagonalState,
    pub report: CorrelationReport,
}

/// Reports on a uniform ν grid, ν strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: PhaseFlipParams,
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn nus(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.nu)
    }

    pub fn column(&self, f: impl Fn(&CorrelationReport) -> f64) -> Vec<f64> {
        self.samples.iter().map(|s| f(&s.report)).collect()
    }
}

/// Samples `steps` points from `ν = 0` to `ν = nu_max` inclusive.
pub fn trajectory(
    s0: &BellDiagonalState,
    nu_max: f64,
    steps: usize,
    p: &PhaseFlipParams,
) -> Result<Trajectory> {
    let s0 = s0.checked()?;
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("steps must be at least 2, got {steps}")));
    }
    if !(nu_max.is_finite() && nu_max > 0.0) {
        return Err(Error::InvalidParameter(format!("nu_max must be positive, got {nu_max}")));
    }
    let mut samples = Vec::with_capacity(steps);
    for i in 0..steps {
        let nu = nu_max * i as f64 / (steps - 1) as f64;
        let decay = lambda_factor(nu, p).powi(2);
        if decay > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!("Λ² = {decay} exceeds 1 at ν = {nu}")));
        }
        let state = evolve_unchecked(&s0, nu, p);
        let report = full_report(&state)?;
        samples.push(TrajectorySample { nu, state, report });
    }
    Ok(Trajectory { params: *p, samples })
}

/// First ν > 0 at which `max(|c1(ν)|, |c2(ν)|)` falls to `|c3|`, i.e. where
/// the dominant coefficient hands over to the constant `c3`.
pub fn first_crossing(s0: &BellDiagonalState, p: &PhaseFlipParams) -> Result<Option<f64>> {
    first_crossing_within(s0, p, CROSSING_NU_MAX)
}

pub fn first_crossing_within(
    s0: &BellDiagonalState,
    p: &PhaseFlipParams,
    nu_max: f64,
) -> Result<Option<f64>> {
    let s0 = s0.checked()?;
    let transverse = s0.c1.abs().max(s0.c2.abs());
    let longitudinal = s0.c3.abs();
    let gap = |nu: f64| transverse * lambda_factor(nu, p).powi(2) - longitudinal;

    if gap(0.0) <= 0.0 {
        return Ok(None);
    }
    let n = (nu_max / CROSSING_SCAN_STEP).ceil() as usize;
    let mut lo = 0.0;
    for i in 1..=n {
        let hi = (i as f64 * CROSSING_SCAN_STEP).min(nu_max);
        if gap(hi) < 0.0 {
            let (mut a, mut b) = (lo, hi);
            while b - a > CROSSING_TOL {
                let mid = 0.5 * (a + b);
                if gap(mid) > 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        lo = hi;
    }
    Ok(None)
}
