//! State-space scans over Bell-diagonal states with a fixed `c3` and fixed
//! `c1² + c2² = r²` (so the geometric total correlations are constant), and
//! detection of ordering inversions between the entropic and geometric
//! quantifiers.

use crate::correlations::{full_report, CorrelationReport};
use crate::error::{Error, Result};
use crate::qstate::BellDiagonalState;

/// Both differences must exceed this for a pair to count as an inversion.
pub const INVERSION_MIN_DIFF: f64 = 1e-9;

/// `c1` on a uniform grid `[c1_min, c1_max]`, `c2 = +√(r² − c1²)`, `c3` fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub c3: f64,
    pub radius: f64,
    pub c1_min: f64,
    pub c1_max: f64,
    pub steps: usize,
}

impl Default for ScanSpec {
    fn default() -> Self {
        Self {
            c3: 0.2,
            radius: 0.5,
            c1_min: -0.5,
            c1_max: 0.5,
            steps: 101,
        }
    }
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.radius >= 0.0 && self.radius.is_finite()) {
            return bad(format!("radius must be non-negative, got {}", self.radius));
        }
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.c1_min <= self.c1_max) {
            return bad(format!("c1 range [{}, {}] is empty", self.c1_min, self.c1_max));
        }
        if self.c1_min.abs() > self.radius || self.c1_max.abs() > self.radius {
            return bad(format!(
                "c1 range [{}, {}] exceeds radius {}",
                self.c1_min, self.c1_max, self.radius
            ));
        }
        Ok(())
    }

    pub fn c1_at(&self, i: usize) -> f64 {
        self.c1_min + (self.c1_max - self.c1_min) * i as f64 / (self.steps - 1) as f64
    }

    /// The grid states in order; fails if the spec is invalid or any state is
    /// non-physical.
    pub fn states(&self) -> Result<Vec<BellDiagonalState>> {
        self.validate()?;
        (0..self.steps)
            .map(|i| {
                let c1 = self.c1_at(i);
                let c2 = (self.radius * self.radius - c1 * c1).max(0.0).sqrt();
                BellDiagonalState::new(c1, c2, self.c3).checked()
            })
            .collect()
    }
}

pub fn scan(spec: &ScanSpec) -> Result<Vec<CorrelationReport>> {
    spec.states()?.iter().map(full_report).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Total,
    Discord,
    Classical,
}

impl Quantifier {
    pub fn symbol(&self) -> &'static str {
        match self {
            Self::Total => "T",
            Self::Discord => "D",
            Self::Classical => "C",
        }
    }

    /// Entropic and (raw) geometric values of this quantifier.
    pub fn values(&self, r: &CorrelationReport) -> (f64, f64) {
        match self {
            Self::Total => (r.total, r.geo_total),
            Self::Discord => (r.discord, r.geo_discord),
            Self::Classical => (r.classical, r.geo_classical),
        }
    }
}

impl std::str::FromStr for Quantifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" | "total" => Ok(Self::Total),
            "D" | "d" | "discord" => Ok(Self::Discord),
            "C" | "c" | "classical" => Ok(Self::Classical),
            _ => Err(Error::InvalidParameter(format!("unknown quantifier {s:?}"))),
        }
    }
}

/// Two scan states ranked in opposite order by the entropic and the
/// geometric version of one quantifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionRecord {
    pub quantifier: Quantifier,
    pub c1_first: f64,
    pub c1_second: f64,
    pub reb_first: f64,
    pub reb_second: f64,
    pub geo_first: f64,
    pub geo_second: f64,
    /// `reb_first < reb_second`.
    pub reb_increases: bool,
    /// `geo_first < geo_second`.
    pub geo_increases: bool,
}

/// All pairs `i < j` of the scan that are ranked oppositely.
pub fn find_inversions(reports: &[CorrelationReport], q: Quantifier) -> Vec<InversionRecord> {
    let mut out = Vec::new();
    for (i, ri) in reports.iter().enumerate() {
        let (reb_i, geo_i) = q.values(ri);
        for rj in &reports[i + 1..] {
            let (reb_j, geo_j) = q.values(rj);
            let (d_reb, d_geo) = (reb_i - reb_j, geo_i - geo_j);
            if d_reb.abs() <= INVERSION_MIN_DIFF || d_geo.abs() <= INVERSION_MIN_DIFF {
                continue;
            }
            if d_reb.signum() == -d_geo.signum() {
                out.push(InversionRecord {
                    quantifier: q,
                    c1_first: ri.state.c1,
                    c1_second: rj.state.c1,
                    reb_first: reb_i,
                    reb_second: reb_j,
                    geo_first: geo_i,
                    geo_second: geo_j,
                    reb_increases: d_reb < 0.0,
                    geo_increases: d_geo < 0.0,
                });
            }
        }
    }
    out
}

pub fn inversions(spec: &ScanSpec, q: Quantifier) -> Result<Vec<InversionRecord>> {
    Ok(find_inversions(&scan(spec)?, q))
}
