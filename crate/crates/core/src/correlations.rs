//! Closed-form entropic and geometric correlation quantifiers for
//! Bell-diagonal states.
//!
//! Entropic (relative-entropy based) quantifiers are in bits; geometric ones
//! are squared Hilbert-Schmidt distances. Both families use the same closest
//! classical state `[I⊗I + c_k σ_k⊗σ_k]/4` and the same closest product
//! state `I/4`.

use crate::entropy::xlog2x;
use crate::error::Result;
use crate::qstate::{BellDiagonalState, DensityMatrix};

/// Total, quantum and classical correlations measured by relative entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RebQuantifiers {
    pub total: f64,
    pub discord: f64,
    pub classical: f64,
}

/// The same three quantities measured by squared Hilbert-Schmidt distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricQuantifiers {
    pub total: f64,
    pub discord: f64,
    pub classical: f64,
}

impl GeometricQuantifiers {
    /// Values scaled by 2, the normalization used when comparing with the
    /// entropic quantifiers.
    pub fn normalized(&self) -> Self {
        Self {
            total: 2.0 * self.total,
            discord: 2.0 * self.discord,
            classical: 2.0 * self.classical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub state: BellDiagonalState,
    pub total: f64,
    pub discord: f64,
    pub classical: f64,
    pub geo_total: f64,
    pub geo_discord: f64,
    pub geo_classical: f64,
    pub geo_total_norm: f64,
    pub geo_discord_norm: f64,
    pub geo_classical_norm: f64,
    /// 1-based index of the dominant coefficient.
    pub dominant_index: usize,
    /// `c = max |c_i|`.
    pub dominant_c: f64,
}

fn classical_bits(c: f64) -> f64 {
    // Σ_{i=1,2} (1 + (−1)^i c)/2 · log₂(1 + (−1)^i c)
    0.5 * (xlog2x(1.0 - c) + xlog2x(1.0 + c))
}

pub(crate) fn reb_with_index(s: &BellDiagonalState, k: usize) -> RebQuantifiers {
    let c = s.coeffs()[k - 1].abs();
    let total = 2.0 + s.bell_eigenvalues().as_array().into_iter().map(xlog2x).sum::<f64>();
    let classical = classical_bits(c);
    RebQuantifiers {
        total,
        discord: total - classical,
        classical,
    }
}

pub(crate) fn geometric_with_index(s: &BellDiagonalState, k: usize) -> GeometricQuantifiers {
    let c = s.coeffs()[k - 1];
    let total = s.sum_of_squares() / 4.0;
    let classical = c * c / 4.0;
    GeometricQuantifiers {
        total,
        discord: total - classical,
        classical,
    }
}

pub fn reb_quantifiers(s: &BellDiagonalState) -> Result<RebQuantifiers> {
    let s = s.checked()?;
    Ok(reb_with_index(&s, s.dominant().0))
}

pub fn geometric_quantifiers(s: &BellDiagonalState) -> Result<GeometricQuantifiers> {
    let s = s.checked()?;
    Ok(geometric_with_index(&s, s.dominant().0))
}

/// Keeps only the dominant coefficient (smallest index on ties).
pub fn closest_classical_state(s: &BellDiagonalState) -> Result<BellDiagonalState> {
    let s = s.checked()?;
    let (k, _) = s.dominant();
    let mut c = [0.0; 3];
    c[k - 1] = s.coeffs()[k - 1];
    Ok(BellDiagonalState::from_coeffs(c))
}

/// `I/4` for every physical Bell-diagonal state, under either distance.
pub fn closest_product_state(s: &BellDiagonalState) -> Result<DensityMatrix> {
    s.checked()?;
    Ok(DensityMatrix::maximally_mixed())
}

pub fn full_report(s: &BellDiagonalState) -> Result<CorrelationReport> {
    let s = s.checked()?;
    let (k, c) = s.dominant();
    let reb = reb_with_index(&s, k);
    let geo = geometric_with_index(&s, k);
    let norm = geo.normalized();
    Ok(CorrelationReport {
        state: s,
        total: reb.total,
        discord: reb.discord,
        classical: reb.classical,
        geo_total: geo.total,
        geo_discord: geo.discord,
        geo_classical: geo.classical,
        geo_total_norm: norm.total,
        geo_discord_norm: norm.discord,
        geo_classical_norm: norm.classical,
        dominant_index: k,
        dominant_c: c,
    })
}
