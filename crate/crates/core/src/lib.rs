//! Entropic and geometric quantifiers of total, classical and quantum
//! correlations for Bell-diagonal two-qubit states, their evolution under a
//! non-Markovian local phase-flip channel, and brute-force optimization
//! oracles that cross-check the closed forms.

pub mod correlations;
pub mod csv;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod oracles;
pub mod qstate;
pub mod scan;

pub use correlations::{
    closest_classical_state, closest_product_state, full_report, geometric_quantifiers,
    reb_quantifiers, CorrelationReport, GeometricQuantifiers, RebQuantifiers,
};
pub use dynamics::{PhaseFlipParams, Trajectory};
pub use error::{Error, Result};
pub use qstate::{BellDiagonalState, BellEigenvalues, BlochVector, DensityMatrix};
pub use scan::{InversionRecord, Quantifier, ScanSpec};
