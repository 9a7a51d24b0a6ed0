//! Entropies and distances between two-qubit states. Logarithms are base 2
//! throughout, with `0·log 0 = 0` below [`EPS_SUPPORT`].

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{DensityMatrix, EPS_PHYS};

/// Eigenvalues below this are treated as outside the support.
pub const EPS_SUPPORT: f64 = 1e-12;

/// Eigenvalues of a state, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn new(values: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut v: Vec<f64> = values.into_iter().collect();
        v.sort_by(f64::total_cmp);
        if let Some(&min) = v.first() {
            if min < -EPS_PHYS {
                return Err(Error::NonPhysicalState { min_eigenvalue: min });
            }
        }
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::TraceNotUnity(total));
        }
        Ok(Self(v))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        shannon_bits(&self.0)
    }
}

/// `-Σ p log₂ p` over the entries above [`EPS_SUPPORT`].
pub fn shannon_bits(p: &[f64]) -> f64 {
    -p.iter().copied().map(xlog2x).sum::<f64>()
}

/// `x log₂ x` with the `0·log 0 = 0` convention.
pub fn xlog2x(x: f64) -> f64 {
    if x < EPS_SUPPORT {
        0.0
    } else {
        x * x.log2()
    }
}

pub fn spectrum(rho: &DensityMatrix) -> Result<Spectrum> {
    Spectrum::new(rho.eigenvalues())
}

/// Von Neumann entropy of any Hermitian unit-trace matrix (one or two
/// qubits), rejecting negative eigenvalues.
pub fn matrix_entropy<const N: usize>(m: &CMatrix<N>) -> Result<f64> {
    let e = linalg::hermitian_eigen(m);
    if e.values[0] < -EPS_PHYS {
        return Err(Error::NonPhysicalState {
            min_eigenvalue: e.values[0],
        });
    }
    Ok(shannon_bits(&e.values))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    matrix_entropy(rho.matrix())
}

/// `S(ρ‖σ) = −Tr(ρ log₂ σ) − S(ρ)`, or `f64::INFINITY` when the support of
/// `ρ` is not contained in that of `σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let s_rho = von_neumann_entropy(rho)?;
    let eig = sigma.eigen();
    if eig.values[0] < -EPS_PHYS {
        return Err(Error::NonPhysicalState {
            min_eigenvalue: eig.values[0],
        });
    }
    let m = rho.matrix();
    let mut cross = 0.0;
    for k in 0..4 {
        let v = eig.vector(k);
        // ⟨v|ρ|v⟩
        let mut w = linalg::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                w += v[i].conj() * m[i][j] * v[j];
            }
        }
        let weight = w.re;
        let lambda = eig.values[k];
        if lambda < EPS_SUPPORT {
            if weight > EPS_SUPPORT {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross -= weight * lambda.log2();
    }
    Ok(cross - s_rho)
}

/// `S_L(ρ) = 1 − Tr ρ²`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    1.0 - rho.purity()
}

/// `S_L(ρ‖σ) = Tr[ρ(ρ − σ)]`. Can be negative.
pub fn linear_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let diff = linalg::sub(rho.matrix(), sigma.matrix());
    linalg::trace_product(rho.matrix(), &diff).re
}

/// `S_L(ρ‖σ) + S_L(σ‖ρ)`.
pub fn symmetrized_lre(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    linear_relative_entropy(rho, sigma) + linear_relative_entropy(sigma, rho)
}

/// `S_L(ρ‖σ) − S_L(σ‖ρ)`.
pub fn antisymmetrized_lre(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    linear_relative_entropy(rho, sigma) - linear_relative_entropy(sigma, rho)
}

/// Squared Hilbert-Schmidt distance `Σ_ij |ρ_ij − σ_ij|²`.
pub fn hs_distance_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    linalg::frobenius_dist_sq(rho.matrix(), sigma.matrix())
}

/// `I_L(ρ) = S_L(ρ_A ⊗ ρ_B) − S_L(ρ)`.
pub fn linear_mutual_information(rho: &DensityMatrix) -> f64 {
    linear_entropy(&rho.product_of_marginals()) - linear_entropy(rho)
}

/// `I(ρ) = S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let (a, b) = rho.marginals();
    Ok(matrix_entropy(&a)? + matrix_entropy(&b)? - von_neumann_entropy(rho)?)
}
