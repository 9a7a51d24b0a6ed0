//! Two-qubit states: the Bell-diagonal family, general density matrices,
//! single-qubit Bloch vectors and the physicality predicates.
//!
//! Matrices are written in the computational basis ordered
//! `{|11⟩, |10⟩, |01⟩, |00⟩}`, qubit A on the high index bit. With that
//! ordering the single-qubit basis is `(|1⟩, |0⟩)`, so the Pauli matrices
//! below are the usual ones re-expressed in that order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ONE, ZERO};

/// Absolute tolerance on eigenvalue non-negativity.
pub const EPS_PHYS: f64 = 1e-12;
/// Tolerance for recognizing the Bell-diagonal X pattern in a matrix.
pub const PATTERN_TOL: f64 = 1e-10;
const STRUCTURE_TOL: f64 = 1e-12;

/// Pauli matrix `σ_k`, `k ∈ {1, 2, 3}`, in the `(|1⟩, |0⟩)` ordering.
pub fn pauli(k: usize) -> CMatrix<2> {
    let i = Complex64::new(0.0, 1.0);
    match k {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, i], [-i, ZERO]],
        3 => [[-ONE, ZERO], [ZERO, ONE]],
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    }
}

/// Single-qubit `|0⟩⟨0|`.
pub fn ket0_projector() -> CMatrix<2> {
    [[ZERO, ZERO], [ZERO, ONE]]
}

/// Single-qubit `|1⟩⟨1|`.
pub fn ket1_projector() -> CMatrix<2> {
    [[ONE, ZERO], [ZERO, ZERO]]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Bell-basis eigenvalues; `1±` belong to `(|01⟩ ± |10⟩)/√2`, `2±` to
/// `(|00⟩ ± |11⟩)/√2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellEigenvalues {
    pub l1_plus: f64,
    pub l1_minus: f64,
    pub l2_plus: f64,
    pub l2_minus: f64,
}

impl BellEigenvalues {
    pub fn as_array(&self) -> [f64; 4] {
        [self.l1_plus, self.l1_minus, self.l2_plus, self.l2_minus]
    }

    pub fn min(&self) -> f64 {
        self.as_array().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }
}

impl BellDiagonalState {
    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub const fn maximally_mixed() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn from_coeffs(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }

    pub fn coeffs(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Inverse of [`bell_eigenvalues`](Self::bell_eigenvalues).
    pub fn from_bell_eigenvalues(l: &BellEigenvalues) -> Self {
        let one = l.l1_plus - l.l1_minus;
        let two = l.l2_plus - l.l2_minus;
        let c3 = (l.l2_plus + l.l2_minus) - (l.l1_plus + l.l1_minus);
        Self::new(one + two, one - two, c3)
    }

    pub fn bell_eigenvalues(&self) -> BellEigenvalues {
        let Self { c1, c2, c3 } = *self;
        BellEigenvalues {
            l1_plus: (1.0 + c1 + c2 - c3) / 4.0,
            l1_minus: (1.0 - c1 - c2 - c3) / 4.0,
            l2_plus: (1.0 + c1 - c2 + c3) / 4.0,
            l2_minus: (1.0 - c1 + c2 + c3) / 4.0,
        }
    }

    pub fn is_physical(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite()) && self.bell_eigenvalues().min() >= -EPS_PHYS
    }

    /// Returns `self` if physical, otherwise [`Error::NonPhysicalState`].
    pub fn checked(self) -> Result<Self> {
        if self.is_physical() {
            Ok(self)
        } else {
            Err(Error::NonPhysicalState {
                min_eigenvalue: self.bell_eigenvalues().min(),
            })
        }
    }

    /// Entangled iff the largest Bell eigenvalue strictly exceeds 1/2.
    pub fn is_entangled(&self) -> Result<bool> {
        let s = self.checked()?;
        Ok(s.bell_eigenvalues().max() > 0.5)
    }

    /// Index (1-based) and value of the largest `|c_i|`; ties go to the
    /// smallest index.
    pub fn dominant(&self) -> (usize, f64) {
        let c = self.coeffs();
        let mut k = 0;
        for i in 1..3 {
            if c[i].abs() > c[k].abs() {
                k = i;
            }
        }
        (k + 1, c[k].abs())
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.coeffs().iter().map(|c| c * c).sum()
    }

    pub fn to_density_matrix(&self) -> DensityMatrix {
        let Self { c1, c2, c3 } = *self;
        let mut m = linalg::zeros::<4>();
        let re = |x: f64| Complex64::new(x, 0.0);
        m[0][0] = re((1.0 + c3) / 4.0);
        m[3][3] = re((1.0 + c3) / 4.0);
        m[1][1] = re((1.0 - c3) / 4.0);
        m[2][2] = re((1.0 - c3) / 4.0);
        m[0][3] = re((c1 - c2) / 4.0);
        m[3][0] = re((c1 - c2) / 4.0);
        m[1][2] = re((c1 + c2) / 4.0);
        m[2][1] = re((c1 + c2) / 4.0);
        DensityMatrix { m }
    }

    /// Reads `(c1, c2, c3)` back from the X pattern
    /// `ρ11 = ρ44, ρ22 = ρ33, ρ14, ρ23` real, everything else zero.
    pub fn from_density_matrix(rho: &DensityMatrix) -> Result<Self> {
        let m = &rho.m;
        let x_entries = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)];
        for i in 0..4 {
            for j in 0..4 {
                if !x_entries.contains(&(i, j)) && m[i][j].norm() > PATTERN_TOL {
                    return Err(Error::NotBellDiagonal(format!(
                        "entry ({},{}) = {} outside the X pattern",
                        i + 1,
                        j + 1,
                        m[i][j]
                    )));
                }
            }
        }
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::NotBellDiagonal(what.to_string()))
            }
        };
        check((m[0][0] - m[3][3]).norm() <= PATTERN_TOL, "rho11 != rho44")?;
        check((m[1][1] - m[2][2]).norm() <= PATTERN_TOL, "rho22 != rho33")?;
        for &(i, j) in &[(0, 3), (3, 0), (1, 2), (2, 1)] {
            check(m[i][j].im.abs() <= PATTERN_TOL, "complex off-diagonal coherence")?;
        }
        check((m[0][3] - m[3][0]).norm() <= PATTERN_TOL, "rho14 != rho41")?;
        check((m[1][2] - m[2][1]).norm() <= PATTERN_TOL, "rho23 != rho32")?;

        let outer = (m[0][0].re + m[3][3].re) / 2.0;
        let inner = (m[1][1].re + m[2][2].re) / 2.0;
        let r14 = (m[0][3].re + m[3][0].re) / 2.0;
        let r23 = (m[1][2].re + m[2][1].re) / 2.0;
        // ρ11 − ρ22 = c3/2, ρ14 = (c1 − c2)/4, ρ23 = (c1 + c2)/4
        let c3 = 2.0 * (outer - inner);
        let c1 = 2.0 * (r14 + r23);
        let c2 = 2.0 * (r23 - r14);
        Ok(Self::new(c1, c2, c3))
    }

    /// Comma-separated triple with 17 significant digits.
    pub fn to_csv(&self) -> String {
        format!("{:.16e},{:.16e},{:.16e}", self.c1, self.c2, self.c3)
    }

    /// Draws a physical state with Bell eigenvalues uniform on the simplex.
    pub fn random_physical<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let w: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
        let total: f64 = w.iter().sum();
        let l = BellEigenvalues {
            l1_plus: w[0] / total,
            l1_minus: w[1] / total,
            l2_plus: w[2] / total,
            l2_minus: w[3] / total,
        };
        Self::from_bell_eigenvalues(&l)
    }
}

impl fmt::Display for BellDiagonalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1, self.c2, self.c3)
    }
}

impl FromStr for BellDiagonalState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidParameter(format!(
                "expected three comma-separated coefficients, got {s:?}"
            )));
        }
        let mut c = [0.0; 3];
        for (slot, p) in c.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("not a number: {p:?}")))?;
        }
        Ok(Self::from_coeffs(c))
    }
}

/// Real Bloch vector of a single-qubit state `(I + r·σ)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: Self = Self {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if v.norm_sq() > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "Bloch vector ({x}, {y}, {z}) lies outside the unit ball"
            )));
        }
        Ok(v)
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn qubit_matrix(&self) -> CMatrix<2> {
        let mut m = linalg::scale(&linalg::identity::<2>(), 0.5);
        for (k, r) in self.as_array().into_iter().enumerate() {
            m = linalg::add(&m, &linalg::scale(&pauli(k + 1), r / 2.0));
        }
        m
    }

    /// Uniform sample from the unit ball.
    pub fn random_in_ball<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let dir = random_unit(rng);
        let radius = rng.random::<f64>().cbrt();
        Self {
            x: radius * dir[0],
            y: radius * dir[1],
            z: radius * dir[2],
        }
    }

    /// Uniform sample from the unit sphere.
    pub fn random_on_sphere<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let d = random_unit(rng);
        Self {
            x: d[0],
            y: d[1],
            z: d[2],
        }
    }
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-9 {
            return v.map(|x| x / n);
        }
    }
}

/// A Hermitian, unit-trace 4×4 matrix. Positivity is checked separately by
/// [`DensityMatrix::is_physical`] and by the entropic functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix<4>,
}

impl DensityMatrix {
    pub fn new(m: CMatrix<4>) -> Result<Self> {
        let defect = linalg::hermiticity_defect(&m);
        if defect > STRUCTURE_TOL {
            return Err(Error::NotHermitian(defect));
        }
        let tr = linalg::trace(&m);
        if (tr - ONE).norm() > STRUCTURE_TOL {
            return Err(Error::TraceNotUnity(tr.re));
        }
        Ok(Self { m })
    }

    /// Wraps a matrix the caller has built to be Hermitian with unit trace.
    pub(crate) fn from_raw(m: CMatrix<4>) -> Self {
        Self { m }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: linalg::scale(&linalg::identity::<4>(), 0.25),
        }
    }

    /// `|i⟩⟨i|` for the basis index `i` (0 = |11⟩, …, 3 = |00⟩).
    pub fn basis_projector(index: usize) -> Self {
        assert!(index < 4, "basis index out of range");
        let mut m = linalg::zeros::<4>();
        m[index][index] = ONE;
        Self { m }
    }

    /// Pure state `|ψ⟩⟨ψ|`; `psi` is normalized here.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n == 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let mut m = linalg::zeros::<4>();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = psi[i] * psi[j].conj() / (n * n);
            }
        }
        Ok(Self { m })
    }

    pub fn product(a: &CMatrix<2>, b: &CMatrix<2>) -> Result<Self> {
        Self::new(linalg::kron2(a, b))
    }

    pub fn product_of_bloch(a: &BlochVector, b: &BlochVector) -> Self {
        Self {
            m: linalg::kron2(&a.qubit_matrix(), &b.qubit_matrix()),
        }
    }

    /// Random full-rank state `G G† / Tr(G G†)` from a complex Ginibre matrix.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut g = linalg::zeros::<4>();
        for z in g.iter_mut().flatten() {
            *z = Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
        }
        let gg = linalg::matmul(&g, &linalg::dagger(&g));
        let tr = linalg::trace(&gg).re;
        let mut m = linalg::scale(&gg, 1.0 / tr);
        // exact Hermiticity
        for i in 0..4 {
            m[i][i].im = 0.0;
            for j in (i + 1)..4 {
                m[j][i] = m[i][j].conj();
            }
        }
        Self { m }
    }

    pub fn matrix(&self) -> &CMatrix<4> {
        &self.m
    }

    /// Entry `(i, j)` with 1-based indices as in `ρ_14`.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[i - 1][j - 1]
    }

    pub fn eigen(&self) -> linalg::HermitianEigen<4> {
        linalg::hermitian_eigen(&self.m)
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        self.eigen().values
    }

    pub fn is_physical(&self) -> bool {
        self.eigenvalues()[0] >= -EPS_PHYS
    }

    pub fn checked(self) -> Result<Self> {
        let min_eigenvalue = self.eigenvalues()[0];
        if min_eigenvalue >= -EPS_PHYS {
            Ok(self)
        } else {
            Err(Error::NonPhysicalState { min_eigenvalue })
        }
    }

    /// Partial traces `(Tr_B ρ, Tr_A ρ)`.
    pub fn marginals(&self) -> (CMatrix<2>, CMatrix<2>) {
        let mut rho_a = linalg::zeros::<2>();
        let mut rho_b = linalg::zeros::<2>();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    rho_a[i][j] += self.m[2 * i + k][2 * j + k];
                    rho_b[i][j] += self.m[2 * k + i][2 * k + j];
                }
            }
        }
        (rho_a, rho_b)
    }

    /// `ρ_A ⊗ ρ_B`.
    pub fn product_of_marginals(&self) -> Self {
        let (a, b) = self.marginals();
        Self {
            m: linalg::kron2(&a, &b),
        }
    }

    /// Exchanges the two qubits.
    pub fn swap_subsystems(&self) -> Self {
        let swap = |i: usize| ((i & 1) << 1) | (i >> 1);
        let mut m = linalg::zeros::<4>();
        for i in 0..4 {
            for j in 0..4 {
                m[swap(i)][swap(j)] = self.m[i][j];
            }
        }
        Self { m }
    }

    pub fn purity(&self) -> f64 {
        linalg::trace_product(&self.m, &self.m).re
    }
}
