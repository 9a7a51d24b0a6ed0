//! Small dense complex matrices and a cyclic Jacobi eigensolver for
//! Hermitian input.
//!
//! Everything here is sized at compile time (`N = 2` for a single qubit,
//! `N = 4` for a pair), so matrices are plain arrays and live on the stack.

use num_complex::Complex64;

pub type CMatrix<const N: usize> = [[Complex64; N]; N];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

pub fn zeros<const N: usize>() -> CMatrix<N> {
    [[ZERO; N]; N]
}

pub fn identity<const N: usize>() -> CMatrix<N> {
    let mut m = zeros::<N>();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn scale<const N: usize>(m: &CMatrix<N>, k: f64) -> CMatrix<N> {
    let mut out = *m;
    out.iter_mut().flatten().for_each(|z| *z *= k);
    out
}

pub fn add<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] += b[i][j];
        }
    }
    out
}

pub fn sub<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut out = *a;
    for i in 0..N {
        for j in 0..N {
            out[i][j] -= b[i][j];
        }
    }
    out
}

pub fn matmul<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> CMatrix<N> {
    let mut out = zeros::<N>();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn dagger<const N: usize>(a: &CMatrix<N>) -> CMatrix<N> {
    let mut out = zeros::<N>();
    for i in 0..N {
        for j in 0..N {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn trace<const N: usize>(a: &CMatrix<N>) -> Complex64 {
    (0..N).map(|i| a[i][i]).sum()
}

/// Tr(A B) without forming the product.
pub fn trace_product<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> Complex64 {
    let mut acc = ZERO;
    for i in 0..N {
        for k in 0..N {
            acc += a[i][k] * b[k][i];
        }
    }
    acc
}

/// Σ_ij |a_ij − b_ij|².
pub fn frobenius_dist_sq<const N: usize>(a: &CMatrix<N>, b: &CMatrix<N>) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        for j in 0..N {
            acc += (a[i][j] - b[i][j]).norm_sqr();
        }
    }
    acc
}

/// Largest |a_ij − conj(a_ji)|.
pub fn hermiticity_defect<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((a[i][j] - a[j][i].conj()).norm());
        }
    }
    worst
}

/// Kronecker product of two 2×2 matrices, first factor on the high index bit.
pub fn kron2(a: &CMatrix<2>, b: &CMatrix<2>) -> CMatrix<4> {
    let mut out = zeros::<4>();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen<const N: usize> {
    /// Eigenvalues in ascending order.
    pub values: [f64; N],
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix<N>,
    pub sweeps: usize,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> [Complex64; N] {
        let mut v = [ZERO; N];
        for (i, vi) in v.iter_mut().enumerate() {
            *vi = self.vectors[i][k];
        }
        v
    }
}

fn off_diagonal_norm<const N: usize>(a: &CMatrix<N>) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                acc += a[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies the real symmetric Jacobi rotation, so the
/// combined transform on rows/columns `p, q` is
/// `U = [[c, s], [-s e^{-iφ}, c e^{-iφ}]]`. Only the lower triangle is read
/// implicitly through Hermiticity; the input is assumed Hermitian.
pub fn hermitian_eigen<const N: usize>(m: &CMatrix<N>) -> HermitianEigen<N> {
    let mut a = *m;
    // Symmetrize so rounding in the caller cannot drive the sweep off course.
    for i in 0..N {
        a[i][i] = Complex64::new(a[i][i].re, 0.0);
        for j in (i + 1)..N {
            let avg = (a[i][j] + a[j][i].conj()) * 0.5;
            a[i][j] = avg;
            a[j][i] = avg.conj();
        }
    }
    let mut v = identity::<N>();
    let mut sweeps = 0;

    while sweeps < JACOBI_MAX_SWEEPS && off_diagonal_norm(&a) >= JACOBI_TOL {
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[p][q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{iφ}
                let phase_conj = phase.conj();

                let theta = (a[q][q].re - a[p][p].re) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = phase_conj * (-s);
                let u_qq = phase_conj * c;

                // A ← A U (columns p, q)
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * u_pp + y * u_qp;
                    row[q] = x * u_pq + y * u_qq;
                }
                // A ← U† A (rows p, q)
                for k in 0..N {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = u_pp.conj() * x + u_qp.conj() * y;
                    a[q][k] = u_pq.conj() * x + u_qq.conj() * y;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p] = Complex64::new(a[p][p].re, 0.0);
                a[q][q] = Complex64::new(a[q][q].re, 0.0);

                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * u_pp + y * u_qp;
                    row[q] = x * u_pq + y * u_qq;
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let values = order.map(|k| a[k][k].re);
    let mut vectors = zeros::<N>();
    for (col, &k) in order.iter().enumerate() {
        for i in 0..N {
            vectors[i][col] = v[i][k];
        }
    }
    HermitianEigen {
        values,
        vectors,
        sweeps,
    }
}
