//! Brute-force cross-checks for the closed forms in [`crate::correlations`].
//!
//! * the measurement-based discord `δ(ρ) = min_Π {I(ρ) − I[Π(ρ)]}` and the
//!   geometric discord `min_Π ‖ρ − Π(ρ)‖²`, both minimized over projective
//!   measurements on qubit A with a dense angular grid and a golden-section
//!   polish;
//! * the Hilbert-Schmidt distance from a Bell-diagonal state to an arbitrary
//!   product state, minimized by iterating the stationarity conditions from
//!   random starts and scanning the `|a| = |b| = 1` border.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::correlations;
use crate::entropy::{self, hs_distance_sq};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::qstate::{pauli, BellDiagonalState, BlochVector, DensityMatrix};

/// Value-change threshold below which a refinement counts as converged.
pub const REFINE_TOL: f64 = 1e-9;
const MAX_REFINE_CYCLES: usize = 200;

/// Rank-1 projective measurement on qubit A along the unit axis `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    theta: f64,
    phi: f64,
    axis: [f64; 3],
}

impl Measurement {
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let axis = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        Self { theta, phi, axis }
    }

    /// Axis along coordinate `k ∈ {1, 2, 3}`.
    pub fn coordinate(k: usize) -> Self {
        use std::f64::consts::FRAC_PI_2;
        match k {
            1 => Self::from_angles(FRAC_PI_2, 0.0),
            2 => Self::from_angles(FRAC_PI_2, FRAC_PI_2),
            3 => Self::from_angles(0.0, 0.0),
            _ => panic!("coordinate index must be 1, 2 or 3"),
        }
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angles(&self) -> (f64, f64) {
        (self.theta, self.phi)
    }

    /// Angle between the measurement axis and the coordinate axis `k`,
    /// treating `n` and `−n` as the same measurement.
    pub fn angle_to_coordinate(&self, k: usize) -> f64 {
        self.axis[k - 1].abs().min(1.0).acos()
    }

    /// `(I ± n·σ)/2`.
    fn projectors(&self) -> [CMatrix<2>; 2] {
        let half_id = linalg::scale(&linalg::identity::<2>(), 0.5);
        let mut n_sigma = linalg::zeros::<2>();
        for (k, nk) in self.axis.iter().enumerate() {
            n_sigma = linalg::add(&n_sigma, &linalg::scale(&pauli(k + 1), *nk));
        }
        let half_n = linalg::scale(&n_sigma, 0.5);
        [linalg::add(&half_id, &half_n), linalg::sub(&half_id, &half_n)]
    }
}

/// `Π^A(ρ) = Σ_± (Π_± ⊗ I) ρ (Π_± ⊗ I)`.
pub fn measure_a(rho: &DensityMatrix, m: &Measurement) -> DensityMatrix {
    let id = linalg::identity::<2>();
    let mut out = linalg::zeros::<4>();
    for p in m.projectors() {
        let k = linalg::kron2(&p, &id);
        let term = linalg::matmul(&linalg::matmul(&k, rho.matrix()), &k);
        out = linalg::add(&out, &term);
    }
    DensityMatrix::from_raw(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizationResult<A> {
    pub value: f64,
    pub argmin: A,
    pub evaluations: usize,
    pub converged: bool,
}

/// Angular grid over measurement axes; `theta` samples span `[0, π]` and
/// `phi` samples span `[0, 2π]`, both inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridResolution {
    pub theta: usize,
    pub phi: usize,
}

impl Default for GridResolution {
    fn default() -> Self {
        Self { theta: 181, phi: 361 }
    }
}

impl GridResolution {
    pub fn new(theta: usize, phi: usize) -> Result<Self> {
        if theta < 2 || phi < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 samples per angle, got {theta}x{phi}"
            )));
        }
        Ok(Self { theta, phi })
    }

    fn steps(&self) -> (f64, f64) {
        use std::f64::consts::PI;
        (PI / (self.theta - 1) as f64, 2.0 * PI / (self.phi - 1) as f64)
    }
}

/// Minimum of `f` on `[lo, hi]` by golden-section search down to a bracket
/// narrower than `REFINE_TOL`. Returns `(x, f(x), evaluations)`.
fn golden_section(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut evals = 2;
    while hi - lo > REFINE_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 <= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    }
}

/// Grid search over measurement axes followed by alternating golden-section
/// refinement of θ and φ within one grid step of the incumbent.
pub fn minimize_over_measurements(
    grid: GridResolution,
    mut objective: impl FnMut(&Measurement) -> f64,
) -> Result<MinimizationResult<Measurement>> {
    let (d_theta, d_phi) = grid.steps();
    let mut f = |theta: f64, phi: f64| objective(&Measurement::from_angles(theta, phi));

    let mut best = (0.0, 0.0, f64::INFINITY);
    for i in 0..grid.theta {
        let theta = i as f64 * d_theta;
        for j in 0..grid.phi {
            let phi = j as f64 * d_phi;
            let v = f(theta, phi);
            if v < best.2 {
                best = (theta, phi, v);
            }
        }
    }
    let mut evaluations = grid.theta * grid.phi;

    let (mut theta, mut phi, mut value) = best;
    let mut last_change = f64::INFINITY;
    for cycle in 0..MAX_REFINE_CYCLES {
        let start = value;
        let (t, vt, n) = golden_section(|x| f(x, phi), theta - d_theta, theta + d_theta);
        evaluations += n;
        if vt < value {
            theta = t;
            value = vt;
        }
        let (p, vp, n) = golden_section(|x| f(theta, x), phi - d_phi, phi + d_phi);
        evaluations += n;
        if vp < value {
            phi = p;
            value = vp;
        }
        last_change = start - value;
        if cycle >= 1 && last_change < REFINE_TOL {
            return Ok(MinimizationResult {
                value,
                argmin: Measurement::from_angles(theta, phi),
                evaluations,
                converged: true,
            });
        }
    }
    Err(Error::NotConverged {
        evaluations,
        last_step: last_change,
    })
}

/// Measurement-based discord with the measurement on qubit A.
pub fn original_discord(
    rho: &DensityMatrix,
    grid: GridResolution,
) -> Result<MinimizationResult<Measurement>> {
    let rho = rho.checked()?;
    let mutual = entropy::mutual_information(&rho)?;
    minimize_over_measurements(grid, |m| {
        let measured = measure_a(&rho, m);
        // Π(ρ) is a valid state whenever ρ is; rounding can only push an
        // eigenvalue a hair below zero, which the entropy clamps.
        let after = entropy::mutual_information(&measured).unwrap_or(f64::NAN);
        mutual - after
    })
}

/// Geometric discord as the minimum over measurements of `‖ρ − Π(ρ)‖²`.
pub fn geometric_discord_bruteforce(
    rho: &DensityMatrix,
    grid: GridResolution,
) -> Result<MinimizationResult<Measurement>> {
    let rho = rho.checked()?;
    minimize_over_measurements(grid, |m| hs_distance_sq(&rho, &measure_a(&rho, m)))
}

/// `F = [|a|² + |b|² + |a|²|b|² + |c|² − 2 Σ c_i a_i b_i]/4`, the squared
/// Hilbert-Schmidt distance from `s` to `ρ(a) ⊗ ρ(b)`.
pub fn product_distance(s: &BellDiagonalState, a: &BlochVector, b: &BlochVector) -> f64 {
    product_distance_raw(&s.coeffs(), &a.as_array(), &b.as_array())
}

fn norm_sq(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn product_distance_raw(c: &[f64; 3], a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let (a2, b2) = (norm_sq(a), norm_sq(b));
    let cross: f64 = (0..3).map(|i| c[i] * a[i] * b[i]).sum();
    (a2 + b2 + a2 * b2 + norm_sq(c) - 2.0 * cross) / 4.0
}

/// Settings for the product-state search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSearch {
    pub starts: usize,
    pub seed: u64,
    pub max_iterations: usize,
    /// Max-norm change of `(a, b)` at which the fixed-point iteration stops.
    pub step_tol: f64,
    /// Random `|a| = |b| = 1` samples, on top of the axis-aligned pairs.
    pub border_samples: usize,
}

impl Default for ProductSearch {
    fn default() -> Self {
        Self {
            starts: 20,
            seed: 0x5eed,
            max_iterations: 10_000,
            step_tol: 1e-12,
            border_samples: 200,
        }
    }
}

/// Where one multi-start ended up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartOutcome {
    pub start: (BlochVector, BlochVector),
    pub result: MinimizationResult<(BlochVector, BlochVector)>,
    pub fixed_point_iterations: usize,
}

impl StartOutcome {
    pub fn argmin_norm(&self) -> f64 {
        self.result.argmin.0.norm().max(self.result.argmin.1.norm())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductSearchReport {
    /// `|c|²/4`, the value at `a = b = 0`.
    pub interior_minimum: f64,
    pub starts: Vec<StartOutcome>,
    /// Smallest `F` seen on the `|a| = |b| = 1` border.
    pub border_minimum: f64,
    pub border_evaluations: usize,
}

impl ProductSearchReport {
    pub fn best(&self) -> MinimizationResult<(BlochVector, BlochVector)> {
        let mut best = self.starts[0].result;
        for s in &self.starts[1..] {
            if s.result.value < best.value {
                best = s.result;
            }
        }
        best.evaluations = self.starts.iter().map(|s| s.result.evaluations).sum::<usize>()
            + self.border_evaluations;
        best
    }

    pub fn max_argmin_norm(&self) -> f64 {
        self.starts.iter().map(StartOutcome::argmin_norm).fold(0.0, f64::max)
    }

    pub fn max_value_deviation(&self) -> f64 {
        self.starts
            .iter()
            .map(|s| (s.result.value - self.interior_minimum).abs())
            .fold(0.0, f64::max)
    }
}

fn gradient_and_hessian(c: &[f64; 3], a: &[f64; 3], b: &[f64; 3]) -> ([f64; 6], [[f64; 6]; 6]) {
    let (a2, b2) = (norm_sq(a), norm_sq(b));
    let mut g = [0.0; 6];
    let mut h = [[0.0; 6]; 6];
    for i in 0..3 {
        g[i] = (a[i] * (1.0 + b2) - c[i] * b[i]) / 2.0;
        g[3 + i] = (b[i] * (1.0 + a2) - c[i] * a[i]) / 2.0;
        h[i][i] = (1.0 + b2) / 2.0;
        h[3 + i][3 + i] = (1.0 + a2) / 2.0;
        for j in 0..3 {
            let mixed = 2.0 * a[i] * b[j] - if i == j { c[i] } else { 0.0 };
            h[i][3 + j] = mixed / 2.0;
            h[3 + j][i] = mixed / 2.0;
        }
    }
    (g, h)
}

/// Gaussian elimination with partial pivoting; `None` on a vanishing pivot.
fn solve6(mut m: [[f64; 6]; 6], mut rhs: [f64; 6]) -> Option<[f64; 6]> {
    for col in 0..6 {
        let piv = (col..6).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in (col + 1)..6 {
            let factor = m[row][col] / m[col][col];
            for k in col..6 {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = [0.0; 6];
    for row in (0..6).rev() {
        let tail: f64 = ((row + 1)..6).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    Some(x)
}

fn descend_from(
    c: &[f64; 3],
    start: ([f64; 3], [f64; 3]),
    opts: &ProductSearch,
) -> (MinimizationResult<([f64; 3], [f64; 3])>, usize) {
    let (mut a, mut b) = start;
    let mut evaluations = 0;
    let mut iterations = 0;
    let mut step = f64::INFINITY;

    // Stationarity conditions used as a Gauss-Seidel fixed-point map:
    // a_i = c_i b_i / (1 + |b|²), b_i = c_i a_i / (1 + |a|²).
    while iterations < opts.max_iterations && step >= opts.step_tol {
        let b2 = norm_sq(&b);
        let new_a: [f64; 3] = std::array::from_fn(|i| c[i] * b[i] / (1.0 + b2));
        let a2 = norm_sq(&new_a);
        let new_b: [f64; 3] = std::array::from_fn(|i| c[i] * new_a[i] / (1.0 + a2));
        step = (0..3)
            .map(|i| (new_a[i] - a[i]).abs().max((new_b[i] - b[i]).abs()))
            .fold(0.0, f64::max);
        a = new_a;
        b = new_b;
        iterations += 1;
    }

    // When some |c_i| = 1 the Hessian at the origin is singular and the map
    // above only closes in like 1/√n; Newton steps on the same stationarity
    // system finish the approach geometrically.
    let mut value = product_distance_raw(c, &a, &b);
    evaluations += 1;
    let mut last_change = 0.0;
    for _ in 0..200 {
        let size = norm_sq(&a).max(norm_sq(&b)).sqrt();
        if size < 1e-8 {
            break;
        }
        let (g, h) = gradient_and_hessian(c, &a, &b);
        let Some(d) = solve6(h, g.map(|x| -x)) else {
            break;
        };
        let trial_a: [f64; 3] = std::array::from_fn(|i| a[i] + d[i]);
        let trial_b: [f64; 3] = std::array::from_fn(|i| b[i] + d[3 + i]);
        let trial = product_distance_raw(c, &trial_a, &trial_b);
        evaluations += 1;
        if trial > value + 1e-15 {
            break;
        }
        last_change = value - trial;
        a = trial_a;
        b = trial_b;
        value = trial;
        if d.iter().fold(0.0f64, |m, x| m.max(x.abs())) < opts.step_tol {
            break;
        }
    }

    let converged = last_change.abs() < REFINE_TOL
        && (step < opts.step_tol || norm_sq(&a).max(norm_sq(&b)).sqrt() < 1e-6);
    (
        MinimizationResult {
            value,
            argmin: (a, b),
            evaluations,
            converged,
        },
        iterations,
    )
}

fn axis_pairs() -> Vec<([f64; 3], [f64; 3])> {
    let mut out = Vec::new();
    for k in 0..3 {
        for sa in [-1.0, 1.0] {
            for sb in [-1.0, 1.0] {
                let mut a = [0.0; 3];
                let mut b = [0.0; 3];
                a[k] = sa;
                b[k] = sb;
                out.push((a, b));
            }
        }
    }
    out
}

/// Runs the multi-start search and the border scan, reporting every start.
///
/// Fails with [`Error::InteriorMinimumNotGlobal`] if a start or a border sample
/// lands below the interior value `|c|²/4`, and with
/// [`Error::NotConverged`] if a start does not settle.
pub fn search_product_states(
    s: &BellDiagonalState,
    opts: &ProductSearch,
) -> Result<ProductSearchReport> {
    let s = s.checked()?;
    let c = s.coeffs();
    let interior = norm_sq(&c) / 4.0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut starts = Vec::with_capacity(opts.starts);
    for _ in 0..opts.starts {
        let a0 = BlochVector::random_in_ball(&mut rng);
        let b0 = BlochVector::random_in_ball(&mut rng);
        let (res, iterations) = descend_from(&c, (a0.as_array(), b0.as_array()), opts);
        if !res.converged {
            return Err(Error::NotConverged {
                evaluations: res.evaluations + iterations,
                last_step: res.value - interior,
            });
        }
        if res.value < interior - REFINE_TOL {
            return Err(Error::InteriorMinimumNotGlobal {
                found: res.value,
                interior,
            });
        }
        let to_bloch = |v: [f64; 3]| {
            BlochVector::from_array(v).expect("fixed-point iterates stay inside the unit ball")
        };
        starts.push(StartOutcome {
            start: (a0, b0),
            result: MinimizationResult {
                value: res.value,
                argmin: (to_bloch(res.argmin.0), to_bloch(res.argmin.1)),
                evaluations: res.evaluations + iterations,
                converged: res.converged,
            },
            fixed_point_iterations: iterations,
        });
    }

    let mut border_minimum = f64::INFINITY;
    let mut border_evaluations = 0;
    let mut border = axis_pairs();
    for _ in 0..opts.border_samples {
        let a = BlochVector::random_on_sphere(&mut rng).as_array();
        let b = BlochVector::random_on_sphere(&mut rng).as_array();
        border.push((a, b));
    }
    for (a, b) in border {
        let v = product_distance_raw(&c, &a, &b);
        border_evaluations += 1;
        border_minimum = border_minimum.min(v);
    }
    if border_minimum <= interior {
        return Err(Error::InteriorMinimumNotGlobal {
            found: border_minimum,
            interior,
        });
    }

    Ok(ProductSearchReport {
        interior_minimum: interior,
        starts,
        border_minimum,
        border_evaluations,
    })
}

/// Closest product state by numerical search, default settings.
pub fn minimize_product_distance(
    s: &BellDiagonalState,
) -> Result<MinimizationResult<(BlochVector, BlochVector)>> {
    Ok(search_product_states(s, &ProductSearch::default())?.best())
}

/// Closed forms under test; swapped out in tests to confirm that a wrong
/// formula is caught.
#[derive(Debug, Clone, Copy)]
pub struct ClosedForms {
    pub reb_discord: fn(&BellDiagonalState) -> Result<f64>,
    pub geometric_discord: fn(&BellDiagonalState) -> Result<f64>,
    pub product_minimum: fn(&BellDiagonalState) -> Result<f64>,
}

impl Default for ClosedForms {
    fn default() -> Self {
        Self {
            reb_discord: |s| Ok(correlations::reb_quantifiers(s)?.discord),
            geometric_discord: |s| Ok(correlations::geometric_quantifiers(s)?.discord),
            product_minimum: |s| {
                Ok(hs_distance_sq(
                    &s.to_density_matrix(),
                    &correlations::closest_product_state(s)?,
                ))
            },
        }
    }
}

/// Pass thresholds for the oracle comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckTolerances {
    pub discord: f64,
    pub geometric_discord: f64,
    pub product_value: f64,
    pub product_argmin: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        Self {
            discord: 1e-4,
            geometric_discord: 1e-6,
            product_value: 1e-9,
            product_argmin: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CheckOptions {
    pub grid: GridResolution,
    pub product: ProductSearch,
    pub tolerances: CheckTolerances,
}


/// One row of the oracle comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub worst_state: Option<BellDiagonalState>,
}

impl CheckLine {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            max_deviation: 0.0,
            tolerance,
            worst_state: None,
        }
    }

    fn record(&mut self, deviation: f64, s: &BellDiagonalState) {
        if deviation > self.max_deviation || deviation.is_nan() {
            self.max_deviation = deviation;
            self.worst_state = Some(*s);
        }
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub samples: usize,
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }
}

/// Compares every oracle against the closed forms on the given states.
///
/// Lines: discord vs measurement minimum, geometric discord vs brute force,
/// product-search value vs `|c|²/4` (and vs the supplied closed form), and
/// product-search argmin distance from the origin.
pub fn run_checks(
    states: &[BellDiagonalState],
    opts: &CheckOptions,
    forms: &ClosedForms,
) -> Result<CheckReport> {
    let tol = opts.tolerances;
    let mut discord = CheckLine::new("discord_vs_measurement_min", tol.discord);
    let mut geometric = CheckLine::new("geometric_discord_vs_bruteforce", tol.geometric_discord);
    let mut product_value = CheckLine::new("product_min_value", tol.product_value);
    let mut product_argmin = CheckLine::new("product_min_argmin_norm", tol.product_argmin);

    for (i, s) in states.iter().enumerate() {
        let rho = s.checked()?.to_density_matrix();
        let delta = original_discord(&rho, opts.grid)?;
        discord.record((delta.value - (forms.reb_discord)(s)?).abs(), s);

        let dg = geometric_discord_bruteforce(&rho, opts.grid)?;
        geometric.record((dg.value - (forms.geometric_discord)(s)?).abs(), s);

        let product = ProductSearch {
            seed: opts.product.seed.wrapping_add(i as u64),
            ..opts.product
        };
        let report = search_product_states(s, &product)?;
        let closed = (forms.product_minimum)(s)?;
        let worst_value = report
            .starts
            .iter()
            .map(|st| (st.result.value - closed).abs())
            .fold(report.max_value_deviation(), f64::max);
        product_value.record(worst_value, s);
        product_argmin.record(report.max_argmin_norm(), s);
    }

    Ok(CheckReport {
        samples: states.len(),
        lines: vec![discord, geometric, product_value, product_argmin],
    })
}

/// `count` physical states from a seeded generator.
pub fn seeded_states(seed: u64, count: usize) -> Vec<BellDiagonalState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| BellDiagonalState::random_physical(&mut rng))
        .collect()
}
