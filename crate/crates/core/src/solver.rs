//! Implicit time stepping with a Newton-linearized convection term.
//!
//! Each time level solves the nonlinear system
//!
//! ```text
//!     a_1 U - mu d2x(U) + mu psi(U) = H^k
//! ```
//!
//! by Newton iteration started from the previous level. One iteration
//! freezes the convection coefficients at the current iterate `U^s` and
//! solves the tridiagonal system
//!
//! ```text
//!     [a_1 + 2 mu/h^2 + (mu/2h) Delta U^s_i] U_i
//!         - (mu/h^2) (U_{i-1} + U_{i+1})
//!   = (mu/2h) (Delta U^s_i) U^s_i - mu psi(U^s)_i + H^k_i
//! ```
//!
//! whose fixed points are exactly the solutions of the nonlinear equation.
//! Iteration stops when the max-norm correction drops below `it_acc`.
//!
//! The tridiagonal solver runs the Thomas sweep when the matrix is strictly
//! diagonally dominant (always the case for moderate iterates, since the
//! diagonal carries `a_1 + 2 mu/h^2`) and falls back to a banded LU with
//! partial pivoting otherwise.

use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cpkernel::{compute_weights, CpParams, WeightSequence};
use crate::discretization::{
    central_diff, history_rhs, nonlinear_term, second_diff, InitialLevelSign, SpaceGrid,
    StateVector,
};
use crate::{Error, Result};

/// Relative pivot threshold below which a system is declared singular.
const PIVOT_RTOL: f64 = 1e-14;

fn tridiag_scale(sub: &[f64], diag: &[f64], sup: &[f64]) -> f64 {
    sub.iter()
        .chain(diag)
        .chain(sup)
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Thomas sweep; `None` when a pivot falls under the threshold, in which
/// case the caller retries with partial pivoting.
fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64], floor: f64) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut r = rhs.to_vec();
    for i in 1..n {
        if d[i - 1].abs() <= floor {
            return None;
        }
        let m = sub[i - 1] / d[i - 1];
        d[i] -= m * sup[i - 1];
        r[i] -= m * r[i - 1];
    }
    if d[n - 1].abs() <= floor {
        return None;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = r[n - 1] / d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = (r[i] - sup[i] * x[i + 1]) / d[i];
    }
    Some(x)
}

/// Banded Gaussian elimination with partial pivoting. Row swaps introduce
/// fill-in in one extra superdiagonal, which `f` carries.
fn banded_pivoting(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
    floor: f64,
) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut a = vec![0.0; n]; // subdiagonal entry of row i (column i - 1)
    a[1..n].copy_from_slice(sub);
    let mut b = diag.to_vec(); // column i
    let mut c = vec![0.0; n]; // column i + 1
    c[..n - 1].copy_from_slice(sup);
    let mut f = vec![0.0; n]; // column i + 2, fill-in from pivoting
    let mut r = rhs.to_vec();

    for i in 0..n - 1 {
        if a[i + 1].abs() > b[i].abs() {
            // Both rows only touch columns i..=i+2 at this point, so a full
            // row exchange is a swap of the (col i, col i+1, col i+2, rhs)
            // quadruples.
            let upper = (b[i], c[i], f[i], r[i]);
            let lower = (a[i + 1], b[i + 1], c[i + 1], r[i + 1]);
            b[i] = lower.0;
            c[i] = lower.1;
            f[i] = lower.2;
            r[i] = lower.3;
            a[i + 1] = upper.0;
            b[i + 1] = upper.1;
            c[i + 1] = upper.2;
            r[i + 1] = upper.3;
        }
        if b[i].abs() <= floor {
            return Err(Error::SingularSystem {
                pivot_index: i,
                pivot: b[i],
            });
        }
        let m = a[i + 1] / b[i];
        b[i + 1] -= m * c[i];
        c[i + 1] -= m * f[i];
        r[i + 1] -= m * r[i];
    }
    if b[n - 1].abs() <= floor {
        return Err(Error::SingularSystem {
            pivot_index: n - 1,
            pivot: b[n - 1],
        });
    }

    let mut x = vec![0.0; n];
    x[n - 1] = r[n - 1] / b[n - 1];
    if n >= 2 {
        x[n - 2] = (r[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (r[i] - c[i] * x[i + 1] - f[i] * x[i + 2]) / b[i];
    }
    Ok(x)
}

/// Solve a tridiagonal system with subdiagonal `sub`, diagonal `diag`, and
/// superdiagonal `sup` (lengths `n - 1`, `n`, `n - 1`).
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 || sub.len() != n - 1 || sup.len() != n - 1 || rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len().max(sub.len() + 1).max(sup.len() + 1),
        });
    }
    let floor = PIVOT_RTOL * tridiag_scale(sub, diag, sup);
    if n == 1 {
        if diag[0].abs() <= floor {
            return Err(Error::SingularSystem {
                pivot_index: 0,
                pivot: diag[0],
            });
        }
        return Ok(vec![rhs[0] / diag[0]]);
    }
    let dominant = (0..n).all(|i| {
        let off = if i == 0 { 0.0 } else { sub[i - 1].abs() }
            + if i + 1 == n { 0.0 } else { sup[i].abs() };
        diag[i].abs() > off
    });
    if dominant {
        if let Some(x) = thomas(sub, diag, sup, rhs, floor) {
            return Ok(x);
        }
    }
    banded_pivoting(sub, diag, sup, rhs, floor)
}

/// Stopping rule for the per-level Newton iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    max_step: usize,
    it_acc: f64,
}

impl NewtonSettings {
    pub fn new(max_step: usize, it_acc: f64) -> Result<Self> {
        if max_step < 1 {
            return Err(Error::InvalidParameter {
                name: "MaxStep",
                constraint: "must be at least 1",
                value: max_step as f64,
            });
        }
        if !(it_acc > 0.0) || !it_acc.is_finite() {
            return Err(Error::InvalidParameter {
                name: "ItAcc",
                constraint: "must be finite and > 0",
                value: it_acc,
            });
        }
        Ok(Self { max_step, it_acc })
    }

    pub fn max_step(&self) -> usize {
        self.max_step
    }

    pub fn it_acc(&self) -> f64 {
        self.it_acc
    }
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self {
            max_step: 500,
            it_acc: 1e-8,
        }
    }
}

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Full description of an initial-boundary-value problem on
/// `(0, L) x (0, T]` with homogeneous Dirichlet boundary values: kernel
/// parameters, grid, time step count, initial profile `phi(x)`, and source
/// `f(x, t)`.
#[derive(Clone)]
pub struct ProblemSpec {
    params: CpParams,
    grid: SpaceGrid,
    final_time: f64,
    steps: usize,
    initial: SpaceFn,
    source: SpaceTimeFn,
    sign: InitialLevelSign,
}

impl std::fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("params", &self.params)
            .field("grid", &self.grid)
            .field("final_time", &self.final_time)
            .field("steps", &self.steps)
            .field("sign", &self.sign)
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    pub fn new(
        params: CpParams,
        grid: SpaceGrid,
        final_time: f64,
        steps: usize,
        initial: SpaceFn,
        source: SpaceTimeFn,
    ) -> Result<Self> {
        if !(final_time > 0.0) || !final_time.is_finite() {
            return Err(Error::InvalidParameter {
                name: "T",
                constraint: "must be finite and > 0",
                value: final_time,
            });
        }
        if steps < 1 {
            return Err(Error::InvalidParameter {
                name: "N",
                constraint: "must be at least 1",
                value: steps as f64,
            });
        }
        Ok(Self {
            params,
            grid,
            final_time,
            steps,
            initial,
            source,
            sign: InitialLevelSign::default(),
        })
    }

    /// Select the sign convention for the initial level in the history sum.
    pub fn with_sign(mut self, sign: InitialLevelSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn params(&self) -> &CpParams {
        &self.params
    }

    pub fn grid(&self) -> &SpaceGrid {
        &self.grid
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn tau(&self) -> f64 {
        self.final_time / self.steps as f64
    }

    pub fn sign(&self) -> InitialLevelSign {
        self.sign
    }

    /// Initial profile sampled on the interior nodes.
    pub fn initial_state(&self) -> StateVector {
        StateVector::from_fn(&self.grid, |x| (self.initial)(x))
    }

    /// Source samples `f(x_i, t)` on the interior nodes.
    pub fn source_at(&self, t: f64) -> StateVector {
        StateVector::from_fn(&self.grid, |x| (self.source)(x, t))
    }
}

/// Everything a completed march produces: all levels `u^0..u^N`, the Newton
/// iteration count per level, and the wall-clock time spent.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub levels: Vec<StateVector>,
    pub newton_iterations: Vec<usize>,
    pub wall_time: Duration,
}

impl SolveReport {
    pub fn final_level(&self) -> &StateVector {
        self.levels.last().expect("a solve always stores u^0")
    }

    pub fn total_iterations(&self) -> usize {
        self.newton_iterations.iter().sum()
    }

    pub fn max_iterations(&self) -> usize {
        self.newton_iterations.iter().copied().max().unwrap_or(0)
    }
}

/// One Newton update: linearize the convection term at `u_s` and solve the
/// resulting tridiagonal system. Fixed points of this map solve the full
/// nonlinear level equation with right-hand side `h_k`.
pub fn newton_step(
    u_s: &StateVector,
    h_k: &StateVector,
    w: &WeightSequence,
    grid: &SpaceGrid,
) -> Result<StateVector> {
    if u_s.len() != h_k.len() {
        return Err(Error::DimensionMismatch {
            expected: h_k.len(),
            got: u_s.len(),
        });
    }
    let n = grid.interior();
    let a1 = w.weight(1);
    let mu = w.mu();
    let h = grid.h();
    let diffusion = mu / (h * h);
    let half = mu / (2.0 * h);

    let delta = central_diff(u_s);
    let psi = nonlinear_term(u_s, grid)?;

    let sub = vec![-diffusion; n - 1];
    let sup = vec![-diffusion; n - 1];
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        diag[i] = a1 + 2.0 * diffusion + half * delta[i];
        rhs[i] = half * delta[i] * u_s[i] - mu * psi[i] + h_k[i];
    }
    Ok(StateVector::new(solve_tridiagonal(&sub, &diag, &sup, &rhs)?))
}

/// Advance one time level: iterate `newton_step` from the previous level
/// until the max-norm correction drops below `it_acc`. Returns the new
/// level and the number of iterations it took.
pub fn advance_step(
    u_prev: &StateVector,
    h_k: &StateVector,
    w: &WeightSequence,
    grid: &SpaceGrid,
    settings: &NewtonSettings,
) -> Result<(StateVector, usize)> {
    let mut current = u_prev.clone();
    let mut last_correction = f64::INFINITY;
    for s in 1..=settings.max_step {
        let next = newton_step(&current, h_k, w, grid)?;
        last_correction = next
            .as_slice()
            .iter()
            .zip(current.as_slice())
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
        current = next;
        if last_correction < settings.it_acc {
            return Ok((current, s));
        }
    }
    Err(Error::NewtonNonConvergence {
        max_step: settings.max_step,
        last_correction,
        it_acc: settings.it_acc,
    })
}

/// March the scheme over all `N` time levels.
pub fn solve(problem: &ProblemSpec, settings: &NewtonSettings) -> Result<SolveReport> {
    let start = Instant::now();
    let tau = problem.tau();
    let w = compute_weights(&problem.params, tau, problem.steps)?;
    let grid = &problem.grid;

    let mut levels = Vec::with_capacity(problem.steps + 1);
    levels.push(problem.initial_state());
    let mut newton_iterations = Vec::with_capacity(problem.steps);

    for k in 1..=problem.steps {
        let t_k = tau * k as f64;
        let f_k = problem.source_at(t_k);
        let h_k = history_rhs(&levels, &f_k, k, &w, grid, problem.sign)
            .map_err(|e| e.at_level(k))?;
        let (u_k, iters) =
            advance_step(&levels[k - 1], &h_k, &w, grid, settings).map_err(|e| e.at_level(k))?;
        levels.push(u_k);
        newton_iterations.push(iters);
    }

    Ok(SolveReport {
        levels,
        newton_iterations,
        wall_time: start.elapsed(),
    })
}

/// Max-norm residual of the level-`k` equation,
/// `|| a_1 u^k - mu d2x(u^k) + mu psi(u^k) - H^k ||_inf`,
/// for an already-computed sequence of levels.
pub fn scheme_residual(
    levels: &[StateVector],
    k: usize,
    f_k: &StateVector,
    w: &WeightSequence,
    grid: &SpaceGrid,
    sign: InitialLevelSign,
) -> Result<f64> {
    if k < 1 || levels.len() < k + 1 {
        return Err(Error::HistoryTooShort {
            level: k,
            available: levels.len(),
        });
    }
    let h_k = history_rhs(levels, f_k, k, w, grid, sign)?;
    let u_k = &levels[k];
    let d2 = second_diff(u_k, grid)?;
    let psi = nonlinear_term(u_k, grid)?;
    let a1 = w.weight(1);
    let mu = w.mu();
    let mut worst = 0.0f64;
    for i in 0..u_k.len() {
        let r = a1 * u_k[i] - mu * d2[i] + mu * psi[i] - h_k[i];
        worst = worst.max(r.abs());
    }
    Ok(worst)
}
