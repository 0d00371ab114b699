//! Uniform grid, difference operators, and discrete inner products.
//!
//! The domain (0, L) is split into `M` cells of width `h = L/M`; a state
//! holds the `M - 1` interior nodal values and the homogeneous Dirichlet
//! boundary values are implicit zeros. Operators used by the scheme:
//!
//! * `second_diff`:  `(w_{i+1} - 2 w_i + w_{i-1}) / h^2`
//! * `central_diff`: `Delta w_i = w_{i+1} - w_{i-1}` (no `1/2h` factor; the
//!   factor lives at the call sites)
//! * `nonlinear_term`: `psi(w)_i = (w_i Delta w_i + Delta(w^2)_i) / (6 h)`,
//!   the Galerkin-style form of `w w_x` whose key property is exact
//!   skew-symmetry, `<psi(w), w>_h = 0`, which is what makes the implicit
//!   scheme unconditionally stable.
//!
//! `<v, w>_h = h sum_i v_i w_i` over interior nodes, `||.||_h` its norm, and
//! the staggered first difference satisfies summation by parts
//! `<second_diff(w1), w2>_h = -<staggered_diff(w1), staggered_diff(w2)>_h`
//! and the discrete Sobolev bound `||w||_inf <= (sqrt(L)/2) ||delta_x w||_h`.

use crate::cpkernel::WeightSequence;
use crate::{Error, Result};

/// Uniform partition of (0, L) into `M >= 3` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceGrid {
    cells: usize,
    length: f64,
    h: f64,
}

impl SpaceGrid {
    pub fn new(cells: usize, length: f64) -> Result<Self> {
        if cells < 3 {
            return Err(Error::InvalidParameter {
                name: "M",
                constraint: "needs at least 3 cells",
                value: cells as f64,
            });
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidParameter {
                name: "L",
                constraint: "must be finite and > 0",
                value: length,
            });
        }
        Ok(Self {
            cells,
            length,
            h: length / cells as f64,
        })
    }

    /// Number of cells `M`.
    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Number of interior nodes, `M - 1`.
    pub fn interior(&self) -> usize {
        self.cells - 1
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Node coordinate `x_i = i h`, `i = 0..=M`.
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.h
    }
}

/// Interior nodal values of a grid function with zero boundary values.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub(crate) values: Vec<f64>,
}

impl StateVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![0.0; n],
        }
    }

    /// Sample `f` at the interior nodes of `grid`.
    pub fn from_fn(grid: &SpaceGrid, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: (1..grid.cells()).map(|i| f(grid.x(i))).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Max-norm over the interior nodes.
    pub fn norm_inf(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

impl std::ops::Index<usize> for StateVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

fn check_dims(w: &StateVector, grid: &SpaceGrid) -> Result<()> {
    if w.len() == grid.interior() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: grid.interior(),
            got: w.len(),
        })
    }
}

/// Central second difference `(w_{i+1} - 2 w_i + w_{i-1}) / h^2` with the
/// boundary values taken as zero.
pub fn second_diff(w: &StateVector, grid: &SpaceGrid) -> Result<StateVector> {
    check_dims(w, grid)?;
    let n = w.len();
    let h2 = grid.h() * grid.h();
    let v = &w.values;
    let values = (0..n)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { v[i - 1] };
            let right = if i + 1 == n { 0.0 } else { v[i + 1] };
            (right - 2.0 * v[i] + left) / h2
        })
        .collect();
    Ok(StateVector { values })
}

/// Undivided central difference `Delta w_i = w_{i+1} - w_{i-1}` with zero
/// boundary extension. Callers supply their own `1/(2h)` where needed.
pub fn central_diff(w: &StateVector) -> StateVector {
    let n = w.len();
    let v = &w.values;
    let values = (0..n)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { v[i - 1] };
            let right = if i + 1 == n { 0.0 } else { v[i + 1] };
            right - left
        })
        .collect();
    StateVector { values }
}

/// Staggered first difference `(w_i - w_{i-1}) / h` on the `M` cell edges
/// (with `w_0 = w_M = 0`); the object whose h-norm appears in summation by
/// parts and in the discrete Sobolev inequality.
pub fn staggered_diff(w: &StateVector, grid: &SpaceGrid) -> Result<Vec<f64>> {
    check_dims(w, grid)?;
    let h = grid.h();
    let n = w.len();
    let v = &w.values;
    Ok((0..=n)
        .map(|i| {
            let below = if i == 0 { 0.0 } else { v[i - 1] };
            let above = if i == n { 0.0 } else { v[i] };
            (above - below) / h
        })
        .collect())
}

/// Skew-symmetric convection term
/// `psi(w)_i = (w_i Delta w_i + Delta(w^2)_i) / (6 h)`.
pub fn nonlinear_term(w: &StateVector, grid: &SpaceGrid) -> Result<StateVector> {
    check_dims(w, grid)?;
    let n = w.len();
    let v = &w.values;
    let scale = 1.0 / (6.0 * grid.h());
    let values = (0..n)
        .map(|i| {
            let left = if i == 0 { 0.0 } else { v[i - 1] };
            let right = if i + 1 == n { 0.0 } else { v[i + 1] };
            scale * (v[i] * (right - left) + (right * right - left * left))
        })
        .collect();
    Ok(StateVector { values })
}

/// Discrete inner product `<v, w>_h = h sum_i v_i w_i` over interior nodes.
pub fn inner_product_h(v: &StateVector, w: &StateVector, grid: &SpaceGrid) -> Result<f64> {
    check_dims(v, grid)?;
    check_dims(w, grid)?;
    Ok(grid.h()
        * v.values
            .iter()
            .zip(&w.values)
            .map(|(a, b)| a * b)
            .sum::<f64>())
}

/// `||w||_h = sqrt(<w, w>_h)`.
pub fn norm_h(w: &StateVector, grid: &SpaceGrid) -> f64 {
    (grid.h() * w.values.iter().map(|v| v * v).sum::<f64>()).sqrt()
}

/// `||.||_h` of the staggered difference, `(h sum_edges d_i^2)^(1/2)`.
pub fn staggered_norm_h(d: &[f64], grid: &SpaceGrid) -> f64 {
    (grid.h() * d.iter().map(|v| v * v).sum::<f64>()).sqrt()
}

/// Which sign the `a_k u^0` term of the history right-hand side carries.
///
/// Rearranging the scheme puts the initial level on the right-hand side with
/// a plus sign; `AsPrinted` selects the minus sign that one published form of
/// the formula shows. The two coincide for zero initial data, and a
/// manufactured run with nonzero initial data converges only under
/// `Consistent` (the default).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialLevelSign {
    #[default]
    Consistent,
    AsPrinted,
}

/// Known part of the implicit equation at level `k`:
///
/// ```text
///     H^k = mu f^k + sum_{j=1..k-1} (a_{k-j} - a_{k-j+1}) u^j  +/-  a_k u^0
/// ```
///
/// from the history levels `levels = [u^0, ..., u^{k-1}, ...]` (levels beyond
/// `k - 1` are ignored) and the source samples `f_k` at `t_k`.
pub fn history_rhs(
    levels: &[StateVector],
    f_k: &StateVector,
    k: usize,
    w: &WeightSequence,
    grid: &SpaceGrid,
    sign: InitialLevelSign,
) -> Result<StateVector> {
    if k < 1 || k > w.len() {
        return Err(Error::HistoryTooShort {
            level: k,
            available: w.len(),
        });
    }
    if levels.len() < k {
        return Err(Error::HistoryTooShort {
            level: k,
            available: levels.len(),
        });
    }
    check_dims(f_k, grid)?;
    for lev in &levels[..k] {
        check_dims(lev, grid)?;
    }

    let mu = w.mu();
    let n = f_k.len();
    let mut h_k: Vec<f64> = f_k.values.iter().map(|f| mu * f).collect();
    for j in 1..k {
        let c = w.weight(k - j) - w.weight(k - j + 1);
        let u_j = &levels[j].values;
        for i in 0..n {
            h_k[i] += c * u_j[i];
        }
    }
    let a_k = match sign {
        InitialLevelSign::Consistent => w.weight(k),
        InitialLevelSign::AsPrinted => -w.weight(k),
    };
    let u_0 = &levels[0].values;
    for i in 0..n {
        h_k[i] += a_k * u_0[i];
    }
    Ok(StateVector { values: h_k })
}
