//! Three-parameter Mittag-Leffler (Prabhakar) function.
//!
//! ```text
//!     E_{a,b}^{g}(z) = sum_{m>=0} (g)_m z^m / (Gamma(a m + b) m!)
//! ```
//!
//! with the rising factorial `(g)_0 = 1`, `(g)_{m+1} = (g)_m (g + m)`. For
//! `a > 0` the series is entire in `z`; notable reductions are
//!
//! * `g = 0`: constant `1 / Gamma(b)`,
//! * `g = 1`: the classical two-parameter function `E_{a,b}(z)`,
//! * `a = b = g = 1`: `exp(z)`,
//! * `g` a negative integer `-n`: a polynomial of degree `n` in `z`.
//!
//! Evaluation is a straight series scan: the rising factorial by recurrence,
//! `z^m / m!` by iterated multiply, and `1 / Gamma(a m + b)` per term in log
//! space. Direct summation is only trustworthy while cancellation stays mild,
//! so evaluation is limited to `|z| <= 20` and the result carries a
//! precision-loss flag once the largest intermediate term dwarfs the sum.

use crate::gamma::ln_gamma;
use crate::{Error, Result};

/// Hard cap on series terms before giving up.
const MAX_TERMS: usize = 400;
/// The stopping rule needs this many consecutive negligible terms.
const TAIL_RUN: usize = 3;
/// Never stop before this many terms have been summed.
const MIN_TERMS: usize = 8;
/// Series-only evaluation is supported for |z| up to this bound.
const Z_MAX: f64 = 20.0;
/// Loosest admissible truncation tolerance.
const TOL_MAX: f64 = 1e-3;
/// A max-term-to-sum ratio beyond this flags catastrophic cancellation.
const CANCELLATION_GUARD: f64 = 1e12;

/// Outcome of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlfEval {
    /// Value of the series.
    pub value: f64,
    /// Number of terms actually summed.
    pub terms: usize,
    /// True when the largest intermediate term exceeded 1e12 times the final
    /// sum, i.e. most of the leading digits cancelled away.
    pub precision_warning: bool,
}

fn check_param(name: &'static str, value: f64, ok: bool, constraint: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            constraint,
            value,
        })
    }
}

/// Evaluate `E_{a,b}^{g}(z)` with stopping tolerance `tol`, returning the
/// value together with the term count and the cancellation flag.
///
/// Requires `a > 0`, `b > 0`, finite `g`, `|z| <= 20` and `tol` in
/// `(0, 1e-3]`. The stopping rule accepts the sum once three consecutive
/// terms fall below `tol * max(1, |sum|)`, but never before eight terms.
pub fn prabhakar_eval(a: f64, b: f64, g: f64, z: f64, tol: f64) -> Result<MlfEval> {
    check_param("a", a, a > 0.0, "must be finite and > 0")?;
    check_param("b", b, b > 0.0, "must be finite and > 0")?;
    check_param("g", g, true, "must be finite")?;
    check_param("tol", tol, tol > 0.0 && tol <= TOL_MAX, "must lie in (0, 1e-3]")?;
    check_param("z", z, z.abs() <= Z_MAX, "series evaluation needs |z| <= 20")?;

    if z == 0.0 {
        // Every term beyond m = 0 vanishes; the sum is exactly 1/Gamma(b).
        return Ok(MlfEval {
            value: (-ln_gamma(b)).exp(),
            terms: 1,
            precision_warning: false,
        });
    }

    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut rising = 1.0f64; // (g)_m
    let mut z_over_fact = 1.0f64; // z^m / m!
    let mut max_abs_term = 0.0f64;
    let mut tail_run = 0usize;

    for m in 0..MAX_TERMS {
        let term = rising * z_over_fact * (-ln_gamma(a * m as f64 + b)).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        max_abs_term = max_abs_term.max(term.abs());

        if term.abs() < tol * sum.abs().max(1.0) {
            tail_run += 1;
            if tail_run >= TAIL_RUN && m + 1 >= MIN_TERMS {
                return Ok(MlfEval {
                    value: sum,
                    terms: m + 1,
                    precision_warning: max_abs_term > CANCELLATION_GUARD * sum.abs(),
                });
            }
        } else {
            tail_run = 0;
        }

        rising *= g + m as f64;
        z_over_fact *= z / (m + 1) as f64;
    }

    Err(Error::MlfNonConvergence {
        a,
        b,
        g,
        z,
        terms: MAX_TERMS,
    })
}

/// Evaluate `E_{a,b}^{g}(z)`; the plain-value form of [`prabhakar_eval`].
pub fn prabhakar_e(a: f64, b: f64, g: f64, z: f64, tol: f64) -> Result<f64> {
    prabhakar_eval(a, b, g, z, tol).map(|e| e.value)
}

/// Classical two-parameter Mittag-Leffler function `E_{a,b}(z) = E_{a,b}^{1}(z)`.
pub fn mlf_two_param(a: f64, b: f64, z: f64, tol: f64) -> Result<f64> {
    prabhakar_e(a, b, 1.0, z, tol)
}
