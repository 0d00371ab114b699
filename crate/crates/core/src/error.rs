//! Error type shared by all modules.

/// Everything that can go wrong, from bad parameters to Newton stagnation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its admissible domain.
    #[error("invalid parameter `{name}`: {constraint} (got {value})")]
    InvalidParameter {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// The Mittag-Leffler series did not satisfy the stopping rule within the
    /// term cap. Signals an argument outside the reliable series range.
    #[error(
        "Mittag-Leffler series for (a={a}, b={b}, g={g}) did not converge at z={z} \
         within {terms} terms; |z| <= 20 is the supported range"
    )]
    MlfNonConvergence {
        a: f64,
        b: f64,
        g: f64,
        z: f64,
        terms: usize,
    },

    /// The convolution weights are not positive and strictly decreasing, so
    /// the stability precondition of the scheme fails for these parameters.
    #[error("convolution weights violate the stability precondition at index {index}: {detail}")]
    WeightMonotonicity { index: usize, detail: String },

    /// A history operation was asked for more time levels than the weight
    /// table covers.
    #[error("time level {level} exceeds the {available} levels covered by the weight table")]
    HistoryTooShort { level: usize, available: usize },

    /// Two vectors that must share a grid do not.
    #[error("dimension mismatch: expected {expected} interior nodes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The tridiagonal (or band-pivoted) elimination met a vanishing pivot.
    #[error("linear system is numerically singular at pivot {pivot_index} (|pivot| = {pivot:e})")]
    SingularSystem { pivot_index: usize, pivot: f64 },

    /// Newton iteration exhausted its step budget.
    #[error(
        "Newton iteration is not convergent within {max_step} steps \
         (last correction {last_correction:e}, tolerance {it_acc:e})"
    )]
    NewtonNonConvergence {
        max_step: usize,
        last_correction: f64,
        it_acc: f64,
    },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error(
        "adaptive quadrature did not reach tolerance {tol:e} \
         (estimated error {estimate:e} after {panels} panels)"
    )]
    QuadratureNonConvergence {
        tol: f64,
        estimate: f64,
        panels: usize,
    },

    /// A configuration entry (file key, flag, or label) that cannot be used.
    #[error("invalid configuration `{key}`: {detail}")]
    InvalidConfig { key: String, detail: String },

    /// A failure at a specific time level of a marching solve.
    #[error("at time level {level}: {source}")]
    AtTimeLevel {
        level: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach the time level at which a marching solve failed.
    pub(crate) fn at_level(self, level: usize) -> Error {
        Error::AtTimeLevel {
            level,
            source: Box::new(self),
        }
    }

    /// True for errors caused by inadmissible input rather than by numerics.
    pub fn is_validation(&self) -> bool {
        match self {
            Error::InvalidParameter { .. }
            | Error::DimensionMismatch { .. }
            | Error::HistoryTooShort { .. }
            | Error::InvalidConfig { .. } => true,
            Error::AtTimeLevel { source, .. } => source.is_validation(),
            _ => false,
        }
    }
}
