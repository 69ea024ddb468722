//! Error types shared across the laboratory.

use thiserror::Error;

/// Everything that can go wrong in the numerical core.
#[derive(Debug, Error)]
pub enum Error {
    /// A kernel support covers fewer than the minimum number of grid points.
    #[error("kernel support [{support:.6}] covers only {points} points of a grid with spacing {dx:.6}; need at least 4")]
    UnresolvedKernel { support: f64, dx: f64, points: usize },

    /// A periodic convolution kernel wider than half the torus would wrap onto itself.
    #[error("kernel support radius {support_radius} exceeds half the torus period {period}")]
    KernelTooWide { support_radius: f64, period: f64 },

    /// The smoothing kernel of the lattice dynamics is too wide for the torus.
    #[error("lattice kernel support {support} too wide for torus of {n} sites (need n > 2*support)")]
    SupportTooWide { support: usize, n: usize },

    /// The circulant of the lattice smoothing kernel is numerically singular.
    #[error("circulant of lattice kernel is numerically singular (min |eigenvalue| {min_abs:.3e})")]
    SingularAlpha { min_abs: f64 },

    /// Explicit time step violates its stability bound.
    #[error("time step {dt:.3e} violates the stability bound {bound:.3e}")]
    UnstableStep { dt: f64, bound: f64 },

    /// A field value left the trusted range, or positivity was lost.
    #[error("solution blew up at t={t:.6}: {what} (try halving dt)")]
    BlowUp { t: f64, what: String },

    /// Logarithm or division requested on a field that is not strictly positive.
    #[error("field is not strictly positive (min value {min})")]
    NonPositiveField { min: f64 },

    /// The test function and the anchoring weight overlap where they must not.
    #[error("supports of the test function and the anchoring weight overlap (gap {gap})")]
    OverlappingSupports { gap: f64 },

    /// ε too large relative to the support gap required by the static test.
    #[error("epsilon {epsilon} too large; need epsilon < min(1, gap/4) = {limit}")]
    EpsilonTooLarge { epsilon: f64, limit: f64 },

    /// Combinatorial guard on chaos computations.
    #[error("total chaos order {total} exceeds the guard {guard}")]
    TooLarge { total: usize, guard: usize },

    /// Invalid configuration value.
    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },

    /// File system trouble while emitting results.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        Error::Config { field: field.to_string(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
