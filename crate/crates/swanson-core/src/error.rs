use thiserror::Error;

/// Errors surfaced by the oscillator library.
///
/// Numerical degeneracies (exceptional points, mass singularities, tan
/// singularities) are reported, never silently patched over.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("mass denominator 2θ(t) - [α₂(t)+β₂(t)] vanishes at t = {t}")]
    MassSingularity { t: f64 },

    #[error("operator dimensions or basis constants do not match: {0}")]
    DimensionMismatch(String),

    #[error("eigenvalue iteration failed to converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("matrix exponential overflowed the representable range (‖A‖ = {norm:.3e})")]
    Overflow { norm: f64 },

    #[error("θ = 0: the forced-oscillator transformation is undefined")]
    ZeroTheta,

    #[error("ν₃ν₄ + ν₁ν₅ = 0 with (ν₄,ν₅) ≠ 0: η₁ direction is degenerate")]
    DegenerateDirection,

    #[error("exceptional point: {0}")]
    ExceptionalPoint(String),

    #[error("ν₁ν₂ + ν₃² = 0: reduced frequency is undefined")]
    DivisionByZero,

    #[error("ω₀t = {theta:.6} is within {margin:.1e} of the tan(ω₀t/2) singularity")]
    TanSingularity { theta: f64, margin: f64 },

    #[error("wavefunction support reaches the grid boundary (|ψ| = {boundary_abs:.3e} ≥ {limit:.1e})")]
    UntrustedSupport { boundary_abs: f64, limit: f64 },

    #[error("tridiagonal elimination broke down at row {row} (pivot {pivot_abs:.3e})")]
    SolverBreakdown { row: usize, pivot_abs: f64 },

    #[error("grids differ: {0}")]
    GridMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
