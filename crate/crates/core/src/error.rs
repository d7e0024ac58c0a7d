use thiserror::Error;

/// Errors raised by model construction, linear algebra and cumulant extraction.
///
/// The type is `Clone` so it can be stored inside flagged report entries and
/// scan rows.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("eigensolver did not converge after {iterations} iterations (achieved residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("particle number {particles} is outside 1..={dim}")]
    ParticleCount { particles: usize, dim: usize },

    #[error("ground-state degeneracy at the Fermi level is deeper than two-fold ({multiplicity} levels with {vacancies} to fill)")]
    DeepDegeneracy {
        multiplicity: usize,
        vacancies: usize,
    },

    #[error("plane-wave occupation requires a periodic uniform chain")]
    PlaneWaveUnsupported,

    #[error("position moments require an open-boundary model")]
    NotOpenBoundary,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polarization undefined (metallic/flat distribution): |Z_1| = {magnitude:e} is below {threshold:e}")]
    PolarizationUndefined { magnitude: f64, threshold: f64 },

    #[error("shift index {q} out of range for a path of {len} states")]
    ShiftOutOfRange { q: usize, len: usize },

    #[error("invalid state path: {0}")]
    InvalidPath(String),

    #[error("degeneracy point crossed; phase undefined (link {link} has magnitude {magnitude:e})")]
    DegeneracyCrossed { link: usize, magnitude: f64 },

    #[error("gapless band; SWM cumulants undefined (smallest link magnitude {magnitude:e})")]
    Gapless { magnitude: f64 },

    #[error(
        "stencil for derivative order {n} at accuracy order {mu} is outside the supported range"
    )]
    StencilRange { n: u32, mu: u32 },

    #[error("characteristic sequence too short: need q_max >= {required}, have {available}")]
    SequenceTooShort { required: usize, available: usize },

    #[error("logarithmic term diverges: |Z_{q}| = {magnitude:e} is below {threshold:e}")]
    LogDivergence {
        q: usize,
        magnitude: f64,
        threshold: f64,
    },

    #[error("second moment {0:e} is not positive")]
    NonPositiveVariance(f64),

    #[error("fidelity undefined at degeneracy (parameter {0})")]
    FidelityDegenerate(f64),

    #[error("ground-state overlap vanishes at parameter {0}; susceptibility diverges")]
    FidelityDivergent(f64),

    #[error("entry not produced by the {0} scheme")]
    NotInScheme(&'static str),

    #[error("{0} is not a Fibonacci number")]
    NotFibonacci(u64),

    #[error("Fibonacci index {0} is invalid or overflows u128")]
    FibonacciIndex(u32),

    #[error("invalid filling: {0}")]
    InvalidFilling(String),

    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
