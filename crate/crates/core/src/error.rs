//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {lhs:?} is incompatible with {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions must be at least 1x1")]
    ZeroDimension,

    #[error("data length {found} does not match rows*cols = {expected}")]
    DataLength { expected: usize, found: usize },

    #[error("non-finite entry (NaN or infinity)")]
    NonFinite,

    #[error("matrix is not Hermitian: max entrywise deviation from its adjoint is {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary: max entrywise residual of U†U - I is {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    EigenDidNotConverge { sweeps: usize, off_diagonal: f64 },

    #[error("index {index} is out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix side {side} does not equal d_s*d_a = {d_s}*{d_a}")]
    CompositeSideMismatch { side: usize, d_s: usize, d_a: usize },

    #[error("state vector is not normalized: |Σ|a|² - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("density matrix trace deviates from one by {deviation:.3e}")]
    TraceNotOne { deviation: f64 },

    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("Bloch vector lies outside the unit ball: |r|² = {norm_sq}")]
    OutsideBlochBall { norm_sq: f64 },

    #[error("operation is defined for qubits only, got dimension {dim}")]
    NotAQubit { dim: usize },

    #[error("radius {r} is outside [0, 1]")]
    RadiusOutOfRange { r: f64 },

    #[error("probability {p} is outside [0, 1]")]
    ProbabilityOutOfRange { p: f64 },

    #[error("Kraus operators violate completeness: max entrywise residual of ΣK†K - I is {residual:.3e}")]
    IncompleteKraus { residual: f64 },

    #[error("channel has no operators")]
    EmptyChannel,

    #[error("operator {index} is {rows}x{cols}, expected {d_s}x{d_s}")]
    OperatorShape {
        index: usize,
        rows: usize,
        cols: usize,
        d_s: usize,
    },

    #[error("remix matrix side {side} does not match operator count {operator_count}")]
    RemixShape { side: usize, operator_count: usize },

    #[error("time {t} must be non-negative")]
    NegativeTime { t: f64 },

    #[error("decay rate {gamma} must be positive and finite")]
    InvalidDecayRate { gamma: f64 },

    #[error("need at least {needed} samples, got {samples}")]
    TooFewSamples { samples: usize, needed: usize },

    #[error("Pauli axis must be 1, 2 or 3, got {axis}")]
    InvalidPauliAxis { axis: usize },

    #[error("cross-check of {what} failed: residual {residual:.3e}")]
    CrossCheckFailed { what: &'static str, residual: f64 },
}
