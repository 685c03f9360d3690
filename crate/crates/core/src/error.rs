use thiserror::Error;

/// Errors produced by sequence construction, optimization, and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not special unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    #[error("rotation angle {angle} outside the supported range [{min}, {max}]")]
    AngleOutOfRange { angle: f64, min: f64, max: f64 },

    #[error("dilation scale {value} must be positive")]
    NonPositiveScale { value: f64 },

    #[error("rotation axis is degenerate (gate is proportional to the identity)")]
    DegenerateAxis,

    #[error("net rotation angle {actual} does not match the requested {expected} (|diff| > {tol:.1e})")]
    ConstraintViolation { expected: f64, actual: f64, tol: f64 },

    #[error("sequence is not first-order narrowband: |F1| = {f1_norm:.3e}")]
    NotNarrowband { f1_norm: f64 },

    #[error("no lambda_y in (0, {bracket}] reaches net angle {theta} at lambda_x = {lambda_x}")]
    NoSolution { lambda_x: f64, theta: f64, bracket: f64 },

    #[error("no feasible (lambda_x, lambda_y) for net rotation angle {theta}")]
    Infeasible { theta: f64 },

    #[error("invalid range: {0}")]
    InvalidRange(&'static str),

    #[error("infidelity underflowed below 1e-300 inside the slope-fit window")]
    Underflow,

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(&'static str),
}
