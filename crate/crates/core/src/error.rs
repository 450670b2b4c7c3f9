//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while evaluating surface geometry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The induced metric is not positive definite at the point.
    #[error("surface not spacelike at ({x}, {y}): EG-F^2 = {det:e}")]
    NotSpacelike { x: f64, y: f64, det: f64 },

    /// The normal part of the direction field is not lightlike at the point.
    #[error("no canonical normal null direction at ({x}, {y}): <Zperp,Zperp> = {zperp_norm2:e}")]
    NotCnnd { x: f64, y: f64, zperp_norm2: f64 },

    /// The normal part of the direction field vanishes at the point.
    #[error("normal part of the direction field vanishes at ({x}, {y})")]
    DegenerateZperp { x: f64, y: f64 },

    /// The tangential part of the direction field degenerates at the point.
    #[error("tangential part of the direction field degenerates at ({x}, {y}): <Ztop,Ztop> = {norm2:e}")]
    DegenerateZtop { x: f64, y: f64, norm2: f64 },

    /// B(·,Z⊤) is not parallel to Z⊥ within tolerance.
    #[error("B(.,Ztop) not parallel to Zperp at ({x}, {y}): residual {residual:e}")]
    BetaResidual { x: f64, y: f64, residual: f64 },

    /// Division by a (numerically) zero value during jet evaluation.
    #[error("division by zero during evaluation")]
    DivisionByZero,

    /// A function left its real domain during evaluation.
    #[error("domain error: {func}({value}) is undefined")]
    Domain { func: &'static str, value: f64 },

    /// An operation that requires a ≠ 0 received a degenerate point.
    #[error("operation requires a != 0 (|a| = {a:e})")]
    AZero { a: f64 },

    /// The direction formula degenerates (a ≠ 0 but K and K_N both vanish).
    #[error("direction formula degenerates: K and K_N both vanish at a nondegenerate point")]
    DegenerateFormula,

    /// The generating function α of the second solution family vanishes.
    #[error("generating function alpha vanishes near s = {s} (alpha = {value:e})")]
    AlphaVanishes { s: f64, value: f64 },

    /// The PDE solver made no progress.
    #[error("solver diverged after {iterations} damped iterations")]
    Diverged { iterations: usize },

    /// The Gauss–Newton normal equations lost rank.
    #[error("singular Jacobian in the solver (grid node {node})")]
    SingularJacobian { node: usize },
}
