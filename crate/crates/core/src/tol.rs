//! Shared numerical tolerances.
//!
//! All gates are centralized here so that the classification behavior of the
//! whole crate is auditable in one place.

/// Absolute gate on |⟨v,v⟩| below which a nonzero vector counts as lightlike,
/// and on the least-squares residual of B(·,Z⊤) against Z⊥.
pub const TOL_NULL: f64 = 1e-9;

/// Euclidean-norm gate below which a vector counts as the zero vector.
pub const TOL_ZERO: f64 = 1e-12;

/// Gate for frame orthonormality / pairing invariants.
pub const TOL_FRAME: f64 = 1e-9;

/// Gate on the first-form determinant EG−F² for the spacelike test.
pub const TOL_SPACELIKE: f64 = 1e-12;

/// Step for central finite differences of pointwise scalar fields.
pub const FD_STEP: f64 = 1e-4;

/// Relaxed frame gate used when evaluating frames at finite-difference
/// neighbor points, which sit slightly off the null locus.
pub const FD_FRAME_TOL: f64 = 1e-2;

/// Threshold on |a| separating the generic (a≠0) branch from the degenerate
/// (a=0) branch in the ellipse and direction formulas.
pub const A_BRANCH_TOL: f64 = 1e-8;
