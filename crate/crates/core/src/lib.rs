//! `minksurf` — a numerical laboratory for spacelike surfaces in Minkowski
//! 4-space ℝ³,¹ that carry a *canonical normal null direction* (CNND): a
//! constant ambient vector whose normal part along the surface is lightlike
//! everywhere.
//!
//! The crate provides, per surface point:
//!
//! * Lorentzian linear algebra on vectors and bivectors ([`lorentz`]),
//!   including the Hodge star, the complex pairing `H`, and the Grassmannian
//!   membership test;
//! * order-2 jets and a small expression language for defining surfaces
//!   ([`jet`], [`expr`], [`surface`]);
//! * the adapted frame (Z⊤, W, Z⊥, W′), the scalars a, b, β, the curvature
//!   scalars K and K_N, the mean curvature vector, and a pointwise identity
//!   battery ([`geometry`]);
//! * the bivector Gauss map, its differential, the complex quadratic form
//!   obtained by pulling back `H`, asymptotic and mean-curvature directions,
//!   and the curvature ellipse ([`gauss`]);
//! * surface factories (graph, translation, ruled, two closed-form solution
//!   families), the graph CNND criterion, the associated first-order PDE
//!   residual, split-complex arithmetic, and a damped Gauss–Newton solver for
//!   the graph PDE ([`construct`], [`pde`]);
//! * a catalog of closed-form reference surfaces used by the test-suite and
//!   examples ([`catalog`]).

pub mod catalog;
pub mod construct;
pub mod error;
pub mod expr;
pub mod gauss;
pub mod geometry;
pub mod jet;
pub mod lorentz;
pub mod pde;
pub mod surface;
pub mod tol;

pub use error::{Error, Result};
pub use lorentz::{Biv, CausalClass, Vec4, C64};
