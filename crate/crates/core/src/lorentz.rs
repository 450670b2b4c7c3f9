//! Lorentzian linear algebra on ℝ³,¹ and its bivector space Λ²ℝ³,¹.
//!
//! Conventions (fixed once, used everywhere):
//!
//! * ambient metric `diag(+,+,+,−)`: ⟨u,v⟩ = u₁v₁+u₂v₂+u₃v₃−u₄v₄;
//! * bivector components ordered `(e12, e13, e14, e23, e24, e34)`;
//! * induced bivector metric `diag(1,1,−1,1,−1,−1)`;
//! * Λ⁴ℝ³,¹ identified with ℝ through e1∧e2∧e3∧e4 ↦ 1, giving the scalar
//!   product `wedge4`;
//! * Hodge star defined by ⟨⋆η,η′⟩ = η∧η′ for all η′; it satisfies ⋆² = −Id
//!   and ⋆e12 = −e34;
//! * complex structure i := −⋆, making `H(η,η′) = ⟨η,η′⟩ + i·(η∧η′)`
//!   ℂ-bilinear in both slots.

use crate::tol::{TOL_NULL, TOL_ZERO};

/// Ambient vector in ℝ³,¹ (fourth component timelike).
pub type Vec4 = nalgebra::Vector4<f64>;

/// Bivector in Λ²ℝ³,¹, components ordered (e12, e13, e14, e23, e24, e34).
pub type Biv = nalgebra::Vector6<f64>;

/// Complex scalar.
pub type C64 = nalgebra::Complex<f64>;

/// Index pairs (i,j), i<j, matching the bivector component order.
pub const BIV_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Diagonal of the induced metric on Λ²ℝ³,¹ in the fixed component order.
pub const BIV_METRIC: [f64; 6] = [1.0, 1.0, -1.0, 1.0, -1.0, -1.0];

/// Lorentzian inner product of signature (3,1).
pub fn mink_dot(u: &Vec4, v: &Vec4) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]
}

/// Lorentzian square norm ⟨v,v⟩ (any sign).
pub fn mink_norm2(v: &Vec4) -> f64 {
    mink_dot(v, v)
}

/// Causal type of a vector, with an explicit zero-vector class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    /// ⟨v,v⟩ > 0.
    Spacelike,
    /// ⟨v,v⟩ < 0.
    Timelike,
    /// ⟨v,v⟩ ≈ 0 but v itself is not the zero vector.
    Lightlike,
    /// v ≈ 0 in the Euclidean norm.
    Zero,
}

/// Classify `v` with explicit tolerances: Euclidean gate `tol_zero` for the
/// zero vector, absolute gate `tol_null` on ⟨v,v⟩ for lightlike.
pub fn causal_class_with(v: &Vec4, tol_null: f64, tol_zero: f64) -> CausalClass {
    if v.norm() <= tol_zero {
        return CausalClass::Zero;
    }
    let q = mink_norm2(v);
    if q.abs() <= tol_null {
        CausalClass::Lightlike
    } else if q > 0.0 {
        CausalClass::Spacelike
    } else {
        CausalClass::Timelike
    }
}

/// Classify `v` with the crate default tolerances.
pub fn causal_class(v: &Vec4) -> CausalClass {
    causal_class_with(v, TOL_NULL, TOL_ZERO)
}

/// Exterior product u∧v, components u_i v_j − u_j v_i in the fixed order.
pub fn wedge(u: &Vec4, v: &Vec4) -> Biv {
    let mut out = Biv::zeros();
    for (k, &(i, j)) in BIV_PAIRS.iter().enumerate() {
        out[k] = u[i] * v[j] - u[j] * v[i];
    }
    out
}

/// Induced (diagonal) inner product on Λ²ℝ³,¹, signature (3,3).
pub fn biv_dot(a: &Biv, b: &Biv) -> f64 {
    (0..6).map(|k| BIV_METRIC[k] * a[k] * b[k]).sum()
}

/// Scalar-valued 4-form pairing η∧η′ under e1∧e2∧e3∧e4 ↦ 1.
pub fn wedge4(a: &Biv, b: &Biv) -> f64 {
    a[0] * b[5] + a[5] * b[0] - a[1] * b[4] - a[4] * b[1] + a[2] * b[3] + a[3] * b[2]
}

/// Hodge star on Λ²ℝ³,¹: the unique map with ⟨⋆η,η′⟩ = η∧η′ for all η′.
///
/// Satisfies ⋆⋆ = −Id; in components it is a signed permutation.
pub fn hodge(a: &Biv) -> Biv {
    Biv::new(a[5], -a[4], -a[3], a[2], a[1], -a[0])
}

/// The complex pairing H(η,η′) = ⟨η,η′⟩ + i·(η∧η′).
///
/// With the complex structure i := −⋆ this is ℂ-bilinear in both arguments.
pub fn h_form(a: &Biv, b: &Biv) -> C64 {
    C64::new(biv_dot(a, b), wedge4(a, b))
}

/// Multiplication of a bivector by a complex scalar under i := −⋆:
/// (x+iy)·η = x·η − y·⋆η.
pub fn cmul(z: C64, a: &Biv) -> Biv {
    a * z.re - hodge(a) * z.im
}

/// Membership test for the Grassmannian of oriented spacelike 2-planes:
/// ⟨η,η⟩ = 1 and η∧η = 0, both within `tol`.
pub fn in_grassmannian(a: &Biv, tol: f64) -> bool {
    (biv_dot(a, a) - 1.0).abs() <= tol && wedge4(a, a).abs() <= tol
}

/// Determinant of the 4×4 matrix with the given columns.
pub fn det4(c0: &Vec4, c1: &Vec4, c2: &Vec4, c3: &Vec4) -> f64 {
    nalgebra::Matrix4::from_columns(&[*c0, *c1, *c2, *c3]).determinant()
}
