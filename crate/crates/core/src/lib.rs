//! Calculus of mixed polynomials f(z, z̄) and numerical certification of
//! contact structures on their links.
//!
//! The crate is organised around one exact data structure, [`mixed_poly::MixedPolynomial`]
//! (sparse terms c·z^ν·z̄^μ with Gaussian-rational coefficients), and layers of
//! analysis on top of it:
//!
//! * [`mixed_poly`] — representation, parsing, Wirtinger derivatives, evaluation.
//! * [`homogeneity`] — radial/polar weighted homogeneity detection and the
//!   symbolic Euler-identity residuals.
//! * [`newton_boundary`] — Newton boundary, face functions, face-type
//!   classification and a randomized non-degeneracy probe.
//! * [`covering`] — mixed cyclic covering maps w ↦ (w₁^a₁ w̄₁^b₁, …), pull-backs
//!   and the induced weight transformation.
//! * [`geometry`] — pointwise contact-geometric quantities: hermitian gradients,
//!   the certificate C(z, z̄), Reeb pairing dθ(R), the v-decomposition of the
//!   modified contact form, and a numerical exterior-algebra verifier.
//! * [`link_certifier`] — Gauss–Newton sampling of the link g⁻¹(0) ∩ S_r and
//!   sampled certification of transversality, sign of C, and open-book
//!   compatibility.
//! * [`random`] — seeded generators for stress-test polynomials and points.

pub mod covering;
pub mod geometry;
pub mod homogeneity;
mod lattice;
pub mod link_certifier;
pub mod mixed_poly;
pub mod newton_boundary;
pub mod random;
mod solver;

pub use mixed_poly::{ComplexPoint, GaussianRational, MixedPolynomial, MixedTerm};

/// Relative error with the guarded denominator max(|a|, |b|, 1e-30).
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-30)
}

/// Relative error for complex values under the same guard.
pub fn rel_err_c(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-30)
}
