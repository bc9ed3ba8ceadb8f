//! Polynomial multivector fields and differential forms on affine space: the
//! Schouten bracket, interior products, the de Rham differential and Lie
//! derivatives `L_Q = [i_Q, d]`, generalized Poisson structures with their
//! de Rham–Koszul operator families, and finite models `(Λg*, d)` that feed
//! the BV∞ machinery.
//!
//! Sign fixture: `i_{∂₁∧∂₂}(dx₁∧dx₂) = −1`.

mod forms;
mod model;
mod poisson;
mod schouten;
mod superpoly;

use thiserror::Error;

pub use forms::{
    derham_d, form_generators, interior, iterated_commutator, lie_derivative, monomial_forms,
    order_bound_holds, PolyForm,
};
pub use model::{invariant_model, lie_schouten, InvariantModel, LieData};
pub use poisson::{
    check_poisson, dsquared_check, koszul_brackets, GeneralizedPoisson, PoissonCertificate,
};
pub use schouten::{
    apply_vector_field, lie_bracket, schouten, schouten_odd, schouten_square, PolyMultivector,
};
pub use superpoly::{monomials, Monomial, SuperPoly};

use crate::bvinfty::BvError;
use crate::superalg::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("multivector has a nonzero component of odd degree {0}")]
    NotEven(usize),
    #[error("multivector has a nonzero component of degree {0}; only degrees ≥ 2 are allowed")]
    LowDegreeComponent(usize),
    #[error("[P, P] ≠ 0")]
    NotPoisson,
    #[error("structure constants violate the Jacobi identity")]
    Jacobi,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bv(#[from] BvError),
}

#[cfg(test)]
mod tests;
