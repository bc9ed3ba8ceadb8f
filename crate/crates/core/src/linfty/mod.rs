//! L∞ structures in the symmetric presentation: odd graded-symmetric brackets
//! on a parity-reversed space, L∞ morphisms, Maurer–Cartan elements with
//! coefficients in finite local dg algebras, and homotopy transfer.
//!
//! Relations are `Σ_S ε(S) m(m(w_S), w_{S^c}) = 0` over nonempty subsets of
//! positions, with `ε` the Koszul sign of the unshuffle.

mod mc;
mod morphism;
mod structure;
mod transfer;

use thiserror::Error;

pub use mc::{
    coefficient_operator, extended_on_basis, is_mc, mc_exponential_check, mc_residual,
    push_forward, McCheck, TestCdga,
};
pub use morphism::{exp_morphism, LInftyMorphism};
pub use structure::{LInftyStructure, RelationReport, RelationWitness};
pub use transfer::{
    contraction_of, is_homotopy_abelian_up_to, transfer, Contraction, ContractionReport,
    Transferred,
};

use crate::exactlin::LinalgError;
use crate::superalg::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LInftyError {
    #[error("operator does not kill 1 (curved L∞ structures are not supported)")]
    Curved,
    #[error("operator does not square to zero")]
    NotSquareZero,
    #[error("operator must be odd")]
    EvenOperator,
    #[error("element is not even")]
    NotEven,
    #[error("element is not in the maximal ideal of the coefficients")]
    NotInMaximalIdeal,
    #[error("arity cap {cap} is below the {needed} brackets the coefficients can see")]
    ArityCapTooSmall { needed: usize, cap: usize },
    #[error("invalid test cdga: {0}")]
    InvalidTestCdga(String),
    #[error("malformed L∞ data: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
