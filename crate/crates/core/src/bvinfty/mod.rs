//! BV∞ algebras: odd operator families `D = Σ hⁱ Dᵢ` on a super-commutative
//! algebra with `D(1) = 0`, `D² = 0` and `order(Dᵢ) ≤ i + 1`, their
//! degeneration certificates and the L∞ structures of derived brackets.

mod ce;
mod degeneration;
mod family;
mod rescale;
mod theorem;

use thiserror::Error;

pub use ce::ce_complex;
pub use degeneration::{
    degeneration_check, degeneration_of, e1_collapses, truncated_homology, DegenerationLevel,
    DegenerationReport,
};
pub use family::{check_bv, BVInfinity, BvReport, BvViolation, HOperator};
pub use rescale::{derived_on_truncation, fiber_structure, rescaled_structure, FiberStructures};
pub use theorem::{fixes_unit, gauge_family, main_theorem_check, MainTheoremVerdict};

use crate::exactlin::LinalgError;
use crate::linfty::LInftyError;
use crate::superalg::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BvError {
    #[error("malformed BV∞ data: {0}")]
    Malformed(String),
    #[error("BV∞ axioms fail: {:?}", .0.violations)]
    Invalid(BvReport),
    #[error("derived bracket of arity {arity} from D_{component} is nonzero, so m_{arity} is not divisible by h^{}", .arity - 1)]
    NotDivisible { arity: usize, component: usize },
    #[error(
        "Chevalley–Eilenberg construction needs an untruncated L∞ structure on a purely odd space"
    )]
    NotOddSpace,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LInfty(#[from] LInftyError),
}

#[cfg(test)]
mod tests;
