//! Finite-dimensional super-commutative algebras, operators on them, the
//! differential-operator order filtration and derived multilinear maps.
//!
//! Sign convention: `[D, a] = D∘a − (−1)^{|D||a|} a∘D`, with `a` acting by left
//! multiplication. Arguments of derived maps must be homogeneous; use
//! [`derived_on_vectors`] for mixed inputs.

mod algebra;
mod exponential;
mod exterior;
mod multimap;
mod operator;

use thiserror::Error;

pub use algebra::{AlgebraFailure, AlgebraReport, SuperAlgebra, SuperSpace};
pub use exterior::exterior_sign;
pub use multimap::MultiMap;
pub(crate) use operator::has_repeated_odd;
pub use operator::{
    commutator, derived_eval, derived_map, derived_on_basis, derived_on_vectors,
    exp_conjugation_check, operator_order, LinearOperator, OperatorOrder,
};

use crate::exactlin::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("malformed algebra data: {0}")]
    Malformed(String),
    #[error("operator entry ({row}, {col}) is inconsistent with its declared parity")]
    ParityMismatch { row: usize, col: usize },
    #[error("element is not homogeneous of the required parity")]
    Inhomogeneous,
    #[error("algebra has no designated ideal")]
    NoIdeal,
    #[error("element is outside the designated ideal")]
    NotInIdeal,
    #[error("series did not terminate: element is not nilpotent")]
    NotNilpotent,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
