//! Exact-arithmetic engine for homotopy Batalin–Vilkovisky algebras.
//!
//! The core is generic over the scalar type ([`Scalar`]); the aliases below fix
//! the exact rationals, which is what every verification in this crate is meant
//! to run with.

pub mod bvinfty;
pub mod combinat;
pub mod exactlin;
pub mod linfty;
pub mod polygeom;
pub mod random;
pub mod scalar;
pub mod superalg;

pub use scalar::{Parity, Scalar};

/// Exact rationals, the ground field of every check in this crate.
pub type Rational = num_rational::BigRational;

pub type Algebra = superalg::SuperAlgebra<Rational>;
pub type Operator = superalg::LinearOperator<Rational>;
pub type Matrix = exactlin::SparseMatrix<Rational>;
pub type Structure = linfty::LInftyStructure<Rational>;
pub type Bv = bvinfty::BVInfinity<Rational>;
