use crate::exactlin::SparseMatrix;
use crate::scalar::{is_zero_vec, Parity, Scalar};
use crate::superalg::{operator_order, LinearOperator, OperatorOrder, SuperAlgebra};

use super::BvError;

/// A truncated formal family `D = D₀ + hD₁ + … + h^K D_K` of odd operators
/// acting on `A[h]/(h^N)`, `K < N`.
#[derive(Clone, Debug, PartialEq)]
pub struct HOperator<S> {
    trunc: usize,
    components: Vec<LinearOperator<S>>,
}

impl<S: Scalar> HOperator<S> {
    pub fn new(trunc: usize, components: Vec<LinearOperator<S>>) -> Result<Self, BvError> {
        if trunc == 0 {
            return Err(BvError::Malformed(
                "truncation order must be at least 1".into(),
            ));
        }
        if components.is_empty() || components.len() > trunc {
            return Err(BvError::Malformed(format!(
                "need between 1 and {trunc} components, got {}",
                components.len()
            )));
        }
        let dim = components[0].dim();
        for (i, d) in components.iter().enumerate() {
            if d.parity() != Parity::Odd {
                return Err(BvError::Malformed(format!("component D_{i} is not odd")));
            }
            if d.dim() != dim {
                return Err(BvError::Malformed(format!(
                    "component D_{i} acts on a different space"
                )));
            }
        }
        Ok(HOperator { trunc, components })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn components(&self) -> &[LinearOperator<S>] {
        &self.components
    }

    /// `D_i`, zero beyond the stored components.
    pub fn component(&self, i: usize) -> LinearOperator<S> {
        self.components
            .get(i)
            .cloned()
            .unwrap_or_else(|| LinearOperator::zero(self.dim(), Parity::Odd))
    }

    /// Same components, new truncation order (extra components are dropped).
    pub fn with_trunc(&self, trunc: usize) -> Result<Self, BvError> {
        let components = self.components.iter().take(trunc).cloned().collect();
        HOperator::new(trunc, components)
    }

    /// `Σ_{a+b=m} D_a D_b`, the `h^m` coefficient of `D²`.
    pub fn square_coefficient(&self, m: usize) -> SparseMatrix<S> {
        let n = self.dim();
        let mut acc = SparseMatrix::zeros(n, n);
        for a in 0..=m {
            if let (Some(x), Some(y)) = (self.components.get(a), self.components.get(m - a)) {
                acc = acc.add(&x.matrix().compose(y.matrix()));
            }
        }
        acc
    }

    /// True when `D²` vanishes as a polynomial in `h`, not only modulo `h^N`.
    pub fn squares_to_zero_exactly(&self) -> bool {
        (0..2 * self.components.len()).all(|m| self.square_coefficient(m).is_zero())
    }

    /// `D` on `A ⊗ k[h]/(h^n)`, index of `h^j ⊗ e_a` = `j·dim A + a`.
    pub fn matrix_mod(&self, n: usize) -> SparseMatrix<S> {
        let dim = self.dim();
        let mut entries = Vec::new();
        for (i, d) in self.components.iter().enumerate() {
            for j in 0..n.saturating_sub(i) {
                for (r, c, x) in d.matrix().iter() {
                    entries.push(((i + j) * dim + r, j * dim + c, x.clone()));
                }
            }
        }
        SparseMatrix::from_triplets(n * dim, n * dim, entries).expect("in range")
    }

    /// Multiplication by `h` on `A ⊗ k[h]/(h^n)`.
    pub fn h_matrix(dim: usize, n: usize) -> SparseMatrix<S> {
        let entries = (0..dim * n.saturating_sub(1)).map(|i| (i + dim, i, S::one()));
        SparseMatrix::from_triplets(n * dim, n * dim, entries).expect("in range")
    }
}

/// One failed BV∞ axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BvViolation {
    DoesNotKillOne { component: usize },
    NotSquareZero { h_power: usize },
    OrderTooHigh { component: usize, bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvReport {
    /// Order of each `D_i`, computed with cap `i + 1`.
    pub orders: Vec<OperatorOrder>,
    pub violations: Vec<BvViolation>,
}

impl BvReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `D(1) = 0`, `D² = 0 mod h^N` and `order(D_i) ≤ i + 1`.
pub fn check_bv<S: Scalar>(alg: &SuperAlgebra<S>, ops: &HOperator<S>) -> BvReport {
    let mut violations = Vec::new();
    let one = alg.one();
    for (i, d) in ops.components().iter().enumerate() {
        if !is_zero_vec(&d.apply(&one)) {
            violations.push(BvViolation::DoesNotKillOne { component: i });
        }
    }
    for m in 0..ops.trunc() {
        if !ops.square_coefficient(m).is_zero() {
            violations.push(BvViolation::NotSquareZero { h_power: m });
        }
    }
    let orders: Vec<OperatorOrder> = ops
        .components()
        .iter()
        .enumerate()
        .map(|(i, d)| operator_order(alg, d, i + 1))
        .collect();
    for (i, o) in orders.iter().enumerate() {
        if !o.at_most(i + 1) {
            violations.push(BvViolation::OrderTooHigh {
                component: i,
                bound: i + 1,
            });
        }
    }
    BvReport { orders, violations }
}

/// A BV∞ algebra: a super-commutative algebra with a validated operator family.
#[derive(Clone, Debug)]
pub struct BVInfinity<S> {
    alg: SuperAlgebra<S>,
    ops: HOperator<S>,
}

impl<S: Scalar> BVInfinity<S> {
    pub fn new(alg: SuperAlgebra<S>, ops: HOperator<S>) -> Result<Self, BvError> {
        if ops.dim() != alg.dim() {
            return Err(BvError::Malformed(
                "operators act on a space of the wrong dimension".into(),
            ));
        }
        let report = check_bv(&alg, &ops);
        if !report.is_valid() {
            return Err(BvError::Invalid(report));
        }
        Ok(BVInfinity { alg, ops })
    }

    pub fn algebra(&self) -> &SuperAlgebra<S> {
        &self.alg
    }

    pub fn ops(&self) -> &HOperator<S> {
        &self.ops
    }

    pub fn trunc(&self) -> usize {
        self.ops.trunc()
    }
}
