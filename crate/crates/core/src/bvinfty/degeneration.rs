use rayon::prelude::*;

use crate::exactlin::{block_invariants, homology, BlockInvariants, SparseMatrix, TruncModule};
use crate::scalar::Scalar;

use super::{BVInfinity, BvError, HOperator};

/// Homology of `(A ⊗ k[h]/(h^n), D mod h^n)` as a `k[h]/(h^n)`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationLevel {
    pub n: usize,
    /// `dim_k` of the homology.
    pub dim: usize,
    pub blocks: BlockInvariants,
    /// All blocks have size `n`.
    pub free: bool,
    /// `dim = n · dim H(A, D₀)`.
    pub dimension_identity: bool,
}

impl DegenerationLevel {
    /// The two freeness certificates agree.
    pub fn certificates_agree(&self) -> bool {
        self.free == self.dimension_identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// `dim H(A, D₀)`.
    pub base_dim: usize,
    pub levels: Vec<DegenerationLevel>,
}

impl DegenerationReport {
    /// Free at every computed level.
    pub fn is_degenerate(&self) -> bool {
        self.levels.iter().all(|l| l.free)
    }

    pub fn certificates_agree(&self) -> bool {
        self.levels
            .iter()
            .all(DegenerationLevel::certificates_agree)
    }

    /// First level that is not free.
    pub fn first_failure(&self) -> Option<&DegenerationLevel> {
        self.levels.iter().find(|l| !l.free)
    }
}

/// Homology of the truncated complex with its `h`-action.
pub fn truncated_homology<S: Scalar>(
    ops: &HOperator<S>,
    n: usize,
) -> Result<DegenerationLevel, BvError> {
    let d = ops.matrix_mod(n);
    let h = homology(&d, &d)?;
    let shift: SparseMatrix<S> = HOperator::h_matrix(ops.dim(), n);
    let columns: Vec<Vec<S>> = h
        .section
        .iter()
        .map(|z| {
            h.quotient_coordinates(&shift.apply(z))
                .expect("h maps cycles to cycles")
        })
        .collect();
    let action = SparseMatrix::from_columns(h.dim(), &columns);
    let blocks = block_invariants(&TruncModule::new(n, action)?);
    let free = blocks.is_free(n);
    Ok(DegenerationLevel {
        n,
        dim: h.dim(),
        blocks,
        free,
        dimension_identity: false,
    })
}

/// Tests freeness of `H(A ⊗ k[h]/(h^{N'}))` for every `N' ≤ n_max`, by block
/// invariants of the `h`-action and by the count `dim = N'·dim H(A, D₀)`.
pub fn degeneration_check<S: Scalar>(
    bv: &BVInfinity<S>,
    n_max: usize,
) -> Result<DegenerationReport, BvError> {
    degeneration_of(bv.ops(), n_max)
}

/// As [`degeneration_check`] for a family that is only known to square to zero
/// modulo `h^N` (no order conditions needed).
pub fn degeneration_of<S: Scalar>(
    ops: &HOperator<S>,
    n_max: usize,
) -> Result<DegenerationReport, BvError> {
    if n_max == 0 || n_max > ops.trunc() {
        return Err(BvError::Malformed(format!(
            "N_max must lie in 1..={}",
            ops.trunc()
        )));
    }
    let mut levels = (1..=n_max)
        .into_par_iter()
        .map(|n| truncated_homology(ops, n))
        .collect::<Result<Vec<_>, _>>()?;
    let base_dim = levels[0].dim;
    for l in &mut levels {
        l.dimension_identity = l.dim == l.n * base_dim;
    }
    Ok(DegenerationReport { base_dim, levels })
}

/// E₁ collapse of the `h`-adic spectral sequence, tested without any
/// truncation: the rank of `D(h)` over `k(h)` equals the rank of `D₀`.
///
/// The generic rank is the largest rank of `D(t)` over `r·K + 1` distinct
/// rational points `t`, `r` the matrix size and `K` the degree in `h`: a
/// nonzero minor is a polynomial of degree at most `r·K`. Returns `None`
/// when `D(h)² ≠ 0` as a polynomial, since the criterion needs an honest
/// complex over `k[h]`.
pub fn e1_collapses<S: Scalar>(ops: &HOperator<S>) -> Option<bool> {
    if !ops.squares_to_zero_exactly() {
        return None;
    }
    let comps = ops.components();
    let base_rank = comps[0].matrix().rank();
    let degree = comps.len() - 1;
    if degree == 0 {
        return Some(true);
    }
    let points = ops.dim() * degree + 1;
    let generic = (1..=points as i64)
        .into_par_iter()
        .map(|t| {
            let t = S::from_int(t);
            let mut power = S::one();
            let mut m = SparseMatrix::zeros(ops.dim(), ops.dim());
            for c in comps {
                m = m.add(&c.matrix().scale(&power));
                power = power * t.clone();
            }
            m.rank()
        })
        .max()
        .unwrap_or(0);
    Some(generic == base_rank)
}
