use crate::exactlin::SparseMatrix;
use crate::linfty::LInftyStructure;
use crate::scalar::{Parity, Scalar};
use crate::superalg::{derived_eval, derived_map, MultiMap, SuperAlgebra};

use super::{BVInfinity, BvError};

/// The L∞ structures attached to a BV∞ algebra.
#[derive(Clone, Debug)]
pub struct FiberStructures<S> {
    /// `h = 0` fiber 𝔤 on `ΠA`: `m_n` is the `n`-th derived bracket of `D_{n−1}`.
    pub fiber: LInftyStructure<S>,
    /// `m_n / h^{n−1}` on `ΠA[h]/(h^M)`.
    pub rescaled: LInftyStructure<S>,
}

/// The fiber 𝔤 alone, brackets up to `arity_cap`.
pub fn fiber_structure<S: Scalar>(bv: &BVInfinity<S>, arity_cap: usize) -> LInftyStructure<S> {
    let alg = bv.algebra();
    let brackets = (1..=arity_cap.max(1))
        .map(|n| {
            let d = bv.ops().component(n - 1);
            if d.is_zero() {
                MultiMap::zero(n, Parity::Odd, alg.space().clone(), 1)
            } else {
                derived_map(alg, &d, n)
            }
        })
        .collect();
    LInftyStructure::new(alg.space().clone(), 1, brackets)
        .expect("derived brackets of odd operators are odd")
}

/// Derived brackets `m_n = Σ_i h^i m_n^{D_i}` of `D` on `A[h]/(h^N)`, checked
/// to be divisible by `h^{n−1}` and divided.
///
/// When `D² = 0` holds only modulo `h^N` the rescaled relations of arity `n`
/// hold modulo `h^{N−n+1}`; the rescaled structure is then returned over
/// `A[h]/(h^M)` with `M = max(1, N + 1 − arity_cap)`, otherwise `M = N`.
pub fn rescaled_structure<S: Scalar>(
    bv: &BVInfinity<S>,
    arity_cap: usize,
) -> Result<FiberStructures<S>, BvError> {
    let alg = bv.algebra();
    let ops = bv.ops();
    let cap = arity_cap.max(1);
    let n_trunc = ops.trunc();
    let m = if ops.squares_to_zero_exactly() {
        n_trunc
    } else {
        (n_trunc + 1).saturating_sub(cap).max(1)
    };
    let dim = alg.dim();
    let comps = ops.components();
    let mut brackets = Vec::with_capacity(cap);
    for n in 1..=cap {
        // per_component[i] = m_n^{D_i}
        let per_component: Vec<MultiMap<S>> = comps
            .iter()
            .map(|d| {
                if d.is_zero() {
                    MultiMap::zero(n, Parity::Odd, alg.space().clone(), 1)
                } else {
                    derived_map(alg, d, n)
                }
            })
            .collect();
        for (i, map) in per_component.iter().enumerate().take(n - 1) {
            if !map.is_zero() {
                return Err(BvError::NotDivisible {
                    arity: n,
                    component: i,
                });
            }
        }
        let mut values: std::collections::BTreeMap<Vec<usize>, Vec<S>> = Default::default();
        for (i, map) in per_component.iter().enumerate().skip(n - 1) {
            let shift = i + 1 - n;
            if shift >= m {
                break;
            }
            for (key, v) in map.entries() {
                let slot = values
                    .entry(key.clone())
                    .or_insert_with(|| vec![S::zero(); m * dim]);
                for (k, x) in v {
                    let idx = shift * dim + k;
                    slot[idx] = slot[idx].clone() + x.clone();
                }
            }
        }
        brackets.push(MultiMap::from_dense_values(
            n,
            Parity::Odd,
            alg.space().clone(),
            m,
            values,
        ));
    }
    let rescaled = LInftyStructure::new(alg.space().clone(), m, brackets)?;
    Ok(FiberStructures {
        fiber: fiber_structure(bv, cap),
        rescaled,
    })
}

/// The derived bracket `[[…[D, a₁]…], aₙ](1)` of the full operator `D` computed
/// directly in the algebra `A ⊗ k[t]/(t^N)`, for basis elements `aᵢ` of `A`.
/// Output uses the index `j·dim A + a` for `h^j ⊗ e_a`.
pub fn derived_on_truncation<S: Scalar>(bv: &BVInfinity<S>, inputs: &[usize]) -> Vec<S> {
    let alg = bv.algebra();
    let n = bv.trunc();
    let dim = alg.dim();
    let t: SuperAlgebra<S> = alg.tensor(&SuperAlgebra::truncated_polynomial(n, "h"));
    // index in `t` of e_a ⊗ h^j is a·n + j
    let mut entries = Vec::new();
    for (i, d) in bv.ops().components().iter().enumerate() {
        for j in 0..n.saturating_sub(i) {
            for (r, c, x) in d.matrix().iter() {
                entries.push((r * n + i + j, c * n + j, x.clone()));
            }
        }
    }
    let d = SparseMatrix::from_triplets(dim * n, dim * n, entries).expect("in range");
    let args: Vec<(Parity, Vec<S>)> = inputs
        .iter()
        .map(|&a| (alg.parity(a), t.basis(a * n)))
        .collect();
    let value = derived_eval(&t, Parity::Odd, &|v: &[S]| d.apply(v), &args);
    let mut out = vec![S::zero(); dim * n];
    for (idx, x) in value.into_iter().enumerate() {
        out[(idx % n) * dim + idx / n] = x;
    }
    out
}
