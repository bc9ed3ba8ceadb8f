use crate::combinat::split_mask;
use crate::exactlin::SparseMatrix;
use crate::linfty::LInftyStructure;
use crate::scalar::{signed, unshuffle_sign, Parity, Scalar};
use crate::superalg::{LinearOperator, SuperAlgebra};

use super::{BVInfinity, BvError, HOperator};

/// Chevalley–Eilenberg BV∞ algebra of an L∞ structure on a purely odd space
/// `W`: `A = S(W) = Λ(W)` with `D_{i−1} = Δ_i`,
/// `Δ_i(w₁⋯wₙ) = Σ_{|S|=i} ε(S) m_i(w_S) · w_{S^c}`.
///
/// Brackets of arity above `trunc` only contribute multiples of `h^trunc` and
/// are dropped.
pub fn ce_complex<S: Scalar>(
    g: &LInftyStructure<S>,
    trunc: usize,
) -> Result<BVInfinity<S>, BvError> {
    let space = g.space();
    if g.trunc() != 1 || space.parities().iter().any(|p| *p != Parity::Odd) {
        return Err(BvError::NotOddSpace);
    }
    let n = space.dim();
    if n > 16 {
        return Err(BvError::Malformed(
            "exterior algebra on more than 16 generators".into(),
        ));
    }
    let alg = SuperAlgebra::exterior_named(space.labels());
    let components = (1..=g.arity_cap().min(trunc))
        .map(|i| ce_component(g, &alg, i))
        .collect::<Result<Vec<_>, _>>()?;
    BVInfinity::new(alg, HOperator::new(trunc, components)?)
}

fn ce_component<S: Scalar>(
    g: &LInftyStructure<S>,
    alg: &SuperAlgebra<S>,
    i: usize,
) -> Result<LinearOperator<S>, BvError> {
    let n = g.space().dim();
    let dim = 1usize << n;
    let bracket = g.bracket(i);
    let mut entries = Vec::new();
    if !bracket.is_zero() {
        for mask in 0..dim {
            let gens: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            if gens.len() < i {
                continue;
            }
            let odd = vec![Parity::Odd; gens.len()];
            for sub in 0u32..(1 << gens.len()) {
                if sub.count_ones() as usize != i {
                    continue;
                }
                let (front, back) = split_mask(gens.len(), sub);
                let neg = unshuffle_sign(&odd, &front, &back);
                let args: Vec<usize> = front.iter().map(|&p| gens[p]).collect();
                let value = bracket.on_basis(&args);
                let rest: usize = back.iter().map(|&p| 1 << gens[p]).sum();
                for (k, c) in value.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let prod = alg.mul(&alg.basis(1 << k), &alg.basis(rest));
                    for (row, x) in prod.into_iter().enumerate() {
                        if !x.is_zero() {
                            entries.push((row, mask, signed(c.clone() * x, neg)));
                        }
                    }
                }
            }
        }
    }
    let m = SparseMatrix::from_triplets(dim, dim, entries).expect("in range");
    Ok(LinearOperator::new(alg.space(), Parity::Odd, m)?)
}
