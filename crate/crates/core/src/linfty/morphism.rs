use rayon::prelude::*;

use crate::combinat::{multisets, set_partitions, split_mask};
use crate::scalar::{
    axpy, is_zero_vec, koszul_sign_of, signed, sub_vec, unshuffle_sign, Parity, Scalar,
};
use crate::superalg::{has_repeated_odd, LinearOperator, MultiMap, SuperAlgebra};

use super::{LInftyError, LInftyStructure, RelationReport, RelationWitness};

/// An L∞ morphism given by its Taylor coefficients `f_1, …, f_cap`: even
/// graded-symmetric maps from the source space to the target space.
#[derive(Clone, Debug)]
pub struct LInftyMorphism<S> {
    source: LInftyStructure<S>,
    target: LInftyStructure<S>,
    components: Vec<MultiMap<S>>,
}

impl<S: Scalar> LInftyMorphism<S> {
    /// `components[n - 1]` is `f_n`.
    pub fn new(
        source: LInftyStructure<S>,
        target: LInftyStructure<S>,
        components: Vec<MultiMap<S>>,
    ) -> Result<Self, LInftyError> {
        for (i, f) in components.iter().enumerate() {
            let ok = f.arity() == i + 1
                && (f.parity() == Parity::Even || f.is_zero())
                && f.base() == source.space()
                && f.target() == target.space().dim()
                && f.trunc() == source.trunc()
                && source.trunc() == target.trunc();
            if !ok {
                return Err(LInftyError::Malformed(format!(
                    "Taylor coefficient f_{} does not fit",
                    i + 1
                )));
            }
        }
        if components.is_empty() {
            return Err(LInftyError::Malformed("at least f_1 is required".into()));
        }
        Ok(LInftyMorphism {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &LInftyStructure<S> {
        &self.source
    }

    pub fn target(&self) -> &LInftyStructure<S> {
        &self.target
    }

    pub fn arity_cap(&self) -> usize {
        self.components.len()
    }

    /// `f_n`; panics if `n` is zero or above the cap.
    pub fn component(&self, n: usize) -> &MultiMap<S> {
        &self.components[n - 1]
    }

    /// `Σ_S ε f(m_{|S|}(w_S), w_rest) − Σ_π ε m'_k(f(w_{B₁}), …, f(w_{B_k}))` on
    /// source basis indices; `π` runs over set partitions with blocks ordered by
    /// their smallest element.
    pub fn equation_value(&self, inputs: &[usize]) -> Vec<S> {
        let n = inputs.len();
        let src = &self.source;
        let cap = self.arity_cap();
        let parities: Vec<Parity> = inputs.iter().map(|&i| src.parity(i)).collect();
        let mut lhs = vec![S::zero(); self.target.full_dim()];
        let mut idx = Vec::with_capacity(n);
        for mask in 1u32..(1 << n) {
            let (front, back) = split_mask(n, mask);
            let p = front.len();
            let q = n - p + 1;
            if p > src.arity_cap()
                || q > cap
                || src.bracket(p).is_zero()
                || self.component(q).is_zero()
            {
                continue;
            }
            let args: Vec<usize> = front.iter().map(|&i| inputs[i]).collect();
            let inner = src.bracket(p).on_basis(&args);
            let neg = unshuffle_sign(&parities, &front, &back);
            for (j, c) in inner.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                idx.clear();
                idx.push(j);
                idx.extend(back.iter().map(|&i| inputs[i]));
                self.component(q)
                    .accumulate_basis(&idx, &signed(c.clone(), neg), &mut lhs);
            }
        }
        let rhs = self.partition_sum(inputs, &parities);
        sub_vec(&lhs, &rhs)
    }

    fn partition_sum(&self, inputs: &[usize], parities: &[Parity]) -> Vec<S> {
        let mut rhs = vec![S::zero(); self.target.full_dim()];
        'partitions: for blocks in set_partitions(inputs.len()) {
            let k = blocks.len();
            if k > self.target.arity_cap() || self.target.bracket(k).is_zero() {
                continue;
            }
            let mut values = Vec::with_capacity(k);
            for b in &blocks {
                if b.len() > self.arity_cap() {
                    continue 'partitions;
                }
                let args: Vec<usize> = b.iter().map(|&i| inputs[i]).collect();
                let v = self.component(b.len()).on_basis(&args);
                if is_zero_vec(&v) {
                    continue 'partitions;
                }
                values.push(v);
            }
            let order: Vec<usize> = blocks.concat();
            let neg = koszul_sign_of(parities, &order);
            let refs: Vec<&[S]> = values.iter().map(Vec::as_slice).collect();
            axpy(&mut rhs, &signed(S::one(), neg), &self.target.eval(&refs));
        }
        rhs
    }

    /// Checks the morphism equations on all source basis multisets of arity
    /// `≤ up_to`, capped by every arity cap involved.
    pub fn check(&self, up_to: usize) -> RelationReport<S> {
        let up_to = up_to
            .min(self.arity_cap())
            .min(self.source.arity_cap())
            .min(self.target.arity_cap());
        let space = self.source.space();
        for n in 1..=up_to {
            let keys: Vec<Vec<usize>> = multisets(space.dim(), n)
                .into_iter()
                .filter(|t| !has_repeated_odd(space.parities(), t))
                .collect();
            let failure = keys.into_par_iter().find_map_first(|t| {
                let value = self.equation_value(&t);
                (!is_zero_vec(&value)).then(|| RelationWitness {
                    arity: n,
                    inputs: t,
                    value,
                })
            });
            if failure.is_some() {
                return RelationReport { up_to, failure };
            }
        }
        RelationReport {
            up_to,
            failure: None,
        }
    }
}

/// The morphism from the derived-bracket structure of `D` to the abelian
/// structure `(ΠA, D)` with `f_n(a₁, …, aₙ) = a₁ ⋯ aₙ`.
pub fn exp_morphism<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    arity_cap: usize,
) -> Result<LInftyMorphism<S>, LInftyError> {
    let source = LInftyStructure::from_operator(alg, op, arity_cap)?;
    let target = LInftyStructure::abelian(alg.space().clone(), op.matrix(), arity_cap)?;
    let space = alg.space();
    let components = (1..=arity_cap.max(1))
        .map(|n| {
            let values: Vec<(Vec<usize>, Vec<S>)> = multisets(alg.dim(), n)
                .into_par_iter()
                .filter(|t| !has_repeated_odd(space.parities(), t))
                .map(|t| {
                    let prod = t[1..]
                        .iter()
                        .fold(alg.basis(t[0]), |acc, &i| alg.mul(&acc, &alg.basis(i)));
                    (t, prod)
                })
                .collect();
            MultiMap::from_dense_values(n, Parity::Even, space.clone(), 1, values)
        })
        .collect();
    LInftyMorphism::new(source, target, components)
}
