use rayon::prelude::*;

use crate::combinat::{multisets, split_mask};
use crate::exactlin::SparseMatrix;
use crate::scalar::{is_zero_vec, signed, unshuffle_sign, Parity, Scalar};
use crate::superalg::{
    derived_map, has_repeated_odd, LinearOperator, MultiMap, SuperAlgebra, SuperSpace,
};

use super::LInftyError;

/// An L∞ structure in the symmetric presentation: odd graded-symmetric brackets
/// `m_1, …, m_cap` on a super vector space `W` (the parity-reversed space `ΠV`).
///
/// `W` may be a free `k[h]/(h^N)`-module (`trunc = N`), in which case the
/// brackets are `k[h]`-multilinear and vectors use the full `k`-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LInftyStructure<S> {
    space: SuperSpace,
    trunc: usize,
    brackets: Vec<MultiMap<S>>,
}

/// First basis tuple on which a quadratic relation fails, with the nonzero value.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationWitness<S> {
    pub arity: usize,
    pub inputs: Vec<usize>,
    pub value: Vec<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport<S> {
    pub up_to: usize,
    pub failure: Option<RelationWitness<S>>,
}

impl<S> RelationReport<S> {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl<S: Scalar> LInftyStructure<S> {
    /// `brackets[n - 1]` is `m_n`.
    pub fn new(
        space: SuperSpace,
        trunc: usize,
        brackets: Vec<MultiMap<S>>,
    ) -> Result<Self, LInftyError> {
        if brackets.is_empty() {
            return Err(LInftyError::Malformed("at least m_1 is required".into()));
        }
        for (i, m) in brackets.iter().enumerate() {
            if m.arity() != i + 1 {
                return Err(LInftyError::Malformed(format!(
                    "bracket {} has arity {}",
                    i + 1,
                    m.arity()
                )));
            }
            if m.parity() != Parity::Odd && !m.is_zero() {
                return Err(LInftyError::Malformed(format!(
                    "bracket m_{} is not odd",
                    i + 1
                )));
            }
            if *m.base() != space || m.target() != space.dim() || m.trunc() != trunc {
                return Err(LInftyError::Malformed(format!(
                    "bracket m_{} lives on a different space",
                    i + 1
                )));
            }
        }
        Ok(LInftyStructure {
            space,
            trunc,
            brackets,
        })
    }

    /// `m_1` given by a matrix on the full space, all higher brackets zero.
    pub fn abelian(
        space: SuperSpace,
        m1: &SparseMatrix<S>,
        arity_cap: usize,
    ) -> Result<Self, LInftyError> {
        let n = space.dim();
        if m1.nrows() != n || m1.ncols() != n {
            return Err(LInftyError::Malformed("m_1 has the wrong shape".into()));
        }
        let op = LinearOperator::new(&space, Parity::Odd, m1.clone())?;
        let values = (0..n).map(|i| (vec![i], op.matrix().column(i)));
        let mut brackets = vec![MultiMap::from_dense_values(
            1,
            Parity::Odd,
            space.clone(),
            1,
            values,
        )];
        for k in 2..=arity_cap.max(1) {
            brackets.push(MultiMap::zero(k, Parity::Odd, space.clone(), 1));
        }
        Ok(LInftyStructure {
            space,
            trunc: 1,
            brackets,
        })
    }

    /// A Lie algebra `g` (purely even) as an L∞ structure on `Πg`: `m_2` is the
    /// bracket, everything else vanishes. `constants` are `(i, j, k, c)` with
    /// `[e_i, e_j] = Σ c e_k`; antisymmetry fills in the transposed pairs.
    pub fn from_lie(
        labels: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, S)>,
        arity_cap: usize,
    ) -> Result<Self, LInftyError> {
        let n = labels.len();
        let space = SuperSpace::new(labels, vec![Parity::Odd; n])?;
        let mut table: std::collections::BTreeMap<Vec<usize>, Vec<S>> = Default::default();
        for (i, j, k, c) in constants {
            if i >= n || j >= n || k >= n {
                return Err(LInftyError::Malformed(format!(
                    "structure constant ({i}, {j}, {k}) out of range"
                )));
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(LInftyError::Malformed(format!("[e{i}, e{i}] must vanish")));
            }
            let (key, c) = if i < j {
                (vec![i, j], c)
            } else {
                (vec![j, i], -c)
            };
            let v = table.entry(key).or_insert_with(|| vec![S::zero(); n]);
            v[k] = v[k].clone() + c;
        }
        let mut brackets = vec![MultiMap::zero(1, Parity::Odd, space.clone(), 1)];
        if arity_cap >= 2 {
            brackets.push(MultiMap::from_dense_values(
                2,
                Parity::Odd,
                space.clone(),
                1,
                table,
            ));
        }
        for k in 3..=arity_cap {
            brackets.push(MultiMap::zero(k, Parity::Odd, space.clone(), 1));
        }
        Ok(LInftyStructure {
            space,
            trunc: 1,
            brackets,
        })
    }

    /// Higher derived brackets of an odd operator `D` with `D(1) = 0` and
    /// `D² = 0`, on `ΠA` (brackets are symmetric for the parities of `A`).
    pub fn from_operator(
        alg: &SuperAlgebra<S>,
        op: &LinearOperator<S>,
        arity_cap: usize,
    ) -> Result<Self, LInftyError> {
        if op.parity() != Parity::Odd {
            return Err(LInftyError::EvenOperator);
        }
        if !is_zero_vec(&op.apply(&alg.one())) {
            return Err(LInftyError::Curved);
        }
        if !op.compose(op).is_zero() {
            return Err(LInftyError::NotSquareZero);
        }
        Ok(Self::derived(alg, op, arity_cap))
    }

    /// Derived brackets of any odd operator, without checking the axioms.
    /// Used to exhibit relation failures when `D² ≠ 0`.
    pub fn derived(alg: &SuperAlgebra<S>, op: &LinearOperator<S>, arity_cap: usize) -> Self {
        let space = alg.space().clone();
        let mut brackets = Vec::with_capacity(arity_cap);
        let mut vanished = false;
        for n in 1..=arity_cap.max(1) {
            // m_{n+1} = 0 once m_n = 0: the order filtration is monotone.
            let m = if vanished {
                MultiMap::zero(n, op.parity(), space.clone(), 1)
            } else {
                derived_map(alg, op, n)
            };
            vanished = m.is_zero();
            brackets.push(m);
        }
        LInftyStructure {
            space,
            trunc: 1,
            brackets,
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// `k`-dimension of the underlying space.
    pub fn full_dim(&self) -> usize {
        self.space.dim() * self.trunc
    }

    /// Parity of a full-space basis index.
    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity(i % self.space.dim())
    }

    pub fn arity_cap(&self) -> usize {
        self.brackets.len()
    }

    /// `m_n`; panics if `n` is zero or above the cap.
    pub fn bracket(&self, n: usize) -> &MultiMap<S> {
        &self.brackets[n - 1]
    }

    pub fn brackets(&self) -> &[MultiMap<S>] {
        &self.brackets
    }

    /// `m_n` on arbitrary vectors of the full space.
    pub fn eval(&self, args: &[&[S]]) -> Vec<S> {
        self.bracket(args.len()).eval(args)
    }

    /// `m_1` as a matrix on the full space.
    pub fn m1_matrix(&self) -> SparseMatrix<S> {
        let n = self.full_dim();
        let columns: Vec<Vec<S>> = (0..n).map(|i| self.bracket(1).on_basis(&[i])).collect();
        SparseMatrix::from_columns(n, &columns)
    }

    /// True when every bracket of arity at least two vanishes.
    pub fn is_abelian(&self) -> bool {
        self.brackets[1..].iter().all(MultiMap::is_zero)
    }

    /// Same brackets, cap lowered (or raised with zero brackets).
    pub fn with_arity_cap(&self, cap: usize) -> Self {
        let mut brackets: Vec<MultiMap<S>> =
            self.brackets.iter().take(cap.max(1)).cloned().collect();
        for k in brackets.len() + 1..=cap {
            brackets.push(MultiMap::zero(
                k,
                Parity::Odd,
                self.space.clone(),
                self.trunc,
            ));
        }
        LInftyStructure {
            space: self.space.clone(),
            trunc: self.trunc,
            brackets,
        }
    }

    /// `Σ_S ε(S) m_{n−|S|+1}(m_{|S|}(w_S), w_{S^c})` on full-space basis indices,
    /// `S` running over nonempty subsets of positions and `ε` the Koszul sign
    /// of moving `w_S` to the front.
    pub fn relation_value(&self, inputs: &[usize]) -> Vec<S> {
        let n = inputs.len();
        let cap = self.arity_cap();
        let parities: Vec<Parity> = inputs.iter().map(|&i| self.parity(i)).collect();
        let mut acc = vec![S::zero(); self.full_dim()];
        let mut idx = Vec::with_capacity(n);
        for mask in 1u32..(1 << n) {
            let (front, back) = split_mask(n, mask);
            let p = front.len();
            let q = n - p + 1;
            if p > cap || q > cap || self.bracket(p).is_zero() || self.bracket(q).is_zero() {
                continue;
            }
            let args: Vec<usize> = front.iter().map(|&i| inputs[i]).collect();
            let inner = self.bracket(p).on_basis(&args);
            let neg = unshuffle_sign(&parities, &front, &back);
            for (j, c) in inner.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                idx.clear();
                idx.push(j);
                idx.extend(back.iter().map(|&i| inputs[i]));
                self.bracket(q)
                    .accumulate_basis(&idx, &signed(c.clone(), neg), &mut acc);
            }
        }
        acc
    }

    /// Checks the quadratic relations on all basis multisets of arity `≤ up_to`
    /// (capped at the arity cap). For `k[h]`-linear structures the generating
    /// basis suffices.
    pub fn check_relations(&self, up_to: usize) -> RelationReport<S> {
        let up_to = up_to.min(self.arity_cap());
        for n in 1..=up_to {
            let keys: Vec<Vec<usize>> = multisets(self.space.dim(), n)
                .into_iter()
                .filter(|t| !has_repeated_odd(self.space.parities(), t))
                .collect();
            let failure = keys.into_par_iter().find_map_first(|t| {
                let value = self.relation_value(&t);
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
