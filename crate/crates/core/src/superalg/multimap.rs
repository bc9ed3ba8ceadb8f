use std::collections::BTreeMap;

use crate::scalar::{signed, Parity, Scalar};

use super::SuperSpace;

/// A graded-symmetric multilinear map `Wⁿ → U`, stored on sorted basis
/// multisets. Usually `U = W`.
///
/// `W` and `U` may be free `k[h]/(h^N)`-modules: the map is then
/// `k[h]`-multilinear, only multisets of the generating basis (`base`) are
/// stored, and the full `k`-basis index of `h^j ⊗ e_a` is `j * base.dim() + a`
/// (with `target` in place of `base.dim()` on the output side). Plain
/// `k`-linear maps have `trunc == 1`.
#[derive(Clone, Debug)]
pub struct MultiMap<S> {
    arity: usize,
    parity: Parity,
    base: SuperSpace,
    target: usize,
    trunc: usize,
    values: BTreeMap<Vec<usize>, Vec<(usize, S)>>,
}

impl<S: Scalar> MultiMap<S> {
    pub fn zero(arity: usize, parity: Parity, base: SuperSpace, trunc: usize) -> Self {
        let target = base.dim();
        MultiMap {
            arity,
            parity,
            base,
            target,
            trunc,
            values: BTreeMap::new(),
        }
    }

    /// Builds from dense values on sorted base multisets.
    pub fn from_dense_values(
        arity: usize,
        parity: Parity,
        base: SuperSpace,
        trunc: usize,
        values: impl IntoIterator<Item = (Vec<usize>, Vec<S>)>,
    ) -> Self {
        let target = base.dim();
        Self::from_dense_values_to(arity, parity, base, target, trunc, values)
    }

    /// As [`MultiMap::from_dense_values`] for a map into a space whose
    /// generating basis has `target` elements.
    pub fn from_dense_values_to(
        arity: usize,
        parity: Parity,
        base: SuperSpace,
        target: usize,
        trunc: usize,
        values: impl IntoIterator<Item = (Vec<usize>, Vec<S>)>,
    ) -> Self {
        let values = values
            .into_iter()
            .filter_map(|(k, v)| {
                debug_assert!(k.windows(2).all(|w| w[0] <= w[1]));
                let sparse: Vec<(usize, S)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect();
                (!sparse.is_empty()).then_some((k, sparse))
            })
            .collect();
        MultiMap {
            arity,
            parity,
            base,
            target,
            trunc,
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn base(&self) -> &SuperSpace {
        &self.base
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Size of the generating basis of the codomain.
    pub fn target(&self) -> usize {
        self.target
    }

    /// `k`-dimension of the domain.
    pub fn full_dim(&self) -> usize {
        self.base.dim() * self.trunc
    }

    /// `k`-dimension of the codomain.
    pub fn full_target_dim(&self) -> usize {
        self.target * self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored nonzero values, keyed by sorted base multisets.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<(usize, S)>)> {
        self.values.iter()
    }

    /// Value on a sorted base multiset.
    pub fn get_sorted(&self, key: &[usize]) -> Option<&[(usize, S)]> {
        self.values.get(key).map(Vec::as_slice)
    }

    /// Adds `coeff · m(e_{i₁}, …, e_{iₙ})` to `acc` for full-space basis indices.
    pub fn accumulate_basis(&self, indices: &[usize], coeff: &S, acc: &mut [S]) {
        debug_assert_eq!(indices.len(), self.arity);
        let b = self.base.dim();
        let shift: usize = indices.iter().map(|i| i / b).sum();
        if shift >= self.trunc {
            return;
        }
        let mut key: Vec<usize> = indices.iter().map(|i| i % b).collect();
        // insertion sort, tracking the Koszul sign of the rearrangement
        let mut neg = false;
        for i in 1..key.len() {
            let mut j = i;
            while j > 0 && key[j - 1] > key[j] {
                if self
                    .base
                    .parity(key[j - 1])
                    .swap_sign(self.base.parity(key[j]))
                {
                    neg = !neg;
                }
                key.swap(j - 1, j);
                j -= 1;
            }
        }
        let Some(vals) = self.values.get(&key) else {
            return;
        };
        let c = signed(coeff.clone(), neg);
        let t = self.target;
        for (k, v) in vals {
            if (k / t) + shift < self.trunc {
                let idx = k + shift * t;
                acc[idx] = acc[idx].clone() + c.clone() * v.clone();
            }
        }
    }

    /// Multilinear evaluation on arbitrary vectors of the full space.
    pub fn eval(&self, args: &[&[S]]) -> Vec<S> {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut acc = vec![S::zero(); self.full_target_dim()];
        if self.values.is_empty() {
            return acc;
        }
        let supports: Vec<Vec<(usize, &S)>> = args
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; self.arity];
        self.eval_rec(&supports, 0, &S::one(), &mut idx, &mut acc);
        acc
    }

    fn eval_rec(
        &self,
        supports: &[Vec<(usize, &S)>],
        pos: usize,
        coeff: &S,
        idx: &mut [usize],
        acc: &mut [S],
    ) {
        if pos == supports.len() {
            self.accumulate_basis(idx, coeff, acc);
            return;
        }
        for (i, x) in &supports[pos] {
            idx[pos] = *i;
            self.eval_rec(supports, pos + 1, &(coeff.clone() * (*x).clone()), idx, acc);
        }
    }

    /// Applies a linear map (into a codomain with `target` generators) to every stored value.
    pub fn map_values(&self, target: usize, f: impl Fn(&[(usize, S)]) -> Vec<S>) -> MultiMap<S> {
        let values = self.values.iter().map(|(k, v)| (k.clone(), f(v)));
        MultiMap::from_dense_values_to(
            self.arity,
            self.parity,
            self.base.clone(),
            target,
            self.trunc,
            values,
        )
    }

    /// Value on full-space basis indices (in any order), as a dense vector.
    pub fn on_basis(&self, indices: &[usize]) -> Vec<S> {
        let mut acc = vec![S::zero(); self.full_target_dim()];
        self.accumulate_basis(indices, &S::one(), &mut acc);
        acc
    }
}

impl<S: PartialEq> PartialEq for MultiMap<S> {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.trunc == other.trunc
            && self.base == other.base
            && self.target == other.target
            && self.values == other.values
            && (self.parity == other.parity || self.values.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_sign_on_odd_arguments() {
        let space = SuperSpace::anonymous(vec![Parity::Odd, Parity::Odd]);
        let m = MultiMap::<i64>::from_dense_values(
            2,
            Parity::Odd,
            space,
            1,
            vec![(vec![0, 1], vec![1, 0])],
        );
        assert_eq!(m.eval(&[&[1, 0], &[0, 1]]), vec![1, 0]);
        assert_eq!(m.eval(&[&[0, 1], &[1, 0]]), vec![-1, 0]);
    }

    #[test]
    fn h_linear_shift_and_truncation() {
        // base {e0 even}, trunc 2: m(e0, e0) = e0
        let space = SuperSpace::anonymous(vec![Parity::Even]);
        let m = MultiMap::<i64>::from_dense_values(
            2,
            Parity::Even,
            space,
            2,
            vec![(vec![0, 0], vec![1, 0])],
        );
        assert_eq!(m.eval(&[&[1, 0], &[0, 1]]), vec![0, 1]);
        assert_eq!(m.eval(&[&[0, 1], &[0, 1]]), vec![0, 0]);
    }
}
