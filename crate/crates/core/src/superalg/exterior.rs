use crate::exactlin::SparseMatrix;
use crate::scalar::{signed, Parity, Scalar};

use super::algebra::wedge_sign;
use super::{AlgebraError, LinearOperator, SuperAlgebra};

impl<S: Scalar> SuperAlgebra<S> {
    /// Number of generators when `self` is an exterior algebra in bitmask order.
    fn exterior_rank(&self) -> Result<usize, AlgebraError> {
        let dim = self.dim();
        if !dim.is_power_of_two() || self.unit_index() != 0 {
            return Err(AlgebraError::Malformed(
                "not an exterior algebra in bitmask order".into(),
            ));
        }
        Ok(dim.trailing_zeros() as usize)
    }

    /// Left derivative `∂/∂θ_j` on an exterior algebra.
    pub fn exterior_partial(&self, j: usize) -> Result<LinearOperator<S>, AlgebraError> {
        let n = self.exterior_rank()?;
        if j >= n {
            return Err(AlgebraError::IndexOutOfRange(j));
        }
        let bit = 1usize << j;
        let entries = (0..self.dim()).filter(|m| m & bit != 0).map(|m| {
            let before = (m & (bit - 1)).count_ones();
            (m ^ bit, m, signed(S::one(), before % 2 == 1))
        });
        let m = SparseMatrix::from_triplets(self.dim(), self.dim(), entries).expect("in range");
        LinearOperator::new(self.space(), Parity::Odd, m)
    }

    /// The derivation of the given parity sending `θ_k` to `images[k]`, on an
    /// exterior algebra.
    pub fn exterior_derivation(
        &self,
        parity: Parity,
        images: &[Vec<S>],
    ) -> Result<LinearOperator<S>, AlgebraError> {
        let n = self.exterior_rank()?;
        if images.len() != n || images.iter().any(|v| v.len() != self.dim()) {
            return Err(AlgebraError::Malformed(
                "one image per generator is required".into(),
            ));
        }
        let mut entries = Vec::new();
        for mask in 1..self.dim() {
            let gens: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            for (pos, &k) in gens.iter().enumerate() {
                let left: usize = gens[..pos].iter().map(|g| 1 << g).sum();
                let right: usize = gens[pos + 1..].iter().map(|g| 1 << g).sum();
                let neg = parity.is_odd() && pos % 2 == 1;
                let v = self.mul(&self.mul(&self.basis(left), &images[k]), &self.basis(right));
                for (row, x) in v.into_iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((row, mask, signed(x, neg)));
                    }
                }
            }
        }
        let m = SparseMatrix::from_triplets(self.dim(), self.dim(), entries).expect("in range");
        LinearOperator::new(self.space(), parity, m)
    }

    /// `θ_I ∂_J` on an exterior algebra, for bitmasks `I` and `J`; derivatives
    /// are applied in decreasing index order, so `∂_J = ∂_{j₁}⋯∂_{j_r}` with
    /// `j₁ < … < j_r`.
    pub fn exterior_monomial_operator(
        &self,
        i_mask: usize,
        j_mask: usize,
    ) -> Result<LinearOperator<S>, AlgebraError> {
        let n = self.exterior_rank()?;
        if i_mask >> n != 0 || j_mask >> n != 0 {
            return Err(AlgebraError::Malformed("mask out of range".into()));
        }
        let mut op = self.left_mult_basis(i_mask);
        for j in (0..n).filter(|j| j_mask & (1 << j) != 0) {
            op = op.compose(&self.exterior_partial(j)?);
        }
        Ok(op)
    }
}

/// Sign of `θ_A θ_B` for disjoint bitmasks.
pub fn exterior_sign(a: usize, b: usize) -> bool {
    wedge_sign(a as u32, b as u32)
}

#[cfg(test)]
mod tests {
    use crate::scalar::{unit, Parity};
    use crate::{Algebra, Rational};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn partial_derivatives() {
        let alg: Algebra = Algebra::exterior(3);
        // ∂₂(θ₁θ₂) = −θ₁
        let d = alg.exterior_partial(1).unwrap();
        let mut expected = unit(8, 1);
        expected[1] = q(-1);
        assert_eq!(d.apply(&unit(8, 3)), expected);
        // partials anticommute
        let d0 = alg.exterior_partial(0).unwrap();
        assert!(d0.graded_commutator(&d).is_zero());
    }

    #[test]
    fn derivation_is_leibniz() {
        let alg: Algebra = Algebra::exterior(3);
        // d θ₃ = θ₁θ₂
        let d = alg
            .exterior_derivation(Parity::Odd, &[vec![q(0); 8], vec![q(0); 8], unit(8, 3)])
            .unwrap();
        assert!(d.compose(&d).is_zero());
        for a in 0..8 {
            for b in 0..8 {
                let lhs = d.apply(&alg.mul(&alg.basis(a), &alg.basis(b)));
                let sign = if alg.parity(a).is_odd() { q(-1) } else { q(1) };
                let rhs: Vec<Rational> = alg
                    .mul(&d.apply(&alg.basis(a)), &alg.basis(b))
                    .into_iter()
                    .zip(alg.mul(&alg.basis(a), &d.apply(&alg.basis(b))))
                    .map(|(x, y)| x + sign.clone() * y)
                    .collect();
                assert_eq!(lhs, rhs);
            }
        }
        let generator = alg.exterior_monomial_operator(4, 3).unwrap();
        assert_eq!(generator.parity(), Parity::Odd);
        assert_eq!(
            generator
                .apply(&unit(8, 3))
                .iter()
                .filter(|x| **x != q(0))
                .count(),
            1
        );
    }
}
