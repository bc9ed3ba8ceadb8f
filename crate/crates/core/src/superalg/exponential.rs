use crate::scalar::{axpy, is_zero_vec, signed, sub_vec, Scalar};

use super::{AlgebraError, SuperAlgebra};

impl<S: Scalar> SuperAlgebra<S> {
    /// `e^a = Σ aᵏ/k!` for `a` in the designated ideal; the series stops at
    /// the first vanishing power.
    pub fn exp(&self, a: &[S]) -> Result<Vec<S>, AlgebraError> {
        if !self.in_ideal(a)? {
            return Err(AlgebraError::NotInIdeal);
        }
        let mut out = self.one();
        let mut power = self.one();
        for k in 1..=self.dim() + 1 {
            power = self.mul(&power, a);
            if is_zero_vec(&power) {
                return Ok(out);
            }
            axpy(&mut out, &(S::one() / S::factorial(k)), &power);
        }
        Err(AlgebraError::NotNilpotent)
    }

    /// `log b = Σ (−1)^{k+1} (b−1)ᵏ/k` for `b − 1` in the designated ideal.
    pub fn log(&self, b: &[S]) -> Result<Vec<S>, AlgebraError> {
        let x = sub_vec(b, &self.one());
        if !self.in_ideal(&x)? {
            return Err(AlgebraError::NotInIdeal);
        }
        let mut out = vec![S::zero(); self.dim()];
        let mut power = self.one();
        for k in 1..=self.dim() + 1 {
            power = self.mul(&power, &x);
            if is_zero_vec(&power) {
                return Ok(out);
            }
            axpy(
                &mut out,
                &signed(S::one() / S::from_int(k as i64), k % 2 == 0),
                &power,
            );
        }
        Err(AlgebraError::NotNilpotent)
    }
}
