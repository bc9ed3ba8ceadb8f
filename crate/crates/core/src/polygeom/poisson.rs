use rayon::prelude::*;

use crate::scalar::{Parity, Scalar};

use super::{
    derham_d, iterated_commutator, lie_derivative, monomials, schouten, schouten_odd, PolyError,
    PolyForm, PolyMultivector, SuperPoly,
};

/// An even multivector field `P = P₁ + P₂ + …` with `P_n` an `(n+1)`-vector;
/// `P₋₁ = P₀ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedPoisson<S> {
    nvars: usize,
    /// `parts[n] = P_n`; `parts[0] = 0`.
    parts: Vec<PolyMultivector<S>>,
}

impl<S: Scalar> GeneralizedPoisson<S> {
    /// Splits `P` by multivector degree. Rejects odd components and functions
    /// or vector fields, which would make the structure curved.
    pub fn new(p: &PolyMultivector<S>) -> Result<Self, PolyError> {
        let n = p.nvars();
        let mut parts = vec![SuperPoly::zero(n)];
        for k in 0..=n as u32 {
            let c = p.odd_component(k);
            if c.is_zero() {
                if k >= 2 {
                    parts.push(c);
                }
                continue;
            }
            if k < 2 {
                return Err(PolyError::LowDegreeComponent(k as usize));
            }
            if k % 2 == 1 {
                return Err(PolyError::NotEven(k as usize));
            }
            parts.push(c);
        }
        while parts.len() > 1 && parts.last().is_some_and(SuperPoly::is_zero) {
            parts.pop();
        }
        Ok(GeneralizedPoisson { nvars: n, parts })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `P_n`, zero beyond the stored parts.
    pub fn part(&self, n: usize) -> PolyMultivector<S> {
        self.parts
            .get(n)
            .cloned()
            .unwrap_or_else(|| SuperPoly::zero(self.nvars))
    }

    /// Largest `n` with `P_n ≠ 0` (0 for `P = 0`).
    pub fn top(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn total(&self) -> PolyMultivector<S> {
        self.parts
            .iter()
            .fold(SuperPoly::zero(self.nvars), |acc, p| acc.add(p))
    }

    /// `D_i` of the de Rham–Koszul family: `D₀ = d`, `D_i = L_{P_i}`.
    pub fn operator(&self, i: usize, w: &PolyForm<S>) -> PolyForm<S> {
        if i == 0 {
            derham_d(w)
        } else {
            lie_derivative(&self.part(i), w)
        }
    }
}

/// Result of testing `[P, P] = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonCertificate<S> {
    /// `[P, P]` by the wedge formula.
    pub square: PolyMultivector<S>,
    /// `[P, P]` by the odd-coordinate bracket.
    pub square_oracle: PolyMultivector<S>,
    /// `Σ_{a+b=m} [P_a, P_b]`, the `h^m` coefficient of `[P(h), P(h)]`.
    pub h_coefficients: Vec<PolyMultivector<S>>,
}

impl<S: Scalar> PoissonCertificate<S> {
    pub fn oracle_agrees(&self) -> bool {
        self.square == self.square_oracle
    }

    pub fn is_poisson(&self) -> bool {
        self.square.is_zero()
    }

    /// `[P(h), P(h)] = 0` in every power of `h`.
    pub fn graded_in_h(&self) -> bool {
        self.h_coefficients.iter().all(SuperPoly::is_zero)
    }

    /// First power of `h` with a nonzero coefficient, and that coefficient.
    pub fn first_nonzero(&self) -> Option<(usize, &PolyMultivector<S>)> {
        self.h_coefficients
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
    }
}

pub fn check_poisson<S: Scalar>(p: &GeneralizedPoisson<S>) -> PoissonCertificate<S> {
    let total = p.total();
    let top = p.top();
    let h_coefficients = (0..=2 * top)
        .map(|m| {
            (0..=m).fold(SuperPoly::zero(p.nvars), |acc, a| {
                if a > top || m - a > top {
                    acc
                } else {
                    acc.add(&schouten(&p.part(a), &p.part(m - a)))
                }
            })
        })
        .collect();
    PoissonCertificate {
        square: schouten(&total, &total),
        square_oracle: schouten_odd(&total, &total),
        h_coefficients,
    }
}

/// `m_n(ω₁..ωₙ) = [[…[L_{P_{n−1}}, ω₁]…], ωₙ](1)`, with `m₁ = d`.
pub fn koszul_brackets<S: Scalar>(
    p: &GeneralizedPoisson<S>,
    n: usize,
    inputs: &[PolyForm<S>],
) -> Result<PolyForm<S>, PolyError> {
    if n == 0 || inputs.len() != n {
        return Err(PolyError::Malformed(format!(
            "bracket of arity {n} needs {n} inputs"
        )));
    }
    if inputs.iter().any(|w| !w.is_zero() && w.parity().is_none()) {
        return Err(PolyError::Malformed("inputs must be homogeneous".into()));
    }
    if !check_poisson(p).is_poisson() {
        return Err(PolyError::NotPoisson);
    }
    let op = |w: &SuperPoly<S>| p.operator(n - 1, w);
    Ok(iterated_commutator(
        &op,
        Parity::Odd,
        inputs,
        &SuperPoly::one(p.nvars),
    ))
}

/// `(d + hL_{P₁} + …)² = 0 mod h^N` on every monomial form with polynomial
/// degree ≤ `degree_cap`.
pub fn dsquared_check<S: Scalar>(p: &GeneralizedPoisson<S>, degree_cap: u32, n: usize) -> bool {
    let nvars = p.nvars;
    monomials(nvars, degree_cap).into_par_iter().all(|m| {
        let w = SuperPoly::monomial(nvars, m.exps, m.odd, S::one());
        (0..n).all(|k| {
            (0..=k)
                .fold(SuperPoly::zero(nvars), |acc, a| {
                    acc.add(&p.operator(a, &p.operator(k - a, &w)))
                })
                .is_zero()
        })
    })
}
