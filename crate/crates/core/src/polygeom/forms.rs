use rayon::prelude::*;

use crate::scalar::{Parity, Scalar};

use super::{monomials, PolyMultivector, SuperPoly};

/// Differential form: a [`SuperPoly`] whose odd generators stand for `dxᵢ`.
pub type PolyForm<S> = SuperPoly<S>;

/// `dω = Σ dxᵢ ∧ ∂ω/∂xᵢ`.
pub fn derham_d<S: Scalar>(w: &PolyForm<S>) -> PolyForm<S> {
    let n = w.nvars();
    (0..n).fold(SuperPoly::zero(n), |acc, i| {
        acc.add(&SuperPoly::theta(n, i).mul(&w.d_even(i)))
    })
}

/// `i_Q ω`, with `i_{f ∂_{j₁}∧…∧∂_{j_k}} = f · i_{∂_{j₁}} ∘ … ∘ i_{∂_{j_k}}` and
/// `i_{∂_j}` the left derivative in `dx_j`. Thus `i_{Q₁∧Q₂} = i_{Q₁} ∘ i_{Q₂}` and
/// `i_{∂₁∧∂₂}(dx₁∧dx₂) = −1`.
pub fn interior<S: Scalar>(q: &PolyMultivector<S>, w: &PolyForm<S>) -> PolyForm<S> {
    let n = q.nvars();
    let mut out = SuperPoly::zero(n);
    for (m, c) in q.terms() {
        let mut t = w.clone();
        for j in (0..n).rev().filter(|j| m.odd & (1 << j) != 0) {
            t = t.d_odd_left(j);
        }
        out = out.add(&SuperPoly::monomial(n, m.exps.clone(), 0, c.clone()).mul(&t));
    }
    out
}

/// `L_Q = [i_Q, d] = i_Q ∘ d − (−1)^k d ∘ i_Q` on each `k`-vector component of `Q`.
pub fn lie_derivative<S: Scalar>(q: &PolyMultivector<S>, w: &PolyForm<S>) -> PolyForm<S> {
    let n = q.nvars();
    (0..=n as u32).fold(SuperPoly::zero(n), |acc, k| {
        let qk = q.odd_component(k);
        if qk.is_zero() {
            return acc;
        }
        let first = interior(&qk, &derham_d(w));
        let second = derham_d(&interior(&qk, w));
        acc.add(&if k % 2 == 0 {
            first.sub(&second)
        } else {
            first.add(&second)
        })
    })
}

/// `[[…[D, a₁]…], aₙ](x)` for an operator `D` of the given parity acting on
/// super-polynomials and homogeneous multipliers `aᵢ`.
pub fn iterated_commutator<S: Scalar, F>(
    op: &F,
    op_parity: Parity,
    args: &[SuperPoly<S>],
    x: &SuperPoly<S>,
) -> SuperPoly<S>
where
    F: Fn(&SuperPoly<S>) -> SuperPoly<S> + ?Sized,
{
    let Some((a, rest)) = args.split_last() else {
        return op(x);
    };
    let pa = a.parity().unwrap_or(Parity::Even);
    let inner = op_parity
        + rest
            .iter()
            .map(|r| r.parity().unwrap_or(Parity::Even))
            .sum::<Parity>();
    let first = iterated_commutator(op, op_parity, rest, &a.mul(x));
    let second = a.mul(&iterated_commutator(op, op_parity, rest, x));
    if inner.swap_sign(pa) {
        first.add(&second)
    } else {
        first.sub(&second)
    }
}

/// Generators `x₁..xₙ, dx₁..dxₙ` of the algebra of polynomial forms.
pub fn form_generators<S: Scalar>(nvars: usize) -> Vec<PolyForm<S>> {
    (0..nvars)
        .map(|i| SuperPoly::x(nvars, i))
        .chain((0..nvars).map(|i| SuperPoly::theta(nvars, i)))
        .collect()
}

/// All monomial forms `x^α dx_I` with `|α| + |I| ≤ max_degree`.
pub fn monomial_forms<S: Scalar>(nvars: usize, max_degree: u32) -> Vec<PolyForm<S>> {
    monomials(nvars, max_degree)
        .into_iter()
        .filter(|m| m.degree() + m.odd_degree() <= max_degree)
        .map(|m| SuperPoly::monomial(nvars, m.exps, m.odd, S::one()))
        .collect()
}

/// Checks `order(L_Q) ≤ k`: every `(k+1)`-fold iterated commutator of `L_Q`
/// with multiplications by generators vanishes on all monomial forms of total
/// degree ≤ `degree_cap`. Generators suffice since a vanishing commutator
/// stays zero under further commutators, so the lower ones are
/// multiderivations.
pub fn order_bound_holds<S: Scalar>(q: &PolyMultivector<S>, k: usize, degree_cap: u32) -> bool {
    let n = q.nvars();
    let parity = q.parity().map(Parity::flip).unwrap_or(Parity::Odd);
    let gens = form_generators::<S>(n);
    let tests = monomial_forms::<S>(n, degree_cap);
    let tuples: Vec<Vec<usize>> = crate::combinat::multisets(gens.len(), k + 1);
    tuples.par_iter().all(|t| {
        let args: Vec<SuperPoly<S>> = t.iter().map(|&i| gens[i].clone()).collect();
        tests.iter().all(|w| {
            iterated_commutator(&|x: &SuperPoly<S>| lie_derivative(q, x), parity, &args, w)
                .is_zero()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x(i: usize) -> SuperPoly<Rational> {
        SuperPoly::x(2, i)
    }

    fn dx(i: usize) -> SuperPoly<Rational> {
        SuperPoly::theta(2, i)
    }

    #[test]
    fn d_examples() {
        // d(x dy) = dx∧dy
        assert_eq!(derham_d(&x(0).mul(&dx(1))), dx(0).mul(&dx(1)));
        let w = x(0).mul(&x(1)).mul(&x(1)).mul(&dx(0));
        assert!(derham_d(&derham_d(&w)).is_zero());
    }

    #[test]
    fn interior_fixture() {
        let bivector = dx(0).mul(&dx(1));
        assert_eq!(
            interior(&bivector, &dx(0).mul(&dx(1))),
            SuperPoly::constant(2, q(-1))
        );
        assert_eq!(interior(&dx(0), &dx(0).mul(&dx(1))), dx(1));
    }

    #[test]
    fn lie_derivative_along_coordinate_field() {
        // L_{∂x}(f dy) = ∂f/∂x dy
        let f = x(0).mul(&x(0)).mul(&x(1));
        let lhs = lie_derivative(&dx(0), &f.mul(&dx(1)));
        assert_eq!(lhs, f.d_even(0).mul(&dx(1)));
    }

    #[test]
    fn constant_multivector_kills_constant_forms() {
        let p = dx(0).mul(&dx(1));
        assert!(lie_derivative(&p, &dx(0).mul(&dx(1))).is_zero());
    }

    #[test]
    fn bivector_has_order_two() {
        let p = dx(0).mul(&dx(1));
        assert!(order_bound_holds(&p, 2, 4));
        assert!(!order_bound_holds(&p, 1, 4));
        assert!(order_bound_holds(&x(0).mul(&dx(0)), 1, 4));
    }
}
