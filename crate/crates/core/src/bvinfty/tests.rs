use super::*;
use crate::exactlin::SparseMatrix;
use crate::linfty::LInftyStructure;
use crate::scalar::{unit, Parity};
use crate::superalg::{LinearOperator, OperatorOrder};
use crate::{Algebra, Operator, Rational, Structure};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn lie(constants: &[(usize, usize, usize, i64)], dim: usize) -> Structure {
    let labels = (0..dim).map(|i| format!("w{i}")).collect();
    LInftyStructure::from_lie(
        labels,
        constants.iter().map(|&(i, j, k, c)| (i, j, k, q(c))),
        2,
    )
    .unwrap()
}

fn heisenberg_ce(trunc: usize) -> BVInfinity<Rational> {
    ce_complex(&lie(&[(0, 1, 2, 1)], 3), trunc).unwrap()
}

/// Λ(a, b, c) with the cochain differential `dc = ab` of the Heisenberg algebra.
fn heisenberg_cochains() -> (Algebra, Operator) {
    let alg = Algebra::exterior(3);
    let d = alg
        .exterior_derivation(Parity::Odd, &[vec![q(0); 8], vec![q(0); 8], unit(8, 3)])
        .unwrap();
    (alg, d)
}

#[test]
fn heisenberg_ce_is_not_degenerate() {
    let bv = heisenberg_ce(2);
    let report = degeneration_check(&bv, 2).unwrap();
    assert_eq!(report.base_dim, 8);
    assert_eq!(report.levels[1].dim, 14);
    assert!(!report.levels[1].free);
    assert!(!report.is_degenerate());
    assert!(report.certificates_agree());
    assert_eq!(e1_collapses(bv.ops()), Some(false));
}

#[test]
fn abelian_ce_is_degenerate() {
    let bv = ce_complex(&lie(&[], 3), 3).unwrap();
    let report = degeneration_check(&bv, 3).unwrap();
    assert!(report.is_degenerate());
    assert_eq!(report.levels[2].dim, 24);
    assert!(report.certificates_agree());
    assert_eq!(e1_collapses(bv.ops()), Some(true));
}

#[test]
fn ce_operators_have_expected_orders() {
    let bv = heisenberg_ce(2);
    let report = check_bv(bv.algebra(), bv.ops());
    assert!(report.is_valid());
    assert_eq!(
        report.orders,
        vec![OperatorOrder::Exactly(0), OperatorOrder::Exactly(2)]
    );
}

#[test]
fn order_violation_is_reported() {
    let alg = Algebra::exterior(3);
    // θ₁θ₂θ₃ ↦ 1 has order 3
    let m = SparseMatrix::from_triplets(8, 8, [(0, 7, q(1))]).unwrap();
    let top = LinearOperator::new(alg.space(), Parity::Odd, m).unwrap();
    let zero = LinearOperator::zero(8, Parity::Odd);
    let ops = HOperator::new(2, vec![zero.clone(), top.clone()]).unwrap();
    let report = check_bv(&alg, &ops);
    assert_eq!(
        report.violations,
        vec![BvViolation::OrderTooHigh {
            component: 1,
            bound: 2
        }]
    );
    assert!(matches!(
        BVInfinity::new(alg.clone(), ops),
        Err(BvError::Invalid(_))
    ));
    // allowed one step later
    assert!(BVInfinity::new(
        alg,
        HOperator::new(3, vec![zero.clone(), zero, top]).unwrap()
    )
    .is_ok());
}

#[test]
fn square_zero_violation_is_reported() {
    let (alg, d) = heisenberg_cochains();
    // D₁ = ∂_a: [D₀, D₁](c) = b
    let d1 = alg.exterior_partial(0).unwrap();
    let ops = HOperator::new(2, vec![d, d1]).unwrap();
    let report = check_bv(&alg, &ops);
    assert_eq!(
        report.violations,
        vec![BvViolation::NotSquareZero { h_power: 1 }]
    );
}

#[test]
fn fiber_of_ce_complex() {
    let g = lie(&[(0, 1, 2, 1)], 3);
    let bv = heisenberg_ce(2);
    let fib = rescaled_structure(&bv, 3).unwrap();
    assert!(fib.fiber.check_relations(3).passed());
    assert!(fib.rescaled.check_relations(3).passed());
    assert_eq!(fib.rescaled.trunc(), 2);
    // on generators θ_i (index 1 << i) the fiber bracket is the Lie bracket
    let v = fib.fiber.bracket(2).on_basis(&[1, 2]);
    let w = g.bracket(2).on_basis(&[0, 1]);
    assert_eq!(v[4].clone() * v[4].clone(), w[2].clone() * w[2].clone());
    assert_ne!(v[4], q(0));
}

#[test]
fn rescaled_brackets_match_direct_computation() {
    let (alg, d0) = heisenberg_cochains();
    // R = ∂_a∂_b, order 2
    let r = alg.exterior_monomial_operator(0, 3).unwrap();
    let ops = gauge_family(&d0, &r, 3).unwrap();
    let bv = BVInfinity::new(alg, ops).unwrap();
    let fib = rescaled_structure(&bv, 3).unwrap();
    let dim = bv.algebra().dim();
    for n in 1..=3 {
        for t in crate::combinat::multisets(dim, n) {
            let direct = derived_on_truncation(&bv, &t);
            let rescaled = fib.rescaled.bracket(n).on_basis(&t);
            let mut shifted = vec![q(0); direct.len()];
            for (i, x) in rescaled.into_iter().enumerate() {
                if i + (n - 1) * dim < shifted.len() {
                    shifted[i + (n - 1) * dim] = x;
                }
            }
            assert_eq!(direct, shifted, "arity {n} inputs {t:?}");
        }
    }
}

#[test]
fn gauge_family_is_degenerate_and_abelian() {
    let (alg, d0) = heisenberg_cochains();
    // R = θ_a θ_c ∂_a ∂_b
    let r = alg.exterior_monomial_operator(5, 3).unwrap();
    assert!(fixes_unit(&r, &alg.one()));
    let ops = gauge_family(&d0, &r, 4).unwrap();
    assert!(ops.components().len() > 1);
    let bv = BVInfinity::new(alg, ops).unwrap();
    assert!(bv.ops().squares_to_zero_exactly());
    let verdict = main_theorem_check(&bv, 4, 4).unwrap();
    assert!(verdict.degenerate);
    assert!(verdict.homotopy_abelian);
    assert!(verdict.consistent);
    assert!(verdict.degeneration.certificates_agree());
    assert_eq!(e1_collapses(bv.ops()), Some(true));
}

#[test]
fn second_order_d0_is_rejected() {
    let alg = Algebra::exterior(3);
    // D₀ = θ₁∂₂∂₃ has order 2
    let d0 = alg.exterior_monomial_operator(1, 6).unwrap();
    let ops = HOperator::new(2, vec![d0]).unwrap();
    let report = check_bv(&alg, &ops);
    assert_eq!(
        report.violations,
        vec![BvViolation::OrderTooHigh {
            component: 0,
            bound: 1
        }]
    );
}
