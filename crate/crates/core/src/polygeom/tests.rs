use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bvinfty::{degeneration_check, e1_collapses};
use crate::scalar::Parity;
use crate::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn x(n: usize, i: usize) -> SuperPoly<Rational> {
    SuperPoly::x(n, i)
}

/// `∂ᵢ` as a multivector, or `dxᵢ` as a form.
fn th(n: usize, i: usize) -> SuperPoly<Rational> {
    SuperPoly::theta(n, i)
}

fn random_poly(
    rng: &mut impl Rng,
    n: usize,
    terms: usize,
    max_deg: u32,
    odd_deg: u32,
) -> SuperPoly<Rational> {
    let mut p = SuperPoly::zero(n);
    for _ in 0..terms {
        let mut exps = vec![0; n];
        for _ in 0..rng.gen_range(0..=max_deg) {
            exps[rng.gen_range(0..n)] += 1;
        }
        let odd = loop {
            let m: u32 = rng.gen_range(0..1 << n);
            if m.count_ones() == odd_deg {
                break m;
            }
        };
        p = p.add(&SuperPoly::monomial(n, exps, odd, q(rng.gen_range(-3..=3))));
    }
    p
}

fn random_multivector(rng: &mut impl Rng) -> SuperPoly<Rational> {
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(0..=n as u32);
    random_poly(rng, n, 2, 2, k)
}

fn degree(p: &SuperPoly<Rational>) -> u32 {
    p.odd_degree().unwrap_or(0)
}

/// `−(−1)^{(|X|−1)(|Y|−1)}`
fn antisymmetry_sign(a: u32, b: u32) -> Rational {
    if (a + 1) * (b + 1) % 2 == 1 {
        q(1)
    } else {
        q(-1)
    }
}

fn r2_poisson() -> GeneralizedPoisson<Rational> {
    GeneralizedPoisson::new(&x(2, 0).mul(&th(2, 0)).mul(&th(2, 1))).unwrap()
}

fn r4_generalized() -> GeneralizedPoisson<Rational> {
    let n = 4;
    let top = x(n, 0)
        .mul(&th(n, 0))
        .mul(&th(n, 1))
        .mul(&th(n, 2))
        .mul(&th(n, 3));
    GeneralizedPoisson::new(&th(n, 0).mul(&th(n, 1)).add(&top)).unwrap()
}

#[test]
fn schouten_examples() {
    let f = x(2, 0).mul(&x(2, 0)).mul(&x(2, 1));
    assert_eq!(schouten(&th(2, 0), &f), f.d_even(0));
    let c = th(3, 0).mul(&th(3, 1));
    assert!(schouten(&c, &th(3, 2)).is_zero());
    let p = x(2, 0).mul(&th(2, 0)).mul(&th(2, 1));
    assert!(schouten(&p, &p).is_zero());
    // [x∂ₓ, ∂ₓ] = −∂ₓ
    assert_eq!(schouten(&x(1, 0).mul(&th(1, 0)), &th(1, 0)), th(1, 0).neg());
}

#[test]
fn schouten_matches_odd_coordinate_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let a = random_multivector(&mut rng);
        let k = rng.gen_range(0..=a.nvars() as u32);
        let b = random_poly(&mut rng, a.nvars(), 2, 2, k);
        assert_eq!(schouten(&a, &b), schouten_odd(&a, &b), "{a} / {b}");
    }
}

#[test]
fn schouten_is_a_gerstenhaber_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let pick = |rng: &mut ChaCha8Rng| {
            let k = rng.gen_range(0..=n as u32);
            random_poly(rng, n, 2, 2, k)
        };
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (da, db, _) = (degree(&a), degree(&b), degree(&c));
        // antisymmetry
        assert_eq!(
            schouten(&a, &b),
            schouten(&b, &a).scale(&antisymmetry_sign(da, db))
        );
        // Jacobi: [a,[b,c]] = [[a,b],c] + (−1)^{(|a|−1)(|b|−1)} [b,[a,c]]
        let s = if (da + 1) * (db + 1) % 2 == 1 {
            q(-1)
        } else {
            q(1)
        };
        let lhs = schouten(&a, &schouten(&b, &c));
        let rhs = schouten(&schouten(&a, &b), &c).add(&schouten(&b, &schouten(&a, &c)).scale(&s));
        assert_eq!(lhs, rhs);
        // Leibniz: [a, b∧c] = [a,b]∧c + (−1)^{(|a|−1)|b|} b∧[a,c]
        let s = if (da + 1) * db % 2 == 1 { q(-1) } else { q(1) };
        let lhs = schouten(&a, &b.mul(&c));
        let rhs = schouten(&a, &b)
            .mul(&c)
            .add(&b.mul(&schouten(&a, &c)).scale(&s));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cartan_calculus_for_vector_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let v = random_poly(&mut rng, n, 3, 2, 1);
        // classical Lie derivative: derivation with L_v f = v(f), L_v dxᵢ = d(vⁱ)
        let images: Vec<SuperPoly<Rational>> = (0..n).map(|i| derham_d(&v.d_odd_left(i))).collect();
        for w in monomial_forms::<Rational>(n, 3) {
            let mut classical = SuperPoly::zero(n);
            for (m, c) in w.terms() {
                let coeff = SuperPoly::monomial(n, m.exps.clone(), 0, c.clone());
                let form = SuperPoly::monomial(n, vec![0; n], m.odd, q(1));
                classical = classical.add(&apply_vector_field(&v, &coeff).mul(&form));
                classical = classical.add(&coeff.mul(&lie_of_constant_form(&form, &images)));
            }
            assert_eq!(lie_derivative(&v, &w), classical);
        }
    }
}

/// Derivation extension of `dxᵢ ↦ images[i]` applied to `dx_I`.
fn lie_of_constant_form(
    form: &SuperPoly<Rational>,
    images: &[SuperPoly<Rational>],
) -> SuperPoly<Rational> {
    let n = form.nvars();
    let (m, c) = form.terms().next().expect("nonzero form");
    let idx: Vec<usize> = (0..n).filter(|i| m.odd & (1 << i) != 0).collect();
    let mut out = SuperPoly::zero(n);
    for p in 0..idx.len() {
        let mut t = SuperPoly::constant(n, c.clone());
        for (r, &i) in idx.iter().enumerate() {
            t = t.mul(&if r == p {
                images[i].clone()
            } else {
                SuperPoly::theta(n, i)
            });
        }
        out = out.add(&t);
    }
    out
}

#[test]
fn poisson_examples() {
    let constant = GeneralizedPoisson::new(&th(3, 0).mul(&th(3, 1))).unwrap();
    assert!(check_poisson(&constant).is_poisson());
    let cert = check_poisson(&r2_poisson());
    assert!(cert.is_poisson() && cert.oracle_agrees() && cert.graded_in_h());
    let cert = check_poisson(&r4_generalized());
    assert!(cert.oracle_agrees());
    assert!(cert.is_poisson());
    // x₃∂₁∧∂₂ + x₂∂₂∧∂₃ is not Poisson: [P, P] = 2x₃∂₁∧∂₂∧∂₃
    let bad = x(3, 2)
        .mul(&th(3, 0))
        .mul(&th(3, 1))
        .add(&x(3, 1).mul(&th(3, 1)).mul(&th(3, 2)));
    let bad = GeneralizedPoisson::new(&bad).unwrap();
    let cert = check_poisson(&bad);
    assert!(!cert.is_poisson() && cert.oracle_agrees());
    assert_eq!(cert.first_nonzero().map(|(m, _)| m), Some(2));
    assert_eq!(
        cert.square,
        x(3, 2)
            .mul(&th(3, 0))
            .mul(&th(3, 1))
            .mul(&th(3, 2))
            .scale(&q(2))
    );
    assert_eq!(
        koszul_brackets(&bad, 2, &[th(3, 0), th(3, 1)]),
        Err(PolyError::NotPoisson)
    );
}

#[test]
fn rejects_odd_and_low_components() {
    assert_eq!(
        GeneralizedPoisson::new(&th(3, 0).mul(&th(3, 1)).mul(&th(3, 2))),
        Err(PolyError::NotEven(3))
    );
    assert_eq!(
        GeneralizedPoisson::new(&th(2, 0)),
        Err(PolyError::LowDegreeComponent(1))
    );
    assert_eq!(
        GeneralizedPoisson::new(&x(2, 0)),
        Err(PolyError::LowDegreeComponent(0))
    );
}

#[test]
fn koszul_bracket_fixtures() {
    let p = r2_poisson();
    // m₂(dx, dy) = d{x, y} = dx
    assert_eq!(
        koszul_brackets(&p, 2, &[th(2, 0), th(2, 1)]).unwrap(),
        th(2, 0)
    );
    // m₁ = d
    let w = x(2, 0).mul(&x(2, 1));
    assert_eq!(
        koszul_brackets(&p, 1, std::slice::from_ref(&w)).unwrap(),
        derham_d(&w)
    );
    for inputs in [[th(2, 0), th(2, 1), x(2, 0)], [x(2, 0), x(2, 1), th(2, 1)]] {
        assert!(koszul_brackets(&p, 3, &inputs).unwrap().is_zero());
    }
    let r4 = r4_generalized();
    let dx: Vec<_> = (0..4).map(|i| th(4, i)).collect();
    assert_eq!(koszul_brackets(&r4, 4, &dx).unwrap(), th(4, 0).neg());
    assert!(
        koszul_brackets(&r4, 4, &(0..4).map(|i| x(4, i)).collect::<Vec<_>>())
            .unwrap()
            .is_zero()
    );
}

#[test]
fn dsquared_holds() {
    assert!(dsquared_check(
        &GeneralizedPoisson::new(&SuperPoly::<Rational>::zero(2)).unwrap(),
        4,
        2
    ));
    assert!(dsquared_check(
        &GeneralizedPoisson::new(&th(2, 0).mul(&th(2, 1))).unwrap(),
        4,
        3
    ));
    assert!(dsquared_check(&r2_poisson(), 6, 3));
    assert!(dsquared_check(&r4_generalized(), 2, 5));
}

#[test]
fn order_bounds() {
    let bivector = th(2, 0).mul(&th(2, 1));
    assert!(order_bound_holds(&bivector, 2, 6));
    assert!(!order_bound_holds(&bivector, 1, 3));
    assert!(order_bound_holds(&x(3, 0).mul(&th(3, 2)), 1, 4));
}

fn lie(dim: usize, constants: &[(usize, usize, usize, i64)]) -> LieData<Rational> {
    LieData::new(dim, constants.iter().map(|&(i, j, k, c)| (i, j, k, q(c)))).unwrap()
}

fn multivector(dim: usize, entries: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![q(0); 1 << dim];
    for &(m, c) in entries {
        v[m] = q(c);
    }
    v
}

#[test]
fn lie_data_validation() {
    assert_eq!(
        LieData::new(3, [(0, 1, 2, q(1)), (1, 2, 1, q(1))]).err(),
        Some(PolyError::Jacobi)
    );
    assert!(LieData::new(3, [(0, 1, 1, q(1)), (0, 2, 2, q(1))]).is_ok());
}

#[test]
fn invariant_model_examples() {
    // abelian, constant P
    let (model, bv) = invariant_model(&lie(3, &[]), &multivector(3, &[(3, 1)]), 3).unwrap();
    assert!(model.d.is_zero());
    assert!(degeneration_check(&bv, 3).unwrap().is_degenerate());
    // P = 0: just the cochain algebra
    let heis = lie(4, &[(0, 1, 2, 1)]);
    let (_, bv) = invariant_model(&heis, &multivector(4, &[]), 2).unwrap();
    assert_eq!(bv.ops().components().len(), 1);
    // e₁∧e₂ on [e₁, e₂] = e₃ has [P, P] = 2 e₁∧e₂∧e₃
    let p = multivector(4, &[(3, 1)]);
    assert_eq!(lie_schouten(&heis, &p, &p), multivector(4, &[(7, 2)]));
    assert_eq!(
        invariant_model(&heis, &p, 2).err(),
        Some(PolyError::NotPoisson)
    );
    // e₃∧e₄ is central
    let (model, bv) = invariant_model(&heis, &multivector(4, &[(12, 1)]), 4).unwrap();
    assert_eq!(
        model.lie_derivative(&model.component(2)).parity(),
        Parity::Odd
    );
    let report = degeneration_check(&bv, 4).unwrap();
    assert!(report.certificates_agree());
    assert_eq!(e1_collapses(bv.ops()), Some(report.is_degenerate()));
}
