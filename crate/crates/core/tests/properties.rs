use bvinf::bvinfty::{
    ce_complex, check_bv, degeneration_of, e1_collapses, rescaled_structure, truncated_homology,
    BVInfinity,
};
use bvinf::exactlin::{kernel, kernel_image, SparseMatrix};
use bvinf::linfty::LInftyStructure;
use bvinf::polygeom::{invariant_model, schouten, schouten_odd, LieData};
use bvinf::random;
use bvinf::superalg::exp_conjugation_check;
use bvinf::{Parity, Rational};
use proptest::prelude::*;
use rand::Rng;

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_and_image_are_complementary(rows in 1usize..7, cols in 1usize..7, entries in prop::collection::vec((0usize..7, 0usize..7, -3i64..=3), 0..20)) {
        let triplets = entries.into_iter().filter(|&(r, c, _)| r < rows && c < cols).map(|(r, c, v)| (r, c, q(v)));
        let m = SparseMatrix::from_triplets(rows, cols, triplets).unwrap();
        let (ker, im) = kernel_image(&m);
        prop_assert_eq!(ker.len() + im.len(), cols);
        prop_assert_eq!(im.len(), m.rank());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn exp_and_log_are_inverse(seed: u64) {
        let mut r = random::seeded(seed);
        let alg = random::random_algebra::<Q>(&mut r);
        let a = random::random_even_ideal_element(&mut r, &alg);
        let back = alg.log(&alg.exp(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exponential_conjugation(seed: u64) {
        let mut r = random::seeded(seed);
        let alg = random::random_algebra::<Q>(&mut r);
        let parity = if r.gen_bool(0.5) { Parity::Odd } else { Parity::Even };
        let d = random::random_operator(&mut r, &alg, parity, 8);
        let a = random::random_even_ideal_element(&mut r, &alg);
        prop_assert!(exp_conjugation_check(&alg, &d, &a).unwrap());
    }

    #[test]
    fn square_zero_operators_give_linfty(seed: u64) {
        let mut r = random::seeded(seed);
        let alg = random::random_algebra::<Q>(&mut r);
        let d = random::square_zero_operator(&mut r, &alg);
        prop_assert!(d.compose(&d).is_zero());
        prop_assert!(d.apply(&alg.one()).iter().all(|x| *x == q(0)));
        let l = LInftyStructure::from_operator(&alg, &d, 3).unwrap();
        prop_assert!(l.check_relations(3).passed());
    }

    #[test]
    fn perturbed_operators_break_the_relations(seed: u64) {
        let mut r = random::seeded(seed);
        let alg = random::random_algebra::<Q>(&mut r);
        let d = random::square_zero_operator(&mut r, &alg);
        if let Some(e) = random::perturbation(&mut r, &alg, &d) {
            prop_assert!(!LInftyStructure::derived(&alg, &d.add(&e), 2).check_relations(2).passed());
        }
    }

    #[test]
    fn gauge_families_are_degenerate(seed: u64) {
        let mut r = random::seeded(seed);
        let n = r.gen_range(2..=4);
        let (alg, ops) = random::random_gauge_family::<Q>(&mut r, n, 3);
        prop_assert!(check_bv(&alg, &ops).is_valid());
        let report = degeneration_of(&ops, ops.trunc()).unwrap();
        prop_assert!(report.is_degenerate());
        prop_assert_eq!(e1_collapses(&ops), Some(true));
    }

    #[test]
    fn freeness_certificates_agree(seed: u64) {
        let mut r = random::seeded(seed);
        let alg = random::random_algebra::<Q>(&mut r);
        let ops = random::random_torsion_family(&mut r, &alg, 3);
        let report = degeneration_of(&ops, 3).unwrap();
        prop_assert!(report.certificates_agree());
        prop_assert_eq!(e1_collapses(&ops), Some(report.is_degenerate()));
    }

    #[test]
    fn homology_dimension_is_bounded_by_the_free_case(seed: u64) {
        let mut r = random::seeded(seed);
        let alg = random::random_algebra::<Q>(&mut r);
        let ops = random::random_torsion_family(&mut r, &alg, 3);
        let base = truncated_homology(&ops, 1).unwrap().dim;
        for n in 1..=3 {
            prop_assert!(truncated_homology(&ops, n).unwrap().dim <= n * base);
        }
    }

    #[test]
    fn rescaled_ce_structures_are_linfty(seed: u64) {
        let mut r = random::seeded(seed);
        let dim = r.gen_range(1..=3);
        let g = random::random_odd_linf::<Q>(&mut r, dim, 3);
        let bv: BVInfinity<Q> = ce_complex(&g, 3).unwrap();
        let s = rescaled_structure(&bv, 3).unwrap();
        prop_assert!(s.fiber.check_relations(3).passed());
        prop_assert!(s.rescaled.check_relations(3).passed());
    }

    #[test]
    fn invariant_models_always_degenerate(seed: u64) {
        // D = e^{-h i_P} d e^{h i_P} once [P, P] = 0
        let mut r = random::seeded(seed);
        let n = r.gen_range(2..=4);
        let (constants, sub) = random::random_lie_algebra::<Q>(&mut r, n);
        let lie = LieData::new(n, constants).unwrap();
        let p = match sub {
            Some((u, v)) => random::wedge_vectors(&u, &v),
            None => vec![q(0); 1 << n],
        };
        let (_, bv) = invariant_model(&lie, &p, 3).unwrap();
        prop_assert!(degeneration_of(bv.ops(), 3).unwrap().is_degenerate());
    }

    #[test]
    fn schouten_matches_odd_coordinates(seed: u64) {
        let mut r = random::seeded(seed);
        let n = r.gen_range(1..=3);
        let (k, l) = (r.gen_range(0..=n), r.gen_range(0..=n));
        let a = random::random_multivector::<Q>(&mut r, n, k, 2);
        let b = random::random_multivector::<Q>(&mut r, n, l, 2);
        prop_assert_eq!(schouten(&a, &b), schouten_odd(&a, &b));
    }
}

#[test]
fn kernel_of_zero_is_everything() {
    assert_eq!(kernel(&SparseMatrix::<Q>::zeros(2, 3)).len(), 3);
}
