//! Property-based invariants over randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;

use meanking::algebra::{gaussian_binomial, ComplexVec};
use meanking::functions::CollisionFunction;
use meanking::mub::MubFamily;
use meanking::reconstruction::inner_product_formula_check;
use meanking::TOL;

fn complex_vec(dim: usize) -> impl Strategy<Value = ComplexVec> {
    prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), dim).prop_map(|entries| {
        ComplexVec::new(entries.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    })
}

fn function_table(n: usize) -> impl Strategy<Value = CollisionFunction> {
    prop::collection::vec(1..=n, n + 1)
        .prop_map(|values| CollisionFunction::new(values).unwrap())
}

proptest! {
    #[test]
    fn inner_product_is_conjugate_symmetric(u in complex_vec(6), v in complex_vec(6)) {
        let uv = u.inner(&v).unwrap();
        let vu = v.inner(&u).unwrap();
        prop_assert!((uv - vu.conj()).norm() < TOL);
        let uu = u.inner(&u).unwrap();
        prop_assert!(uu.im.abs() < TOL);
        prop_assert!(uu.re >= 0.0);
    }

    #[test]
    fn tensor_norm_is_multiplicative(u in complex_vec(4), v in complex_vec(5)) {
        let t = u.tensor(&v);
        prop_assert!((t.norm() - u.norm() * v.norm()).abs() < 1e-7);
    }

    #[test]
    fn gaussian_binomial_codimension_symmetry(m in 0i64..7, d_seed in 0i64..7, q in 2u64..10) {
        let d = if m == 0 { 0 } else { d_seed % (m + 1) };
        prop_assert_eq!(
            gaussian_binomial(m, d, q).unwrap(),
            gaussian_binomial(m, m - d, q).unwrap()
        );
    }

    // the collision formula holds for arbitrary pairs, not only the
    // one-collision families
    #[test]
    fn collision_formula_random_pairs_n2(f in function_table(2), g in function_table(2)) {
        let mubs = MubFamily::build(2).unwrap();
        inner_product_formula_check(&mubs, &f, &g).unwrap();
    }

    #[test]
    fn collision_formula_random_pairs_n3(f in function_table(3), g in function_table(3)) {
        let mubs = MubFamily::build(3).unwrap();
        inner_product_formula_check(&mubs, &f, &g).unwrap();
    }

    #[test]
    fn collision_formula_random_pairs_n5(f in function_table(5), g in function_table(5)) {
        let mubs = MubFamily::build(5).unwrap();
        inner_product_formula_check(&mubs, &f, &g).unwrap();
    }
}
