mod common;

use common::*;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES as u32, failure_persistence: None, ..ProptestConfig::default() }
}

macro_rules! laws {
    ($($name:ident => $law:path),* $(,)?) => {
        proptest! {
            #![proptest_config(config())]
            $(
                #[test]
                fn $name(seed in any::<u64>()) {
                    if let Err(e) = $law(seed) {
                        prop_assert!(false, "seed {}: {}", seed, e);
                    }
                }
            )*
        }
    };
}

laws! {
    product_rule => common::product_rule,
    quotient_rule => common::quotient_rule,
    chain_rule => common::chain_rule,
    mixed_partials_commute => common::partials_commute,
    tree_and_canonical_derivatives_agree => common::tree_derivative,
    wedge_is_associative => common::wedge_associative,
    wedge_is_graded_commutative => common::wedge_graded_commutative,
    interior_product_is_a_derivation => common::iota_derivation,
    interior_product_of_wedge_composes => common::iota_composition,
    pairing_is_a_determinant => common::pairing_determinant,
    leibniz_deformed_vector_bracket => common::leibniz_n,
    leibniz_form_bracket => common::leibniz_pi,
    schouten_is_a_biderivation => common::schouten_biderivation,
    schouten_is_graded_skew => common::schouten_symmetry,
    schouten_graded_jacobi => common::schouten_jacobi,
    d_squares_to_zero => common::d_squared,
    d_n_squares_to_zero => common::d_n_squared,
    derivation_defect_on_functions => common::defect_on_functions,
}

#[test]
fn recursive_bracket_matches_oracles() {
    for seed in 0..50 {
        let (p, q) = schouten_pair(seed);
        let (rec, direct) = recursive_and_direct(&p, &q);
        assert_eq!(rec, direct, "seed {seed}");
        assert_eq!(rec, odd_variable_schouten(&p, &q), "seed {seed}");
    }
}
