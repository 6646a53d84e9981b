mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly_strategy(4), b in poly_strategy(4), c in poly_strategy(4)) {
        check_ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in poly_strategy(3),
        b in poly_strategy(3),
        images in prop::collection::vec(poly_strategy(2), 3),
    ) {
        check_substitution(&a, &b, &images)?;
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in matrix_strategy()) {
        check_determinant(&m)?;
    }

    #[test]
    fn division_reconstructs(a in poly_strategy(4), b in nonzero_poly_strategy(3), tail in poly_strategy(3), n in 0u32..2) {
        check_division(&a, &b, &tail, n)?;
    }
}

#[test]
fn sylvester_oracle_on_known_resultant() {
    use liftvf::algebra::rat;
    // Res(y^2 - 1, y - 2) = (1 - 2)(-1 - 2) = 3.
    assert_eq!(
        sylvester_resultant(&[rat(-1), rat(0), rat(1)], &[rat(-2), rat(1)]),
        rat(3)
    );
}
