use liftvf::algebra::{rat, Monomial, Poly};
use liftvf::build_context;
use liftvf::crosscap::build_phi;
use liftvf::fields::{family, lowerable, Family};
use liftvf::lift::lift_residual;
use liftvf::order::weighted_degree;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `a xi + b xi'` lifts to `a eta + b eta'`.
    #[test]
    fn lifts_are_linear(
        k in 2usize..=4,
        a in -6i64..=6,
        b in -6i64..=6,
        first in (0usize..3, 1usize..4),
        second in (0usize..3, 1usize..4),
    ) {
        let ctx = build_context(k as i64).unwrap();
        let (f1, j1) = (Family::ALL[first.0], 1 + (first.1 - 1) % (k - 1));
        let (f2, j2) = (Family::ALL[second.0], 1 + (second.1 - 1) % (k - 1));
        let xi = family(&ctx, f1, j1).unwrap().scale_int(a)
            .checked_add(&family(&ctx, f2, j2).unwrap().scale_int(b)).unwrap();
        let eta = lowerable(&ctx, f1, j1).unwrap().scale_int(a)
            .checked_add(&lowerable(&ctx, f2, j2).unwrap().scale_int(b)).unwrap();
        prop_assert!(lift_residual(&ctx, &xi, &eta).unwrap().is_zero());
    }

    /// `p xi` lifts to `(p o phi) eta` for any codomain polynomial `p`.
    #[test]
    fn lifts_form_a_module(
        k in 2usize..=4,
        fj in (0usize..3, 1usize..4),
        terms in prop::collection::vec((prop::collection::vec(0u32..2, 7), -3i64..=3), 1..4),
    ) {
        let ctx = build_context(k as i64).unwrap();
        let f = Family::ALL[fj.0];
        let j = 1 + (fj.1 - 1) % (k - 1);
        let n = ctx.codomain_dim();
        let p = Poly::from_terms(
            ctx.codomain(),
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e[..n].to_vec()), rat(c))),
        );
        let pulled = build_phi(&ctx).pull_back(&p).unwrap();
        let xi = family(&ctx, f, j).unwrap().scale_by(&p).unwrap();
        let eta = lowerable(&ctx, f, j).unwrap().scale_by(&pulled).unwrap();
        prop_assert!(lift_residual(&ctx, &xi, &eta).unwrap().is_zero());
    }
}

#[test]
fn generators_are_graded() {
    for k in 2..=6 {
        let ctx = build_context(k).unwrap();
        for f in Family::ALL {
            for j in 1..k as usize {
                let d = weighted_degree(&ctx, &family(&ctx, f, j).unwrap()).unwrap();
                let expected = match f {
                    Family::One => k - j as i64,
                    _ => j as i64 - 1,
                };
                assert_eq!(d, expected, "k={k} {f:?} j={j}");
            }
        }
    }
}
