mod common;

use common::sylvester_resultant;
use liftvf::algebra::{rat, Rational};
use liftvf::build_context;
use liftvf::image::image_equation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `h_V` at a codomain point equals `Res_y(y^k + sum U_i y^i - W1, sum V_i y^i - W2)`.
#[test]
fn image_equation_matches_resultant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 2..=5usize {
        let ctx = build_context(k as i64).unwrap();
        let eq = image_equation(&ctx).unwrap();
        for _ in 0..8 {
            let point: Vec<Rational> = (0..ctx.codomain_dim())
                .map(|_| rat(rng.gen_range(-4..=4)))
                .collect();
            let (u, rest) = point.split_at(k - 2);
            let (v, w) = rest.split_at(k - 1);
            let mut g = vec![-w[0].clone()];
            g.extend(u.iter().cloned());
            g.push(rat(0));
            g.push(rat(1));
            let mut f = vec![-w[1].clone()];
            f.extend(v.iter().cloned());
            assert_eq!(
                eq.h.evaluate(&point).unwrap(),
                sylvester_resultant(&g, &f),
                "k={k} at {point:?}"
            );
        }
    }
}

#[test]
fn image_equation_is_weighted_homogeneous() {
    for k in 2..=5usize {
        let ctx = build_context(k as i64).unwrap();
        let eq = image_equation(&ctx).unwrap();
        assert!(eq.h.is_weighted_homogeneous((k * k) as u32), "k={k}");
    }
}
