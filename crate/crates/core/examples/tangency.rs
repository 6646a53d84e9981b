//! Applies each generator to the image equation: family fields annihilate
//! it and the Euler field multiplies it by k^2.

use liftvf::build_context;
use liftvf::fields::generator_set;
use liftvf::image::{image_equation, tangency_factor, Tangency};

fn main() -> liftvf::Result<()> {
    for k in 2..=4 {
        let ctx = build_context(k)?;
        let eq = image_equation(&ctx)?;
        for xi in generator_set(&ctx) {
            let verdict = match tangency_factor(&eq, &xi)? {
                Tangency::Factor(q) => format!("xi(h) = ({q}) * h"),
                Tangency::NotTangent(r) => format!("not tangent, remainder {r}"),
            };
            println!("k={k} {}: {verdict}", xi.label.unwrap());
        }
    }
    Ok(())
}
