//! Builds `h_V = det(M - W2 I)` and confirms it vanishes on the image.

use liftvf::build_context;
use liftvf::crosscap::build_phi;
use liftvf::image::{image_equation, multiplication_matrix};

fn main() -> liftvf::Result<()> {
    let ctx = build_context(3)?;
    println!("multiplication matrix for k=3:");
    for row in multiplication_matrix(&ctx).render_rows() {
        println!("  [{}]", row.join(", "));
    }
    for k in 2..=5 {
        let ctx = build_context(k)?;
        let eq = image_equation(&ctx)?;
        let vanishes = build_phi(&ctx).pull_back(&eq.h)?.is_zero();
        println!("k={k}: {} terms, h o phi = 0: {vanishes}", eq.h.num_terms());
        if k <= 3 {
            println!("  h = {}", eq.h);
        }
    }
    Ok(())
}
