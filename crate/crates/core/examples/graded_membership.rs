//! Slice-by-slice comparison of the fields tangent to the image with the
//! module spanned by the generators.

use liftvf::build_context;
use liftvf::image::image_equation;
use liftvf::order::graded_membership_check;

fn main() -> liftvf::Result<()> {
    for (k, bound) in [(2, 6), (3, 4)] {
        let ctx = build_context(k)?;
        let eq = image_equation(&ctx)?;
        let report = graded_membership_check(&ctx, &eq, bound)?;
        println!("k={k}, shifts up to {bound}: ok = {}", report.ok());
        for s in &report.slices {
            println!(
                "  delta {:>2}: tangent {:>3}, spanned {:>3}",
                s.delta, s.tangent_dim, s.span_dim
            );
        }
    }
    Ok(())
}
