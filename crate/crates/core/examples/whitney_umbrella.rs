//! The k = 2 case: the Whitney umbrella, its Jacobian, its four liftable
//! fields and the lowerables that witness them.

use liftvf::build_context;
use liftvf::crosscap::{build_phi, jacobian};
use liftvf::fields::{euler_lowerable, generator_set, lowerable, FieldLabel};
use liftvf::lift::lift_residual;

fn main() -> liftvf::Result<()> {
    let ctx = build_context(2)?;
    let phi = build_phi(&ctx);
    println!(
        "phi = ({})",
        phi.components
            .iter()
            .map(|p| p.render())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("jacobian:");
    for row in jacobian(&ctx).render_rows() {
        println!("  [{}]", row.join(", "));
    }
    for xi in generator_set(&ctx) {
        let label = xi.label.unwrap();
        let eta = match label {
            FieldLabel::Euler => euler_lowerable(&ctx),
            FieldLabel::Family { family, j } => lowerable(&ctx, family, j)?,
        };
        let ok = lift_residual(&ctx, &xi, &eta)?.is_zero();
        println!(
            "{label}: xi = ({})  eta = ({})  lifts: {ok}",
            xi.render_components().join(", "),
            eta.render_components().join(", ")
        );
    }
    Ok(())
}
