//! Prints the generators of the liftable fields for a chosen k.
//!
//! cargo run --example cross_cap_fields -- 4

use liftvf::build_context;
use liftvf::fields::generator_set;

fn main() -> liftvf::Result<()> {
    let k = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let ctx = build_context(k)?;
    println!("{}", ctx.to_json());
    for xi in generator_set(&ctx) {
        println!("{}", xi.label.unwrap());
        for (name, c) in ctx.codomain().names().iter().zip(&xi.components) {
            println!("  d/d{name}: {c}");
        }
    }
    Ok(())
}
