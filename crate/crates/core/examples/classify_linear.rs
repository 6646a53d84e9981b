//! Codimension-one certificates for linear functions on the codomain.

use liftvf::algebra::rat;
use liftvf::build_context;
use liftvf::classify::{codim1_certificate, compare_closed_forms, random_sweep, LinearFunction};

fn main() -> liftvf::Result<()> {
    let ctx = build_context(3)?;
    let h = LinearFunction::new(&ctx, vec![rat(1)], vec![rat(0), rat(1)], rat(0), rat(0))?;
    let cert = codim1_certificate(&ctx, &h)?;
    println!(
        "h = {}: rank {}, certified {}",
        h.to_poly(&ctx),
        cert.rank,
        cert.certified
    );
    for c in compare_closed_forms(&ctx, &h)? {
        println!(
            "  {}(h) = {}  (closed form agrees: {})",
            c.label, c.direct, c.agree
        );
    }
    for k in 3..=5 {
        let report = random_sweep(&build_context(k)?, 100, 2024)?;
        println!(
            "k={k}: {}/{} random h certified",
            report.certified, report.trials
        );
    }
    Ok(())
}
