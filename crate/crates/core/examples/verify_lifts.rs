//! Checks `d(phi) . eta = xi o phi` exactly for every generator, k = 2..6.

use std::time::Instant;

use liftvf::build_context;
use liftvf::lift::verify_all;

fn main() -> liftvf::Result<()> {
    for k in 2..=6 {
        let ctx = build_context(k)?;
        let start = Instant::now();
        let reports = verify_all(&ctx)?;
        let failed: Vec<_> = reports
            .iter()
            .filter(|r| !r.ok)
            .map(|r| r.label.as_str())
            .collect();
        println!(
            "k={k}: {}/{} fields lift ({:.2?}){}",
            reports.len() - failed.len(),
            reports.len(),
            start.elapsed(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(" failures: {failed:?}")
            }
        );
    }
    Ok(())
}
