//! Leading terms of the generators under the negative lexicographic order.

use liftvf::build_context;
use liftvf::order::leading_term_table;

fn main() -> liftvf::Result<()> {
    for k in 3..=6 {
        let report = leading_term_table(&build_context(k)?)?;
        println!(
            "k={k} matches table: {}, distinct: {}",
            report.ok(),
            report.distinct
        );
        for r in &report.rows {
            println!(
                "  {:6} {:>4} * {} * e_{}",
                r.label, r.coeff, r.monomial, r.position
            );
        }
    }
    Ok(())
}
