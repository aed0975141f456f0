//! Sweep the conjectural superbity-2 relations over the first 100 primes.
//! None of these rows has a proof; a single counterexample would be news.

use fes::modring::first_primes;
use fes::verify::{self, Status};

fn main() {
    let primes = first_primes(100);
    let rows = verify::verify_table("conjectural-superbity2", &primes, true).unwrap();
    for row in rows {
        let word = match row.report.status {
            Status::Verified => "holds",
            Status::Refuted => "FAILS",
            Status::Vacuous => "vacuous",
        };
        println!(
            "{word:<8} {} ({} primes checked, {} skipped)",
            row.label,
            row.report.primes_checked.len(),
            row.report.primes_skipped.len()
        );
        for ce in &row.report.counterexamples {
            println!("  counterexample at p={}: {} != {}", ce.p, ce.lhs, ce.rhs);
        }
    }
}
