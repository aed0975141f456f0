//! Sweep a stored value table over a prime range, once with the corrected
//! right sides and once exactly as printed in the source, so the corrected
//! rows show up as refutations.

use fes::modring::primes_in;
use fes::verify::{self, Status};

fn main() {
    let primes = primes_in(11, 200);
    for use_corrected in [true, false] {
        println!(
            "superbity2-wt4, {} right sides:",
            if use_corrected { "corrected" } else { "as printed" }
        );
        for row in verify::verify_table("superbity2-wt4", &primes, use_corrected).unwrap() {
            let flag = if row.corrected { " [corrected]" } else { "" };
            let word = match row.report.status {
                Status::Verified => "verified",
                Status::Refuted => "REFUTED",
                Status::Vacuous => "vacuous",
            };
            println!(
                "  {word:<9} {} (checked at {} primes){flag}",
                row.label,
                row.report.primes_checked.len()
            );
        }
    }
}
