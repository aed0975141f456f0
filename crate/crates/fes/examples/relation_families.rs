//! Generate the weight-4 alternating relations family by family and show
//! how the combined pipeline deduplicates them.

use fes::relations::{self, Family};

fn main() {
    let (weight, superbity, signed) = (4, 1, true);
    for family in Family::ALL {
        if !family.supports(superbity) {
            continue;
        }
        let rels = relations::generate(family, weight, superbity, signed).unwrap();
        println!("{family}: {} relations", rels.len());
        for r in rels.iter().take(3) {
            println!("  {r}");
        }
        if rels.len() > 3 {
            println!("  ...");
        }
    }

    let all = relations::pipeline(weight, superbity, signed, &Family::ALL).unwrap();
    println!("pipeline total after dedup and spot checks: {}", all.len());
}
