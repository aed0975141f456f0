//! Round trip a relation set through its JSON export and re-verify it
//! against an independent prime sweep.

use fes::modring::primes_in;
use fes::relations::{self, Family, Relation};
use fes::verify::{self, Status};

fn main() {
    let rels = relations::pipeline(5, 1, false, &Family::ALL).unwrap();
    println!("generated {} weight-5 relations", rels.len());

    let json = serde_json::to_string_pretty(&rels).unwrap();
    let back: Vec<Relation> = serde_json::from_str(&json).unwrap();
    assert_eq!(rels, back);
    println!("JSON round trip: {} bytes, identical after reparse", json.len());

    let primes = primes_in(11, 300);
    let reports = verify::verify_relations(&back, &primes);
    let refuted = reports.iter().filter(|r| r.status == Status::Refuted).count();
    println!(
        "sweep over {} primes: {} relations, {} refuted",
        primes.len(),
        reports.len(),
        refuted
    );
    for r in reports.iter().take(5) {
        println!("  {:?} {}", r.status, r.provenance);
    }
}
