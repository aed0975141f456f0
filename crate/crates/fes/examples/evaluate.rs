//! Evaluate a few alternating sums at several primes and compare each
//! residue with its cataloged closed form.

use fes::evaluator::{catalog, eval_closed_form, eval_symbol, ZetaSymbol};
use fes::modring::primes_in;
use fes::sigcomp::parse_composition;

fn main() {
    let cases = [
        ("2,1", false, 1),
        ("2,1", true, 1),
        ("-3", false, 1),
        ("1,1,1", false, 2),
        ("2,-1", false, 1),
    ];
    for (text, star, ell) in cases {
        let comp = parse_composition(text).unwrap();
        let z = ZetaSymbol::new(comp, star, ell, 0).unwrap();
        match catalog::lookup(&z) {
            Some(cf) => println!("{z} = {cf}"),
            None => println!("{z}  (no closed form cataloged)"),
        }
        for p in primes_in(11, 40) {
            let value = eval_symbol(&z, p).unwrap();
            match catalog::lookup(&z) {
                Some(cf) => {
                    let cfv = eval_closed_form(&cf, p, ell).unwrap();
                    println!("  p={p:<3} {value:>6}  closed form gives {cfv}");
                }
                None => println!("  p={p:<3} {value:>6}"),
            }
        }
    }
}
