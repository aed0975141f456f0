//! Stuffle and shuffle expansions of small words, plus a numeric check
//! that the stuffle expansion really multiplies harmonic sums.

use fes::evaluator::amhs;
use fes::modring::PrimeContext;
use fes::sigcomp::parse_composition;
use fes::words::{shuffle, stuffle, x_to_y, y_to_x};

fn main() {
    let u = parse_composition("2").unwrap();
    let v = parse_composition("-1,1").unwrap();

    println!("stuffle ({u}) * ({v}):");
    for (w, c) in stuffle(&u, &v).iter() {
        println!("  {c} * ({w})");
    }

    println!("shuffle ({u}) sh ({v}) in the x-alphabet:");
    for (word, c) in shuffle(&y_to_x(&u), &y_to_x(&v)).iter() {
        println!("  {c} * ({})", x_to_y(word).unwrap());
    }

    let ctx = PrimeContext::new(97, 1).unwrap();
    let n = 96;
    let lhs = ctx.mul(
        amhs(&u, n, &ctx, false).unwrap(),
        amhs(&v, n, &ctx, false).unwrap(),
    );
    let mut rhs = 0;
    for (w, c) in stuffle(&u, &v).iter() {
        let c: i64 = c.to_integer().try_into().unwrap();
        rhs = ctx.add(rhs, ctx.mul(c as u64, amhs(w, n, &ctx, false).unwrap()));
    }
    println!("H_{n}({u}) H_{n}({v}) = {lhs} mod 97, stuffle expansion gives {rhs}");
}
