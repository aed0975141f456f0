//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see the lines on success).

use fes::evaluator::{
    amhs, amhs_bruteforce, bernoulli_mod_p, beta, binom, eval_symbol_with, fermat_q, ZetaSymbol,
};
use fes::linalg;
use fes::modring::{first_primes, primes_in, PrimeContext};
use fes::relations::Family;
use fes::sigcomp::{enumerate, SignedComposition};
use fes::verify::{self, Status};
use fes::words::{p_forward, shuffle, x_to_y, y_to_x};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, HashMap};

fn line(n: u32, what: &str, ok: bool) -> bool {
    println!("criterion {n} ({what}): {}", if ok { "pass" } else { "FAIL" });
    ok
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn comp(ints: &[i64]) -> SignedComposition {
    SignedComposition::from_ints(ints).unwrap()
}

/// Residue of `coeff * beta_k * p^j mod p^ell`, with `beta` from the
/// independent Bernoulli recurrence.
fn beta_term(coeff: &BigRational, k: u32, j: u32, ctx: &PrimeContext, bern: &[u64]) -> u64 {
    let b = beta(k, ctx.prime(), bern).unwrap();
    let pj = ctx.pow(ctx.prime(), j as u64);
    ctx.mul(ctx.mul(ctx.iota(coeff), b), pj)
}

#[test]
fn criterion_01_oracle_equivalence() {
    let mut mismatches = 0u64;
    for &p in &[31u64, 37, 41] {
        for ell in 1..=2u32 {
            let ctx = PrimeContext::new(p, ell).unwrap();
            for w in 1..=5u32 {
                for s in enumerate(w, true) {
                    for star in [false, true] {
                        for n in 0..=30u64 {
                            let fast = amhs(&s, n, &ctx, star).unwrap();
                            let slow = amhs_bruteforce(&s, n, &ctx, star).unwrap();
                            if fast != slow {
                                mismatches += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(line(1, "amhs matches brute-force oracle", mismatches == 0));
}

#[test]
fn criterion_02_depth2_theorem() {
    let ok = primes_in(13, 499).par_iter().all(|&p| {
        let ctx = PrimeContext::new(p, 1).unwrap();
        let bern = bernoulli_mod_p(p);
        (3..=9u32).step_by(2).all(|w| {
            (1..w).all(|s| {
                let t = w - s;
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let coeff = rat(sign) * BigRational::from_integer(binom(w, s));
                let want = beta_term(&coeff, w, 0, &ctx, &bern);
                let c = comp(&[s as i64, t as i64]);
                [false, true].into_iter().all(|star| {
                    let z = ZetaSymbol::new(c.clone(), star, 1, 0).unwrap();
                    eval_symbol_with(&z, &ctx).unwrap() == want
                })
            })
        })
    });
    assert!(line(2, "depth-2 binomial beta formula, s+t odd <= 9, 13 <= p <= 499", ok));
}

#[test]
fn criterion_03_depth1_and_depth3() {
    let ok = primes_in(13, 499).par_iter().all(|&p| {
        let ctx = PrimeContext::new(p, 1).unwrap();
        let bern = bernoulli_mod_p(p);

        // zeta(bar 1) = -2 q_2
        let q2 = fermat_q(2, p).unwrap();
        let z1 = eval_symbol_with(&ZetaSymbol::plain(comp(&[-1]), 1), &ctx).unwrap();
        if z1 != ctx.mul(ctx.neg(2), q2) {
            return false;
        }

        // zeta(bar s) = -2 (1 - 2^{1-s}) beta_s for odd 3 <= s <= 9
        for s in (3..=9u32).step_by(2) {
            let coeff = rat(-2) * (rat(1) - BigRational::new(BigInt::from(1), BigInt::from(1i64 << (s - 1))));
            let want = beta_term(&coeff, s, 0, &ctx, &bern);
            let got = eval_symbol_with(&ZetaSymbol::plain(comp(&[-(s as i64)]), 1), &ctx).unwrap();
            if got != want {
                return false;
            }
        }

        // depth 3, odd weight w <= 9:
        //   2 zeta*(l,m,n) = ((-1)^l C(w,l) - (-1)^n C(w,n)) beta_w,
        //   zeta(l,m,n) = -zeta*(l,m,n)
        for w in (3..=9u32).step_by(2) {
            for l in 1..w - 1 {
                for m in 1..w - l {
                    let n = w - l - m;
                    let sl = if l % 2 == 0 { 1 } else { -1 };
                    let sn = if n % 2 == 0 { 1 } else { -1 };
                    let coeff = (rat(sl) * BigRational::from_integer(binom(w, l))
                        - rat(sn) * BigRational::from_integer(binom(w, n)))
                        / rat(2);
                    let want = beta_term(&coeff, w, 0, &ctx, &bern);
                    let c = comp(&[l as i64, m as i64, n as i64]);
                    let star = eval_symbol_with(&ZetaSymbol::star(c.clone(), 1), &ctx).unwrap();
                    let plain = eval_symbol_with(&ZetaSymbol::plain(c, 1), &ctx).unwrap();
                    if star != want || plain != ctx.neg(want) {
                        return false;
                    }
                }
            }
        }
        true
    });
    assert!(line(3, "depth-1 alternating and depth-3 closed forms, weight <= 9, p <= 499", ok));
}

#[test]
fn criterion_04_homogeneous_superbity_2_and_3() {
    let ok = primes_in(5, 499).par_iter().all(|&p| {
        let bern = bernoulli_mod_p(p);
        for d in 1..=10u32 {
            for s in 1..=10 / d {
                let w = d * s;
                if p < (w + 3) as u64 {
                    continue;
                }
                let c = SignedComposition::from_positive(&vec![s; d as usize]);

                // superbity 2: (-1)^{d-1} s beta_{ds+1} p, which is 0 for
                // odd ds because the even-index beta vanishes
                let ctx2 = PrimeContext::new(p, 2).unwrap();
                let sign = if d % 2 == 1 { 1 } else { -1 };
                let want = beta_term(&rat(sign * s as i64), w + 1, 1, &ctx2, &bern);
                let got = eval_symbol_with(&ZetaSymbol::plain(c.clone(), 2), &ctx2).unwrap();
                if got != want {
                    return false;
                }

                // superbity 3, odd ds: (-1)^d s(ds+1)/2 beta_{ds+2} p^2
                if w % 2 == 1 {
                    let ctx3 = PrimeContext::new(p, 3).unwrap();
                    let coeff = rat(if d % 2 == 0 { 1 } else { -1 })
                        * BigRational::new(
                            BigInt::from(s as i64 * (w as i64 + 1)),
                            BigInt::from(2),
                        );
                    let want = beta_term(&coeff, w + 2, 2, &ctx3, &bern);
                    let got = eval_symbol_with(&ZetaSymbol::plain(c, 3), &ctx3).unwrap();
                    if got != want {
                        return false;
                    }
                }
            }
        }
        true
    });
    assert!(line(4, "homogeneous superbity-2/3 closed forms, ds <= 10, p <= 499", ok));
}

#[test]
fn criterion_05_tables_with_and_without_corrections() {
    let tables = [
        "wt6-depth3",
        "wt7-depth4",
        "superbity2-wt4",
        "superbity2-wt5",
        "superbity2-wt6",
        "wt5-superbity2-thm",
        "wt6-superbity2-thm",
    ];
    let primes = primes_in(5, 499);
    let mut ok = true;
    for name in tables {
        for row in verify::verify_table(name, &primes, true).unwrap() {
            if row.report.status != Status::Verified {
                eprintln!("  corrected row not verified: {name} {}", row.label);
                ok = false;
            }
        }
        for row in verify::verify_table(name, &primes, false).unwrap() {
            let expect = if row.corrected { Status::Refuted } else { Status::Verified };
            if row.report.status != expect {
                eprintln!(
                    "  as-printed row {} {}: expected {:?}, got {:?}",
                    name, row.label, expect, row.report.status
                );
                ok = false;
            }
        }
    }
    assert!(line(5, "tables verified; corrections off refutes exactly the flagged rows", ok));
}

/// One instance of the finite shuffle theorem, as integer combinations of
/// level-1 symbols summing to zero.
type Instance = Vec<(i64, SignedComposition)>;

fn zeta_sh_comp(word: &[fes::words::XLetter]) -> SignedComposition {
    p_forward(&x_to_y(&word.to_vec()).expect("shuffle images end in a sign letter"))
}

fn add_shuffle_terms(acc: &mut BTreeMap<SignedComposition, i64>, u: &[fes::words::XLetter], v: &[fes::words::XLetter], scale: i64) {
    for (word, c) in shuffle(&u.to_vec(), &v.to_vec()).iter() {
        let c: i64 = c.to_integer().try_into().unwrap();
        *acc.entry(zeta_sh_comp(word)).or_insert(0) += scale * c;
    }
}

fn finish(acc: BTreeMap<SignedComposition, i64>) -> Instance {
    acc.into_iter().filter(|(_, c)| *c != 0).map(|(s, c)| (c, s)).collect()
}

fn shuffle_theorem_instances(wmax: u32) -> Vec<Instance> {
    let pos = |w: u32| -> Vec<SignedComposition> {
        if w == 0 { vec![SignedComposition::empty()] } else { enumerate(w, false) }
    };
    let sig = |w: u32| -> Vec<SignedComposition> {
        if w == 0 { vec![SignedComposition::empty()] } else { enumerate(w, true) }
    };
    let tau_sign = |w: u32| if w % 2 == 0 { 1i64 } else { -1 };
    let mut out = Vec::new();

    // (i): zeta_sh(u sh v) = sign zeta_sh(reverse(u) v)
    for wu in 1..=wmax {
        for wv in 0..=wmax - wu {
            for u in enumerate(wu, false) {
                for v in &sig(wv) {
                    let mut acc = BTreeMap::new();
                    add_shuffle_terms(&mut acc, &y_to_x(&u), &y_to_x(v), 1);
                    *acc.entry(zeta_sh_comp(&y_to_x(&u.reverse().concat(v)))).or_insert(0) -=
                        tau_sign(wu);
                    out.push(finish(acc));
                }
            }
        }
    }

    // (ii): zeta_sh((w u) sh v) = sign zeta_sh(u sh (reverse(w) v))
    for ww in 1..=wmax {
        for wu in 1..=wmax - ww {
            for wv in 0..=wmax - ww - wu {
                for w in enumerate(ww, false) {
                    for u in enumerate(wu, false) {
                        for v in &sig(wv) {
                            let mut acc = BTreeMap::new();
                            add_shuffle_terms(&mut acc, &y_to_x(&w.concat(&u)), &y_to_x(v), 1);
                            add_shuffle_terms(
                                &mut acc,
                                &y_to_x(&u),
                                &y_to_x(&w.reverse().concat(v)),
                                -tau_sign(ww),
                            );
                            out.push(finish(acc));
                        }
                    }
                }
            }
        }
    }

    // (iii): zeta_sh((y_s u) sh v) = (-1)^s zeta_sh(u sh (y_s v))
    for s in 1..=wmax {
        for wu in 0..=wmax - s {
            for wv in 0..=wmax - s - wu {
                let head = comp(&[s as i64]);
                for u in &pos(wu) {
                    for v in &sig(wv) {
                        let mut acc = BTreeMap::new();
                        add_shuffle_terms(&mut acc, &y_to_x(&head.concat(u)), &y_to_x(v), 1);
                        add_shuffle_terms(
                            &mut acc,
                            &y_to_x(u),
                            &y_to_x(&head.concat(v)),
                            -tau_sign(s),
                        );
                        out.push(finish(acc));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_06_finite_shuffle_theorem() {
    let instances = shuffle_theorem_instances(6);
    let mut needed: BTreeSet<SignedComposition> = BTreeSet::new();
    for inst in &instances {
        for (_, c) in inst {
            needed.insert(c.clone());
        }
    }
    let ok = primes_in(11, 199).par_iter().all(|&p| {
        let ctx = PrimeContext::new(p, 1).unwrap();
        let values: HashMap<&SignedComposition, u64> = needed
            .iter()
            .map(|c| (c, amhs(c, p - 1, &ctx, false).unwrap()))
            .collect();
        instances.iter().all(|inst| {
            let mut total = 0u64;
            for (coeff, c) in inst {
                let signed = if *coeff < 0 {
                    ctx.neg(ctx.mul((-coeff) as u64 % ctx.modulus(), values[c]))
                } else {
                    ctx.mul(*coeff as u64 % ctx.modulus(), values[c])
                };
                total = ctx.add(total, signed);
            }
            total == 0
        })
    });
    assert!(line(6, "shuffle theorem (i)-(iii), total weight <= 6, 11 <= p <= 199", ok));
}

#[test]
fn criterion_07_fmzv_dimension_bounds() {
    let dims = linalg::dimension_table(8, 1, false, &Family::ALL).unwrap();
    let expected = vec![1, 0, 0, 1, 0, 1, 1, 1, 2];
    // Padovan recurrence d_w = d_{w-2} + d_{w-3} from weight 3 on
    let padovan = (3..=8).all(|w| dims[w] == dims[w - 2] + dims[w - 3]);
    let ok = dims == expected && padovan;
    if !ok {
        eprintln!("  got {dims:?}");
    }
    assert!(line(7, "FMZV dimension bounds 1,0,0,1,0,1,1,1,2 for w <= 8", ok));
}

#[test]
fn criterion_08_fes_dimension_bounds() {
    let dims = linalg::dimension_table(6, 1, true, &Family::ALL).unwrap();
    let expected = vec![1, 1, 1, 2, 3, 5, 8];
    let fibonacci = dims == expected;
    if !fibonacci {
        eprintln!("  got {dims:?}");
    }
    let no_reversal: Vec<Family> = Family::ALL
        .into_iter()
        .filter(|f| *f != Family::Reversal)
        .collect();
    let without = linalg::dimension_upper_bound(2, 1, true, &no_reversal).unwrap();
    let ok = fibonacci && without > 1;
    if without <= 1 {
        eprintln!("  weight-2 bound without reversal: {without}");
    }
    assert!(line(8, "FES dimension bounds 1,1,1,2,3,5,8; weight 2 needs reversal", ok));
}

#[test]
fn criterion_09_conjectural_relations() {
    let primes = first_primes(300);
    let rows = verify::verify_table("conjectural-superbity2", &primes, true).unwrap();
    let mut ok = rows.len() == 8;
    for row in &rows {
        if row.report.status != Status::Verified {
            eprintln!("  {} not verified: {:?}", row.label, row.report.status);
            ok = false;
        }
    }
    assert!(line(9, "8 conjectural superbity-2 relations over the first 300 primes", ok));
}

#[test]
fn criterion_10_property_invariants() {
    use fes::sigcomp::SignedIndex;
    use fes::words::{antipode_expand, phi, stuffle, star_expand, AntipodeMode, StarDirection};
    let mut ok = true;

    // oplus: commutative, associative, sign/magnitude laws
    for a in [-3i64, -1, 1, 2] {
        for b in [-2i64, 1, 4] {
            for c in [-1i64, 3] {
                let (x, y, z) = (
                    SignedIndex::new(a.unsigned_abs() as u32, a.signum() as i32),
                    SignedIndex::new(b.unsigned_abs() as u32, b.signum() as i32),
                    SignedIndex::new(c.unsigned_abs() as u32, c.signum() as i32),
                );
                ok &= x.oplus(&y) == y.oplus(&x);
                ok &= x.oplus(&y).oplus(&z) == x.oplus(&y.oplus(&z));
                ok &= x.oplus(&y).magnitude() == x.magnitude() + y.magnitude();
                ok &= x.oplus(&y).sign() == x.sign() * y.sign();
            }
        }
    }

    // v-dual: involution and depth identity d(s) + d(s~) = w + 1 where s~
    // is the dual of s; dual agrees with the ribbon-conjugate route
    for w in 1..=8u32 {
        for s in enumerate(w, false) {
            let d = s.v_dual().unwrap();
            ok &= d.v_dual().unwrap() == s;
            ok &= s.depth() + d.depth() == w as usize + 1;
            ok &= d == s.reverse().ribbon_conjugate();
        }
    }

    // stuffle and shuffle: commutative and associative on sampled words
    let ys: Vec<SignedComposition> = enumerate(2, true);
    for u in &ys {
        for v in &ys {
            ok &= stuffle(u, v) == stuffle(v, u);
            for t in &ys {
                let a = fes::words::stuffle_lin(&stuffle(u, v), &fes::words::LinComb::single(t.clone()));
                let b = fes::words::stuffle_lin(&fes::words::LinComb::single(u.clone()), &stuffle(v, t));
                ok &= a == b;
            }
            let (xu, xv) = (y_to_x(u), y_to_x(v));
            ok &= shuffle(&xu, &xv) == shuffle(&xv, &xu);
        }
    }

    // star Moebius inversion: expanding star over plain and back is the
    // identity
    for w in 1..=5u32 {
        for s in enumerate(w, true) {
            let mut acc = fes::words::LinComb::zero();
            for (t, c) in star_expand(&s, StarDirection::StarToPlain).iter() {
                for (r, d) in star_expand(t, StarDirection::PlainToStar).iter() {
                    acc.add_term(r.clone(), c * d);
                }
            }
            ok &= acc == fes::words::LinComb::single(s.clone());
        }
    }

    // antipode expansions at both modes produce the right grading
    for w in 1..=5u32 {
        for s in enumerate(w, false) {
            for mode in [AntipodeMode::MToConcat, AntipodeMode::EToConcat] {
                for (_, blocks) in antipode_expand(&s, mode) {
                    let total: u32 = blocks.iter().map(|b| b.weight()).sum();
                    ok &= total == w;
                }
            }
        }
    }

    // phi is an involution on level-1 x-word combinations
    for w in 1..=5u32 {
        for s in enumerate(w, false) {
            let start = fes::words::LinComb::single(y_to_x(&s));
            ok &= phi(&phi(&start).unwrap()).unwrap() == start;
        }
    }

    // p-transform round trip
    for w in 1..=6u32 {
        for s in enumerate(w, true) {
            ok &= fes::words::p_inverse(&p_forward(&s)) == s;
            ok &= p_forward(&fes::words::p_inverse(&s)) == s;
        }
    }

    // stuffle homomorphism numerically: H_n(u) H_n(v) = H_n(u * v)
    let ctx = PrimeContext::new(101, 2).unwrap();
    for u in enumerate(2, true) {
        for v in enumerate(3, true) {
            for n in [5u64, 50, 100] {
                let lhs = ctx.mul(
                    amhs(&u, n, &ctx, false).unwrap(),
                    amhs(&v, n, &ctx, false).unwrap(),
                );
                let mut rhs = 0u64;
                for (t, c) in stuffle(&u, &v).iter() {
                    let c: i64 = c.to_integer().try_into().unwrap();
                    let term = ctx.mul(c.unsigned_abs() % ctx.modulus(), amhs(t, n, &ctx, false).unwrap());
                    rhs = if c < 0 { ctx.sub(rhs, term) } else { ctx.add(rhs, term) };
                }
                ok &= lhs == rhs;
            }
        }
    }

    assert!(line(10, "algebraic invariant suite", ok));
}
