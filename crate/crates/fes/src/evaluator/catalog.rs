//! Catalog of known closed forms and named value tables.
//!
//! Single-symbol closed forms (in terms of the Bernoulli-derived `beta_k`
//! and Fermat quotients `q_k`) are looked up by pattern: homogeneous
//! compositions, depth 1 alternating, depth 2 and 3 at superbity 1, depth 2
//! at superbity 2, plus finitely many tabulated weight-5/6/7 values.
//! Entries whose stored form deviates from the printed source table are
//! flagged `corrected`; the stored forms are the ones that survive a prime
//! sweep against the independent Bernoulli oracle.

use super::{binom, rat, ratio, ClosedForm, ZetaSymbol};
use crate::sigcomp::SignedComposition;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::HashMap;
use std::sync::OnceLock;

/// A catalog match.
#[derive(Clone, Debug)]
pub struct CatalogHit {
    pub cf: ClosedForm,
    pub source: &'static str,
}

/// One row of a named table: `sum terms = rhs`, where terms may reference
/// several symbols (free generators like `zeta_2(3,1,1)` stay symbolic).
#[derive(Clone, Debug)]
pub struct TableEntry {
    pub table: &'static str,
    pub label: String,
    pub terms: Vec<(BigRational, ZetaSymbol)>,
    pub rhs: ClosedForm,
    /// Right side exactly as printed in the source table (differs from
    /// `rhs` iff `corrected`).
    pub printed_rhs: ClosedForm,
    pub corrected: bool,
    pub conjectural: bool,
}

impl TableEntry {
    pub fn superbity(&self) -> u32 {
        self.terms[0].1.ell
    }

    /// Smallest prime at which the entry can be checked: evaluation guard
    /// on every symbol plus definedness of every beta subscript.
    pub fn min_prime(&self) -> u64 {
        let sym = self
            .terms
            .iter()
            .map(|(_, z)| z.min_prime())
            .max()
            .unwrap_or(2);
        let gen = self.rhs.max_beta().max(self.printed_rhs.max_beta()) as u64 + 2;
        sym.max(gen).max(5)
    }
}

/// The closed form for a symbol, if one is known.
pub fn lookup(z: &ZetaSymbol) -> Option<ClosedForm> {
    lookup_hit(z).map(|h| h.cf)
}

/// As [`lookup`], with the name of the matching pattern.
pub fn lookup_hit(z: &ZetaSymbol) -> Option<CatalogHit> {
    if z.p_power > 0 {
        // p^j * zeta_{A_ell} is determined by the value at superbity ell-j
        let inner = ZetaSymbol::new(z.comp.clone(), z.star, z.ell - z.p_power, 0).ok()?;
        let hit = lookup_hit(&inner)?;
        return Some(CatalogHit { cf: hit.cf.shift_p(z.p_power), source: hit.source });
    }
    // star and plain agree in depth <= 1
    let star = z.star && z.comp.depth() > 1;
    if let Some(hit) = pattern_lookup(&z.comp, star, z.ell) {
        return Some(hit);
    }
    // at superbity 1 the reversal theorem extends coverage for free:
    // zeta(s) = (-1)^{|s|} sgn(s) zeta(reverse s), plain and star alike
    if z.ell == 1 {
        let rev = z.comp.reverse();
        if rev != z.comp {
            if let Some(hit) = pattern_lookup(&rev, star, 1) {
                let sign = if z.comp.weight() % 2 == 0 { 1 } else { -1 } * z.comp.sign();
                return Some(CatalogHit {
                    cf: hit.cf.scale(&rat(sign as i64)),
                    source: hit.source,
                });
            }
        }
    }
    None
}

fn pattern_lookup(comp: &SignedComposition, star: bool, ell: u32) -> Option<CatalogHit> {
    if comp.is_empty() {
        return Some(CatalogHit { cf: ClosedForm::one(), source: "empty" });
    }
    if !star {
        if let Some(cf) = homogeneous(comp, ell) {
            return Some(CatalogHit { cf, source: "homogeneous" });
        }
    }
    if comp.depth() == 1 && comp.parts[0].is_barred() {
        if let Some(cf) = depth1_alternating(comp.parts[0].magnitude(), ell) {
            return Some(CatalogHit { cf, source: "fes-depth1" });
        }
    }
    if comp.depth() == 2 {
        if let Some(cf) = depth2(comp, star, ell) {
            return Some(CatalogHit { cf, source: "depth2" });
        }
    }
    if comp.depth() == 3 && ell == 1 {
        if let Some(cf) = depth3(comp, star) {
            return Some(CatalogHit { cf, source: "depth3" });
        }
    }
    table_map()
        .get(&(comp.clone(), star, ell))
        .map(|cf| CatalogHit { cf: cf.clone(), source: "table" })
}

/// `zeta_{A_ell}({s}^d)`: zero at superbity 1; at superbity 2 equal to
/// `(-1)^(d-1) s beta_{ds+1} p` for even weight and 0 for odd; at
/// superbity 3, `(-1)^d s(ds+1)/2 beta_{ds+2} p^2` for odd weight.
fn homogeneous(comp: &SignedComposition, ell: u32) -> Option<ClosedForm> {
    if !comp.is_positive() {
        return None;
    }
    let s = comp.parts[0].magnitude();
    if comp.parts.iter().any(|x| x.magnitude() != s) {
        return None;
    }
    let d = comp.depth() as u32;
    let ds = d * s;
    match (ell, ds % 2) {
        (1, _) => Some(ClosedForm::zero()),
        (2, 1) => Some(ClosedForm::zero()),
        (2, 0) => {
            let sign = if d % 2 == 1 { 1 } else { -1 };
            Some(ClosedForm::term(rat(sign * s as i64), 1, &[ds + 1], &[]))
        }
        (3, 1) => {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let coeff = ratio(sign * (s as i64) * (ds as i64 + 1), 2);
            Some(ClosedForm::term(coeff, 2, &[ds + 2], &[]))
        }
        _ => None,
    }
}

/// Depth-1 alternating values: `zeta_{A_1}(1bar) = -2 q_2`,
/// `zeta_{A_1}(sbar) = -2(1 - 2^{1-s}) beta_s` for odd `s > 2`, and
/// `zeta_{A_2}(sbar) = s(1 - 2^{-s}) p beta_{s+1}` for even `s`.
fn depth1_alternating(s: u32, ell: u32) -> Option<ClosedForm> {
    match (ell, s % 2) {
        (1, 1) if s == 1 => Some(ClosedForm::term(rat(-2), 0, &[], &[2])),
        (1, 1) => {
            let coeff = rat(-2) * (BigRational::one() - half_pow(s - 1));
            Some(ClosedForm::term(coeff, 0, &[s], &[]))
        }
        (2, 0) => {
            let coeff = rat(s as i64) * (BigRational::one() - half_pow(s));
            Some(ClosedForm::term(coeff, 1, &[s + 1], &[]))
        }
        _ => None,
    }
}

/// `2^{-k}` as an exact rational.
fn half_pow(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2).pow(k))
}

fn depth2(comp: &SignedComposition, star: bool, ell: u32) -> Option<ClosedForm> {
    let (a, b) = (comp.parts[0], comp.parts[1]);
    let (s, t) = (a.magnitude(), b.magnitude());
    let w = s + t;
    match ell {
        1 if !a.is_barred() && !b.is_barred() => {
            // zeta = zeta_star = (-1)^s C(s+t,s) beta_{s+t}, any s,t
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let coeff = BigRational::from_integer(binom(w, s)) * rat(sign);
            Some(ClosedForm::term(coeff, 0, &[w], &[]))
        }
        1 if a.is_barred() != b.is_barred() && w % 2 == 1 => {
            // odd weight, one bar: zeta = (1 - 2^{1-w}) beta_w = -zeta_star
            let mut coeff = BigRational::one() - half_pow(w - 1);
            if star {
                coeff = -coeff;
            }
            Some(ClosedForm::term(coeff, 0, &[w], &[]))
        }
        2 if !a.is_barred() && !b.is_barred() && s % 2 == t % 2 => {
            // star and plain share the bracket; only the sign of the
            // trailing s + t differs
            let (s, t) = (s as i64, t as i64);
            let sgn_t = if t % 2 == 0 { 1 } else { -1 };
            let mut bracket = rat(sgn_t * s) * BigRational::from_integer(binom(w + 1, t as u32))
                - rat(sgn_t * t) * BigRational::from_integer(binom(w + 1, s as u32));
            bracket += rat(if star { s + t } else { -(s + t) });
            Some(ClosedForm::term(bracket / rat(2), 1, &[w + 1], &[]))
        }
        _ => None,
    }
}

fn depth3(comp: &SignedComposition, star: bool) -> Option<ClosedForm> {
    if !comp.is_positive() {
        return None;
    }
    let (l, n) = (comp.parts[0].magnitude(), comp.parts[2].magnitude());
    let w = comp.weight();
    if w % 2 == 0 {
        return None;
    }
    // zeta_star = [(-1)^l C(w,l) - (-1)^n C(w,n)] beta_w / 2 = -zeta
    let term = |k: u32| {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        BigRational::from_integer(binom(w, k)) * rat(sign)
    };
    let mut coeff = (term(l) - term(n)) / rat(2);
    if !star {
        coeff = -coeff;
    }
    Some(ClosedForm::term(coeff, 0, &[w], &[]))
}

// --- named tables -----------------------------------------------------

fn pz(ints: &[i64], ell: u32) -> ZetaSymbol {
    ZetaSymbol::plain(SignedComposition::from_ints(ints).unwrap(), ell)
}

fn sz(ints: &[i64], ell: u32) -> ZetaSymbol {
    ZetaSymbol::star(SignedComposition::from_ints(ints).unwrap(), ell)
}

fn cfb(num: i64, den: i64, p_power: u32, betas: &[u32]) -> ClosedForm {
    ClosedForm::term(ratio(num, den), p_power, betas, &[])
}

fn entry(
    table: &'static str,
    terms: Vec<(BigRational, ZetaSymbol)>,
    rhs: ClosedForm,
) -> TableEntry {
    let label = terms
        .iter()
        .map(|(c, z)| format!("{c}*{z}"))
        .collect::<Vec<_>>()
        .join(" + ");
    TableEntry {
        table,
        label,
        terms,
        printed_rhs: rhs.clone(),
        rhs,
        corrected: false,
        conjectural: false,
    }
}

fn corrected(mut e: TableEntry, printed_rhs: ClosedForm) -> TableEntry {
    e.printed_rhs = printed_rhs;
    e.corrected = true;
    e
}

fn single(table: &'static str, z: ZetaSymbol, rhs: ClosedForm) -> TableEntry {
    entry(table, vec![(rat(1), z)], rhs)
}

/// Superbity-1 FMZVs of depth 3, weight 6, in units of `beta_3^2`; star
/// and plain agree here (weight and depth have different parity).
fn wt6_depth3() -> Vec<TableEntry> {
    let data: [(&[i64], (i64, i64)); 9] = [
        (&[1, 3, 2], (-9, 2)),
        (&[1, 4, 1], (3, 1)),
        (&[1, 1, 4], (-3, 2)),
        (&[2, 1, 3], (3, 2)),
        (&[2, 3, 1], (-9, 2)),
        (&[3, 1, 2], (3, 2)),
        (&[3, 2, 1], (3, 1)),
        (&[4, 1, 1], (-3, 2)),
        (&[1, 2, 3], (3, 1)),
    ];
    let mut out = Vec::new();
    for (c, (n, d)) in data {
        let rhs = cfb(n, d, 0, &[3, 3]);
        out.push(single("wt6-depth3", pz(c, 1), rhs.clone()));
        out.push(single("wt6-depth3", sz(c, 1), rhs));
    }
    out
}

/// Superbity-1 FMZVs of depth 4, weight 7. The source table prints the
/// coefficients against `beta_7/16`, but they only verify against
/// `B_{p-7}/16 = 7 beta_7/16`; the stored forms carry the extra factor 7
/// and every entry is flagged corrected. Star and plain agree.
fn wt7_depth4() -> Vec<TableEntry> {
    let data: [(&[i64], i64); 10] = [
        (&[1, 1, 1, 4], -27),
        (&[1, 1, 2, 3], 69),
        (&[1, 1, 3, 2], -27),
        (&[1, 1, 4, 1], 33),
        (&[1, 2, 1, 3], -27),
        (&[1, 2, 2, 2], -27),
        (&[1, 2, 3, 1], -63),
        (&[1, 3, 1, 2], -9),
        (&[2, 1, 1, 3], 33),
        (&[2, 1, 2, 2], -63),
    ];
    let mut out = Vec::new();
    for (c, n) in data {
        let rhs = cfb(7 * n, 16, 0, &[7]);
        let printed = cfb(n, 16, 0, &[7]);
        out.push(corrected(single("wt7-depth4", pz(c, 1), rhs.clone()), printed.clone()));
        out.push(corrected(single("wt7-depth4", sz(c, 1), rhs), printed));
    }
    out
}

/// Superbity-2 values of weight <= 4. The three depth >= 3 weight-4
/// entries are printed without the factor `p` forced by the homogeneous
/// superbity-2 theorem; they are stored corrected.
fn superbity2_wt4() -> Vec<TableEntry> {
    let t = "superbity2-wt4";
    vec![
        single(t, pz(&[2], 2), cfb(2, 1, 1, &[3])),
        single(t, pz(&[1, 1], 2), cfb(-1, 1, 1, &[3])),
        // zeta_2(1,2) is a free generator; zeta_2(2,1) is its negative
        entry(t, vec![(rat(1), pz(&[2, 1], 2)), (rat(1), pz(&[1, 2], 2))], ClosedForm::zero()),
        single(t, pz(&[4], 2), cfb(4, 1, 1, &[5])),
        single(t, pz(&[1, 3], 2), cfb(1, 2, 1, &[5])),
        single(t, pz(&[3, 1], 2), cfb(-9, 2, 1, &[5])),
        corrected(single(t, pz(&[1, 1, 2], 2), cfb(3, 1, 1, &[5])), cfb(3, 1, 0, &[5])),
        single(t, pz(&[1, 2, 1], 2), cfb(-9, 2, 1, &[5])),
        corrected(single(t, pz(&[2, 1, 1], 2), cfb(11, 2, 1, &[5])), cfb(11, 2, 0, &[5])),
        corrected(single(t, pz(&[1, 1, 1, 1], 2), cfb(-1, 1, 1, &[5])), cfb(-1, 1, 0, &[5])),
    ]
}

/// Superbity-2 values of weight 5 against the free generator
/// `z311 = zeta_2(3,1,1)`. The printed depth-2 entries carry spurious
/// `+-3 p beta_3^2` offsets contradicting both the weight-5 theorem
/// (`zeta_2(2,3) = 2 zeta_2(4,1) = 4 z311`) and the sweep; those four are
/// stored corrected.
fn superbity2_wt5() -> Vec<TableEntry> {
    let t = "superbity2-wt5";
    let z311 = pz(&[3, 1, 1], 2);
    let with_gen = |c: &[i64], k: i64, rhs: ClosedForm| {
        entry(t, vec![(rat(1), pz(c, 2)), (rat(-k), z311.clone())], rhs)
    };
    vec![
        corrected(with_gen(&[1, 4], -2, ClosedForm::zero()), cfb(3, 1, 1, &[3, 3])),
        corrected(with_gen(&[4, 1], 2, ClosedForm::zero()), cfb(-3, 1, 1, &[3, 3])),
        with_gen(&[1, 1, 3], -1, ClosedForm::zero()),
        corrected(with_gen(&[2, 3], 4, ClosedForm::zero()), cfb(-3, 1, 1, &[3, 3])),
        with_gen(&[1, 2, 2], 3, cfb(-3, 2, 1, &[3, 3])),
        single(t, pz(&[2, 1, 2], 2), cfb(-3, 1, 1, &[3, 3])),
        corrected(with_gen(&[3, 2], -4, ClosedForm::zero()), cfb(3, 1, 1, &[3, 3])),
        with_gen(&[2, 2, 1], -3, cfb(9, 2, 1, &[3, 3])),
        single(t, pz(&[1, 3, 1], 2), ClosedForm::zero()),
    ]
}

/// Superbity-2 values of weight 6 against `alpha = zeta_2(4,1,1)`. Every
/// `beta_7` term is printed without the factor `p` forced by the weight-6
/// theorem; all 14 such entries are stored corrected.
fn superbity2_wt6() -> Vec<TableEntry> {
    let t = "superbity2-wt6";
    let alpha = pz(&[4, 1, 1], 2);
    let mut out = Vec::new();
    // depth 1 and 2 rows (also implied by the theorems)
    let pure: [(&[i64], (i64, i64)); 7] = [
        (&[6], (6, 1)),
        (&[5, 1], (-10, 1)),
        (&[1, 5], (4, 1)),
        (&[2, 4], (-10, 1)),
        (&[3, 3], (-3, 1)),
        (&[4, 2], (4, 1)),
        (&[2, 2, 2], (2, 1)),
    ];
    for (c, (n, d)) in pure {
        out.push(corrected(single(t, pz(c, 2), cfb(n, d, 1, &[7])), cfb(n, d, 0, &[7])));
    }
    // depth 3 rows referencing alpha
    let with_alpha: [(&[i64], i64, (i64, i64)); 7] = [
        (&[1, 2, 3], -2, (-11, 4)),
        (&[1, 3, 2], 3, (-65, 4)),
        (&[1, 4, 1], -2, (6, 1)),
        (&[2, 1, 3], -1, (18, 1)),
        (&[2, 3, 1], 3, (-9, 4)),
        (&[3, 1, 2], -1, (11, 1)),
        (&[3, 2, 1], -2, (17, 4)),
    ];
    for (c, k, (n, d)) in with_alpha {
        let terms = vec![(rat(1), pz(c, 2)), (rat(-k), alpha.clone())];
        out.push(corrected(entry(t, terms, cfb(n, d, 1, &[7])), cfb(n, d, 0, &[7])));
    }
    out.push(entry(
        t,
        vec![(rat(1), pz(&[1, 1, 4], 2)), (rat(-1), alpha)],
        ClosedForm::zero(),
    ));
    out
}

/// The weight-5 superbity-2 theorem, split into two-term identities.
fn wt5_superbity2_thm() -> Vec<TableEntry> {
    let t = "wt5-superbity2-thm";
    let pair = |a: (i64, ZetaSymbol), b: (i64, ZetaSymbol), rhs: ClosedForm| {
        entry(t, vec![(rat(a.0), a.1), (rat(b.0), b.1)], rhs)
    };
    vec![
        single(t, sz(&[1, 3, 1], 2), ClosedForm::zero()),
        single(t, pz(&[1, 3, 1], 2), ClosedForm::zero()),
        single(t, sz(&[2, 1, 2], 2), cfb(-3, 1, 1, &[3, 3])),
        single(t, pz(&[2, 1, 2], 2), cfb(-3, 1, 1, &[3, 3])),
        pair((1, sz(&[2, 3], 2)), (-1, pz(&[2, 3], 2)), ClosedForm::zero()),
        pair((1, pz(&[2, 3], 2)), (-2, pz(&[4, 1], 2)), ClosedForm::zero()),
        pair((1, sz(&[4, 1], 2)), (-1, pz(&[4, 1], 2)), ClosedForm::zero()),
        pair((2, sz(&[2, 2, 1], 2)), (-3, pz(&[4, 1], 2)), cfb(9, 1, 1, &[3, 3])),
        pair((2, sz(&[1, 1, 3], 2)), (-1, pz(&[4, 1], 2)), ClosedForm::zero()),
        pair((2, sz(&[3, 1, 1], 2)), (1, pz(&[4, 1], 2)), ClosedForm::zero()),
        pair((2, pz(&[1, 1, 3], 2)), (1, pz(&[4, 1], 2)), ClosedForm::zero()),
        pair((2, pz(&[3, 1, 1], 2)), (-1, pz(&[4, 1], 2)), ClosedForm::zero()),
    ]
}

/// The weight-6 superbity-2 theorem: each display line pairs a star value
/// with a plain value and expresses both through `alpha = zeta_2(4,1,1)`.
fn wt6_superbity2_thm() -> Vec<TableEntry> {
    let t = "wt6-superbity2-thm";
    let alpha = pz(&[4, 1, 1], 2);
    let mut out = vec![
        entry(t, vec![(rat(1), sz(&[1, 1, 4], 2)), (rat(-1), sz(&[4, 1, 1], 2))], ClosedForm::zero()),
        entry(t, vec![(rat(1), sz(&[4, 1, 1], 2)), (rat(-1), pz(&[1, 1, 4], 2))], ClosedForm::zero()),
        entry(t, vec![(rat(1), pz(&[1, 1, 4], 2)), (rat(-1), alpha.clone())], ClosedForm::zero()),
    ];
    // (star comp, plain comp, alpha multiple, p*beta_7 coefficient)
    let lines: [(&[i64], &[i64], i64, (i64, i64)); 7] = [
        (&[1, 4, 1], &[1, 4, 1], -2, (6, 1)),
        (&[2, 3, 1], &[1, 3, 2], 3, (-65, 4)),
        (&[1, 2, 3], &[3, 2, 1], -2, (17, 4)),
        (&[2, 1, 3], &[3, 1, 2], -1, (11, 1)),
        (&[1, 3, 2], &[2, 3, 1], 3, (-9, 4)),
        (&[3, 2, 1], &[1, 2, 3], -2, (-11, 4)),
        (&[3, 1, 2], &[2, 1, 3], -1, (18, 1)),
    ];
    for (starc, plainc, k, (n, d)) in lines {
        out.push(entry(
            t,
            vec![(rat(1), sz(starc, 2)), (rat(-1), pz(plainc, 2))],
            ClosedForm::zero(),
        ));
        out.push(entry(
            t,
            vec![(rat(1), pz(plainc, 2)), (rat(-k), alpha.clone())],
            cfb(n, d, 1, &[7]),
        ));
    }
    out
}

/// The eight conjectural superbity-2 relations, normalized to `lhs = 0`.
fn conjectural_superbity2() -> Vec<TableEntry> {
    let t = "conjectural-superbity2";
    let rows: [&[(i64, &[i64])]; 8] = [
        &[(68, &[2, 3, 1, 1]), (480, &[1, 1, 1, 1, 1, 2]), (-716, &[1, 1, 1, 4]), (843, &[1, 6])],
        &[(34, &[3, 1, 1, 2]), (585, &[1, 1, 1, 1, 1, 2]), (-998, &[1, 1, 1, 4]), (1029, &[1, 6])],
        &[(68, &[3, 3, 1]), (-1730, &[1, 1, 1, 1, 1, 2]), (2480, &[1, 1, 1, 4]), (-2319, &[1, 6])],
        &[(12, &[5, 1, 1, 1]), (73, &[1, 1, 1, 1, 1, 1, 2]), (-12, &[1, 1, 6]), (3, &[1, 2, 5])],
        &[
            (84, &[3, 2, 1, 3]),
            (995, &[1, 8]),
            (-952, &[1, 1, 1, 6]),
            (1288, &[1, 1, 1, 1, 1, 4]),
            (437, &[1, 1, 1, 1, 1, 1, 1, 2]),
            (624, &[1, 2, 6]),
        ],
        &[
            (924, &[2, 1, 3, 3]),
            (-2509, &[1, 8]),
            (6356, &[1, 1, 1, 6]),
            (-5432, &[1, 1, 1, 1, 1, 4]),
            (180, &[1, 1, 1, 1, 1, 1, 1, 2]),
            (-801, &[1, 2, 6]),
        ],
        &[
            (924, &[2, 3, 1, 3]),
            (9424, &[1, 8]),
            (5824, &[1, 1, 1, 6]),
            (-11368, &[1, 1, 1, 1, 1, 4]),
            (3807, &[1, 1, 1, 1, 1, 1, 1, 2]),
            (-852, &[1, 2, 6]),
        ],
        &[
            (36, &[1, 2, 5, 1]),
            (-358, &[1, 8]),
            (248, &[1, 1, 1, 6]),
            (-464, &[1, 1, 1, 1, 1, 4]),
            (-5, &[1, 1, 1, 1, 1, 1, 1, 2]),
            (-147, &[1, 2, 6]),
        ],
    ];
    rows.iter()
        .map(|row| {
            let terms = row.iter().map(|&(k, c)| (rat(k), pz(c, 2))).collect();
            let mut e = entry(t, terms, ClosedForm::zero());
            e.conjectural = true;
            e
        })
        .collect()
}

/// Theorem instances generated over a weight range, exposed as tables for
/// sweep verification.
fn theorem_table(name: &str) -> Option<Vec<TableEntry>> {
    let mut out = Vec::new();
    match name {
        "fes-depth1" => {
            for s in 1..=9u32 {
                for ell in 1..=2u32 {
                    if let Some(cf) = depth1_alternating(s, ell) {
                        out.push(single(
                            "fes-depth1",
                            ZetaSymbol::plain(
                                SignedComposition::from_ints(&[-(s as i64)]).unwrap(),
                                ell,
                            ),
                            cf,
                        ));
                    }
                }
            }
        }
        "depth2" => {
            for s in 1..=8i64 {
                for t in 1..=8i64 {
                    if s + t > 9 {
                        continue;
                    }
                    for (signs, ell) in [([1, 1], 1), ([-1, 1], 1), ([1, -1], 1), ([1, 1], 2)] {
                        let ints = [signs[0] * s, signs[1] * t];
                        for star in [false, true] {
                            let comp = SignedComposition::from_ints(&ints).unwrap();
                            if let Some(cf) = depth2(&comp, star, ell) {
                                let z = ZetaSymbol::new(comp, star, ell, 0).unwrap();
                                out.push(single("depth2", z, cf));
                            }
                        }
                    }
                }
            }
        }
        "depth3" => {
            for l in 1..=7i64 {
                for m in 1..=7i64 {
                    for n in 1..=7i64 {
                        if l + m + n > 9 || (l + m + n) % 2 == 0 {
                            continue;
                        }
                        let comp = SignedComposition::from_ints(&[l, m, n]).unwrap();
                        for star in [false, true] {
                            let cf = depth3(&comp, star).unwrap();
                            let z = ZetaSymbol::new(comp.clone(), star, 1, 0).unwrap();
                            out.push(single("depth3", z, cf));
                        }
                    }
                }
            }
        }
        "homogeneous" => {
            for s in 1..=10u32 {
                for d in 1..=10u32 {
                    if s * d > 10 {
                        continue;
                    }
                    let comp = SignedComposition::from_positive(&vec![s; d as usize]);
                    for ell in 1..=3u32 {
                        if let Some(cf) = homogeneous(&comp, ell) {
                            out.push(single(
                                "homogeneous",
                                ZetaSymbol::plain(comp.clone(), ell),
                                cf,
                            ));
                        }
                    }
                }
            }
        }
        _ => return None,
    }
    Some(out)
}

/// All table names accepted by [`table_entries`].
pub fn table_names() -> &'static [&'static str] {
    &[
        "wt6-depth3",
        "wt7-depth4",
        "superbity2-wt4",
        "superbity2-wt5",
        "superbity2-wt6",
        "wt5-superbity2-thm",
        "wt6-superbity2-thm",
        "conjectural-superbity2",
        "fes-depth1",
        "depth2",
        "depth3",
        "homogeneous",
    ]
}

/// The rows of one named table.
pub fn table_entries(name: &str) -> Result<Vec<TableEntry>> {
    match name {
        "wt6-depth3" => Ok(wt6_depth3()),
        "wt7-depth4" => Ok(wt7_depth4()),
        "superbity2-wt4" => Ok(superbity2_wt4()),
        "superbity2-wt5" => Ok(superbity2_wt5()),
        "superbity2-wt6" => Ok(superbity2_wt6()),
        "wt5-superbity2-thm" => Ok(wt5_superbity2_thm()),
        "wt6-superbity2-thm" => Ok(wt6_superbity2_thm()),
        "conjectural-superbity2" => Ok(conjectural_superbity2()),
        other => theorem_table(other).ok_or_else(|| Error::UnknownTable(other.into())),
    }
}

/// Every entry of the finite (non-generated) tables; the alias rows among
/// these feed the relation generator.
pub fn static_table_entries() -> Vec<TableEntry> {
    let mut out = Vec::new();
    for name in [
        "wt6-depth3",
        "wt7-depth4",
        "superbity2-wt4",
        "superbity2-wt5",
        "superbity2-wt6",
        "wt5-superbity2-thm",
        "wt6-superbity2-thm",
    ] {
        out.extend(table_entries(name).unwrap());
    }
    out
}

/// Single-symbol closed forms contributed by the static tables.
fn table_map() -> &'static HashMap<(SignedComposition, bool, u32), ClosedForm> {
    static MAP: OnceLock<HashMap<(SignedComposition, bool, u32), ClosedForm>> = OnceLock::new();
    MAP.get_or_init(|| {
        let mut map = HashMap::new();
        for e in static_table_entries() {
            if e.terms.len() == 1 && e.terms[0].0.is_one() {
                let z = &e.terms[0].1;
                map.entry((z.comp.clone(), z.star && z.comp.depth() > 1, z.ell))
                    .or_insert_with(|| e.rhs.clone());
            }
        }
        map
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{bernoulli_mod_p, eval_symbol, ClosedForm};
    use crate::modring::{primes_in, PrimeContext};

    fn cf_of(ints: &[i64], ell: u32) -> Option<ClosedForm> {
        lookup(&pz(ints, ell))
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(cf_of(&[1, 3, 2], 1).unwrap(), cfb(-9, 2, 0, &[3, 3]));
        // depth-2 theorem: zeta(4,1) = C(5,4) beta_5
        assert_eq!(cf_of(&[4, 1], 1).unwrap(), cfb(5, 1, 0, &[5]));
        // homogeneous compositions vanish at superbity 1
        for ints in [&[3][..], &[2, 2], &[1, 1, 1, 1]] {
            assert!(cf_of(ints, 1).unwrap().is_zero());
        }
        assert_eq!(cf_of(&[2], 2).unwrap(), cfb(2, 1, 1, &[3]));
        assert_eq!(cf_of(&[-1], 1).unwrap(), ClosedForm::term(rat(-2), 0, &[], &[2]));
        // free generators have no closed form
        assert!(cf_of(&[1, 2], 2).is_none());
        assert!(cf_of(&[3, 1, 1], 2).is_none());
        assert!(cf_of(&[-2], 1).is_none());
    }

    #[test]
    fn reversal_fallback_extends_weight7_table() {
        // (3,1,1,2) reversed is (2,1,1,3) with table value 231/16 beta_7;
        // odd weight flips the sign
        assert_eq!(cf_of(&[3, 1, 1, 2], 1).unwrap(), cfb(-231, 16, 0, &[7]));
        assert_eq!(cf_of(&[4, 1, 1, 1], 1).unwrap(), cfb(189, 16, 0, &[7]));
        // neither (2,2,1,1,1) nor its reverse is tabulated
        assert!(cf_of(&[2, 2, 1, 1, 1], 1).is_none());
    }

    #[test]
    fn p_power_symbols_reduce_superbity() {
        // p * zeta_{A_2}(2) = p * (zeta_{A_1}(2) lifted) = 0 since
        // zeta_{A_1}(2) = 0
        let z = ZetaSymbol::new(SignedComposition::from_ints(&[2]).unwrap(), false, 2, 1).unwrap();
        assert!(lookup(&z).unwrap().is_zero());
        let z = ZetaSymbol::new(SignedComposition::from_ints(&[-1]).unwrap(), false, 2, 1).unwrap();
        assert_eq!(lookup(&z).unwrap(), ClosedForm::term(rat(-2), 1, &[], &[2]));
    }

    #[test]
    fn grade_consistency_of_catalog() {
        for e in static_table_entries() {
            let grade = e.terms[0].1.grade() as i64;
            for (_, z) in &e.terms {
                assert_eq!(z.grade() as i64, grade, "{}", e.label);
            }
            if let Some(g) = e.rhs.grade() {
                assert_eq!(g, grade, "{}", e.label);
            }
        }
    }

    #[test]
    fn table_registry() {
        for name in table_names() {
            assert!(!table_entries(name).unwrap().is_empty(), "{name}");
        }
        assert!(matches!(table_entries("nope"), Err(Error::UnknownTable(_))));
        let conj = table_entries("conjectural-superbity2").unwrap();
        assert_eq!(conj.len(), 8);
        assert!(conj.iter().all(|e| e.conjectural));
        // corrected counts documented in the catalog
        let count = |name: &str| {
            table_entries(name)
                .unwrap()
                .iter()
                .filter(|e| e.corrected)
                .count()
        };
        assert_eq!(count("superbity2-wt4"), 3);
        assert_eq!(count("superbity2-wt5"), 4);
        assert_eq!(count("superbity2-wt6"), 14);
        assert_eq!(count("wt7-depth4"), 20);
        assert_eq!(count("wt6-depth3"), 0);
    }

    /// The central correctness property at small scale: every table entry
    /// and every catalog hit verifies numerically. The full-range sweep
    /// lives in the acceptance tests.
    #[test]
    fn tables_verify_at_small_primes() {
        for name in table_names() {
            for e in table_entries(name).unwrap() {
                let ell = e.superbity();
                for p in primes_in(e.min_prime(), 31) {
                    let ctx = PrimeContext::new(p, ell).unwrap();
                    let bern = bernoulli_mod_p(p);
                    let mut lhs = 0u64;
                    for (c, z) in &e.terms {
                        let v = eval_symbol(z, p).unwrap();
                        lhs = ctx.add(lhs, ctx.mul(ctx.iota(c), v));
                    }
                    let rhs = e.rhs.eval(&ctx, &bern, false).unwrap();
                    assert_eq!(lhs, rhs, "{name}: {} at p={p}", e.label);
                }
            }
        }
    }

    #[test]
    fn catalog_hits_verify_numerically() {
        use crate::sigcomp::enumerate;
        for w in 1..=6u32 {
            for comp in enumerate(w, true) {
                for ell in 1..=2u32 {
                    for star in [false, true] {
                        let z = ZetaSymbol::new(comp.clone(), star, ell, 0).unwrap();
                        let Some(cf) = lookup(&z) else { continue };
                        for p in primes_in(z.min_prime().max(cf.max_beta() as u64 + 2), 41) {
                            let ctx = PrimeContext::new(p, ell).unwrap();
                            let bern = bernoulli_mod_p(p);
                            assert_eq!(
                                eval_symbol(&z, p).unwrap(),
                                cf.eval(&ctx, &bern, false).unwrap(),
                                "{z} = {cf} fails at p={p}"
                            );
                        }
                    }
                }
            }
        }
    }
}
