//! Evaluation of alternating multiple harmonic sums modulo prime powers,
//! zeta symbols, the Bernoulli and Fermat-quotient generators, and closed
//! forms built from them.

use crate::modring::PrimeContext;
use crate::sigcomp::SignedComposition;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

pub mod catalog;

/// Serde helpers for exact rationals as "num/den" strings.
pub mod rat_str {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        if r.denom().is_one() {
            s.serialize_str(&r.numer().to_string())
        } else {
            s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).ok_or_else(|| de::Error::custom(format!("bad rational {text:?}")))
    }

    pub fn parse(text: &str) -> Option<BigRational> {
        let mut it = text.splitn(2, '/');
        let numer = BigInt::from_str(it.next()?.trim()).ok()?;
        let denom = match it.next() {
            Some(d) => BigInt::from_str(d.trim()).ok()?,
            None => BigInt::one(),
        };
        if denom == BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(numer, denom))
    }
}

/// A symbol denoting `p^j * zeta(star)_{A_ell}(comp)`. Its grade (effective
/// weight for universe indexing) is `|comp| - j`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZetaSymbol {
    pub comp: SignedComposition,
    pub star: bool,
    pub ell: u32,
    pub p_power: u32,
}

impl ZetaSymbol {
    pub fn new(comp: SignedComposition, star: bool, ell: u32, p_power: u32) -> Result<Self> {
        if !(1..=4).contains(&ell) {
            return Err(Error::SuperbityOutOfRange(ell));
        }
        if p_power >= ell {
            return Err(Error::BadArgument(format!(
                "p-power {p_power} not below superbity {ell}: the symbol is 0"
            )));
        }
        Ok(ZetaSymbol { comp, star, ell, p_power })
    }

    pub fn plain(comp: SignedComposition, ell: u32) -> Self {
        Self::new(comp, false, ell, 0).unwrap()
    }

    pub fn star(comp: SignedComposition, ell: u32) -> Self {
        Self::new(comp, true, ell, 0).unwrap()
    }

    /// The grade `|comp| - p_power`.
    pub fn grade(&self) -> u32 {
        self.comp.weight() - self.p_power
    }

    /// Smallest admissible prime: the evaluation guard requires
    /// `p > |comp| + 2`.
    pub fn min_prime(&self) -> u64 {
        self.comp.weight() as u64 + 3
    }
}

impl fmt::Display for ZetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p_power > 0 {
            write!(f, "p^{}*", self.p_power)?;
        }
        write!(
            f,
            "zeta{}_{}({})",
            if self.star { "*" } else { "" },
            self.ell,
            self.comp
        )
    }
}

/// `H_n(s)` (or the star variant) mod `p^ell`, by the prefix-sum dynamic
/// program working from the innermost index outward. Needs `n < p` so all
/// denominators are invertible.
pub fn amhs(s: &SignedComposition, n: u64, ctx: &PrimeContext, star: bool) -> Result<u64> {
    if n >= ctx.prime() {
        return Err(Error::IndexNotInvertible { n, p: ctx.prime() });
    }
    if (n as usize) < s.depth() && !star {
        return Ok(0);
    }
    // g[k] = H_k(tail) for the tail processed so far; start with the empty
    // composition where H_k = 1 for every k >= 0.
    let mut g: Vec<u64> = vec![1 % ctx.modulus(); n as usize + 1];
    for part in s.parts.iter().rev() {
        let mut next = vec![0u64; n as usize + 1];
        let mut acc = 0u64;
        for k in 1..=n {
            let mut t = ctx.inv_pow(k, part.magnitude());
            if part.is_barred() && k % 2 == 1 {
                t = ctx.neg(t);
            }
            let inner = if star { g[k as usize] } else { g[k as usize - 1] };
            acc = ctx.add(acc, ctx.mul(t, inner));
            next[k as usize] = acc;
        }
        g = next;
    }
    Ok(g[n as usize])
}

/// Reference oracle: direct summation over all strictly (or weakly, for
/// star) decreasing index tuples. Exponential in depth; small `n` only.
pub fn amhs_bruteforce(
    s: &SignedComposition,
    n: u64,
    ctx: &PrimeContext,
    star: bool,
) -> Result<u64> {
    if n >= ctx.prime() {
        return Err(Error::IndexNotInvertible { n, p: ctx.prime() });
    }
    fn rec(
        parts: &[crate::sigcomp::SignedIndex],
        upper: u64,
        ctx: &PrimeContext,
        star: bool,
    ) -> u64 {
        let Some((first, rest)) = parts.split_first() else {
            return 1 % ctx.modulus();
        };
        let mut total = 0u64;
        for k in 1..=upper {
            let mut t = ctx.inv_pow(k, first.magnitude());
            if first.is_barred() && k % 2 == 1 {
                t = ctx.neg(t);
            }
            let next_upper = if star { k } else { k - 1 };
            total = ctx.add(total, ctx.mul(t, rec(rest, next_upper, ctx, star)));
        }
        total
    }
    Ok(rec(&s.parts, n, ctx, star))
}

/// Evaluate a zeta symbol at one prime: `p^j * H_{p-1}(comp) mod p^ell`.
pub fn eval_symbol(z: &ZetaSymbol, p: u64) -> Result<u64> {
    let ctx = PrimeContext::new(p, z.ell)?;
    eval_symbol_with(z, &ctx)
}

/// As [`eval_symbol`] with a prepared context (must match the symbol's
/// superbity).
pub fn eval_symbol_with(z: &ZetaSymbol, ctx: &PrimeContext) -> Result<u64> {
    assert_eq!(ctx.superbity(), z.ell);
    let p = ctx.prime();
    if p < z.min_prime() {
        return Err(Error::PrimeTooSmall { p, min: z.min_prime() - 1 });
    }
    let h = amhs(&z.comp, p - 1, ctx, z.star)?;
    Ok(ctx.mul(ctx.pow(p, z.p_power as u64), h))
}

/// The table `B_0 .. B_{p-2} mod p` from the classical recurrence
/// `sum_{j=0}^{m} C(m+1,j) B_j = 0`. Quadratic in `p`; independent of the
/// harmonic-sum code paths so it can serve as an oracle for them.
pub fn bernoulli_mod_p(p: u64) -> Vec<u64> {
    assert!(p >= 5, "bernoulli_mod_p needs p >= 5");
    let ctx = PrimeContext::new(p, 1).expect("prime required");
    let len = (p - 1) as usize;
    let mut table = vec![0u64; len];
    table[0] = 1;
    for m in 1..len as u64 {
        // running binomial c = C(m+1, j)
        let mut c = 1u64;
        let mut sum = 0u64;
        for j in 0..m {
            sum = ctx.add(sum, ctx.mul(c, table[j as usize]));
            c = ctx.mul(ctx.mul(c, (m + 1 - j) % p), ctx.inv(j + 1));
        }
        table[m as usize] = ctx.neg(ctx.mul(sum, ctx.inv(m + 1)));
    }
    table
}

/// `beta_k = B_{p-k}/k mod p`, with `beta_1 = 1` by convention and
/// `beta_{2k} = 0`. Requires an odd `k <= p-2` otherwise (`bern` is the
/// output of [`bernoulli_mod_p`]).
pub fn beta(k: u32, p: u64, bern: &[u64]) -> Result<u64> {
    if k == 1 {
        return Ok(1);
    }
    if k % 2 == 0 {
        return Ok(0);
    }
    if (k as u64) > p - 2 {
        return Err(Error::GeneratorOutOfRange { what: "beta", k, p });
    }
    let ctx = PrimeContext::new(p, 1)?;
    Ok(ctx.mul(bern[(p - k as u64) as usize], ctx.inv(k as u64)))
}

/// The Fermat quotient `q_k = (k^{p-1} - 1)/p mod p`, for `2 <= k < p`.
pub fn fermat_q(k: u32, p: u64) -> Result<u64> {
    if (k as u64) < 2 || (k as u64) >= p {
        return Err(Error::GeneratorOutOfRange { what: "fermat quotient", k, p });
    }
    let ctx2 = PrimeContext::new(p, 2)?;
    let r = ctx2.pow(k as u64, p - 1);
    debug_assert_eq!(r % p, 1);
    Ok(((r - 1) / p) % p)
}

/// One monomial of a closed form: `coeff * p^a * prod beta_k * prod q_k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ClosedFormTerm {
    #[serde(with = "rat_str")]
    pub coeff: BigRational,
    pub p_power: u32,
    pub beta: Vec<u32>,
    pub q: Vec<u32>,
}

impl ClosedFormTerm {
    /// Grade of the monomial: each `beta_k` counts `k`, each Fermat quotient
    /// counts 1, and a factor `p` counts -1 (consistent with symbol grading,
    /// e.g. `p*beta_7` spans weight 6).
    pub fn grade(&self) -> i64 {
        self.beta.iter().map(|&k| k as i64).sum::<i64>() + self.q.len() as i64
            - self.p_power as i64
    }
}

/// A rational linear combination of generator monomials; the right-hand
/// side language for catalog entries and relations.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClosedForm {
    pub terms: Vec<ClosedFormTerm>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        ClosedForm { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(r: BigRational) -> Self {
        Self::term(r, 0, &[], &[])
    }

    /// Build a one-term form. An even beta subscript annihilates the term
    /// (`beta_{2k} = 0`); `beta_1 = 1` is dropped as a factor.
    pub fn term(coeff: BigRational, p_power: u32, beta: &[u32], q: &[u32]) -> Self {
        if coeff.is_zero() || beta.iter().any(|&k| k % 2 == 0) {
            return Self::zero();
        }
        let mut beta: Vec<u32> = beta.iter().copied().filter(|&k| k != 1).collect();
        beta.sort_unstable();
        let mut q = q.to_vec();
        q.sort_unstable();
        ClosedForm {
            terms: vec![ClosedFormTerm { coeff, p_power, beta, q }],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ClosedForm) -> ClosedForm {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        ClosedForm { terms }.normalized()
    }

    pub fn scale(&self, c: &BigRational) -> ClosedForm {
        if c.is_zero() {
            return Self::zero();
        }
        ClosedForm {
            terms: self
                .terms
                .iter()
                .map(|t| ClosedFormTerm { coeff: &t.coeff * c, ..t.clone() })
                .collect(),
        }
    }

    pub fn neg(&self) -> ClosedForm {
        self.scale(&-BigRational::one())
    }

    pub fn mul(&self, other: &ClosedForm) -> ClosedForm {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let mut beta: Vec<u32> = a.beta.iter().chain(&b.beta).copied().collect();
                beta.sort_unstable();
                let mut q: Vec<u32> = a.q.iter().chain(&b.q).copied().collect();
                q.sort_unstable();
                terms.push(ClosedFormTerm {
                    coeff: &a.coeff * &b.coeff,
                    p_power: a.p_power + b.p_power,
                    beta,
                    q,
                });
            }
        }
        ClosedForm { terms }.normalized()
    }

    /// Multiply by `p^j`.
    pub fn shift_p(&self, j: u32) -> ClosedForm {
        ClosedForm {
            terms: self
                .terms
                .iter()
                .map(|t| ClosedFormTerm { p_power: t.p_power + j, ..t.clone() })
                .collect(),
        }
    }

    /// Sort terms, merge duplicates, drop zero coefficients.
    pub fn normalized(&self) -> ClosedForm {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| {
            (a.p_power, &a.beta, &a.q).cmp(&(b.p_power, &b.beta, &b.q))
        });
        let mut merged: Vec<ClosedFormTerm> = Vec::new();
        for t in terms {
            match merged.last_mut() {
                Some(last)
                    if last.p_power == t.p_power && last.beta == t.beta && last.q == t.q =>
                {
                    last.coeff += &t.coeff;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        ClosedForm { terms: merged }
    }

    /// Common grade of all terms, if the form is graded (`None` for the
    /// zero form, which matches any grade).
    pub fn grade(&self) -> Option<i64> {
        let mut it = self.terms.iter().map(ClosedFormTerm::grade);
        let first = it.next()?;
        if it.all(|g| g == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Evaluate mod `p^ell`. Terms carrying generator factors must have
    /// `p_power >= ell - 1`, since `beta_k` and `q_k` are only defined mod
    /// `p`; violations are errors unless `lenient` (used to re-check table
    /// entries exactly as printed, with the canonical lift of the
    /// generators).
    pub fn eval(
        &self,
        ctx: &PrimeContext,
        bern: &[u64],
        lenient: bool,
    ) -> Result<u64> {
        let ell = ctx.superbity();
        let p = ctx.prime();
        let mut total = 0u64;
        for t in &self.terms {
            if !lenient && (!t.beta.is_empty() || !t.q.is_empty()) && t.p_power + 1 < ell {
                return Err(Error::ClosedFormGradeViolation {
                    a: t.p_power,
                    min: ell - 1,
                });
            }
            if t.p_power >= ell {
                continue;
            }
            let mut v = ctx.iota(&t.coeff);
            v = ctx.mul(v, ctx.pow(p, t.p_power as u64));
            for &k in &t.beta {
                v = ctx.mul(v, beta(k, p, bern)?);
            }
            for &k in &t.q {
                v = ctx.mul(v, fermat_q(k, p)? % ctx.modulus());
            }
            total = ctx.add(total, v);
        }
        Ok(total)
    }

    /// Largest generator subscript used, to size the Bernoulli table guard.
    pub fn max_beta(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|t| t.beta.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn has_generators(&self) -> bool {
        self.terms.iter().any(|t| !t.beta.is_empty() || !t.q.is_empty())
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.coeff)?;
            if t.p_power > 0 {
                write!(f, "*p^{}", t.p_power)?;
            }
            for &k in &t.beta {
                write!(f, "*b{k}")?;
            }
            for &k in &t.q {
                write!(f, "*q{k}")?;
            }
        }
        Ok(())
    }
}

/// Convenience wrapper computing the Bernoulli table on demand.
pub fn eval_closed_form(cf: &ClosedForm, p: u64, ell: u32) -> Result<u64> {
    let ctx = PrimeContext::new(p, ell)?;
    let bern = bernoulli_mod_p(p);
    cf.eval(&ctx, &bern, false)
}

/// `C(n, k)` as an exact integer.
pub fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
