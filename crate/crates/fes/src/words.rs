//! The level-1 and level-2 word algebras.
//!
//! The y-alphabet is the canonical carrier: a y-word is a sequence of
//! letters `y_{n,sign}` and is identified with a [`SignedComposition`]
//! through the bijection `W`, so we reuse that type directly. The
//! x-alphabet `{x0, x+, x-}` exists only at the shuffle and phi boundary,
//! with `y_{n,sign} = x0^(n-1) x_sign`.

use crate::sigcomp::{SignedComposition, SignedIndex};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Neg};

/// A y-word; `W` identifies it with a signed composition letterwise.
pub type YWord = SignedComposition;

/// One letter of the x-alphabet. `XPlus` doubles as the level-1 letter `x1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum XLetter {
    X0,
    XPlus,
    XMinus,
}

pub type XWord = Vec<XLetter>;

/// A finite formal rational-linear combination of words; zero coefficients
/// are never stored. The `BTreeMap` keeps serialization deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinComb<T: Ord + Clone> {
    terms: BTreeMap<T, BigRational>,
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn single(word: T) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, BigRational::one());
        LinComb { terms }
    }

    pub fn add_term(&mut self, word: T, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &T) -> BigRational {
        self.terms.get(word).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (T, BigRational)> {
        self.terms.into_iter()
    }

    pub fn map_words<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }
}

impl<T: Ord + Clone> Add for LinComb<T> {
    type Output = LinComb<T>;
    fn add(self, rhs: LinComb<T>) -> LinComb<T> {
        let mut out = self;
        for (w, c) in rhs.terms {
            out.add_term(w, c);
        }
        out
    }
}

impl<T: Ord + Clone> Neg for LinComb<T> {
    type Output = LinComb<T>;
    fn neg(self) -> LinComb<T> {
        LinComb {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<T: Ord + Clone> FromIterator<(T, BigRational)> for LinComb<T> {
    fn from_iter<I: IntoIterator<Item = (T, BigRational)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (w, c) in iter {
            out.add_term(w, c);
        }
        out
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// y-word to x-word: `y_{n,sign} = x0^(n-1) x_sign`.
pub fn y_to_x(w: &YWord) -> XWord {
    let mut out = Vec::with_capacity(w.weight() as usize);
    for letter in &w.parts {
        out.extend(std::iter::repeat(XLetter::X0).take(letter.magnitude() as usize - 1));
        out.push(if letter.is_barred() { XLetter::XMinus } else { XLetter::XPlus });
    }
    out
}

/// x-word to y-word; fails when the word ends in `x0`.
pub fn x_to_y(w: &XWord) -> Result<YWord> {
    if w.last() == Some(&XLetter::X0) {
        return Err(Error::XWordEndsInX0);
    }
    let mut parts = Vec::new();
    let mut run = 0u32;
    for &l in w {
        match l {
            XLetter::X0 => run += 1,
            XLetter::XPlus => {
                parts.push(SignedIndex::positive(run + 1));
                run = 0;
            }
            XLetter::XMinus => {
                parts.push(SignedIndex::barred(run + 1));
                run = 0;
            }
        }
    }
    Ok(SignedComposition::new(parts))
}

/// Recursive stuffle product on y-words:
/// `y_m u * y_n v = y_m (u * y_n v) + y_n (y_m u * v) + y_{m+n} (u * v)`.
pub fn stuffle(u: &YWord, v: &YWord) -> LinComb<YWord> {
    if u.is_empty() {
        return LinComb::single(v.clone());
    }
    if v.is_empty() {
        return LinComb::single(u.clone());
    }
    let (a, u_rest) = (u.parts[0], SignedComposition::new(u.parts[1..].to_vec()));
    let (b, v_rest) = (v.parts[0], SignedComposition::new(v.parts[1..].to_vec()));
    let mut out = LinComb::zero();
    for (w, c) in stuffle(&u_rest, v).iter() {
        let mut parts = vec![a];
        parts.extend_from_slice(&w.parts);
        out.add_term(SignedComposition::new(parts), c.clone());
    }
    for (w, c) in stuffle(u, &v_rest).iter() {
        let mut parts = vec![b];
        parts.extend_from_slice(&w.parts);
        out.add_term(SignedComposition::new(parts), c.clone());
    }
    for (w, c) in stuffle(&u_rest, &v_rest).iter() {
        let mut parts = vec![a.oplus(&b)];
        parts.extend_from_slice(&w.parts);
        out.add_term(SignedComposition::new(parts), c.clone());
    }
    out
}

/// Bilinear extension of the stuffle product.
pub fn stuffle_lin(a: &LinComb<YWord>, b: &LinComb<YWord>) -> LinComb<YWord> {
    let mut out = LinComb::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            let prod = stuffle(u, v);
            for (w, c) in prod.iter() {
                out.add_term(w.clone(), c * cu * cv);
            }
        }
    }
    out
}

/// Recursive shuffle product on x-words:
/// `x u sh y v = x (u sh y v) + y (x u sh v)`.
pub fn shuffle(u: &XWord, v: &XWord) -> LinComb<XWord> {
    if u.is_empty() {
        return LinComb::single(v.clone());
    }
    if v.is_empty() {
        return LinComb::single(u.clone());
    }
    let mut out = LinComb::zero();
    for (w, c) in shuffle(&u[1..].to_vec(), v).iter() {
        let mut word = vec![u[0]];
        word.extend_from_slice(w);
        out.add_term(word, c.clone());
    }
    for (w, c) in shuffle(u, &v[1..].to_vec()).iter() {
        let mut word = vec![v[0]];
        word.extend_from_slice(w);
        out.add_term(word, c.clone());
    }
    out
}

/// The decoding transform `p` from integral encoding to summation signs.
/// An integral-encoded word carries at each slot the running product of the
/// summation signs, so decoding takes the ratio of consecutive input signs.
/// Magnitudes are unchanged.
pub fn p_forward(w: &YWord) -> YWord {
    let mut prev = 1i32;
    let parts = w
        .parts
        .iter()
        .map(|l| {
            let sign = prev * l.sign();
            prev = l.sign();
            SignedIndex::new(l.magnitude(), sign)
        })
        .collect();
    SignedComposition::new(parts)
}

/// Inverse of [`p_forward`]: signs become the running products of the input
/// signs, producing the integral encoding of a summation composition.
pub fn p_inverse(w: &YWord) -> YWord {
    let mut acc = 1i32;
    let parts = w
        .parts
        .iter()
        .map(|l| {
            acc *= l.sign();
            SignedIndex::new(l.magnitude(), acc)
        })
        .collect();
    SignedComposition::new(parts)
}

/// The map `tau` on level-1 words: sign `(-1)^weight`, word reversed.
pub fn tau(w: &YWord) -> Result<(i32, YWord)> {
    if !w.is_positive() {
        return Err(Error::NotLevelOne);
    }
    let sign = if w.weight() % 2 == 0 { 1 } else { -1 };
    Ok((sign, w.reverse()))
}

/// The involution `phi` on level-1 x-word combinations:
/// `phi(x0) = x0 + x1`, `phi(x1) = -x1`, extended multiplicatively.
pub fn phi(c: &LinComb<XWord>) -> Result<LinComb<XWord>> {
    let mut out = LinComb::zero();
    for (w, coeff) in c.iter() {
        // expand the product of per-letter images
        let mut acc: LinComb<XWord> = LinComb::single(Vec::new());
        for &l in w {
            let image: Vec<(XLetter, BigRational)> = match l {
                XLetter::X0 => vec![(XLetter::X0, rat(1)), (XLetter::XPlus, rat(1))],
                XLetter::XPlus => vec![(XLetter::XPlus, rat(-1))],
                XLetter::XMinus => return Err(Error::NotLevelOne),
            };
            let mut next = LinComb::zero();
            for (prefix, cp) in acc.iter() {
                for (letter, cl) in &image {
                    let mut word = prefix.clone();
                    word.push(*letter);
                    next.add_term(word, cp * cl);
                }
            }
            acc = next;
        }
        for (w2, c2) in acc.iter() {
            out.add_term(w2.clone(), c2 * coeff);
        }
    }
    Ok(out)
}

/// Direction for [`star_expand`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StarDirection {
    /// `zeta_star(s) = sum over coarsenings t of s of zeta(t)`
    StarToPlain,
    /// `zeta(s) = sum over coarsenings t of s of (-1)^(dep s - dep t) zeta_star(t)`
    PlainToStar,
}

/// Expand a star value into plain values over the coarsening order, or back.
pub fn star_expand(s: &SignedComposition, dir: StarDirection) -> LinComb<SignedComposition> {
    let d = s.depth();
    let mut out = LinComb::zero();
    for t in s.coarsenings() {
        let c = match dir {
            StarDirection::StarToPlain => rat(1),
            StarDirection::PlainToStar => {
                if (d - t.depth()) % 2 == 0 {
                    rat(1)
                } else {
                    rat(-1)
                }
            }
        };
        out.add_term(t, c);
    }
    out
}

/// Which antipode expansion to produce.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AntipodeMode {
    /// `E_{rev s}` as signed products of `M` over ordered splittings.
    MToConcat,
    /// `M_{rev s}` as signed products of `E` over ordered splittings.
    EToConcat,
}

/// The signed ordered splittings `(sign, [s_1, ..., s_r])` with
/// `sign = (-1)^(d + r)`, shared by both antipode expansions.
pub fn antipode_expand(
    s: &SignedComposition,
    _mode: AntipodeMode,
) -> Vec<(i32, Vec<SignedComposition>)> {
    let d = s.depth();
    s.splittings()
        .into_iter()
        .map(|blocks| {
            let r = blocks.len();
            let sign = if (d + r) % 2 == 0 { 1 } else { -1 };
            (sign, blocks)
        })
        .collect()
}
