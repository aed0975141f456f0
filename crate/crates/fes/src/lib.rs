//! Exact arithmetic for finite Euler sums and finite multiple zeta values.
//!
//! A finite Euler sum is the family of alternating multiple harmonic sums
//! `H_{p-1}(s) mod p^l`, indexed by primes `p`, viewed as a single element of
//! the ring `A_l = prod_p Z/p^l Z` modulo the direct sum. This crate provides
//!
//! - signed compositions and their combinatorics ([`sigcomp`]),
//! - the level-1 and level-2 word algebras with the stuffle and shuffle
//!   products ([`words`]),
//! - fast evaluation of alternating multiple harmonic sums modulo prime
//!   powers, together with a catalog of known closed forms in terms of
//!   Bernoulli numbers and Fermat quotients ([`evaluator`]),
//! - generation of linear relation families among finite Euler sums
//!   ([`relations`]),
//! - exact rational linear algebra for dimension upper bounds ([`linalg`]),
//! - prime-sweep verification with counterexample reporting ([`verify`]).
//!
//! All arithmetic is exact: rational coefficients use arbitrary-precision
//! integers and residues are exact elements of `Z/p^l Z`. There is no
//! floating point anywhere.
//!
//! The `examples/` directory contains one runnable example per major
//! capability; start with `eval_sum.rs` and `dimension_table.rs`. A thin
//! `fes` binary exposes the same functionality as subcommands.

pub mod cli;
pub mod evaluator;
pub mod linalg;
pub mod modring;
pub mod relations;
pub mod sigcomp;
pub mod verify;
pub mod words;

pub use evaluator::{ClosedForm, ZetaSymbol};
pub use modring::PrimeContext;
pub use relations::Relation;
pub use sigcomp::{SignedComposition, SignedIndex};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} too small: need p > {min} for this evaluation")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("superbity {0} out of range (must be 1..=4)")]
    SuperbityOutOfRange(u32),
    #[error("prime {p} exceeds the supported bound 2^15 for superbity {ell}")]
    PrimeTooLarge { p: u64, ell: u32 },
    #[error("n = {n} must be smaller than p = {p} so that all denominators are invertible")]
    IndexNotInvertible { n: u64, p: u64 },
    #[error("v-dual is only defined for positive compositions, got a barred part")]
    BarredPartInVDual,
    #[error("x-word ends in x0 and has no y-word form")]
    XWordEndsInX0,
    #[error("operation requires a level-1 word, got a barred letter")]
    NotLevelOne,
    #[error("{k} out of range for {what} at p = {p}")]
    GeneratorOutOfRange { what: &'static str, k: u32, p: u64 },
    #[error("closed form term carries beta/q factors but p-power {a} < superbity-1 = {min}")]
    ClosedFormGradeViolation { a: u32, min: u32 },
    #[error("unsupported relation family {family:?} at superbity {ell}")]
    UnsupportedFamily { family: String, ell: u32 },
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("invalid composition {text:?}: {reason}")]
    BadComposition { text: String, reason: String },
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
