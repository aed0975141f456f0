//! Prime-sweep verification of relations, product identities, and the
//! named tables, with counterexample reporting.

use crate::evaluator::catalog::{self, TableEntry};
use crate::evaluator::{bernoulli_mod_p, eval_symbol_with};
use crate::modring::{is_prime, PrimeContext, MAX_PRIME};
use crate::relations::{ProductIdentity, Relation};
use crate::Result;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Outcome of a sweep for one item.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    /// No prime in the range was admissible.
    Vacuous,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub p: u64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub provenance: String,
    pub status: Status,
    pub primes_checked: Vec<u64>,
    pub primes_skipped: Vec<u64>,
    pub counterexamples: Vec<Counterexample>,
}

/// Default upper bound on primes for which the quadratic Bernoulli table
/// is computed; larger primes are skipped for items whose right side needs
/// it. Override with the `FES_BERNOULLI_CAP` environment variable.
pub fn bernoulli_cap() -> u64 {
    std::env::var("FES_BERNOULLI_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(2500)
}

/// Anything that can be evaluated on both sides at one prime.
pub trait Checkable: Sync {
    fn superbity(&self) -> u32;
    fn min_prime(&self) -> u64;
    fn needs_bernoulli(&self) -> bool;
    fn provenance(&self) -> String;
    fn sides(&self, ctx: &PrimeContext, bern: &[u64]) -> Result<(u64, u64)>;
}

impl Checkable for Relation {
    fn superbity(&self) -> u32 {
        self.superbity
    }

    fn min_prime(&self) -> u64 {
        Relation::min_prime(self)
    }

    fn needs_bernoulli(&self) -> bool {
        self.rhs.max_beta() > 0
    }

    fn provenance(&self) -> String {
        self.provenance.clone()
    }

    fn sides(&self, ctx: &PrimeContext, bern: &[u64]) -> Result<(u64, u64)> {
        let mut lhs = 0u64;
        for (c, z) in &self.terms {
            lhs = ctx.add(lhs, ctx.mul(ctx.iota(c), eval_symbol_with(z, ctx)?));
        }
        Ok((lhs, self.rhs.eval(ctx, bern, false)?))
    }
}

impl Checkable for ProductIdentity {
    fn superbity(&self) -> u32 {
        self.superbity
    }

    fn min_prime(&self) -> u64 {
        ProductIdentity::min_prime(self)
    }

    fn needs_bernoulli(&self) -> bool {
        self.rhs.max_beta() > 0
    }

    fn provenance(&self) -> String {
        self.provenance.clone()
    }

    fn sides(&self, ctx: &PrimeContext, bern: &[u64]) -> Result<(u64, u64)> {
        let mut lhs = 0u64;
        for (c, zs) in &self.terms {
            let mut prod = ctx.iota(c);
            for z in zs {
                prod = ctx.mul(prod, eval_symbol_with(z, ctx)?);
            }
            lhs = ctx.add(lhs, prod);
        }
        Ok((lhs, self.rhs.eval(ctx, bern, false)?))
    }
}

/// A table row checked against either its stored (corrected) right side or
/// the right side exactly as printed.
pub struct TableCheck {
    pub entry: TableEntry,
    pub use_corrected: bool,
}

impl Checkable for TableCheck {
    fn superbity(&self) -> u32 {
        self.entry.superbity()
    }

    fn min_prime(&self) -> u64 {
        self.entry.min_prime()
    }

    fn needs_bernoulli(&self) -> bool {
        self.entry.rhs.max_beta() > 0 || self.entry.printed_rhs.max_beta() > 0
    }

    fn provenance(&self) -> String {
        format!("table:{}:{}", self.entry.table, self.entry.label)
    }

    fn sides(&self, ctx: &PrimeContext, bern: &[u64]) -> Result<(u64, u64)> {
        let mut lhs = 0u64;
        for (c, z) in &self.entry.terms {
            lhs = ctx.add(lhs, ctx.mul(ctx.iota(c), eval_symbol_with(z, ctx)?));
        }
        // printed rows may violate the grade constraint; evaluate them with
        // the canonical lift of the generators rather than rejecting
        let rhs = if self.use_corrected {
            self.entry.rhs.eval(ctx, bern, false)?
        } else {
            self.entry.printed_rhs.eval(ctx, bern, true)?
        };
        Ok((lhs, rhs))
    }
}

/// Sweep every item over the given primes (in parallel over primes) and
/// merge per-item reports in ascending prime order. Inadmissible primes
/// (too small for the guard, composite, beyond the supported bound, or
/// beyond the Bernoulli cap when the item needs the table) are recorded as
/// skipped.
pub fn sweep<T: Checkable>(items: &[T], primes: &[u64]) -> Vec<Report> {
    let cap = bernoulli_cap();
    let ells: BTreeSet<u32> = items.iter().map(|i| i.superbity()).collect();
    let mut sorted: Vec<u64> = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let per_prime: Vec<(u64, Vec<PrimeOutcome>)> = sorted
        .par_iter()
        .map(|&p| (p, sweep_one_prime(items, p, cap, &ells)))
        .collect();

    let mut reports: Vec<Report> = items
        .iter()
        .map(|i| Report {
            provenance: i.provenance(),
            status: Status::Vacuous,
            primes_checked: Vec::new(),
            primes_skipped: Vec::new(),
            counterexamples: Vec::new(),
        })
        .collect();
    for (p, outcomes) in per_prime {
        for (report, outcome) in reports.iter_mut().zip(outcomes) {
            match outcome {
                PrimeOutcome::Skipped => report.primes_skipped.push(p),
                PrimeOutcome::Checked { lhs, rhs } => {
                    report.primes_checked.push(p);
                    if lhs != rhs {
                        report.counterexamples.push(Counterexample { p, lhs, rhs });
                    }
                }
            }
        }
    }
    for report in &mut reports {
        report.status = if !report.counterexamples.is_empty() {
            Status::Refuted
        } else if report.primes_checked.is_empty() {
            Status::Vacuous
        } else {
            Status::Verified
        };
    }
    reports
}

enum PrimeOutcome {
    Skipped,
    Checked { lhs: u64, rhs: u64 },
}

fn sweep_one_prime<T: Checkable>(
    items: &[T],
    p: u64,
    cap: u64,
    ells: &BTreeSet<u32>,
) -> Vec<PrimeOutcome> {
    if !is_prime(p) || p >= MAX_PRIME {
        return items.iter().map(|_| PrimeOutcome::Skipped).collect();
    }
    let contexts: HashMap<u32, PrimeContext> = ells
        .iter()
        .filter_map(|&ell| PrimeContext::new(p, ell).ok().map(|c| (ell, c)))
        .collect();
    let needs_table = items
        .iter()
        .any(|i| i.needs_bernoulli() && p >= i.min_prime() && p <= cap);
    let bern: Vec<u64> = if needs_table { bernoulli_mod_p(p) } else { Vec::new() };
    items
        .iter()
        .map(|item| {
            if p < item.min_prime() || (item.needs_bernoulli() && p > cap) {
                return PrimeOutcome::Skipped;
            }
            let Some(ctx) = contexts.get(&item.superbity()) else {
                return PrimeOutcome::Skipped;
            };
            match item.sides(ctx, &bern) {
                Ok((lhs, rhs)) => PrimeOutcome::Checked { lhs, rhs },
                Err(_) => PrimeOutcome::Skipped,
            }
        })
        .collect()
}

/// Sweep a set of relations.
pub fn verify_relations(rels: &[Relation], primes: &[u64]) -> Vec<Report> {
    sweep(rels, primes)
}

/// Sweep multiplicative identities (concatenation products, stuffle
/// homomorphism instances).
pub fn verify_nonlinear(items: &[ProductIdentity], primes: &[u64]) -> Vec<Report> {
    sweep(items, primes)
}

/// Per-row report of a table sweep, carrying the row flags.
#[derive(Debug, Serialize)]
pub struct TableReport {
    pub table: String,
    pub label: String,
    pub corrected: bool,
    pub conjectural: bool,
    pub report: Report,
}

/// Sweep one named table. With `use_corrected` the stored right sides are
/// checked; without it, the right sides exactly as printed in the source
/// tables, so every row flagged corrected is expected to refute.
pub fn verify_table(name: &str, primes: &[u64], use_corrected: bool) -> Result<Vec<TableReport>> {
    let entries = catalog::table_entries(name)?;
    let checks: Vec<TableCheck> = entries
        .iter()
        .cloned()
        .map(|entry| TableCheck { entry, use_corrected })
        .collect();
    let reports = sweep(&checks, primes);
    Ok(entries
        .into_iter()
        .zip(reports)
        .map(|(e, report)| TableReport {
            table: e.table.to_string(),
            label: e.label,
            corrected: e.corrected,
            conjectural: e.conjectural,
            report,
        })
        .collect())
}
