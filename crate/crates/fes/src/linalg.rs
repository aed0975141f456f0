//! Exact rational linear algebra for dimension upper bounds.
//!
//! The universe at grade `w` has one column per zeta symbol appearing in
//! the relation set plus one column per generator monomial on the right
//! sides. Ranks come from incremental sparse elimination over the
//! rationals, cross-checked by a fraction-free dense route.

use crate::evaluator::{ClosedFormTerm, ZetaSymbol};
use crate::relations::{self, Family, Relation};
use crate::sigcomp::{enumerate, SignedComposition};
use crate::Result;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// A sparse row: strictly ascending column indices with nonzero entries.
pub type SparseRow = Vec<(usize, BigRational)>;

/// Incremental Gaussian eliminator keyed by leading column. Pivot rows are
/// scaled to a unit leading coefficient.
#[derive(Default, Clone)]
pub struct Eliminator {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Eliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against the current pivots; the result either is empty
    /// or leads at a pivot-free column.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut work: BTreeMap<usize, BigRational> = row
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (*j, c.clone()))
            .collect();
        loop {
            let Some((&lead, _)) = work.iter().next() else {
                return Vec::new();
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return work.into_iter().collect();
            };
            let factor = work.remove(&lead).unwrap();
            for (j, c) in &pivot[1..] {
                let entry = work.entry(*j).or_insert_with(BigRational::zero);
                *entry -= c * &factor;
                if entry.is_zero() {
                    work.remove(j);
                }
            }
        }
    }

    /// Add a row; returns true when it increases the rank.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let reduced = self.reduce(row);
        let Some((lead, head)) = reduced.first().cloned() else {
            return false;
        };
        let inv = BigRational::one() / head;
        let scaled = reduced
            .into_iter()
            .map(|(j, c)| (j, c * &inv))
            .collect();
        self.pivots.insert(lead, scaled);
        true
    }
}

/// Rank of a set of sparse rows.
pub fn rank(rows: &[SparseRow]) -> usize {
    let mut e = Eliminator::new();
    for row in rows {
        e.insert(row);
    }
    e.rank()
}

/// `rank(relations + targets) - rank(relations)`: the dimension of the
/// span of the target rows inside the quotient by the relation rows.
pub fn quotient_dim(targets: &[SparseRow], rels: &[SparseRow]) -> usize {
    let mut e = Eliminator::new();
    for row in rels {
        e.insert(row);
    }
    let base = e.rank();
    for row in targets {
        e.insert(row);
    }
    e.rank() - base
}

/// Dense fraction-free (Bareiss) rank over the integers, as an independent
/// cross-check of the sparse eliminator.
pub fn bareiss_rank(rows: &[SparseRow], ncols: usize) -> usize {
    // clear denominators row by row; rank is unchanged
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for (_, c) in row {
                lcm = lcm.lcm(c.denom());
            }
            let mut dense = vec![BigInt::zero(); ncols];
            for (j, c) in row {
                dense[*j] = c.numer() * &lcm / c.denom();
            }
            dense
        })
        .collect();
    let nrows = m.len();
    let mut rank = 0usize;
    let mut denom = BigInt::one();
    let mut col = 0usize;
    while rank < nrows && col < ncols {
        let Some(pivot_row) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot_row);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                m[i][j] = &v / &denom;
            }
            m[i][col] = BigInt::zero();
        }
        denom = m[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// A column of the universe: a zeta symbol or a generator monomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Column {
    Symbol(ZetaSymbol),
    Monomial { p_power: u32, beta: Vec<u32>, q: Vec<u32> },
}

impl Column {
    fn of_term(t: &ClosedFormTerm) -> Column {
        Column::Monomial { p_power: t.p_power, beta: t.beta.clone(), q: t.q.clone() }
    }
}

/// Deterministic column indexing for one grade.
pub struct Universe {
    pub columns: Vec<Column>,
    index: HashMap<Column, usize>,
}

impl Universe {
    pub fn new() -> Self {
        Universe { columns: Vec::new(), index: HashMap::new() }
    }

    pub fn intern(&mut self, col: Column) -> usize {
        if let Some(&i) = self.index.get(&col) {
            return i;
        }
        let i = self.columns.len();
        self.index.insert(col.clone(), i);
        self.columns.push(col);
        i
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Row of a relation: term coefficients on symbol columns, negated
    /// right-side coefficients on monomial columns.
    pub fn relation_row(&mut self, rel: &Relation) -> SparseRow {
        let mut entries: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (c, z) in &rel.terms {
            let j = self.intern(Column::Symbol(z.clone()));
            *entries.entry(j).or_insert_with(BigRational::zero) += c;
        }
        for t in &rel.rhs.terms {
            let j = self.intern(Column::of_term(t));
            *entries.entry(j).or_insert_with(BigRational::zero) -= &t.coeff;
        }
        entries.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn unit_row(&mut self, z: &ZetaSymbol) -> SparseRow {
        vec![(self.intern(Column::Symbol(z.clone())), BigRational::one())]
    }
}

impl Default for Universe {
    fn default() -> Self {
        Self::new()
    }
}

/// Upper bound on the dimension of the weight-`w` value space, from the
/// given relation families. Weight 0 is the span of the empty sum, which
/// is 1.
pub fn dimension_upper_bound(w: u32, ell: u32, signed: bool, families: &[Family]) -> Result<usize> {
    if w == 0 {
        return Ok(1);
    }
    let rels = relations::pipeline(w, ell, signed, families)?;
    Ok(dimension_from_relations(w, ell, signed, &rels))
}

/// As [`dimension_upper_bound`] with an explicit grade-`w` relation set.
pub fn dimension_from_relations(w: u32, ell: u32, signed: bool, rels: &[Relation]) -> usize {
    let mut universe = Universe::new();
    let targets: Vec<SparseRow> = enumerate(w, signed)
        .into_iter()
        .map(|comp: SignedComposition| universe.unit_row(&ZetaSymbol::plain(comp, ell)))
        .collect();
    let rows: Vec<SparseRow> = rels.iter().map(|r| universe.relation_row(r)).collect();
    quotient_dim(&targets, &rows)
}

/// Dimension bounds for every weight `0..=wmax`.
pub fn dimension_table(
    wmax: u32,
    ell: u32,
    signed: bool,
    families: &[Family],
) -> Result<Vec<usize>> {
    (0..=wmax)
        .map(|w| dimension_upper_bound(w, ell, signed, families))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(j, c)| (j, rat(c))).collect()
    }

    #[test]
    fn rank_hand_examples() {
        let rows = vec![row(&[(0, 1), (1, 2)]), row(&[(1, 1)]), row(&[(0, 1), (1, 1)])];
        assert_eq!(rank(&rows), 2);
        assert_eq!(bareiss_rank(&rows, 2), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(quotient_dim(&[row(&[(0, 1)]), row(&[(1, 1)])], &[row(&[(0, 3), (1, -1)])]), 1);
    }

    /// Deterministic pseudo-random matrices: the sparse eliminator and the
    /// fraction-free dense route must agree, and rank must be invariant
    /// under row permutation.
    #[test]
    fn sparse_and_dense_ranks_agree() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..200 {
            let nrows = 1 + (next() % 8) as usize;
            let ncols = 1 + (next() % 8) as usize;
            let rows: Vec<SparseRow> = (0..nrows)
                .map(|_| {
                    (0..ncols)
                        .filter_map(|j| {
                            let v = next() % 7;
                            if v == 0 {
                                None
                            } else {
                                Some((j, BigRational::new(
                                    BigInt::from(v as i64 - 3),
                                    BigInt::from(1 + (next() % 3) as i64),
                                )))
                            }
                        })
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                })
                .collect();
            let r1 = rank(&rows);
            let r2 = bareiss_rank(&rows, ncols);
            assert_eq!(r1, r2, "trial {trial}");
            let mut permuted = rows.clone();
            permuted.reverse();
            if nrows > 2 {
                permuted.swap(0, nrows / 2);
            }
            assert_eq!(rank(&permuted), r1, "trial {trial} permuted");
        }
    }

    #[test]
    fn small_dimension_examples() {
        let fams = Family::ALL;
        // positive mode: weights 0..4 give 1, 0, 0, 1, 0
        let dims = dimension_table(4, 1, false, &fams).unwrap();
        assert_eq!(dims, vec![1, 0, 0, 1, 0]);
        // signed mode: weights 0..2 give 1, 1, 1
        let dims = dimension_table(2, 1, true, &fams).unwrap();
        assert_eq!(dims, vec![1, 1, 1]);
    }

    #[test]
    fn reduce_is_idempotent_on_reduced_rows() {
        let mut e = Eliminator::new();
        e.insert(&row(&[(0, 2), (2, 4)]));
        e.insert(&row(&[(1, 3), (2, 1)]));
        let r = e.reduce(&row(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(e.reduce(&r), r);
        assert!(!r.is_empty());
        assert!(r.first().unwrap().0 == 2);
    }
}
