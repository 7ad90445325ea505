//! Exact linear algebra over `Q`.
//!
//! Two independent kernels:
//! * [`Echelon`], an incremental sparse row-echelon basis over `BigRational`,
//!   used for Jacobian ideal elimination, normal forms and image spans;
//! * [`fraction_free_rank`], Bareiss elimination over `BigInt`, used to
//!   certify ranks of dense matrices without ever forming a fraction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse vector: `(column, value)` pairs, strictly increasing columns, no
/// explicit zeros.
pub type SparseVec = Vec<(usize, BigRational)>;

/// Build a [`SparseVec`] from unsorted entries, summing duplicates.
pub fn sparse_from_entries<I>(entries: I) -> SparseVec
where
    I: IntoIterator<Item = (usize, BigRational)>,
{
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (c, x) in entries {
        *acc.entry(c).or_insert_with(BigRational::zero) += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// `acc += scale * v`, dropping cancelled entries.
pub fn axpy(acc: &mut BTreeMap<usize, BigRational>, scale: &BigRational, v: &[(usize, BigRational)]) {
    for (c, x) in v {
        let slot = acc.entry(*c).or_insert_with(BigRational::zero);
        *slot += scale * x;
        if slot.is_zero() {
            acc.remove(c);
        }
    }
}

/// Row-echelon basis of a subspace of `Q^ncols`. Each stored row has leading
/// entry 1 in its pivot column and no entries to the left of it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.values()
    }

    /// Residue of `v` modulo the span: the unique vector congruent to `v`
    /// with no entries in pivot columns.
    pub fn reduce(&self, v: &[(usize, BigRational)]) -> SparseVec {
        if self.pivots.is_empty() {
            return v.to_vec();
        }
        let mut acc: BTreeMap<usize, BigRational> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let hit = acc
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            // every pivot row lives in columns >= c, so earlier columns stay clean
            axpy(&mut acc, &-x, &self.pivots[&c]);
            cursor = c + 1;
        }
        acc.into_iter().collect()
    }

    /// Add `v` to the span. Returns whether it was independent.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.ncols));
        let r = self.reduce(&v);
        let Some((lead, x)) = r.first().cloned() else {
            return false;
        };
        let inv = x.recip();
        let row: SparseVec = r.into_iter().map(|(c, y)| (c, y * &inv)).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, v: &[(usize, BigRational)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a rational matrix given by sparse rows.
pub fn rank_of_rows<I>(ncols: usize, rows: I) -> usize
where
    I: IntoIterator<Item = SparseVec>,
{
    let mut ech = Echelon::new(ncols);
    for row in rows {
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// Scale a rational row by the lcm of its denominators to get an integer row.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Densify sparse rows into integer rows (denominators cleared row-wise).
pub fn dense_integer_rows(ncols: usize, rows: &[SparseVec]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut dense = vec![BigRational::zero(); ncols];
            for (c, x) in row {
                dense[*c] = x.clone();
            }
            clear_denominators(&dense)
        })
        .collect()
}

/// Rank by Bareiss fraction-free elimination. Every intermediate entry is an
/// integer minor of the input, and each division below is exact.
pub fn fraction_free_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pr) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = m[r][col].clone();
            #[allow(clippy::needless_range_loop)]
            for c in col..ncols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
