//! Exact rank computations over the rationals.
//!
//! Rows are cleared of denominators and reduced with integer row operations,
//! dividing out the content after each step so entries stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Sparse integer row: column -> nonzero entry.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Incremental row-echelon basis over the integers.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, SparseRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; adds it if independent.
    /// Returns true when the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let (&col, lead) = match row.iter().next() {
                Some(x) => x,
                None => return false,
            };
            match self.pivots.get(&col) {
                None => {
                    make_primitive(&mut row);
                    self.pivots.insert(col, row);
                    return true;
                }
                Some(piv) => {
                    let p = &piv[&col];
                    let g = p.gcd(lead);
                    let mr = p / &g;
                    let mp = lead / &g;
                    let mut next = SparseRow::new();
                    for (c, v) in &row {
                        next.insert(*c, v * &mr);
                    }
                    for (c, v) in piv {
                        let e = next.entry(*c).or_insert_with(BigInt::zero);
                        *e -= v * &mp;
                    }
                    next.retain(|_, v| !v.is_zero());
                    make_primitive(&mut next);
                    row = next;
                }
            }
        }
    }
}

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Clears denominators of a sparse rational row.
pub fn integer_row<'a, I>(entries: I) -> SparseRow
where
    I: IntoIterator<Item = (usize, &'a Rational)>,
{
    let entries: Vec<(usize, &Rational)> =
        entries.into_iter().filter(|(_, q)| !q.is_zero()).collect();
    let mut l = BigInt::one();
    for (_, q) in &entries {
        l = l.lcm(q.denom());
    }
    entries
        .into_iter()
        .map(|(c, q)| (c, q.numer() * (&l / q.denom())))
        .collect()
}

/// Rank of a dense rational matrix.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(integer_row(row.iter().enumerate()));
    }
    basis.rank()
}

/// Rank of a set of sparse rational rows.
pub fn sparse_rank(rows: &[BTreeMap<usize, Rational>]) -> usize {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(integer_row(row.iter().map(|(c, q)| (*c, q))));
    }
    basis.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    #[test]
    fn identity_and_zero() {
        let id: Vec<Vec<Rational>> = (0..4)
            .map(|i| (0..4).map(|j| rat((i == j) as i64)).collect())
            .collect();
        assert_eq!(rational_rank(&id), 4);
        let z = vec![vec![rat(0); 3]; 5];
        assert_eq!(rational_rank(&z), 0);
    }

    #[test]
    fn dependent_rows_with_fractions() {
        let rows = vec![
            vec![frac(1, 2), frac(1, 3), rat(1)],
            vec![rat(3), rat(2), rat(6)],
            vec![rat(0), rat(1), rat(0)],
        ];
        assert_eq!(rational_rank(&rows), 2);
    }
}
