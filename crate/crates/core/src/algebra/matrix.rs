use std::sync::Arc;

use super::linalg::rational_rank;
use super::poly::Poly;
use super::rational::Rational;
use super::table::{same_table, VarTable};
use crate::error::{Error, Result};

/// Dense row-major matrix of polynomials over one table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    table: Arc<VarTable>,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(
        table: &Arc<VarTable>,
        rows: usize,
        cols: usize,
        entries: Vec<Poly>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            same_table(table, e.table())?;
        }
        Ok(PolyMatrix {
            rows,
            cols,
            table: Arc::clone(table),
            entries,
        })
    }

    pub fn zeros(table: &Arc<VarTable>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            table: Arc::clone(table),
            entries: vec![Poly::zero(table); rows * cols],
        }
    }

    pub fn identity(table: &Arc<VarTable>, n: usize) -> Self {
        let mut m = Self::zeros(table, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(table));
        }
        m
    }

    pub fn from_rows(table: &Arc<VarTable>, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(table, r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn get(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: Poly) {
        same_table(&self.table, p.table()).expect("table mismatch in set");
        self.entries[row * self.cols + col] = p;
    }

    pub fn row(&self, row: usize) -> &[Poly] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn checked_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("operands differ in shape".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(&self.table, self.rows, self.cols, entries)
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            table: Arc::clone(&self.table),
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::ComponentCount {
                expected: self.cols,
                found: v.len(),
            });
        }
        (0..self.rows)
            .map(|r| {
                let mut acc = Poly::zero(&self.table);
                for (a, x) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.checked_add(&a.checked_mul(x)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division performed is exact in the polynomial ring, so no
    /// rational functions appear.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.table));
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = Poly::one(&self.table);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(&self.table)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = if k == 0 { num } else { num.div_exact(&prev)? };
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Rank over the rationals; every entry must be a constant.
    pub fn rank(&self) -> Result<usize> {
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                let e = self.get(r, c);
                if !e.is_constant() {
                    return Err(Error::NonConstantEntry { row: r, col: c });
                }
                row.push(e.constant_term());
            }
            rows.push(row);
        }
        Ok(rational_rank(&rows))
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(Poly::render).collect())
            .collect()
    }
}

/// Dense rational matrix.
pub type QMatrix = Vec<Vec<Rational>>;
