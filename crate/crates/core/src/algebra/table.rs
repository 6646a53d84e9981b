use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered set of distinct variable names, each with a nonnegative weight.
///
/// The order is fixed at construction. It defines both the exponent layout
/// of every [`Monomial`] over the table and the lexicographic term order
/// used for rendering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarTable {
    /// Builds a table of unweighted variables (every weight is 1).
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let pairs: Vec<(String, u32)> = names.iter().map(|n| (n.as_ref().to_string(), 1)).collect();
        Self::weighted(pairs)
    }

    pub fn weighted<I, S>(vars: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, w) in vars {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::Parse("empty variable name".into()));
            }
            if names.contains(&name) {
                return Err(Error::Parse(format!("duplicate variable `{name}`")));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(Arc::new(VarTable { names, weights }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.weights[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Checks two tables for identity, falling back to structural equality.
pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::TableMismatch(format!(
            "[{}] vs [{}]",
            a.names.join(", "),
            b.names.join(", ")
        )))
    }
}

/// Exponent vector over a [`VarTable`].
///
/// The derived ordering is lexicographic on the table order, which is the
/// default term order of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Weighted degree with the weights of `table`.
    pub fn weighted_degree(&self, table: &VarTable) -> u32 {
        self.0.iter().zip(table.weights()).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub(crate) fn with_exponent(&self, index: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[index] = e;
        Monomial(v)
    }

    /// Renders as `U1*W2^3`; the empty product renders as the empty string.
    pub fn render(&self, table: &VarTable) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(table.name(i).to_string()),
                _ => parts.push(format!("{}^{}", table.name(i), e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials over `table` of weighted degree exactly `degree`, in
/// descending lexicographic order.
///
/// Every weight must be positive, otherwise the set is infinite.
pub fn monomials_of_weighted_degree(table: &VarTable, degree: u32) -> Vec<Monomial> {
    assert!(table.weights().iter().all(|&w| w > 0), "zero weight");
    let n = table.len();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(
        table: &VarTable,
        idx: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if idx == table.len() {
            if remaining == 0 {
                out.push(Monomial(exps.clone()));
            }
            return;
        }
        let w = table.weight(idx);
        let max = remaining / w;
        for e in (0..=max).rev() {
            exps[idx] = e;
            rec(table, idx + 1, remaining - e * w, exps, out);
        }
        exps[idx] = 0;
    }
    if n == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(table, 0, degree, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert!(VarTable::new(&["x", "y", "x"]).is_err());
    }

    #[test]
    fn lex_order_follows_table_order() {
        let a = Monomial::from_exponents(vec![1, 0, 0]);
        let b = Monomial::from_exponents(vec![0, 5, 5]);
        assert!(a > b);
    }

    #[test]
    fn weighted_enumeration() {
        let t = VarTable::weighted([("a", 2), ("b", 1)]).unwrap();
        let ms = monomials_of_weighted_degree(&t, 4);
        let exps: Vec<_> = ms.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![2, 0], vec![1, 2], vec![0, 4]]);
        assert!(monomials_of_weighted_degree(&t, 0)[0].is_one());
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_exponents(vec![2, 1]);
        let b = Monomial::from_exponents(vec![1, 1]);
        assert_eq!(a.div(&b), Some(Monomial::from_exponents(vec![1, 0])));
        assert_eq!(b.div(&a), None);
    }
}
