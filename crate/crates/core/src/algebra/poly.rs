use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::table::{same_table, Monomial, VarTable};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map ordered lexicographically on the exponent vector;
/// zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(table.len()), c);
        }
        p
    }

    pub fn var(table: &Arc<VarTable>, index: usize) -> Self {
        let mut p = Self::zero(table);
        p.terms
            .insert(Monomial::var(table.len(), index), Rational::one());
        p
    }

    pub fn var_named(table: &Arc<VarTable>, name: &str) -> Result<Self> {
        Ok(Self::var(table, table.index_of(name)?))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), table.len(), "monomial length");
        let mut p = Self::zero(table);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(table: &Arc<VarTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            assert_eq!(m.len(), table.len(), "monomial length");
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.table.len()))
    }

    /// Largest term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Distinct weighted degrees of the terms, ascending.
    pub fn weighted_degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self
            .terms
            .keys()
            .map(|m| m.weighted_degree(&self.table))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// True iff every term has weighted degree `d` (vacuously true for 0).
    pub fn is_weighted_homogeneous(&self, d: u32) -> bool {
        self.terms
            .keys()
            .all(|m| m.weighted_degree(&self.table) == d)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`, in place.
    fn add_scaled_shifted(&mut self, c: &Rational, m: &Monomial, other: &Poly) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc * c);
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        same_table(&self.table, &other.table)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        same_table(&self.table, &other.table)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        same_table(&self.table, &other.table)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        Ok(Poly {
            table: Arc::clone(&self.table),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(&self.table);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Poly {
        let mut out = Poly::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e > 0 {
                out.terms.insert(
                    m.with_exponent(index, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        Ok(self.derivative(self.table.index_of(var)?))
    }

    /// Composition: replaces variable `i` by `images[i]`.
    ///
    /// `images` is indexed by this polynomial's table; every entry that is
    /// `None` must belong to a variable this polynomial does not use.
    pub fn substitute_indexed(
        &self,
        target: &Arc<VarTable>,
        images: &[Option<Poly>],
    ) -> Result<Poly> {
        if images.len() != self.table.len() {
            return Err(Error::Shape(format!(
                "{} images for {} variables",
                images.len(),
                self.table.len()
            )));
        }
        for img in images.iter().flatten() {
            same_table(target, &img.table)?;
        }
        let mut max_exp = vec![0u32; self.table.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        // power cache: powers[i][e] = images[i]^e
        let mut powers: Vec<Vec<Poly>> = Vec::with_capacity(self.table.len());
        for (i, &top) in max_exp.iter().enumerate() {
            let mut row = vec![Poly::one(target)];
            if top > 0 {
                let img = images[i]
                    .as_ref()
                    .ok_or_else(|| Error::MissingAssignment(self.table.name(i).to_string()))?;
                for _ in 0..top {
                    let next = row.last().unwrap() * img;
                    row.push(next);
                }
            }
            powers.push(row);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Composition with images given by variable name.
    pub fn substitute(
        &self,
        target: &Arc<VarTable>,
        assignment: &HashMap<String, Poly>,
    ) -> Result<Poly> {
        let images: Vec<Option<Poly>> = self
            .table
            .names()
            .iter()
            .map(|n| assignment.get(n).cloned())
            .collect();
        self.substitute_indexed(target, &images)
    }

    /// Evaluates at a rational point given in table order.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.table.len() {
            return Err(Error::Shape(format!(
                "point of length {} for {} variables",
                point.len(),
                self.table.len()
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Degree in the variable at `index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(index)).max()
    }

    /// Coefficients as a univariate polynomial in the variable at `index`:
    /// entry `e` is the coefficient of `x^e`, free of `x`.
    pub fn coefficients_in(&self, index: usize) -> Vec<Poly> {
        let deg = match self.degree_in(index) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Poly::zero(&self.table); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(index) as usize;
            out[e].terms.insert(m.with_exponent(index, 0), c.clone());
        }
        out
    }

    /// Long division by `divisor`, viewing both as univariate in `var`.
    ///
    /// The divisor's leading coefficient in `var` must be a nonzero constant.
    /// Returns `(quotient, remainder)` with `self = quotient * divisor +
    /// remainder` and the remainder of lower degree in `var`.
    pub fn exact_div_univariate(&self, divisor: &Poly, var: &str) -> Result<(Poly, Poly)> {
        same_table(&self.table, &divisor.table)?;
        let v = self.table.index_of(var)?;
        let dcoeffs = divisor.coefficients_in(v);
        let lead = match dcoeffs.last() {
            Some(l) if l.is_constant() && !l.is_zero() => l.constant_term(),
            _ => return Err(Error::NonUnitLeading(var.to_string())),
        };
        let ddeg = (dcoeffs.len() - 1) as u32;
        let inv = lead.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.table);
        let one = Monomial::one(self.table.len());
        while let Some(rdeg) = rem.degree_in(v) {
            if rdeg < ddeg {
                break;
            }
            let shift = one.with_exponent(v, rdeg - ddeg);
            let top: Vec<(Monomial, Rational)> = rem
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == rdeg)
                .map(|(m, c)| (m.with_exponent(v, 0), c * &inv))
                .collect();
            for (m, c) in top {
                let qm = m.mul(&shift);
                rem.add_scaled_shifted(&-c.clone(), &qm, divisor);
                quot.add_term(qm, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact multivariate quotient `self / divisor`.
    ///
    /// Fails with [`Error::InexactDivision`] if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        same_table(&self.table, &divisor.table)?;
        let (dm, dc) = match divisor.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::InexactDivision),
        };
        if divisor.terms.len() == 1 {
            let inv = dc.recip();
            let mut out = Poly::zero(&self.table);
            for (m, c) in &self.terms {
                let q = m.div(&dm).ok_or(Error::InexactDivision)?;
                out.terms.insert(q, c * &inv);
            }
            return Ok(out);
        }
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.table);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&dm).ok_or(Error::InexactDivision)?;
            let qc = rc * &inv;
            rem.add_scaled_shifted(&-qc.clone(), &qm, divisor);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate_total_degree(&self, max_degree: u32) -> Poly {
        Poly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Rebuilds this polynomial over another table that contains every
    /// variable this one uses, matching by name.
    pub fn reembed(&self, target: &Arc<VarTable>) -> Result<Poly> {
        let map: Vec<Option<usize>> = self
            .table
            .names()
            .iter()
            .map(|n| target.index_of(n).ok())
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    let j =
                        map[i].ok_or_else(|| Error::UnknownVariable(self.table.name(i).into()))?;
                    e[j] = x;
                }
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(out)
    }

    /// Canonical text form: terms in descending lexicographic order, e.g.
    /// `2*U1*W2 - 3*V1*W1`; the zero polynomial renders as `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(&self.table);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

// Operator forms panic on a table mismatch; use the `checked_*` methods
// where the tables are not known to agree.
impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("table mismatch in add")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("table mismatch in sub")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("table mismatch in mul")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
