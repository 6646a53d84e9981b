//! Negative lexicographic order on codomain monomials, its extension to
//! vector fields, and degree-by-degree checks that the generators span the
//! tangent fields.
//!
//! Variables are scanned in table order `U_1..U_{k-2}, V_1..V_{k-1}, W1, W2`.
//! `a > b` when the first nonzero entry of `exps(a) - exps(b)` is negative,
//! so lower powers of earlier variables win.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg::{integer_row, SparseRow};
use crate::algebra::{
    format_rational, monomials_of_weighted_degree, EchelonBasis, Monomial, Poly, Rational,
};
use crate::crosscap::CrossCapContext;
use crate::error::{Error, Result};
use crate::fields::{generator_set, Family, FieldLabel, Space, VectorField};
use crate::image::ImageEquation;

pub fn compare_neglex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::TableMismatch(format!(
            "monomials over {} and {} variables",
            a.len(),
            b.len()
        )));
    }
    Ok(b.exponents().cmp(a.exponents()))
}

/// `coeff * monomial * e_position`, with 1-based `position`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleTerm {
    pub coeff: Rational,
    pub monomial: Monomial,
    pub position: usize,
}

impl ModuleTerm {
    /// Compares `(monomial, position)`; the coefficient is ignored.
    pub fn cmp_pair(&self, other: &ModuleTerm) -> Ordering {
        other
            .monomial
            .exponents()
            .cmp(self.monomial.exponents())
            .then(self.position.cmp(&other.position))
    }

    pub fn render(&self, ctx: &CrossCapContext) -> String {
        format!(
            "{} * {} * e_{}",
            format_rational(&self.coeff),
            self.monomial.render(ctx.codomain()),
            self.position
        )
    }
}

/// Largest term of `xi`; equal monomials go to the larger position.
pub fn leading_term(ctx: &CrossCapContext, xi: &VectorField) -> Result<ModuleTerm> {
    if xi.space != Space::Codomain || xi.len() != ctx.codomain_dim() {
        return Err(Error::ComponentCount {
            expected: ctx.codomain_dim(),
            found: xi.len(),
        });
    }
    let mut best: Option<ModuleTerm> = None;
    for (i, c) in xi.components.iter().enumerate() {
        for (m, q) in c.terms() {
            let t = ModuleTerm {
                coeff: q.clone(),
                monomial: m.clone(),
                position: i + 1,
            };
            if best
                .as_ref()
                .is_none_or(|b| t.cmp_pair(b) == Ordering::Greater)
            {
                best = Some(t);
            }
        }
    }
    best.ok_or(Error::ZeroField)
}

/// The `delta` with component `i` weighted-homogeneous of degree `d_i + delta`.
pub fn weighted_degree(ctx: &CrossCapContext, xi: &VectorField) -> Result<i64> {
    let t = ctx.codomain();
    if xi.space != Space::Codomain {
        return Err(Error::NotGraded("field is on the domain".into()));
    }
    let mut delta: Option<i64> = None;
    for (i, c) in xi.components.iter().enumerate() {
        for (m, _) in c.terms() {
            let d = m.weighted_degree(t) as i64 - t.weight(i) as i64;
            match delta {
                None => delta = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NotGraded(format!(
                        "component {} has a term of shift {d}, expected {e}",
                        i + 1
                    )))
                }
                _ => {}
            }
        }
    }
    delta.ok_or(Error::ZeroField)
}

/// Reference leading term, where one is known in closed form. Positions are
/// 1-based.
pub fn expected_leading_term(
    ctx: &CrossCapContext,
    label: FieldLabel,
) -> Option<(Monomial, usize)> {
    let k = ctx.k();
    let w1 = Monomial::var(ctx.codomain_dim(), ctx.w1_index());
    let w2 = Monomial::var(ctx.codomain_dim(), ctx.w2_index());
    match label {
        FieldLabel::Euler => Some((w2, 2 * k - 1)),
        FieldLabel::Family { family, j } => match family {
            Family::One if j <= k - 2 => Some((w2, 2 * k - j - 2)),
            Family::Two if j == 1 && k >= 3 => Some((w1, 2 * k - 2)),
            Family::Two if (2..=k - 2).contains(&j) => Some((w1, j - 1)),
            Family::Three if j == 1 => Some((w2, 2 * k - 2)),
            Family::Three if (2..=k - 1).contains(&j) => Some((w2, j - 1)),
            _ => None,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingTermRow {
    pub label: String,
    pub coeff: String,
    pub monomial: String,
    pub position: usize,
    /// `None` when no reference term is known for this generator.
    pub expected: Option<String>,
    pub matches: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingTermReport {
    pub k: usize,
    pub rows: Vec<LeadingTermRow>,
    /// Leading `(monomial, position)` pairs on the covered ranges are pairwise
    /// distinct.
    pub distinct: bool,
}

impl LeadingTermReport {
    pub fn ok(&self) -> bool {
        self.distinct && self.rows.iter().all(|r| r.matches != Some(false))
    }
}

/// Leading terms of all generators compared with the reference terms.
pub fn leading_term_table(ctx: &CrossCapContext) -> Result<LeadingTermReport> {
    let t = ctx.codomain();
    let mut rows = Vec::new();
    let mut covered = Vec::new();
    for g in generator_set(ctx) {
        let label = g.label.expect("generators are labelled");
        let lt = leading_term(ctx, &g)?;
        let expected = expected_leading_term(ctx, label);
        let matches = expected
            .as_ref()
            .map(|(m, p)| *m == lt.monomial && *p == lt.position);
        if expected.is_some() {
            covered.push((lt.monomial.clone(), lt.position));
        }
        rows.push(LeadingTermRow {
            label: label.to_string(),
            coeff: format_rational(&lt.coeff),
            monomial: lt.monomial.render(t),
            position: lt.position,
            expected: expected.map(|(m, p)| format!("{} * e_{p}", m.render(t))),
            matches,
        });
    }
    let n = covered.len();
    covered.sort();
    covered.dedup();
    Ok(LeadingTermReport {
        k: ctx.k(),
        rows,
        distinct: covered.len() == n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSlice {
    pub delta: i64,
    /// Dimension of fields of shift `delta` with `xi(h_V)` in `<h_V>`.
    pub tangent_dim: usize,
    /// Dimension of the shift-`delta` part of the generators' span.
    pub span_dim: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub k: usize,
    pub degree_bound: i64,
    pub slices: Vec<DegreeSlice>,
}

impl MembershipReport {
    pub fn ok(&self) -> bool {
        self.slices.iter().all(|s| s.ok)
    }
}

pub fn default_degree_bound(ctx: &CrossCapContext) -> i64 {
    2 * ctx.k() as i64
}

fn monomials_at(ctx: &CrossCapContext, degree: i64) -> Vec<Monomial> {
    if degree < 0 {
        Vec::new()
    } else {
        monomials_of_weighted_degree(ctx.codomain(), degree as u32)
    }
}

/// Sparse coordinates of `m * p`, indexing output monomials through `index`.
fn shifted_row(
    m: &Monomial,
    p: &Poly,
    sign: i64,
    index: &mut HashMap<Monomial, usize>,
) -> BTreeMap<usize, Rational> {
    let mut row = BTreeMap::new();
    for (pm, c) in p.terms() {
        let next = index.len();
        let col = *index.entry(m.mul(pm)).or_insert(next);
        row.insert(col, c * Rational::from_integer(BigInt::from(sign)));
    }
    row
}

fn to_int(row: &BTreeMap<usize, Rational>) -> SparseRow {
    integer_row(row.iter().map(|(c, q)| (*c, q)))
}

fn tangent_dim(ctx: &CrossCapContext, h: &Poly, partials: &[Poly], delta: i64) -> usize {
    let t = ctx.codomain();
    let mut index = HashMap::new();
    let mut basis = EchelonBasis::new();
    let mut unknowns = 0;
    for (i, d) in partials.iter().enumerate() {
        for m in monomials_at(ctx, t.weight(i) as i64 + delta) {
            unknowns += 1;
            basis.insert(to_int(&shifted_row(&m, d, 1, &mut index)));
        }
    }
    for m in monomials_at(ctx, delta) {
        unknowns += 1;
        basis.insert(to_int(&shifted_row(&m, h, -1, &mut index)));
    }
    unknowns - basis.rank()
}

fn span_dim(ctx: &CrossCapContext, gens: &[(VectorField, i64)], delta: i64) -> usize {
    let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut basis = EchelonBasis::new();
    for (g, dg) in gens {
        for m in monomials_at(ctx, delta - dg) {
            let mut row = BTreeMap::new();
            for (i, c) in g.components.iter().enumerate() {
                for (cm, q) in c.terms() {
                    let next = index.len();
                    let col = *index.entry((i, m.mul(cm))).or_insert(next);
                    row.insert(col, q.clone());
                }
            }
            basis.insert(to_int(&row));
        }
    }
    basis.rank()
}

/// Compares, for every shift `-k <= delta <= degree_bound`, the tangent-field
/// dimension with the generator-span dimension.
pub fn graded_membership_check(
    ctx: &CrossCapContext,
    image: &ImageEquation,
    degree_bound: i64,
) -> Result<MembershipReport> {
    let h = &image.h;
    let partials: Vec<Poly> = (0..ctx.codomain_dim()).map(|i| h.derivative(i)).collect();
    let gens = generator_set(ctx)
        .into_iter()
        .map(|g| weighted_degree(ctx, &g).map(|d| (g, d)))
        .collect::<Result<Vec<_>>>()?;
    let lo = -(ctx.k() as i64);
    let slices = (lo..=degree_bound.max(lo - 1))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|delta| {
            let tangent_dim = tangent_dim(ctx, h, &partials, delta);
            let span_dim = span_dim(ctx, &gens, delta);
            DegreeSlice {
                delta,
                tangent_dim,
                span_dim,
                ok: tangent_dim == span_dim,
            }
        })
        .collect();
    Ok(MembershipReport {
        k: ctx.k(),
        degree_bound,
        slices,
    })
}
