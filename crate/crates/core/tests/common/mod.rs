//! Oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use liftvf::algebra::{rat, Monomial, Poly, PolyMatrix, Rational, VarTable};
use num_traits::Zero;
use proptest::prelude::*;

/// Three-variable table used by the algebra properties.
pub fn xyz() -> Arc<VarTable> {
    static T: OnceLock<Arc<VarTable>> = OnceLock::new();
    T.get_or_init(|| VarTable::new(&["x", "y", "z"]).unwrap())
        .clone()
}

/// Small polynomials over [`xyz`]: up to `max_terms` terms, exponents below
/// 3, integer coefficients in `-5..=5`.
pub fn poly_strategy(max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..=max_terms).prop_map(
        |terms| {
            Poly::from_terms(
                &xyz(),
                terms
                    .into_iter()
                    .map(|((a, b, c), q)| (Monomial::from_exponents(vec![a, b, c]), rat(q))),
            )
        },
    )
}

pub fn nonzero_poly_strategy(max_terms: usize) -> impl Strategy<Value = Poly> {
    poly_strategy(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Square matrices of size 1..=4 with small polynomial entries.
pub fn matrix_strategy() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(poly_strategy(2), n * n)
            .prop_map(move |entries| PolyMatrix::new(&xyz(), n, n, entries).unwrap())
    })
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let table = m[0][0].table().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(&table);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &cofactor_det(&minor);
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Determinant of a rational matrix by Gaussian elimination with fractions.
pub fn rational_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = rat(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return rat(0);
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= &piv;
        for r in col + 1..n {
            let f = &a[r][col] / &piv;
            if f.is_zero() {
                continue;
            }
            let pivot_row = a[col].clone();
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// `Res_y(g, p)` from the Sylvester matrix, with `g` and `p` given by
/// ascending coefficient lists of formal degrees `m` and `n`.
pub fn sylvester_resultant(g: &[Rational], p: &[Rational]) -> Rational {
    let m = g.len() - 1;
    let n = p.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![rat(0); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![rat(0); size];
        for (i, c) in p.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rational_det(rows)
}

pub fn check_ring_axioms(a: &Poly, b: &Poly, c: &Poly) -> Result<(), TestCaseError> {
    let t = xyz();
    let zero = Poly::zero(&t);
    let one = Poly::one(&t);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &zero, a.clone());
    prop_assert_eq!(a * &one, a.clone());
    let a2 = a.clone();
    prop_assert!((a - &a2).is_zero());
    prop_assert_eq!(-&(-a), a.clone());
    Ok(())
}

/// `p -> p(images)` respects sums and products.
pub fn check_substitution(a: &Poly, b: &Poly, images: &[Poly]) -> Result<(), TestCaseError> {
    let t = xyz();
    let imgs: Vec<Option<Poly>> = images.iter().cloned().map(Some).collect();
    let s = |p: &Poly| p.substitute_indexed(&t, &imgs).unwrap();
    prop_assert_eq!(s(&(a + b)), &s(a) + &s(b));
    prop_assert_eq!(s(&(a * b)), &s(a) * &s(b));
    Ok(())
}

pub fn check_determinant(m: &PolyMatrix) -> Result<(), TestCaseError> {
    prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m.to_rows()));
    Ok(())
}

/// Exact division undoes multiplication, and univariate division by a monic
/// divisor reconstructs the dividend.
pub fn check_division(a: &Poly, b: &Poly, tail: &Poly, n: u32) -> Result<(), TestCaseError> {
    let t = xyz();
    prop_assert_eq!((a * b).div_exact(b).unwrap(), a.clone());
    // `tail` has x-degree <= 2, so shifting the monic part above it keeps the
    // divisor monic in x.
    let d = &Poly::var(&t, 0).pow(n + 3) + tail;
    let (q, r) = a.exact_div_univariate(&d, "x").unwrap();
    prop_assert_eq!(&(&q * &d) + &r, a.clone());
    prop_assert!(r.degree_in(0).unwrap_or(0) < n + 3);
    Ok(())
}
