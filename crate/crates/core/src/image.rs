//! Defining equation of the image of `phi_k` and tangency of vector fields
//! to it.
//!
//! With `g(y) = y^k + sum_{i<=k-2} U_i y^i - W1` and
//! `f(y) = sum_{i<=k-1} V_i y^i`, let `M` be the matrix of multiplication by
//! `f` on `K[U,V,W1][y]/(g)` in the basis `1, y, ..., y^{k-1}`. A point lies
//! on the image exactly when `W2` is an eigenvalue of `M`, so the image is
//! cut out by `h_V = det(M - W2 I)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed};

use crate::algebra::{Poly, PolyMatrix, Rational};
use crate::crosscap::{build_phi, CrossCapContext};
use crate::error::{Error, Result};
use crate::fields::{Space, VectorField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageEquation {
    pub context: CrossCapContext,
    pub h: Poly,
}

impl ImageEquation {
    pub fn k(&self) -> usize {
        self.context.k()
    }
}

/// Reduces a polynomial in `y` (coefficients over the codomain table) modulo
/// `g`, rewriting `y^k -> W1 - sum U_i y^i` from the top degree down.
fn reduce_mod_g(ctx: &CrossCapContext, mut coeffs: Vec<Poly>) -> Vec<Poly> {
    let k = ctx.k();
    let w1 = ctx.w1();
    while coeffs.len() > k {
        let d = coeffs.len() - 1;
        let c = coeffs.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let base = d - k;
        coeffs[base] = &coeffs[base] + &(&c * &w1);
        for i in 1..=k - 2 {
            let ui = ctx.cap_u(i as i64);
            coeffs[base + i] = &coeffs[base + i] - &(&c * &ui);
        }
    }
    coeffs.resize(k, Poly::zero(ctx.codomain()));
    coeffs
}

/// `k x k` matrix of multiplication by `f` modulo `g`; column `c` holds the
/// coordinates of `f * y^c`. Entries involve only `U`, `V` and `W1`.
pub fn multiplication_matrix(ctx: &CrossCapContext) -> PolyMatrix {
    let k = ctx.k();
    let t = ctx.codomain();
    let mut m = PolyMatrix::zeros(t, k, k);
    for col in 0..k {
        let mut coeffs = vec![Poly::zero(t); k + col];
        for i in 1..k {
            coeffs[i + col] = ctx.cap_v(i as i64);
        }
        for (row, p) in reduce_mod_g(ctx, coeffs).into_iter().enumerate() {
            m.set(row, col, p);
        }
    }
    m
}

/// `h_V = det(M - W2 I)`, with its structural invariants checked.
pub fn image_equation(ctx: &CrossCapContext) -> Result<ImageEquation> {
    let k = ctx.k();
    let m = multiplication_matrix(ctx);
    let shifted = m.checked_sub(&PolyMatrix::identity(ctx.codomain(), k).scale(&ctx.w2()))?;
    let h = shifted.determinant()?;

    let w2 = ctx.w2_index();
    let coeffs = h.coefficients_in(w2);
    if coeffs.len() != k + 1 {
        return Err(Error::Internal(format!(
            "h_V has degree {} in W2, expected {k}",
            coeffs.len().saturating_sub(1)
        )));
    }
    let lead = &coeffs[k];
    let sign = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    if !(lead.is_constant() && lead.constant_term() == sign) {
        return Err(Error::Internal(format!(
            "leading W2 coefficient of h_V is {lead}"
        )));
    }
    if !build_phi(ctx).pull_back(&h)?.is_zero() {
        return Err(Error::Internal("h_V does not vanish on phi_k".into()));
    }
    Ok(ImageEquation {
        context: ctx.clone(),
        h,
    })
}

/// Shared copy of `image_equation` for `k`, computed at most once per process.
pub fn image_equation_cached(k: usize) -> Result<Arc<ImageEquation>> {
    type Slot = Arc<OnceLock<Arc<ImageEquation>>>;
    static CACHE: OnceLock<Mutex<HashMap<usize, Slot>>> = OnceLock::new();
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
        Arc::clone(map.entry(k).or_default())
    };
    if let Some(eq) = slot.get() {
        return Ok(Arc::clone(eq));
    }
    let eq = image_equation(&CrossCapContext::new(k)?)?;
    Ok(Arc::clone(slot.get_or_init(|| Arc::new(eq))))
}

/// The derivation `sum_i xi_i dp/dX_i`.
pub fn apply_field(xi: &VectorField, p: &Poly) -> Result<Poly> {
    if xi.space != Space::Codomain || xi.len() != p.table().len() {
        return Err(Error::TableMismatch(
            "field and polynomial live on different spaces".into(),
        ));
    }
    let mut acc = Poly::zero(p.table());
    for (i, c) in xi.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = p.derivative(i);
        if !d.is_zero() {
            acc = acc.checked_add(&c.checked_mul(&d)?)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tangency {
    /// `xi(h_V) = factor * h_V`.
    Factor(Poly),
    /// `xi(h_V)` leaves this remainder on division by `h_V` in `W2`.
    NotTangent(Poly),
}

impl Tangency {
    pub fn is_tangent(&self) -> bool {
        matches!(self, Tangency::Factor(_))
    }
}

/// Divides `xi(h_V)` by `h_V` as polynomials in `W2` (the leading
/// coefficient `(-1)^k` is a unit).
pub fn tangency_factor(image: &ImageEquation, xi: &VectorField) -> Result<Tangency> {
    let applied = apply_field(xi, &image.h)?;
    let (q, r) = applied.exact_div_univariate(&image.h, "W2")?;
    Ok(if r.is_zero() {
        Tangency::Factor(q)
    } else {
        Tangency::NotTangent(r)
    })
}

/// True iff `xi(h_V)` is identically zero.
pub fn derlog0_check(image: &ImageEquation, xi: &VectorField) -> Result<bool> {
    Ok(apply_field(xi, &image.h)?.is_zero())
}

/// Sign-normalised copy of `h_V` with positive `W2^k` coefficient.
pub fn normalized(image: &ImageEquation) -> Poly {
    let k = image.k();
    let lead = image.h.coefficients_in(image.context.w2_index())[k].constant_term();
    if lead.is_negative() {
        -&image.h
    } else {
        image.h.clone()
    }
}
