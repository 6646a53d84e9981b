//! Liftability as an exact identity: `d(phi_k) . eta == xi o phi_k`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Poly;
use crate::crosscap::{build_phi, euler_field, jacobian, CrossCapContext};
use crate::error::{Error, Result};
use crate::fields::{euler_lowerable, family, lowerable, Family, FieldLabel, Space, VectorField};

/// `J_phi . eta - xi o phi`, one polynomial per codomain coordinate, over the
/// domain table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub components: Vec<Poly>,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Total number of surviving terms.
    pub fn term_count(&self) -> usize {
        self.components.iter().map(Poly::num_terms).sum()
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.components.iter().map(Poly::num_terms).collect()
    }
}

pub fn lift_residual(
    ctx: &CrossCapContext,
    xi: &VectorField,
    eta: &VectorField,
) -> Result<Residual> {
    if xi.space != Space::Codomain || xi.len() != ctx.codomain_dim() {
        return Err(Error::ComponentCount {
            expected: ctx.codomain_dim(),
            found: xi.len(),
        });
    }
    if eta.space != Space::Domain || eta.len() != ctx.domain_dim() {
        return Err(Error::ComponentCount {
            expected: ctx.domain_dim(),
            found: eta.len(),
        });
    }
    let pushed = jacobian(ctx).apply(&eta.components)?;
    let phi = build_phi(ctx);
    let components = pushed
        .iter()
        .zip(&xi.components)
        .map(|(lhs, x)| lhs.checked_sub(&phi.pull_back(x)?))
        .collect::<Result<_>>()?;
    Ok(Residual { components })
}

/// Outcome of checking one liftable/lowerable pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub label: String,
    pub ok: bool,
    /// Terms left in the residual; zero exactly when `ok`.
    pub residual_norm: usize,
    pub residual_terms: Vec<usize>,
}

impl LiftReport {
    fn new(label: FieldLabel, r: &Residual) -> Self {
        LiftReport {
            label: label.to_string(),
            ok: r.is_zero(),
            residual_norm: r.term_count(),
            residual_terms: r.term_counts(),
        }
    }
}

/// Builds `xi^f_j` and its lowerable and checks the lifting identity.
pub fn verify_family(ctx: &CrossCapContext, f: Family, j: usize) -> Result<LiftReport> {
    let xi = family(ctx, f, j)?;
    let eta = lowerable(ctx, f, j)?;
    let r = lift_residual(ctx, &xi, &eta)?;
    Ok(LiftReport::new(FieldLabel::Family { family: f, j }, &r))
}

/// Lowerable of the Euler field and whether it lowers `xi_e`.
pub fn lift_euler(ctx: &CrossCapContext) -> Result<(VectorField, bool)> {
    let eta = euler_lowerable(ctx);
    let r = lift_residual(ctx, &euler_field(ctx), &eta)?;
    Ok((eta, r.is_zero()))
}

/// Every family field and the Euler field, in generator order.
pub fn verify_all(ctx: &CrossCapContext) -> Result<Vec<LiftReport>> {
    let grid: Vec<(Family, usize)> = Family::ALL
        .iter()
        .flat_map(|&f| (1..ctx.k()).map(move |j| (f, j)))
        .collect();
    let mut reports = grid
        .par_iter()
        .map(|&(f, j)| verify_family(ctx, f, j))
        .collect::<Result<Vec<_>>>()?;
    let eta = euler_lowerable(ctx);
    let r = lift_residual(ctx, &euler_field(ctx), &eta)?;
    reports.push(LiftReport::new(FieldLabel::Euler, &r));
    Ok(reports)
}
