//! Linear functions on the codomain of `phi_k` and the codimension-one test.
//!
//! For `h = sum a_i U_i + sum b_i V_i + g1 W1 + g2 W2` every `xi(h)` is a
//! combination of the components of `xi`. Modulo `m^2` only the linear parts
//! survive, and by Nakayama the ideal generated by the `xi(h)` and `h` is `m`
//! as soon as those linear parts span all `2k - 1` coordinates.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    format_rational, parse_rational, rat, rational_rank, Poly, QMatrix, Rational,
};
use crate::crosscap::CrossCapContext;
use crate::error::{Error, Result};
use crate::fields::{check_j, family, generator_set, Family, Space, VectorField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunction {
    pub alpha: Vec<Rational>,
    pub beta: Vec<Rational>,
    pub gamma1: Rational,
    pub gamma2: Rational,
}

impl LinearFunction {
    pub fn new(
        ctx: &CrossCapContext,
        alpha: Vec<Rational>,
        beta: Vec<Rational>,
        gamma1: Rational,
        gamma2: Rational,
    ) -> Result<Self> {
        let k = ctx.k();
        if alpha.len() != k - 2 {
            return Err(Error::ComponentCount {
                expected: k - 2,
                found: alpha.len(),
            });
        }
        if beta.len() != k - 1 {
            return Err(Error::ComponentCount {
                expected: k - 1,
                found: beta.len(),
            });
        }
        let h = LinearFunction {
            alpha,
            beta,
            gamma1,
            gamma2,
        };
        if h.coefficients().iter().all(Zero::is_zero) {
            return Err(Error::ZeroLinearFunction);
        }
        Ok(h)
    }

    /// Coefficients in codomain variable order.
    pub fn coefficients(&self) -> Vec<Rational> {
        let mut out = self.alpha.clone();
        out.extend(self.beta.iter().cloned());
        out.push(self.gamma1.clone());
        out.push(self.gamma2.clone());
        out
    }

    /// `alpha_i`, zero outside `1..=k-2`.
    pub fn alpha(&self, i: i64) -> Rational {
        index(&self.alpha, i)
    }

    /// `beta_i`, zero outside `1..=k-1`.
    pub fn beta(&self, i: i64) -> Rational {
        index(&self.beta, i)
    }

    pub fn scaled(&self, c: &Rational) -> LinearFunction {
        LinearFunction {
            alpha: self.alpha.iter().map(|a| a * c).collect(),
            beta: self.beta.iter().map(|b| b * c).collect(),
            gamma1: &self.gamma1 * c,
            gamma2: &self.gamma2 * c,
        }
    }

    pub fn to_poly(&self, ctx: &CrossCapContext) -> Poly {
        let t = ctx.codomain();
        self.coefficients()
            .iter()
            .enumerate()
            .fold(Poly::zero(t), |acc, (i, c)| {
                &acc + &Poly::var(t, i).scale(c)
            })
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        json!({
            "alpha": strs(&self.alpha),
            "beta": strs(&self.beta),
            "gamma1": format_rational(&self.gamma1),
            "gamma2": format_rational(&self.gamma2),
        })
    }

    /// Reads `{"alpha": [..], "beta": [..], "gamma1": "..", "gamma2": ".."}`
    /// with exact rational strings.
    pub fn from_json(ctx: &CrossCapContext, v: &Value) -> Result<Self> {
        let scalar = |key: &str| -> Result<Rational> {
            match v.get(key) {
                Some(Value::String(s)) => parse_rational(s),
                _ => Err(Error::Parse(format!("`{key}` must be a rational string"))),
            }
        };
        let list = |key: &str| -> Result<Vec<Rational>> {
            match v.get(key) {
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => parse_rational(s),
                        _ => Err(Error::Parse(format!(
                            "`{key}` entries must be rational strings"
                        ))),
                    })
                    .collect(),
                _ => Err(Error::Parse(format!("`{key}` must be an array"))),
            }
        };
        LinearFunction::new(
            ctx,
            list("alpha")?,
            list("beta")?,
            scalar("gamma1")?,
            scalar("gamma2")?,
        )
    }
}

fn index(v: &[Rational], i: i64) -> Rational {
    if i >= 1 && (i as usize) <= v.len() {
        v[i as usize - 1].clone()
    } else {
        rat(0)
    }
}

/// Drops every term of total degree two or more.
pub fn truncate_mod_m2(p: &Poly) -> Poly {
    p.truncate_total_degree(1)
}

/// `xi(h) = sum_c h_c xi_c`, exact.
pub fn field_applied_to_linear(
    ctx: &CrossCapContext,
    xi: &VectorField,
    h: &LinearFunction,
) -> Result<Poly> {
    if xi.space != Space::Codomain || xi.len() != ctx.codomain_dim() {
        return Err(Error::ComponentCount {
            expected: ctx.codomain_dim(),
            found: xi.len(),
        });
    }
    let mut acc = Poly::zero(ctx.codomain());
    for (c, x) in h.coefficients().iter().zip(&xi.components) {
        if !c.is_zero() {
            acc = acc.checked_add(&x.scale(c))?;
        }
    }
    Ok(acc)
}

/// The closed mod-`m^2` formula for `xi^f_j(h)`, evaluated term by term
/// with dummies resolved and then truncated.
pub fn modulom_closed_form(
    ctx: &CrossCapContext,
    f: Family,
    j: usize,
    h: &LinearFunction,
) -> Result<Poly> {
    check_j(ctx, j)?;
    let k = ctx.k() as i64;
    let j = j as i64;
    let t = ctx.codomain();
    let (w1, w2) = (ctx.w1(), ctx.w2());
    let u = |i: i64| ctx.cap_u(i);
    let v = |i: i64| ctx.cap_v(i);
    let mut acc = Poly::zero(t);
    let mut add = |p: Poly, c: Rational| {
        if !c.is_zero() {
            acc = &acc + &p.scale(&c);
        }
    };
    match f {
        Family::One => {
            add(w2.clone(), -h.beta(k - j) * rat(k));
            for i in k - j + 1..=k - 1 {
                add(v(i + j - k), h.beta(i) * rat(k));
            }
        }
        Family::Two => {
            for i in j - 1..=k - 2 {
                add(u(i - j + 1), h.alpha(i) * rat(k - i + j - 1));
            }
            for i in j - 1..=k - 1 {
                add(v(i - j + 1), -h.beta(i) * rat(k * (i - j + 1)));
            }
            add(
                &u(k - j + 1) * &w1,
                -h.gamma1.clone() * rat(k * (k - j + 1)),
            );
            add(w1.clone(), -h.alpha(j - 1) * rat(k * k));
        }
        Family::Three => {
            add(&u(k + j - 1) * &w2, h.gamma1.clone() * rat(k * (k - j + 1)));
            add(w2.clone(), -h.alpha(j - 1) * rat(k * k));
            for i in j..=k - 2 {
                add(v(i - j + 1), h.alpha(i) * rat(k * k));
            }
        }
    }
    Ok(truncate_mod_m2(&acc))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormComparison {
    pub label: String,
    pub closed_form: String,
    pub direct: String,
    pub agree: bool,
}

/// Closed form against `truncate_mod_m2(xi(h))` for every family field.
pub fn compare_closed_forms(
    ctx: &CrossCapContext,
    h: &LinearFunction,
) -> Result<Vec<ClosedFormComparison>> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for j in 1..ctx.k() {
            let xi = family(ctx, f, j)?;
            let direct = truncate_mod_m2(&field_applied_to_linear(ctx, &xi, h)?);
            let closed = modulom_closed_form(ctx, f, j, h)?;
            out.push(ClosedFormComparison {
                label: xi.label.expect("family fields are labelled").to_string(),
                agree: closed == direct,
                closed_form: closed.render(),
                direct: direct.render(),
            });
        }
    }
    Ok(out)
}

/// Linear parts of `xi(h)` for the family fields (generator order), then
/// `xi_e(h)`, then `h`; one column per codomain variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPartMatrix {
    pub row_labels: Vec<String>,
    pub rows: QMatrix,
    /// Every row source has zero constant term.
    pub inside_m: bool,
}

impl LinearPartMatrix {
    pub fn rank(&self) -> usize {
        rational_rank(&self.rows)
    }
}

fn linear_coefficients(ctx: &CrossCapContext, p: &Poly) -> Vec<Rational> {
    (0..ctx.codomain_dim())
        .map(|c| p.coeff(&crate::algebra::Monomial::var(ctx.codomain_dim(), c)))
        .collect()
}

pub fn linear_part_matrix(ctx: &CrossCapContext, h: &LinearFunction) -> Result<LinearPartMatrix> {
    let mut sources: Vec<(String, Poly)> = Vec::new();
    for g in generator_set(ctx) {
        let label = g.label.map_or_else(String::new, |l| l.to_string());
        sources.push((format!("{label}(h)"), field_applied_to_linear(ctx, &g, h)?));
    }
    debug_assert_eq!(sources.last().map(|s| s.0.as_str()), Some("xi_e(h)"));
    sources.push(("h".to_string(), h.to_poly(ctx)));
    let inside_m = sources.iter().all(|(_, p)| p.constant_term().is_zero());
    Ok(LinearPartMatrix {
        rows: sources
            .iter()
            .map(|(_, p)| linear_coefficients(ctx, p))
            .collect(),
        row_labels: sources.into_iter().map(|(l, _)| l).collect(),
        inside_m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Rank equals `2k - 1`, so the ideal is `m`. A `false` value is not a
    /// claim that the codimension differs from one.
    pub certified: bool,
    pub rank: usize,
}

pub fn codim1_certificate(ctx: &CrossCapContext, h: &LinearFunction) -> Result<Certificate> {
    let m = linear_part_matrix(ctx, h)?;
    let rank = m.rank();
    Ok(Certificate {
        certified: m.inside_m && rank == ctx.codomain_dim(),
        rank,
    })
}

/// Draws coefficients uniformly from `-9..=9`, redrawing until
/// `alpha_{k-2}` (when `k > 2`) and `beta_{k-1}` are nonzero.
pub fn random_linear_function<R: Rng>(ctx: &CrossCapContext, rng: &mut R) -> LinearFunction {
    let k = ctx.k();
    loop {
        let mut draw = |n: usize| {
            (0..n)
                .map(|_| rat(rng.gen_range(-9..=9)))
                .collect::<Vec<_>>()
        };
        let alpha = draw(k - 2);
        let beta = draw(k - 1);
        let g = draw(2);
        if alpha.last().is_some_and(Zero::is_zero) || beta[k - 2].is_zero() {
            continue;
        }
        return LinearFunction {
            alpha,
            beta,
            gamma1: g[0].clone(),
            gamma2: g[1].clone(),
        };
    }
}

/// Generator for trial `trial` under root seed `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub trial: usize,
    pub h: Value,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub certified: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.certified == self.trials
    }
}

pub fn random_sweep(ctx: &CrossCapContext, trials: usize, seed: u64) -> Result<SweepReport> {
    let results = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let h = random_linear_function(ctx, &mut trial_rng(seed, trial as u64));
            codim1_certificate(ctx, &h).map(|c| (trial, h, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let certified = results.iter().filter(|(_, _, c)| c.certified).count();
    let failures = results
        .into_iter()
        .filter(|(_, _, c)| !c.certified)
        .map(|(trial, h, c)| SweepFailure {
            trial,
            h: h.to_json(),
            rank: c.rank,
        })
        .collect();
    Ok(SweepReport {
        k: ctx.k(),
        seed,
        trials,
        certified,
        failures,
    })
}
