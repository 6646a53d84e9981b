//! The minimal cross cap of multiplicity `k`:
//!
//! ```text
//! phi_k(u, v, y) = (u_1..u_{k-2}, v_1..v_{k-1},
//!                   y^k + sum_{i=1}^{k-2} u_i y^i,
//!                   sum_{i=1}^{k-1} v_i y^i)
//! ```
//!
//! together with its variable tables, weights, Jacobian and Euler field.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Poly, PolyMatrix, VarTable};
use crate::error::{Error, Result};
use crate::fields::{FieldLabel, Space, VectorField};

/// Variable tables and grading for `phi_k`.
///
/// Domain `(u_1..u_{k-2}, v_1..v_{k-1}, y)` with weights `k-i` and `w(y)=1`;
/// codomain `(U_1..U_{k-2}, V_1..V_{k-1}, W1, W2)` with degrees `k-i` and
/// `d(W1)=d(W2)=k`. The weights are stored on the tables themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCapContext {
    k: usize,
    domain: Arc<VarTable>,
    codomain: Arc<VarTable>,
}

/// Families of indexed symbols subject to the dummy convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    /// Codomain `U_i`.
    U,
    /// Codomain `V_i`.
    V,
    /// Domain `u_i`.
    LowerU,
    /// Domain `v_i`.
    LowerV,
}

impl CrossCapContext {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK(k as i64));
        }
        let w = |i: usize| (k - i) as u32;
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        for i in 1..=k - 2 {
            dom.push((format!("u{i}"), w(i)));
            cod.push((format!("U{i}"), w(i)));
        }
        for i in 1..=k - 1 {
            dom.push((format!("v{i}"), w(i)));
            cod.push((format!("V{i}"), w(i)));
        }
        dom.push(("y".to_string(), 1));
        cod.push(("W1".to_string(), k as u32));
        cod.push(("W2".to_string(), k as u32));
        Ok(CrossCapContext {
            k,
            domain: VarTable::weighted(dom)?,
            codomain: VarTable::weighted(cod)?,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn domain(&self) -> &Arc<VarTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<VarTable> {
        &self.codomain
    }

    /// `2k - 2`.
    pub fn domain_dim(&self) -> usize {
        2 * self.k - 2
    }

    /// `2k - 1`.
    pub fn codomain_dim(&self) -> usize {
        2 * self.k - 1
    }

    pub fn table(&self, space: Space) -> &Arc<VarTable> {
        match space {
            Space::Domain => &self.domain,
            Space::Codomain => &self.codomain,
        }
    }

    // Variable positions. U/u block first, then V/v, then W1, W2 (or y).

    pub fn u_index(&self, i: usize) -> usize {
        debug_assert!((1..=self.k - 2).contains(&i));
        i - 1
    }

    pub fn v_index(&self, i: usize) -> usize {
        debug_assert!((1..self.k).contains(&i));
        self.k - 2 + i - 1
    }

    pub fn y_index(&self) -> usize {
        2 * self.k - 3
    }

    pub fn w1_index(&self) -> usize {
        2 * self.k - 3
    }

    pub fn w2_index(&self) -> usize {
        2 * self.k - 2
    }

    /// Resolves an indexed symbol under the dummy convention:
    /// `U_{k-1} = V_k = 0`, `U_k = 1`, and every other out-of-range index is
    /// zero. In-range indices give the variable itself.
    pub fn resolve_dummy(&self, symbol: Symbol, index: i64) -> Poly {
        let k = self.k as i64;
        let (table, upper) = match symbol {
            Symbol::U | Symbol::LowerU => (self.table_of(symbol), k - 2),
            Symbol::V | Symbol::LowerV => (self.table_of(symbol), k - 1),
        };
        if (1..=upper).contains(&index) {
            let pos = match symbol {
                Symbol::U | Symbol::LowerU => self.u_index(index as usize),
                Symbol::V | Symbol::LowerV => self.v_index(index as usize),
            };
            return Poly::var(table, pos);
        }
        match symbol {
            Symbol::U | Symbol::LowerU if index == k => Poly::one(table),
            _ => Poly::zero(table),
        }
    }

    fn table_of(&self, symbol: Symbol) -> &Arc<VarTable> {
        match symbol {
            Symbol::U | Symbol::V => &self.codomain,
            Symbol::LowerU | Symbol::LowerV => &self.domain,
        }
    }

    /// Codomain `U_i` with dummies resolved.
    pub fn cap_u(&self, i: i64) -> Poly {
        self.resolve_dummy(Symbol::U, i)
    }

    /// Codomain `V_i` with dummies resolved.
    pub fn cap_v(&self, i: i64) -> Poly {
        self.resolve_dummy(Symbol::V, i)
    }

    /// Domain `u_i` with dummies resolved.
    pub fn low_u(&self, i: i64) -> Poly {
        self.resolve_dummy(Symbol::LowerU, i)
    }

    /// Domain `v_i` with dummies resolved.
    pub fn low_v(&self, i: i64) -> Poly {
        self.resolve_dummy(Symbol::LowerV, i)
    }

    pub fn w1(&self) -> Poly {
        Poly::var(&self.codomain, self.w1_index())
    }

    pub fn w2(&self) -> Poly {
        Poly::var(&self.codomain, self.w2_index())
    }

    pub fn y(&self) -> Poly {
        Poly::var(&self.domain, self.y_index())
    }

    /// `W1 o phi = y^k + sum u_i y^i`.
    pub fn w1_on_domain(&self) -> Poly {
        let y = self.y();
        (1..=self.k as i64).fold(Poly::zero(&self.domain), |acc, i| {
            &acc + &(&self.low_u(i) * &y.pow(i as u32))
        })
    }

    /// `W2 o phi = sum v_i y^i`.
    pub fn w2_on_domain(&self) -> Poly {
        let y = self.y();
        (1..=self.k as i64).fold(Poly::zero(&self.domain), |acc, i| {
            &acc + &(&self.low_v(i) * &y.pow(i as u32))
        })
    }

    pub fn to_json(&self) -> Value {
        let weights: Map<String, Value> = self
            .domain
            .names()
            .iter()
            .zip(self.domain.weights())
            .map(|(n, w)| (n.clone(), json!(w)))
            .collect();
        let degrees: Map<String, Value> = self
            .codomain
            .names()
            .iter()
            .zip(self.codomain.weights())
            .map(|(n, w)| (n.clone(), json!(w)))
            .collect();
        json!({
            "k": self.k,
            "domain": self.domain.names(),
            "codomain": self.codomain.names(),
            "weights": weights,
            "degrees": degrees,
        })
    }
}

pub fn build_context(k: i64) -> Result<CrossCapContext> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    CrossCapContext::new(k as usize)
}

/// A map germ given by its component functions on the domain table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm {
    pub context: CrossCapContext,
    pub components: Vec<Poly>,
}

impl MapGerm {
    /// Images of the codomain coordinates, in codomain order, ready for
    /// [`Poly::substitute_indexed`].
    pub fn images(&self) -> Vec<Option<Poly>> {
        self.components.iter().cloned().map(Some).collect()
    }

    /// `p o phi` for a codomain polynomial `p`.
    pub fn pull_back(&self, p: &Poly) -> Result<Poly> {
        p.substitute_indexed(self.context.domain(), &self.images())
    }
}

pub fn build_phi(ctx: &CrossCapContext) -> MapGerm {
    let mut comps: Vec<Poly> = (0..ctx.domain_dim() - 1)
        .map(|i| Poly::var(ctx.domain(), i))
        .collect();
    comps.push(ctx.w1_on_domain());
    comps.push(ctx.w2_on_domain());
    MapGerm {
        context: ctx.clone(),
        components: comps,
    }
}

/// Jacobian of `phi_k`: `(2k-1) x (2k-2)`, entry `(i, j)` is the partial of
/// component `i` in domain variable `j`.
pub fn jacobian(ctx: &CrossCapContext) -> PolyMatrix {
    let phi = build_phi(ctx);
    let n = ctx.domain_dim();
    let entries = phi
        .components
        .iter()
        .flat_map(|c| (0..n).map(move |j| c.derivative(j)))
        .collect();
    PolyMatrix::new(ctx.domain(), ctx.codomain_dim(), n, entries).expect("jacobian shape")
}

/// `xi_e = (d_1 X_1, ..., d_p X_p)` on the codomain.
pub fn euler_field(ctx: &CrossCapContext) -> VectorField {
    let t = ctx.codomain();
    let comps = (0..t.len())
        .map(|i| Poly::var(t, i).scale_int(t.weight(i) as i64))
        .collect();
    VectorField::new(ctx, Space::Codomain, comps)
        .expect("euler field shape")
        .with_label(FieldLabel::Euler)
}

/// True iff every term of component `j` has weighted degree `d_j`.
pub fn check_quasihomogeneous(ctx: &CrossCapContext, phi: &MapGerm) -> bool {
    phi.components.len() == ctx.codomain_dim()
        && phi
            .components
            .iter()
            .zip(ctx.codomain().weights())
            .all(|(c, &d)| c.table() == ctx.domain() && c.is_weighted_homogeneous(d))
}
