//! The three families of liftable vector fields over `phi_k`, the Euler
//! field, and the lowerable fields that witness liftability.
//!
//! Every indexed symbol is passed through the dummy convention
//! (`U_{k-1} = V_k = 0`, `U_k = 1`, other out-of-range indices zero) as the
//! formula is assembled, so no stored polynomial ever mentions a dummy.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{poly_from_json, poly_to_json, Poly};
use crate::crosscap::{euler_field, CrossCapContext, Symbol};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Domain,
    Codomain,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Domain => "domain",
            Space::Codomain => "codomain",
        }
    }
}

/// One of the three families of liftable fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    One,
    Two,
    Three,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::One, Family::Two, Family::Three];

    pub fn number(self) -> u8 {
        match self {
            Family::One => 1,
            Family::Two => 2,
            Family::Three => 3,
        }
    }

    pub fn from_number(n: i64) -> Result<Family> {
        match n {
            1 => Ok(Family::One),
            2 => Ok(Family::Two),
            3 => Ok(Family::Three),
            _ => Err(Error::InvalidFamily(n.to_string())),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "1" => Ok(Family::One),
            "2" => Ok(Family::Two),
            "3" => Ok(Family::Three),
            _ => Err(Error::InvalidFamily(s.to_string())),
        }
    }
}

/// Identifies a generator: `xi^f_j` or the Euler field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldLabel {
    Family { family: Family, j: usize },
    Euler,
}

impl fmt::Display for FieldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldLabel::Family { family, j } => write!(f, "xi{}_{}", family.number(), j),
            FieldLabel::Euler => write!(f, "xi_e"),
        }
    }
}

impl FieldLabel {
    fn to_json(self) -> Value {
        match self {
            FieldLabel::Family { family, j } => {
                json!({"family": family.number().to_string(), "j": j})
            }
            FieldLabel::Euler => json!({"family": "euler"}),
        }
    }

    fn from_json(v: &Value) -> Result<FieldLabel> {
        let bad = || Error::Parse(format!("bad field label {v}"));
        match v.get("family").and_then(Value::as_str) {
            Some("euler") => Ok(FieldLabel::Euler),
            Some(f) => {
                let family = f.parse()?;
                let j = v.get("j").and_then(Value::as_u64).ok_or_else(bad)? as usize;
                Ok(FieldLabel::Family { family, j })
            }
            None => Err(bad()),
        }
    }
}

/// Ordered components on the domain (`2k-2`) or codomain (`2k-1`) of `phi_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub space: Space,
    pub components: Vec<Poly>,
    pub label: Option<FieldLabel>,
}

impl VectorField {
    pub fn new(ctx: &CrossCapContext, space: Space, components: Vec<Poly>) -> Result<Self> {
        let expected = match space {
            Space::Domain => ctx.domain_dim(),
            Space::Codomain => ctx.codomain_dim(),
        };
        if components.len() != expected {
            return Err(Error::ComponentCount {
                expected,
                found: components.len(),
            });
        }
        let table = ctx.table(space);
        for c in &components {
            if c.table() != table {
                return Err(Error::TableMismatch(format!(
                    "component is not over the {} table",
                    space.as_str()
                )));
            }
        }
        Ok(VectorField {
            space,
            components,
            label: None,
        })
    }

    pub fn zero(ctx: &CrossCapContext, space: Space) -> Self {
        let n = match space {
            Space::Domain => ctx.domain_dim(),
            Space::Codomain => ctx.codomain_dim(),
        };
        VectorField {
            space,
            components: vec![Poly::zero(ctx.table(space)); n],
            label: None,
        }
    }

    pub fn with_label(mut self, label: FieldLabel) -> Self {
        self.label = Some(label);
        self
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.components.iter().all(|c| c.constant_term().is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.components.iter().map(Poly::num_terms).sum()
    }

    fn zip_with(
        &self,
        other: &VectorField,
        f: impl Fn(&Poly, &Poly) -> Result<Poly>,
    ) -> Result<VectorField> {
        if self.space != other.space || self.len() != other.len() {
            return Err(Error::ComponentCount {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(VectorField {
            space: self.space,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
            label: None,
        })
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        self.zip_with(other, Poly::checked_add)
    }

    pub fn checked_sub(&self, other: &VectorField) -> Result<VectorField> {
        self.zip_with(other, Poly::checked_sub)
    }

    /// Multiplies every component by `g`.
    pub fn scale_by(&self, g: &Poly) -> Result<VectorField> {
        Ok(VectorField {
            space: self.space,
            components: self
                .components
                .iter()
                .map(|c| c.checked_mul(g))
                .collect::<Result<_>>()?,
            label: None,
        })
    }

    pub fn scale_int(&self, c: i64) -> VectorField {
        VectorField {
            space: self.space,
            components: self.components.iter().map(|p| p.scale_int(c)).collect(),
            label: self.label,
        }
    }

    pub fn render_components(&self) -> Vec<String> {
        self.components.iter().map(Poly::render).collect()
    }

    pub fn to_json(&self, ctx: &CrossCapContext) -> Value {
        json!({
            "k": ctx.k(),
            "space": self.space.as_str(),
            "label": self.label.map_or(Value::Null, FieldLabel::to_json),
            "components": self.components.iter().map(poly_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(ctx: &CrossCapContext, v: &Value) -> Result<VectorField> {
        let bad = |m: &str| Error::Parse(format!("vector field json: {m}"));
        let space = match v.get("space").and_then(Value::as_str) {
            Some("domain") => Space::Domain,
            Some("codomain") => Space::Codomain,
            _ => return Err(bad("missing or invalid `space`")),
        };
        if let Some(k) = v.get("k").and_then(Value::as_u64) {
            if k as usize != ctx.k() {
                return Err(bad("k does not match the context"));
            }
        }
        let comps = v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `components`"))?
            .iter()
            .map(|c| poly_from_json(ctx.table(space), c))
            .collect::<Result<Vec<_>>>()?;
        let mut field = VectorField::new(ctx, space, comps)?;
        field.label = match v.get("label") {
            None | Some(Value::Null) => None,
            Some(l) => Some(FieldLabel::from_json(l)?),
        };
        Ok(field)
    }
}

pub(crate) fn check_j(ctx: &CrossCapContext, j: usize) -> Result<()> {
    let max = ctx.k() - 1;
    if (1..=max).contains(&j) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            j: j as i64,
            max: max as i64,
        })
    }
}

fn sum<I: IntoIterator<Item = Poly>>(ctx: &CrossCapContext, space: Space, it: I) -> Poly {
    it.into_iter()
        .fold(Poly::zero(ctx.table(space)), |acc, p| &acc + &p)
}

fn assemble(
    ctx: &CrossCapContext,
    a: impl Fn(i64) -> Poly,
    b: impl Fn(i64) -> Poly,
    c1: Poly,
    c2: Poly,
    label: FieldLabel,
) -> VectorField {
    let k = ctx.k() as i64;
    let mut comps: Vec<Poly> = (1..=k - 2).map(a).collect();
    comps.extend((1..=k - 1).map(b));
    comps.push(c1);
    comps.push(c2);
    VectorField::new(ctx, Space::Codomain, comps)
        .expect("family field shape")
        .with_label(label)
}

/// First family `xi^1_j`.
pub fn family1(ctx: &CrossCapContext, j: usize) -> Result<VectorField> {
    check_j(ctx, j)?;
    let k = ctx.k() as i64;
    let j = j as i64;
    let u = |i| ctx.cap_u(i);
    let v = |i| ctx.cap_v(i);
    let (w1, w2) = (ctx.w1(), ctx.w2());
    let cod = Space::Codomain;

    let a = |i: i64| (&u(i) * &u(j)).scale_int((k - i) * (k - j));
    let b = |i: i64| {
        let s1 = sum(ctx, cod, (1..i).map(|r| &u(i + j - r) * &v(r))).scale_int(k);
        let s2 = sum(ctx, cod, (1..=i).map(|r| &u(r) * &v(i + j - r))).scale_int(k);
        let t3 = (&u(j) * &v(i)).scale_int((i - 1) * (k - j));
        let t4 = (&v(i + j) * &w1).scale_int(k);
        let t5 = (&u(i + j) * &w2).scale_int(k);
        &(&(&(&s1 - &s2) - &t3) + &t4) - &t5
    };
    let c1 = (&u(j) * &w1).scale_int(k * (k - j));
    let c2 = &(&v(j) * &w1).scale_int(-k) + &(&u(j) * &w2).scale_int(k - j);
    Ok(assemble(
        ctx,
        a,
        b,
        c1,
        c2,
        FieldLabel::Family {
            family: Family::One,
            j: j as usize,
        },
    ))
}

/// Second family `xi^2_j`.
pub fn family2(ctx: &CrossCapContext, j: usize) -> Result<VectorField> {
    check_j(ctx, j)?;
    let k = ctx.k() as i64;
    let j = j as i64;
    let u = |i| ctx.cap_u(i);
    let v = |i| ctx.cap_v(i);
    let w1 = ctx.w1();
    let cod = Space::Codomain;

    let a = |i: i64| {
        let t1 = (&u(k + i - j + 1) * &w1).scale_int(-k * (k + i - j + 1));
        let s = sum(
            ctx,
            cod,
            (1..=i).map(|r| (&u(r) * &u(k + i - j - r + 1)).scale_int(k + i - j - 2 * r + 1)),
        )
        .scale_int(k);
        let t3 = (&u(i + 1) * &u(k - j)).scale_int(j * (i + 1));
        &(&t1 + &s) - &t3
    };
    let b = |i: i64| {
        let t1 = (&v(k + i - j + 1) * &w1).scale_int(-k * (k + i - j + 1));
        let s1 = sum(
            ctx,
            cod,
            (1..=i).map(|r| (&u(r) * &v(k + i - j - r + 1)).scale_int(k + i - j - r + 1)),
        )
        .scale_int(k);
        let s2 = sum(
            ctx,
            cod,
            (1..=i).map(|r| (&u(k + i - j - r + 1) * &v(r)).scale_int(r)),
        )
        .scale_int(k);
        let t4 = (&u(k - j) * &v(i + 1)).scale_int(j * (i + 1));
        &(&(&t1 + &s1) - &s2) - &t4
    };
    let c1 = &(&u(k - j + 1) * &w1).scale_int(k * (k - j + 1)) + &(&u(1) * &u(k - j)).scale_int(j);
    let c2 = &(&v(k - j + 1) * &w1).scale_int(k * (k - j + 1)) + &(&v(1) * &u(k - j)).scale_int(j);
    Ok(assemble(
        ctx,
        a,
        b,
        c1,
        c2,
        FieldLabel::Family {
            family: Family::Two,
            j: j as usize,
        },
    ))
}

/// Third family `xi^3_j`, kept with its common factor `k`.
pub fn family3(ctx: &CrossCapContext, j: usize) -> Result<VectorField> {
    check_j(ctx, j)?;
    let k = ctx.k() as i64;
    let j = j as i64;
    let u = |i| ctx.cap_u(i);
    let v = |i| ctx.cap_v(i);
    let w2 = ctx.w2();
    let cod = Space::Codomain;

    let a = |i: i64| {
        let t1 = (&u(k + i - j + 1) * &w2).scale_int(-k * (k + i - j + 1));
        let s1 = sum(
            ctx,
            cod,
            (1..=i).map(|r| (&u(k + i - j - r + 1) * &v(r)).scale_int(k + i - j - r + 1)),
        )
        .scale_int(k);
        let s2 = sum(
            ctx,
            cod,
            (1..=i).map(|r| (&u(r) * &v(k + i - j - r + 1)).scale_int(r)),
        )
        .scale_int(k);
        let t4 = (&u(i + 1) * &v(k - j)).scale_int(k * (i + 1));
        &(&(&t1 + &s1) - &s2) - &t4
    };
    let b = |i: i64| {
        let t1 = (&v(k + i - j + 1) * &w2).scale_int(-k * (k + i - j + 1));
        let s = sum(
            ctx,
            cod,
            (1..=i).map(|r| (&v(r) * &v(k + i - j - r + 1)).scale_int(k + i - j - 2 * r + 1)),
        )
        .scale_int(k);
        let t3 = (&v(i + 1) * &v(k - j)).scale_int(k * (i + 1));
        &(&t1 + &s) - &t3
    };
    let c1 = &(&u(k - j + 1) * &w2).scale_int(k * (k - j + 1)) + &(&u(1) * &v(k - j)).scale_int(k);
    let c2 = &(&v(k - j + 1) * &w2).scale_int(k * (k - j + 1)) + &(&v(1) * &v(k - j)).scale_int(k);
    Ok(assemble(
        ctx,
        a,
        b,
        c1,
        c2,
        FieldLabel::Family {
            family: Family::Three,
            j: j as usize,
        },
    ))
}

pub fn family(ctx: &CrossCapContext, family: Family, j: usize) -> Result<VectorField> {
    match family {
        Family::One => family1(ctx, j),
        Family::Two => family2(ctx, j),
        Family::Three => family3(ctx, j),
    }
}

/// `(w_1 x_1, ..., w_n x_n)` on the domain: the lowerable of the Euler field.
pub fn euler_lowerable(ctx: &CrossCapContext) -> VectorField {
    let t = ctx.domain();
    let comps = (0..t.len())
        .map(|i| Poly::var(t, i).scale_int(t.weight(i) as i64))
        .collect();
    VectorField::new(ctx, Space::Domain, comps)
        .expect("euler lowerable shape")
        .with_label(FieldLabel::Euler)
}

/// Lowerable for `xi^1_j`: the field lowering `xi^1_j - (k-j) U_j xi_e`
/// (zero `u` and `y` components) plus `(k-j) u_j` times the Euler lowerable.
pub fn lowerable1(ctx: &CrossCapContext, j: usize) -> Result<VectorField> {
    check_j(ctx, j)?;
    let k = ctx.k() as i64;
    let j = j as i64;
    let u = |i| ctx.low_u(i);
    let v = |i| ctx.low_v(i);
    let w1 = ctx.w1_on_domain();
    let w2 = ctx.w2_on_domain();
    let dom = Space::Domain;

    let mut comps: Vec<Poly> = (1..=k - 2).map(|_| Poly::zero(ctx.domain())).collect();
    for i in 1..=k - 1 {
        let s1 = sum(ctx, dom, (1..i).map(|r| &u(i + j - r) * &v(r))).scale_int(k);
        let s2 = sum(ctx, dom, (1..=i).map(|r| &u(r) * &v(i + j - r))).scale_int(k);
        let t3 = (&u(j) * &v(i)).scale_int((k - 1) * (k - j));
        let t4 = (&v(i + j) * &w1).scale_int(k);
        let t5 = (&u(i + j) * &w2).scale_int(k);
        comps.push(&(&(&(&s1 - &s2) - &t3) + &t4) - &t5);
    }
    comps.push(Poly::zero(ctx.domain()));
    let reduced = VectorField::new(ctx, dom, comps)?;
    let euler_part = euler_lowerable(ctx).scale_by(&u(j).scale_int(k - j))?;
    Ok(reduced
        .checked_add(&euler_part)?
        .with_label(FieldLabel::Family {
            family: Family::One,
            j: j as usize,
        }))
}

/// Lowerable for `xi^2_j` or `xi^3_j` from the shared template: `x = u` for
/// family 2 and `x = v` for family 3; `z = u` on the `u` components and
/// `z = v` on the `v` components; the `y` component is
/// `k sum_{r=1}^j x_{k-j+r} y^r + x_{k-j} (k - (k-j) x_k)`.
pub fn lowerable23(ctx: &CrossCapContext, family: Family, j: usize) -> Result<VectorField> {
    let x_sym = match family {
        Family::Two => Symbol::LowerU,
        Family::Three => Symbol::LowerV,
        Family::One => return Err(Error::InvalidFamily("1 (use lowerable1)".into())),
    };
    check_j(ctx, j)?;
    let k = ctx.k() as i64;
    let j = j as i64;
    let x = |i| ctx.resolve_dummy(x_sym, i);
    let big_x = match family {
        Family::Two => ctx.w1_on_domain(),
        _ => ctx.w2_on_domain(),
    };
    let dom = Space::Domain;

    let alpha = |i: i64, z: &dyn Fn(i64) -> Poly| -> Poly {
        let t1 = (&z(k + i - j + 1) * &big_x).scale_int(-k * (k + i - j + 1));
        let s1 = sum(
            ctx,
            dom,
            (1..=i).map(|r| (&x(r) * &z(k + i - j - r + 1)).scale_int(k + i - j - r + 1)),
        )
        .scale_int(k);
        let s2 = sum(
            ctx,
            dom,
            (1..=i + 1).map(|r| (&x(k + i - j - r + 1) * &z(r)).scale_int(r)),
        )
        .scale_int(k);
        let t4 = (&(&x(k) * &x(k - j)) * &z(i + 1)).scale_int((k - j) * (i + 1));
        &(&(&t1 + &s1) - &s2) + &t4
    };
    let zu = |i| ctx.low_u(i);
    let zv = |i| ctx.low_v(i);

    let mut comps: Vec<Poly> = (1..=k - 2).map(|i| alpha(i, &zu)).collect();
    comps.extend((1..=k - 1).map(|i| alpha(i, &zv)));
    let y = ctx.y();
    let c_sum = sum(ctx, dom, (1..=j).map(|r| &x(k - j + r) * &y.pow(r as u32))).scale_int(k);
    let c_tail = &x(k - j)
        * &(&Poly::constant(ctx.domain(), crate::algebra::rat(k)) - &x(k).scale_int(k - j));
    comps.push(&c_sum + &c_tail);
    Ok(
        VectorField::new(ctx, dom, comps)?.with_label(FieldLabel::Family {
            family,
            j: j as usize,
        }),
    )
}

/// Lowerable partner of `xi^f_j`.
pub fn lowerable(ctx: &CrossCapContext, family: Family, j: usize) -> Result<VectorField> {
    match family {
        Family::One => lowerable1(ctx, j),
        f => lowerable23(ctx, f, j),
    }
}

/// The `3k - 2` generators: family 1 for `j = 1..k-1`, then family 2, then
/// family 3, then the Euler field.
pub fn generator_set(ctx: &CrossCapContext) -> Vec<VectorField> {
    let mut out = Vec::with_capacity(3 * ctx.k() - 2);
    for f in Family::ALL {
        for j in 1..ctx.k() {
            out.push(family(ctx, f, j).expect("j in range"));
        }
    }
    out.push(euler_field(ctx));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::crosscap::build_context;

    fn parse_field(ctx: &CrossCapContext, comps: &[&str]) -> Vec<Poly> {
        comps
            .iter()
            .map(|s| parse_poly(ctx.codomain(), s).unwrap())
            .collect()
    }

    #[test]
    fn k3_family1() {
        let ctx = build_context(3).unwrap();
        assert_eq!(
            family1(&ctx, 1).unwrap().components,
            parse_field(
                &ctx,
                &[
                    "4*U1^2",
                    "-3*U1*V1 + 3*V2*W1",
                    "-5*U1*V2 - 3*W2",
                    "6*U1*W1",
                    "-3*V1*W1 + 2*U1*W2"
                ]
            )
        );
        assert_eq!(
            family1(&ctx, 2).unwrap().components,
            parse_field(&ctx, &["0", "-3*U1*V2 - 3*W2", "3*V1", "0", "-3*V2*W1"])
        );
    }

    #[test]
    fn k2_against_umbrella_fields() {
        let ctx = build_context(2).unwrap();
        let f1 = family1(&ctx, 1).unwrap().components;
        assert_eq!(f1, parse_field(&ctx, &["-2*W2", "0", "-2*V1*W1"]));
        let f2 = family2(&ctx, 1).unwrap().components;
        assert_eq!(f2, parse_field(&ctx, &["-2*V1", "4*W1", "0"]));
        let f3 = family3(&ctx, 1).unwrap().components;
        assert_eq!(f3, parse_field(&ctx, &["0", "4*W2", "2*V1^2"]));
    }

    #[test]
    fn j_bounds() {
        let ctx = build_context(4).unwrap();
        assert_eq!(
            family1(&ctx, 0),
            Err(Error::IndexOutOfRange { j: 0, max: 3 })
        );
        assert!(family2(&ctx, 4).is_err());
        assert!(lowerable23(&ctx, Family::One, 1).is_err());
        assert!(lowerable1(&ctx, 4).is_err());
    }

    #[test]
    fn generator_counts_and_order() {
        for (k, n) in [(2, 4), (3, 7), (5, 13)] {
            let ctx = build_context(k).unwrap();
            let gens = generator_set(&ctx);
            assert_eq!(gens.len(), n);
            assert!(gens.iter().all(VectorField::vanishes_at_origin));
            assert_eq!(gens.last().unwrap().label, Some(FieldLabel::Euler));
            assert_eq!(
                gens[0].label,
                Some(FieldLabel::Family {
                    family: Family::One,
                    j: 1
                })
            );
        }
    }

    #[test]
    fn lowerable1_template_structure() {
        let ctx = build_context(2).unwrap();
        let eta = lowerable1(&ctx, 1).unwrap();
        assert_eq!(eta.render_components(), ["-2*v1*y", "0"]);
        let ctx = build_context(5).unwrap();
        for j in 1..5 {
            let eta = lowerable1(&ctx, j).unwrap();
            let uj = ctx.low_u(j as i64).scale_int((5 - j) as i64);
            for i in 1..=3 {
                let want = (&uj * &ctx.low_u(i)).scale_int(5 - i);
                assert_eq!(eta.components[i as usize - 1], want);
            }
            assert_eq!(eta.components[7], &uj * &ctx.y());
        }
    }

    #[test]
    fn lowerable23_umbrella() {
        let ctx = build_context(2).unwrap();
        assert_eq!(
            lowerable23(&ctx, Family::Two, 1)
                .unwrap()
                .render_components(),
            ["-2*v1", "2*y"]
        );
        assert_eq!(
            lowerable23(&ctx, Family::Three, 1)
                .unwrap()
                .render_components(),
            ["0", "2*v1"]
        );
    }

    #[test]
    fn json_round_trip() {
        let ctx = build_context(3).unwrap();
        let f = family2(&ctx, 2).unwrap();
        let back = VectorField::from_json(&ctx, &f.to_json(&ctx)).unwrap();
        assert_eq!(back, f);
        let other = build_context(4).unwrap();
        assert!(VectorField::from_json(&other, &f.to_json(&ctx)).is_err());
    }
}
