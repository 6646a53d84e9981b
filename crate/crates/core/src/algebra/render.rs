//! Text and JSON forms of polynomials.
//!
//! JSON shape: `{"terms":[{"c":"-3","m":{"V1":1,"W1":1}}]}`; terms appear in
//! the same descending order as the text form and coefficients are exact
//! strings.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::poly::Poly;
use super::rational::{format_rational, parse_rational, Rational};
use super::table::{Monomial, VarTable};
use crate::error::{Error, Result};

pub fn poly_to_json(p: &Poly) -> Value {
    let table = p.table();
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mut mono = Map::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    mono.insert(table.name(i).to_string(), json!(e));
                }
            }
            json!({ "c": format_rational(c), "m": Value::Object(mono) })
        })
        .collect();
    json!({ "terms": terms })
}

pub fn poly_from_json(table: &Arc<VarTable>, v: &Value) -> Result<Poly> {
    let bad = |msg: &str| Error::Parse(format!("polynomial json: {msg}"));
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `terms` array"))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c = t
            .get("c")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("coefficient must be a string"))?;
        let c = parse_rational(c)?;
        let mono = t
            .get("m")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing monomial object"))?;
        let mut exps = vec![0u32; table.len()];
        for (name, e) in mono {
            let e = e
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| bad("exponent must be a nonnegative integer"))?;
            exps[table.index_of(name)?] += e;
        }
        out.push((Monomial::from_exponents(exps), c));
    }
    Ok(Poly::from_terms(table, out))
}

/// Parses the canonical text form (and minor variations in spacing).
///
/// Accepts sums of products such as `-5*U1*V2 - 3*W2`, `3/4*y^2 + 1`.
pub fn parse_poly(table: &Arc<VarTable>, s: &str) -> Result<Poly> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < src.len() {
        let mut sign = Rational::from_integer(1.into());
        if terms.is_empty() || src[pos] == '+' || src[pos] == '-' {
            match src.get(pos) {
                Some('-') => {
                    sign = -sign;
                    pos += 1;
                }
                Some('+') => pos += 1,
                _ if terms.is_empty() => {}
                _ => {
                    return Err(Error::Parse(format!(
                        "expected `+` or `-` at {pos} in `{s}`"
                    )))
                }
            }
        } else {
            return Err(Error::Parse(format!(
                "expected `+` or `-` at {pos} in `{s}`"
            )));
        }
        let (m, c) = parse_term(table, &src, &mut pos, s)?;
        terms.push((m, c * sign));
    }
    Ok(Poly::from_terms(table, terms))
}

fn parse_term(
    table: &Arc<VarTable>,
    src: &[char],
    pos: &mut usize,
    orig: &str,
) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::from_integer(1.into());
    let mut exps = vec![0u32; table.len()];
    loop {
        let start = *pos;
        match src.get(*pos) {
            Some(c) if c.is_ascii_digit() => {
                while src
                    .get(*pos)
                    .is_some_and(|c| c.is_ascii_digit() || *c == '/')
                {
                    *pos += 1;
                }
                let lit: String = src[start..*pos].iter().collect();
                coeff *= parse_rational(&lit)?;
            }
            Some(c) if c.is_alphabetic() || *c == '_' => {
                while src
                    .get(*pos)
                    .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                {
                    *pos += 1;
                }
                let name: String = src[start..*pos].iter().collect();
                let idx = table.index_of(&name)?;
                let mut e = 1u32;
                if src.get(*pos) == Some(&'^') {
                    *pos += 1;
                    let es = *pos;
                    while src.get(*pos).is_some_and(char::is_ascii_digit) {
                        *pos += 1;
                    }
                    let lit: String = src[es..*pos].iter().collect();
                    e = lit
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{orig}`")))?;
                }
                exps[idx] += e;
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected input at {start} in `{orig}`"
                )))
            }
        }
        if src.get(*pos) == Some(&'*') {
            *pos += 1;
        } else {
            break;
        }
    }
    Ok((Monomial::from_exponents(exps), coeff))
}
