//! Exact sparse multivariate polynomials over the rationals and the linear
//! algebra built on them.

pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod render;
pub mod table;

pub use linalg::{rational_rank, sparse_rank, EchelonBasis};
pub use matrix::{PolyMatrix, QMatrix};
pub use poly::Poly;
pub use rational::{format_rational, frac, parse_rational, rat, Rational};
pub use render::{parse_poly, poly_from_json, poly_to_json};
pub use table::{monomials_of_weighted_degree, Monomial, VarTable};

use crate::error::Result;

/// Which ring operation [`poly_arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}
