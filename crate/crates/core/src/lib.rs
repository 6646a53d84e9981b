//! Exact computation of vector fields liftable over the minimal cross cap
//! maps `phi_k`, the image hypersurface they are tangent to, and the linear
//! classification built on them.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every verification is a polynomial identity.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod crosscap;
pub mod error;
pub mod fields;
pub mod image;
pub mod lift;
pub mod order;

pub use crosscap::{build_context, CrossCapContext};
pub use error::{Error, Result};
pub use fields::{Family, FieldLabel, Space, VectorField};
