//! Exact coefficient fields and multivariate polynomial arithmetic.

pub mod expr;
mod field;
mod monomial;
mod poly;

pub use field::{Coeff, FieldSpec};
pub use monomial::{Monomial, TermOrder};
pub use poly::{poly_arith, ArithOp, PolyRing, Polynomial, Ring};
