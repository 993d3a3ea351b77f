//! Exact computational commutative algebra over polynomial quotient rings
//! localized at the origin.
//!
//! The crate is layered bottom-up:
//!
//! * [`polynomial`]: exact fields (`Q`, `F_p`) and multivariate polynomials.
//! * [`groebner`]: reduced Gröbner bases and the ideal toolbox (membership,
//!   sums, products, intersections, colon ideals, elimination).
//! * [`local`]: quotient rings with local semantics at the origin: local
//!   lengths by m-adic stabilization, socles, Gorenstein detection, tower
//!   rings, Hensel and idempotent lifting.
//! * [`spc`]: socle/parameter verdicts, Koszul length arithmetic, the
//!   annihilator splitting criterion with explicit retractions, reduction to
//!   a principal ideal, multiplicities and Frobenius growth.
//! * [`cli`]: session files, task dispatch, JSON reports and a seeded random
//!   instance search.

pub mod cli;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod local;
pub mod polynomial;
pub mod spc;

pub use error::{Error, Result};
pub use groebner::Ideal;
pub use local::QuotientRing;
pub use polynomial::{Coeff, FieldSpec, Monomial, PolyRing, Polynomial, Ring, TermOrder};
