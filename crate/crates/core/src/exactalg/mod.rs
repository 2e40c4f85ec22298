//! Exact arithmetic over `Q(t1, t2, h, u, w)`.

mod field;
pub mod gcd;
mod monomial;
mod parse;
mod poly;

pub use field::FieldElem;
pub use monomial::{Monomial, Var, NVARS};
pub use parse::parse;
pub use poly::{Coeff, MPoly, Poly, ZPoly};

/// Re-export of the coefficient rationals.
pub use num_rational::BigRational;
