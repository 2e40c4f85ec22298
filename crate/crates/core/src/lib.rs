//! Exact construction of wreath Macdonald polynomials from their
//! triangularity axioms, together with the symmetric-function machinery
//! needed to check norms, Cauchy kernels, evaluation formulas and the
//! capped vertex generating function by exact rational-function arithmetic.

pub mod error;
pub mod exactalg;
pub mod multisym;
pub mod par;
pub mod partitions;
pub mod report;
pub mod vertex;
pub mod wreath;

pub use error::{Error, Result};
pub use exactalg::{FieldElem, Var};
