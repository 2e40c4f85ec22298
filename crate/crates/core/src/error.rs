use thiserror::Error;

use crate::exactalg::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes identically under binding {var} -> {value}")]
    Pole { var: Var, value: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("box ({a},{b}) lies outside the partition {partition}")]
    BoxOutside {
        a: usize,
        b: usize,
        partition: String,
    },

    #[error("size mismatch: |{left}| != |{right}|")]
    SizeMismatch { left: String, right: String },

    #[error("{partition} is not a {l}-core")]
    NotCore { partition: String, l: usize },

    #[error("maya diagram has charge {0}; shift to charge zero first")]
    NonzeroCharge(i64),

    #[error("invalid modulus l = {0}")]
    InvalidModulus(usize),

    #[error("residue {residue} out of range for l = {l}")]
    ResidueOutOfRange { residue: usize, l: usize },

    #[error("mismatched moduli: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("element has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("element of degree {degree} exceeds truncation bound {bound}")]
    TruncationOverflow { degree: usize, bound: usize },

    #[error("element is not in the span of the requested basis; residual {residual}")]
    Residual { residual: String },

    #[error("element mixes both alphabets; the requested basis is single-alphabet")]
    MixedAlphabets,

    #[error("operator exponential did not terminate within {0} steps")]
    NotNilpotent(usize),

    #[error("{what} requires an empty core, got core {core}")]
    UnsupportedCore { what: &'static str, core: String },

    #[error("convention mismatch while solving block l={l} lambda={lambda}: {detail}")]
    ConventionMismatch {
        l: usize,
        lambda: String,
        detail: String,
    },
}
