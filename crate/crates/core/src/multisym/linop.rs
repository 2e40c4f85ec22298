//! Linear operators on the degree-truncated ring.

use super::{bidegree, Alphabet, Endo, Generator, MultiSym};
use crate::error::{Error, Result};
use crate::exactalg::{FieldElem, Var};

/// One summand `coeff * mult * d/d(deriv)` of a derivation.
#[derive(Clone, Debug)]
pub struct DerivTerm {
    pub coeff: FieldElem,
    pub mult: Generator,
    pub deriv: Generator,
}

#[derive(Clone, Debug)]
pub enum LinOp {
    Identity,
    Endo(Endo),
    Gamma {
        x: FieldElem,
        inverse: bool,
    },
    /// Algebra substitution; generators not listed are fixed.
    Substitution(Vec<(Generator, MultiSym)>),
    /// Multiplies a term of bidegree `(n1, n2)` by `x^n1 * y^n2`.
    Grading {
        x: FieldElem,
        y: FieldElem,
    },
    /// `exp` of a derivation that moves degree from one alphabet to the
    /// other, so it acts nilpotently.
    ExpDerivation(Vec<DerivTerm>),
    /// Sets an alphabet to zero.
    Kill(Alphabet),
    /// Substitutes into every coefficient.
    Coefficients(Vec<(Var, FieldElem)>),
    /// Applies the operators left to right.
    Compose(Vec<LinOp>),
}

impl LinOp {
    pub fn then(self, next: LinOp) -> LinOp {
        match self {
            LinOp::Compose(mut v) => {
                v.push(next);
                LinOp::Compose(v)
            }
            op => LinOp::Compose(vec![op, next]),
        }
    }
}

/// Applies `op` to `f`, which must have per-alphabet degree at most `d`.
/// Outputs are exact; none of the operators raise total degree.
pub fn apply_linop(op: &LinOp, f: &MultiSym, d: usize) -> Result<MultiSym> {
    let (dx, dy) = f.max_bidegree();
    if dx.max(dy) > d {
        return Err(Error::TruncationOverflow {
            degree: dx.max(dy),
            bound: d,
        });
    }
    apply(op, f)
}

fn apply(op: &LinOp, f: &MultiSym) -> Result<MultiSym> {
    Ok(match op {
        LinOp::Identity => f.clone(),
        LinOp::Endo(e) => f.endo(*e),
        LinOp::Gamma { x, inverse } => f.gamma(x, *inverse)?,
        LinOp::Substitution(images) => f.substitute(|g| {
            images
                .iter()
                .find(|(h, _)| h == g)
                .map(|(_, img)| img.clone())
        }),
        LinOp::Grading { x, y } => {
            let mut out = MultiSym::zero(f.l());
            for (m, c) in f.terms() {
                let (n1, n2) = bidegree(m);
                let k = c.mul_ref(&x.pow(n1 as i32)?).mul_ref(&y.pow(n2 as i32)?);
                out.add_term(m.clone(), k);
            }
            out
        }
        LinOp::ExpDerivation(terms) => exp_derivation(terms, f)?,
        LinOp::Kill(a) => f.kill_alphabet(*a),
        LinOp::Coefficients(b) => f.subst_coeffs(b)?,
        LinOp::Compose(ops) => {
            let mut cur = f.clone();
            for o in ops {
                cur = apply(o, &cur)?;
            }
            cur
        }
    })
}

fn exp_derivation(terms: &[DerivTerm], f: &MultiSym) -> Result<MultiSym> {
    if terms.iter().any(|t| t.mult.alphabet == t.deriv.alphabet) {
        return Err(Error::NotNilpotent(0));
    }
    // Every step lowers the degree in the differentiated alphabets.
    let bound = f
        .terms()
        .map(|(m, _)| {
            m.iter()
                .filter(|g| terms.iter().any(|t| t.deriv.alphabet == g.alphabet))
                .map(|g| g.degree)
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0)
        + 1;
    let l = f.l();
    let step = |g: &MultiSym| -> MultiSym {
        let mut acc = MultiSym::zero(l);
        for t in terms {
            let dg = g.derivative(&t.deriv);
            if dg.is_zero() {
                continue;
            }
            let mult = MultiSym::monomial(l, vec![t.mult], t.coeff.clone());
            acc = acc.plus(&dg.times(&mult));
        }
        acc
    };
    let mut out = f.clone();
    let mut term = f.clone();
    for k in 1..=bound {
        term = step(&term).scale(&FieldElem::from_ratio(1, k as i64));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.plus(&term);
    }
    Err(Error::NotNilpotent(bound))
}
