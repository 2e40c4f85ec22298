//! The capped vertex generating function, its per-partition extraction,
//! and the operator identities behind its derivation.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{FieldElem, Var};
use crate::multisym::{
    apply_linop, wreath_pairing, Alphabet, DerivTerm, Endo, Generator, LinOp, MultiSym,
};
use crate::partitions::{classical_descendant, core_quot, multipartitions, Partition};
use crate::report::Report;
use crate::wreath::{cauchy_denominator, kernel_exp, wreath_macdonald};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CCoeff {
    pub l: usize,
    pub i: usize,
    pub m: usize,
    pub n: usize,
    pub value: FieldElem,
}

/// `C^(i)_{m,n} = sum_{j,k < l, -i-j+k = m mod l} t1^(nj) t2^(nk)`.
pub fn c_coeff(l: usize, i: usize, m: usize, n: usize) -> Result<CCoeff> {
    if l == 0 {
        return Err(Error::InvalidModulus(0));
    }
    for r in [i, m] {
        if r >= l {
            return Err(Error::ResidueOutOfRange { residue: r, l });
        }
    }
    assert!(n >= 1, "degree starts at one");
    let mut value = FieldElem::zero();
    for j in 0..l {
        let k = (m + i + j) % l;
        value = value.add_ref(&FieldElem::laurent(
            [(n * j) as i32, (n * k) as i32, 0, 0, 0],
            1,
        ));
    }
    Ok(CCoeff { l, i, m, n, value })
}

/// `Phi_n = 1 - ((-h u)^n - (h^2 u w)^n) / (h^n - (-w)^n)`.
pub fn phi(n: usize) -> FieldElem {
    let n = n as i32;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let num = FieldElem::laurent([0, 0, n, n, 0], sign)
        .sub_ref(&FieldElem::laurent([0, 0, 2 * n, n, n], 1));
    let den =
        FieldElem::laurent([0, 0, n, 0, 0], 1).sub_ref(&FieldElem::laurent([0, 0, 0, 0, n], sign));
    FieldElem::one().sub_ref(&num.try_div(&den).expect("nonzero denominator"))
}

/// `exp(sum C^(i)_{0,n} Phi_n p^(i)_n / (n (1 - t1^(nl)) (1 - t2^(nl))))`
/// to total degree `D`.
pub fn main_kernel(l: usize, d: usize) -> Result<MultiSym> {
    kernel_exp(l, d, |i, n| {
        Ok(c_coeff(l, i, 0, n)?
            .value
            .mul_ref(&phi(n))
            .mul_ref(&cauchy_denominator(l, n)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Pairing,
    Specialization,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexResult {
    pub lambda: Partition,
    pub l: usize,
    pub value: FieldElem,
    pub route: Route,
    pub classical: FieldElem,
}

impl VertexResult {
    pub fn to_json(&self, routes_agree: bool) -> Value {
        json!({
            "lambda": self.lambda,
            "l": self.l,
            "value": self.value,
            "classical": self.classical,
            "routes_agree": routes_agree,
        })
    }
}

fn vertex_degree(lambda: &Partition, l: usize) -> Result<usize> {
    if l == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let cq = core_quot(lambda, l)?;
    if !cq.core.is_empty() {
        return Err(Error::UnsupportedCore {
            what: "capped vertex",
            core: cq.core.to_string(),
        });
    }
    Ok(cq.quotient_size())
}

/// `inv swap H_{lambda'}`, the dual basis element under the wreath pairing.
fn dual_element(lambda: &Partition, l: usize) -> Result<MultiSym> {
    let h = wreath_macdonald(&lambda.transpose(), l)?;
    Ok(h.h.endo(Endo::Swap).endo(Endo::Inv))
}

fn phi_specialize(f: &MultiSym) -> FieldElem {
    f.specialize(|g| {
        if g.color == 0 {
            phi(g.degree)
        } else {
            FieldElem::zero()
        }
    })
}

pub fn capped_vertex(lambda: &Partition, l: usize, route: Route) -> Result<VertexResult> {
    let d = vertex_degree(lambda, l)?;
    let dual = dual_element(lambda, l)?;
    let value = match route {
        Route::Pairing => wreath_pairing(&main_kernel(l, d)?, &dual)?,
        Route::Specialization => phi_specialize(&dual),
    };
    let classical = value.subst(&[(Var::W, FieldElem::zero())])?;
    Ok(VertexResult {
        lambda: lambda.clone(),
        l,
        value,
        route,
        classical,
    })
}

/// Both routes; the result carries the pairing value.
pub fn capped_vertex_both(lambda: &Partition, l: usize) -> Result<(VertexResult, bool)> {
    let a = capped_vertex(lambda, l, Route::Pairing)?;
    let b = capped_vertex(lambda, l, Route::Specialization)?;
    let agree = a.value.field_eq(&b.value);
    Ok((a, agree))
}

/// `H_lambda` itself at `p^(j)_n = delta_{0j} Phi_n`. This agrees with the
/// capped vertex only for single-box quotients.
pub fn literal_specialization(lambda: &Partition, l: usize) -> Result<FieldElem> {
    vertex_degree(lambda, l)?;
    Ok(phi_specialize(&wreath_macdonald(lambda, l)?.h))
}

/// Checks route agreement and the classical limit for one partition.
pub fn verify_vertex(lambda: &Partition, l: usize) -> Result<Report> {
    let mut report = Report::new("vertex")
        .param("l", l)
        .param("lambda", lambda.to_string());
    let (a, agree) = capped_vertex_both(lambda, l)?;
    report.record((!agree).then(|| json!({"identity": "routes", "pairing": a.value})));
    let want = classical_descendant(lambda, 0, l);
    report.record(
        (!a.classical.field_eq(&want))
            .then(|| json!({"identity": "classical", "got": a.classical, "expected": want})),
    );
    Ok(report.finish())
}

fn j_coeff(n: usize) -> FieldElem {
    let n = n as i32;
    let num =
        FieldElem::laurent([0, 0, n, 0, 0], 1).sub_ref(&FieldElem::laurent([0, 0, -n, 0, 0], 1));
    let den = FieldElem::one().sub_ref(&FieldElem::laurent([0, 0, 0, 0, -n], 1));
    num.try_div(&den).expect("nonzero denominator")
}

fn transfer(l: usize, d: usize, coeff: impl Fn(usize) -> FieldElem) -> LinOp {
    let mut terms = Vec::new();
    for n in 1..=d {
        let c = coeff(n);
        for i in 0..l {
            terms.push(DerivTerm {
                coeff: c.clone(),
                mult: Generator::x(i, n),
                deriv: Generator::y(i, n),
            });
        }
    }
    LinOp::ExpDerivation(terms)
}

/// `J_0(z) = exp(sum J_n p^(i)_n ⊗ d/dp^(i)_n)` with
/// `J_n = (h^n - h^-n) / (1 - w^-n)`; the inverse negates every `J_n`.
pub fn fusion_j0(l: usize, d: usize, inverse: bool) -> LinOp {
    transfer(l, d, |n| {
        if inverse {
            j_coeff(n).neg_ref()
        } else {
            j_coeff(n)
        }
    })
}

/// `R_0 = exp(sum (h^n - h^-n) p^(i)_n ⊗ d/dp^(i)_n)`.
pub fn r0(l: usize, d: usize) -> LinOp {
    transfer(l, d, |n| {
        let n = n as i32;
        FieldElem::laurent([0, 0, n, 0, 0], 1).sub_ref(&FieldElem::laurent([0, 0, -n, 0, 0], 1))
    })
}

/// Multiplication by `w^(x-degree)`, or its inverse.
pub fn z1(inverse: bool) -> LinOp {
    let w = FieldElem::var(Var::W);
    LinOp::Grading {
        x: if inverse {
            w.inv().expect("nonzero")
        } else {
            w
        },
        y: FieldElem::one(),
    }
}

/// `hbar^(sign Omega)`: multiplication by `h^(sign (n1 + n2))`.
pub fn hbar_omega(inverse: bool) -> LinOp {
    let h = FieldElem::var(Var::H);
    let h = if inverse {
        h.inv().expect("nonzero")
    } else {
        h
    };
    LinOp::Grading { x: h.clone(), y: h }
}

/// Every power-sum monomial of bidegree at most `(d, d)`.
pub fn bidegree_monomials(l: usize, d: usize) -> Vec<MultiSym> {
    let single = |a: Alphabet| -> Vec<Vec<Generator>> {
        let mut out = Vec::new();
        for k in 0..=d {
            for tuple in multipartitions(k, l) {
                let mut m = Vec::new();
                for (c, p) in tuple.iter().enumerate() {
                    m.extend(p.parts().iter().map(|&n| Generator::new(a, c, n)));
                }
                out.push(m);
            }
        }
        out
    };
    let xs = single(Alphabet::X);
    let ys = single(Alphabet::Y);
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            let mut m = x.clone();
            m.extend_from_slice(y);
            out.push(MultiSym::monomial(l, m, FieldElem::one()));
        }
    }
    out
}

/// `R_0 Z^-1 J_0 Z = hbar^-Omega J_0 hbar^Omega` on every monomial of
/// bidegree at most `(D, D)`.
pub fn verify_abrr(l: usize, d: usize) -> Result<Report> {
    let mut report = Report::new("abrr").param("l", l).param("degree", d);
    // Operators act on 2D total degree after transfer; build them to 2D.
    let top = 2 * d;
    let lhs = LinOp::Compose(vec![
        z1(false),
        fusion_j0(l, top, false),
        z1(true),
        r0(l, top),
    ]);
    let rhs = LinOp::Compose(vec![
        hbar_omega(false),
        fusion_j0(l, top, false),
        hbar_omega(true),
    ]);
    for f in bidegree_monomials(l, d) {
        let a = apply_linop(&lhs, &f, d)?;
        let b = apply_linop(&rhs, &f, d)?;
        let diff = a.first_difference(&b);
        report.record(diff.map(|(m, x, y)| {
            json!({"input": f, "monomial": m.iter().map(|g| (g.alphabet, g.color, g.degree)).collect::<Vec<_>>(), "left": x, "right": y})
        }));
    }
    Ok(report.finish())
}

/// Reassembles the main kernel from the two-alphabet exponential through
/// `J_0^-1`, `y = 0` and the shift `w -> -w/h`.
pub fn derived_kernel(l: usize, d: usize) -> Result<MultiSym> {
    let neg_u = FieldElem::var(Var::U).neg_ref();
    let neg_uh = neg_u.mul_ref(&FieldElem::var(Var::H));
    let mut e = MultiSym::zero(l);
    for n in 1..=d {
        let scale = cauchy_denominator(l, n);
        let ax = FieldElem::one().sub_ref(&neg_u.pow(n as i32)?);
        let ay = neg_uh.pow(n as i32)?;
        for i in 0..l {
            let c = c_coeff(l, i, 0, n)?.value.mul_ref(&scale);
            e.add_term(vec![Generator::x(i, n)], c.mul_ref(&ax));
            e.add_term(vec![Generator::y(i, n)], c.mul_ref(&ay));
        }
    }
    let g = e.exp_truncated(d)?;
    let op = LinOp::Compose(vec![fusion_j0(l, d, true), LinOp::Kill(Alphabet::Y)]);
    let x = apply_linop(&op, &g, d)?.truncate(d, 0);
    let shift = FieldElem::var(Var::W)
        .neg_ref()
        .try_div(&FieldElem::var(Var::H))?;
    x.subst_coeffs(&[(Var::W, shift)])
}

pub fn verify_derivation(l: usize, d: usize) -> Result<Report> {
    let mut report = Report::new("derivation").param("l", l).param("degree", d);
    let got = derived_kernel(l, d)?;
    let want = main_kernel(l, d)?;
    let diff = got.first_difference(&want);
    report.record(diff.map(|(m, x, y)| {
        json!({"monomial": m.iter().map(|g| (g.alphabet, g.color, g.degree)).collect::<Vec<_>>(), "derived": x, "kernel": y})
    }));
    Ok(report.finish())
}
