//! The `l`-coloured symmetric function ring over `Q(t1, t2, h, u, w)`, in one
//! or two alphabets, stored in the coloured power-sum monomial basis.

mod json;
mod linop;
mod schur;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{FieldElem, Var};

pub use json::{MultiSymJson, TermJson};
pub use linop::{apply_linop, DerivTerm, LinOp};
pub use schur::{
    character, multi_schur, schur_powersum, to_basis, vec_schur, Basis, BasisLabel, Expansion,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    X,
    Y,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::X => "X",
            Alphabet::Y => "Y",
        })
    }
}

/// The power sum `p^(color)_degree` in one alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub alphabet: Alphabet,
    pub color: usize,
    pub degree: usize,
}

impl Generator {
    pub fn new(alphabet: Alphabet, color: usize, degree: usize) -> Self {
        assert!(degree >= 1, "power sums start in degree one");
        Generator {
            alphabet,
            color,
            degree,
        }
    }

    pub fn x(color: usize, degree: usize) -> Self {
        Self::new(Alphabet::X, color, degree)
    }

    pub fn y(color: usize, degree: usize) -> Self {
        Self::new(Alphabet::Y, color, degree)
    }
}

/// A product of generators, kept sorted.
pub type PowerMonomial = Vec<Generator>;

/// Element of the coloured symmetric function ring with modulus `l`.
#[derive(Clone, Debug)]
pub struct MultiSym {
    l: usize,
    terms: BTreeMap<PowerMonomial, FieldElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endo {
    /// Colour `i -> -i`.
    Neg,
    /// `t1 <-> t2` in coefficients.
    Swap,
    /// `t1, t2 -> 1/t1, 1/t2` in coefficients.
    Inv,
}

/// Per-alphabet degree of a monomial.
pub fn bidegree(m: &[Generator]) -> (usize, usize) {
    m.iter().fold((0, 0), |(x, y), g| match g.alphabet {
        Alphabet::X => (x + g.degree, y),
        Alphabet::Y => (x, y + g.degree),
    })
}

/// `z` factor of a monomial: per (alphabet, colour), `prod n^m_n m_n!`.
pub fn z_factor(m: &[Generator]) -> num_bigint::BigInt {
    let mut counts: BTreeMap<Generator, u32> = BTreeMap::new();
    for g in m {
        *counts.entry(*g).or_default() += 1;
    }
    let mut z = num_bigint::BigInt::from(1);
    for (g, k) in counts {
        for i in 1..=k {
            z *= g.degree * i as usize;
        }
    }
    z
}

impl MultiSym {
    pub fn zero(l: usize) -> Self {
        assert!(l >= 1, "modulus must be positive");
        MultiSym {
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(l: usize) -> Self {
        Self::constant(l, FieldElem::one())
    }

    pub fn constant(l: usize, c: FieldElem) -> Self {
        Self::monomial(l, Vec::new(), c)
    }

    pub fn monomial(l: usize, mut m: PowerMonomial, c: FieldElem) -> Self {
        let mut out = Self::zero(l);
        m.sort();
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    pub fn generator(l: usize, g: Generator) -> Result<Self> {
        if g.color >= l {
            return Err(Error::ResidueOutOfRange {
                residue: g.color,
                l,
            });
        }
        Ok(Self::monomial(l, vec![g], FieldElem::one()))
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PowerMonomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[Generator]) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: PowerMonomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add_ref(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_l(&self, other: &Self) -> Result<()> {
        if self.l != other.l {
            return Err(Error::ModulusMismatch(self.l, other.l));
        }
        Ok(())
    }

    pub fn ring_arith(&self, other: &Self, op: RingOp) -> Result<Self> {
        self.check_l(other)?;
        Ok(match op {
            RingOp::Add => self.plus(other),
            RingOp::Sub => self.plus(&other.scale(&FieldElem::from_int(-1))),
            RingOp::Mul => self.times(other),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ring_arith(other, RingOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ring_arith(other, RingOp::Sub)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ring_arith(other, RingOp::Mul)
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.l, other.l);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub(crate) fn times(&self, other: &Self) -> Self {
        debug_assert_eq!(self.l, other.l);
        let mut out = Self::zero(self.l);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort();
                out.add_term(m, ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.l);
        }
        MultiSym {
            l: self.l,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul_ref(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.l);
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Self {
        let mut out = Self::zero(self.l);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Largest per-alphabet degrees present.
    pub fn max_bidegree(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(a, b), m| {
            let (x, y) = bidegree(m);
            (a.max(x), b.max(y))
        })
    }

    /// Keeps terms with x-degree `<= dx` and y-degree `<= dy`.
    pub fn truncate(&self, dx: usize, dy: usize) -> Self {
        MultiSym {
            l: self.l,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| {
                    let (x, y) = bidegree(m);
                    x <= dx && y <= dy
                })
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        MultiSym {
            l: self.l,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().map(|g| g.degree).sum::<usize>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Algebra homomorphism determined by generator images; generators
    /// mapped to `None` are fixed.
    pub fn substitute(&self, image: impl Fn(&Generator) -> Option<MultiSym>) -> Self {
        let mut cache: BTreeMap<Generator, Option<MultiSym>> = BTreeMap::new();
        let mut out = Self::zero(self.l);
        for (m, c) in &self.terms {
            let mut acc = Self::constant(self.l, c.clone());
            let mut fixed = Vec::new();
            for g in m {
                let img = cache.entry(*g).or_insert_with(|| image(g));
                match img {
                    Some(p) => acc = acc.times(p),
                    None => fixed.push(*g),
                }
                if acc.is_zero() {
                    break;
                }
            }
            if !fixed.is_empty() {
                acc = acc.times(&Self::monomial(self.l, fixed, FieldElem::one()));
            }
            out = out.plus(&acc);
        }
        out
    }

    /// Evaluates every generator to a scalar.
    pub fn specialize(&self, value: impl Fn(&Generator) -> FieldElem) -> FieldElem {
        let mut cache: BTreeMap<Generator, FieldElem> = BTreeMap::new();
        let mut acc = FieldElem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for g in m {
                let v = cache.entry(*g).or_insert_with(|| value(g));
                t = t.mul_ref(v);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    pub fn endo(&self, which: Endo) -> Self {
        match which {
            Endo::Neg => {
                let l = self.l;
                let mut out = Self::zero(l);
                for (m, c) in &self.terms {
                    let mut m2: Vec<Generator> = m
                        .iter()
                        .map(|g| Generator {
                            color: (l - g.color) % l,
                            ..*g
                        })
                        .collect();
                    m2.sort();
                    out.add_term(m2, c.clone());
                }
                out
            }
            Endo::Swap => self.map_coeffs(|c| c.swap_t()),
            Endo::Inv => self.map_coeffs(|c| c.invert_t()),
        }
    }

    /// Matrix plethysm `p^(i)_n -> p^(i)_n - x^n p^(i-1)_n`, or its inverse
    /// `p^(i)_n -> (1 - x^(nl))^-1 sum_j x^(nj) p^(i-j)_n`.
    pub fn gamma(&self, x: &FieldElem, inverse: bool) -> Result<Self> {
        let l = self.l;
        let mut images: BTreeMap<Generator, MultiSym> = BTreeMap::new();
        for m in self.terms.keys() {
            for g in m {
                if images.contains_key(g) {
                    continue;
                }
                let n = g.degree as i32;
                let shifted = |j: usize| Generator {
                    color: (g.color + l - j % l) % l,
                    ..*g
                };
                let img = if !inverse {
                    let mut s = Self::monomial(l, vec![*g], FieldElem::one());
                    s.add_term(vec![shifted(1)], -x.pow(n)?);
                    s
                } else {
                    let denom = FieldElem::one().sub_ref(&x.pow(n * l as i32)?);
                    let scale = denom.inv().map_err(|_| Error::Pole {
                        var: Var::T1,
                        value: format!("1-({x})^{}", n * l as i32),
                    })?;
                    let mut s = Self::zero(l);
                    for j in 0..l {
                        s.add_term(vec![shifted(j)], x.pow(n * j as i32)?.mul_ref(&scale));
                    }
                    s
                };
                images.insert(*g, img);
            }
        }
        Ok(self.substitute(|g| images.get(g).cloned()))
    }

    /// Formal partial derivative in a generator.
    pub fn derivative(&self, gen: &Generator) -> Self {
        let mut out = Self::zero(self.l);
        for (m, c) in &self.terms {
            let k = m.iter().filter(|g| *g == gen).count();
            if k == 0 {
                continue;
            }
            let mut m2 = m.clone();
            let pos = m2.iter().position(|g| g == gen).expect("present");
            m2.remove(pos);
            out.add_term(m2, c.scale_int(k as i64));
        }
        out
    }

    /// `exp(self)` truncated to per-alphabet degree `<= d`.
    pub fn exp_truncated(&self, d: usize) -> Result<Self> {
        if !self.coeff(&[]).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let f = self.truncate(d, d);
        let mut out = Self::one(self.l);
        let mut term = Self::one(self.l);
        for k in 1.. {
            term = term
                .times(&f)
                .truncate(d, d)
                .scale(&FieldElem::from_ratio(1, k));
            if term.is_zero() {
                break;
            }
            out = out.plus(&term);
        }
        Ok(out)
    }

    /// Sets every generator of one alphabet to zero.
    pub fn kill_alphabet(&self, a: Alphabet) -> Self {
        MultiSym {
            l: self.l,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().all(|g| g.alphabet != a))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames one alphabet to the other (the target must be absent).
    pub fn rename_alphabet(&self, from: Alphabet, to: Alphabet) -> Self {
        let mut out = Self::zero(self.l);
        for (m, c) in &self.terms {
            let mut m2: Vec<Generator> = m
                .iter()
                .map(|g| {
                    if g.alphabet == from {
                        Generator { alphabet: to, ..*g }
                    } else {
                        *g
                    }
                })
                .collect();
            m2.sort();
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Exact coefficientwise equality.
    pub fn field_eq(&self, other: &Self) -> bool {
        if self.l != other.l {
            return false;
        }
        let keys: std::collections::BTreeSet<&PowerMonomial> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|k| self.coeff(k).field_eq(&other.coeff(k)))
    }

    /// First monomial (in basis order) where the two elements differ.
    pub fn first_difference(&self, other: &Self) -> Option<(PowerMonomial, FieldElem, FieldElem)> {
        let keys: std::collections::BTreeSet<&PowerMonomial> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (!a.field_eq(&b)).then(|| (k.clone(), a, b))
        })
    }

    /// Coefficient substitution in every term.
    pub fn subst_coeffs(&self, bindings: &[(Var, FieldElem)]) -> Result<Self> {
        let mut out = Self::zero(self.l);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.subst(bindings)?);
        }
        Ok(out)
    }
}

impl PartialEq for MultiSym {
    fn eq(&self, other: &Self) -> bool {
        self.field_eq(other)
    }
}

/// Extended Hall pairing: power-sum monomials are orthogonal with
/// `<p_m, p_m> = z(m)`.
pub fn hall_pairing(f: &MultiSym, g: &MultiSym) -> Result<FieldElem> {
    f.check_l(g)?;
    let (small, large) = if f.len() <= g.len() { (f, g) } else { (g, f) };
    let mut acc = FieldElem::zero();
    for (m, c) in &small.terms {
        if let Some(d) = large.terms.get(m) {
            let z =
                FieldElem::from_bigratio(crate::exactalg::BigRational::from_integer(z_factor(m)));
            acc = acc.add_ref(&c.mul_ref(d).mul_ref(&z));
        }
    }
    Ok(acc)
}

/// `neg Γ_{t1} neg Γ_{t2} neg`, the operator defining the deformed pairing.
pub fn wreath_adjoint(g: &MultiSym) -> Result<MultiSym> {
    let t1 = FieldElem::var(Var::T1);
    let t2 = FieldElem::var(Var::T2);
    Ok(g.endo(Endo::Neg)
        .gamma(&t2, false)?
        .endo(Endo::Neg)
        .gamma(&t1, false)?
        .endo(Endo::Neg))
}

/// `<f, neg Γ_{t1} neg Γ_{t2} neg g>`.
pub fn wreath_pairing(f: &MultiSym, g: &MultiSym) -> Result<FieldElem> {
    f.check_l(g)?;
    hall_pairing(f, &wreath_adjoint(g)?)
}

impl fmt::Display for MultiSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            for g in m {
                write!(f, "*p{}{}_{}", g.alphabet, g.color, g.degree)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse;

    fn p(l: usize, c: usize, n: usize) -> MultiSym {
        MultiSym::generator(l, Generator::x(c, n)).unwrap()
    }

    #[test]
    fn products_and_sums() {
        let a = p(2, 0, 1);
        let sq = a.try_mul(&a).unwrap();
        assert_eq!(sq.len(), 1);
        assert!(sq.coeff(&[Generator::x(0, 1), Generator::x(0, 1)]).is_one());
        assert!(a.try_add(&MultiSym::zero(2)).unwrap().field_eq(&a));
        let s = p(2, 0, 1).try_add(&p(2, 1, 1)).unwrap();
        let s2 = s.try_mul(&s).unwrap();
        assert!(s2
            .coeff(&[Generator::x(0, 1), Generator::x(1, 1)])
            .field_eq(&FieldElem::from_int(2)));
        assert_eq!(s2.len(), 3);
    }

    #[test]
    fn modulus_mismatch() {
        assert_eq!(
            p(2, 0, 1).try_add(&p(3, 0, 1)).unwrap_err(),
            Error::ModulusMismatch(2, 3)
        );
        assert!(MultiSym::generator(2, Generator::x(2, 1)).is_err());
    }

    #[test]
    fn endomorphisms() {
        assert!(p(3, 1, 2).endo(Endo::Neg).field_eq(&p(3, 2, 2)));
        let f = p(1, 0, 1).scale(&parse("t1").unwrap());
        let g = p(1, 0, 1).scale(&parse("t2").unwrap());
        assert!(f.endo(Endo::Swap).field_eq(&g));
        let f = p(2, 1, 1).scale(&parse("(1-t1)/(t2+3)").unwrap());
        for e in [Endo::Neg, Endo::Swap, Endo::Inv] {
            assert!(f.endo(e).endo(e).field_eq(&f));
        }
    }

    #[test]
    fn gamma_example() {
        let t1 = parse("t1").unwrap();
        let g = p(2, 0, 1).gamma(&t1, false).unwrap();
        let want = p(2, 0, 1).try_sub(&p(2, 1, 1).scale(&t1)).unwrap();
        assert!(g.field_eq(&want));
        assert!(MultiSym::one(2)
            .gamma(&t1, false)
            .unwrap()
            .field_eq(&MultiSym::one(2)));
    }

    #[test]
    fn gamma_inverse_round_trip() {
        let t1 = parse("t1").unwrap();
        let f = p(3, 1, 2)
            .try_mul(&p(3, 2, 1))
            .unwrap()
            .try_add(&p(3, 0, 3).scale(&parse("t2").unwrap()))
            .unwrap();
        let back = f.gamma(&t1, false).unwrap().gamma(&t1, true).unwrap();
        assert!(back.field_eq(&f));
        let back = f.gamma(&t1, true).unwrap().gamma(&t1, false).unwrap();
        assert!(back.field_eq(&f));
    }

    #[test]
    fn gamma_inverse_pole() {
        let f = p(2, 0, 1);
        assert!(f.gamma(&FieldElem::one(), true).is_err());
    }

    #[test]
    fn hall_values() {
        assert!(hall_pairing(&p(1, 0, 1), &p(1, 0, 1)).unwrap().is_one());
        assert!(hall_pairing(&p(2, 0, 2), &p(2, 0, 2))
            .unwrap()
            .field_eq(&FieldElem::from_int(2)));
        assert!(hall_pairing(&p(2, 0, 2), &p(2, 1, 2)).unwrap().is_zero());
    }

    #[test]
    fn deformed_pairing_at_one_color() {
        let v = wreath_pairing(&p(1, 0, 1), &p(1, 0, 1)).unwrap();
        assert!(v.field_eq(&parse("(1-t1)*(1-t2)").unwrap()));
        assert!(wreath_pairing(&MultiSym::one(1), &MultiSym::one(1))
            .unwrap()
            .is_one());
    }

    #[test]
    fn derivatives() {
        let a = p(2, 0, 1);
        let d = a.try_mul(&a).unwrap().derivative(&Generator::x(0, 1));
        assert!(d.field_eq(&a.scale(&FieldElem::from_int(2))));
        assert!(p(2, 0, 2).derivative(&Generator::x(0, 1)).is_zero());
        let m = p(2, 0, 1).try_mul(&p(2, 1, 2)).unwrap();
        assert!(m.derivative(&Generator::x(1, 2)).field_eq(&p(2, 0, 1)));
    }

    #[test]
    fn exponential() {
        assert!(MultiSym::zero(1)
            .exp_truncated(3)
            .unwrap()
            .field_eq(&MultiSym::one(1)));
        let e = p(1, 0, 1).exp_truncated(2).unwrap();
        let want = MultiSym::one(1)
            .plus(&p(1, 0, 1))
            .plus(&p(1, 0, 1).pow(2).scale(&FieldElem::from_ratio(1, 2)));
        assert!(e.field_eq(&want));
        assert_eq!(
            MultiSym::one(1).exp_truncated(2).unwrap_err(),
            Error::NonzeroConstantTerm
        );
    }
}
