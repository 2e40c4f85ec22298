use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};

/// Coefficient ring for [`Poly`].
pub trait Coeff: Clone + fmt::Debug + PartialEq + Signed + Send + Sync + 'static {
    /// Exact quotient, or `None` when `self` is not a multiple of `d`.
    fn exact_quo(&self, d: &Self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn exact_quo(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }
}

impl Coeff for BigRational {
    fn exact_quo(&self, d: &Self) -> Option<Self> {
        (!d.is_zero()).then(|| self / d)
    }
}

/// Sparse polynomial in `(t1, t2, h, u, w)`.
///
/// Terms are kept sorted ascending in lexicographic exponent order with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    terms: Vec<(Monomial, C)>,
}

/// Polynomials over the rationals.
pub type MPoly = Poly<BigRational>;
/// Polynomials over the integers, used internally for gcd computations.
pub type ZPoly = Poly<BigInt>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), C::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.clone() + c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lex-largest term.
    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms
            .last()
            .map(|t| t.1.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn degree(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.0.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|t| t.0.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.contains_var(v))
            .collect()
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.gcd(m)),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.mul(mono), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Divides every term by `mono`, which must divide the monomial content.
    pub fn div_monomial(&self, mono: &Monomial) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono.quotient_of(m), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = if negate_other {
                        -b[j].1.clone()
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.clone() - b[j].1.clone()
                    } else {
                        a[i].1.clone() + b[j].1.clone()
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate_other { -c.clone() } else { c.clone() }));
        }
        Poly { terms: out }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca.clone() * cb.clone();
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c = c.clone() + prod.clone())
                    .or_insert(prod);
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            let (dm, dc) = &d.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                terms.push((dm.quotient_of(m), c.exact_quo(dc)?));
            }
            return Some(Poly { terms });
        }
        let (dlm, dlc) = d.terms.last().expect("nonzero");
        // Quick rejection on degrees.
        for v in Var::ALL {
            if d.degree(v) > self.degree(v) {
                return None;
            }
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, C)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.last() {
            if !dlm.divides(rm) {
                return None;
            }
            let qm = dlm.quotient_of(rm);
            let qc = rc.exact_quo(dlc)?;
            rem = rem.sub_ref(&d.mul_monomial(&qm, &qc));
            quot.push((qm, qc));
        }
        quot.reverse();
        Some(Poly { terms: quot })
    }

    /// Coefficients of `self` viewed as a polynomial in `v`:
    /// returns `(k, c_k)` with `c_k` free of `v`, ascending in `k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<(u16, Self)> {
        let mut buckets: std::collections::BTreeMap<u16, Vec<(Monomial, C)>> =
            std::collections::BTreeMap::new();
        for (m, c) in &self.terms {
            buckets
                .entry(m.exp(v))
                .or_default()
                .push((m.with_exp(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(k, ts)| (k, Poly::from_terms(ts)))
            .collect()
    }

    /// Substitutes `v -> value` (a polynomial).
    pub fn substitute(&self, v: Var, value: &Self) -> Self {
        let parts = self.coefficients_in(v);
        let mut out = Self::zero();
        let mut power = Self::one();
        let mut current = 0u16;
        for (k, c) in parts {
            while current < k {
                power = power.mul_ref(value);
                current += 1;
            }
            out = out.add_ref(&c.mul_ref(&power));
        }
        out
    }

    /// Substitutes `v -> x` for a scalar `x`.
    pub fn eval_var(&self, v: Var, x: &C) -> Self {
        let maxdeg = self.degree(v) as usize;
        let mut powers = Vec::with_capacity(maxdeg + 1);
        powers.push(C::one());
        for i in 1..=maxdeg {
            powers.push(powers[i - 1].clone() * x.clone());
        }
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.with_exp(v, 0),
                        c.clone() * powers[m.exp(v) as usize].clone(),
                    )
                })
                .collect(),
        )
    }

    /// Rewrites the exponent vector of every term; `f` must be injective on
    /// the support or merged terms are summed.
    pub fn remap_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect())
    }
}

impl<C: Coeff + PartialOrd> Poly<C> {
    /// Max absolute value of the coefficients.
    pub fn max_norm(&self) -> C {
        self.terms
            .iter()
            .map(|t| t.1.abs())
            .fold(C::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn leading_is_negative(&self) -> bool {
        self.terms.last().map(|t| t.1 < C::zero()).unwrap_or(false)
    }
}

impl MPoly {
    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    /// Clears denominators: returns `(d, p)` with `self = p / d`, `p` integral.
    pub fn to_integral(&self) -> (BigInt, ZPoly) {
        let lcm = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&lcm / c.denom())))
            .collect();
        (lcm, Poly { terms })
    }

    pub fn from_zpoly(p: &ZPoly) -> Self {
        Poly {
            terms: p
                .terms
                .iter()
                .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}

impl ZPoly {
    /// Gcd of the integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_integer(&self, d: &BigInt) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c / d)).collect(),
        }
    }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

fn fmt_coeff_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text: terms in descending lexicographic order, coefficients as
/// integers or `p/q`, unit coefficients omitted.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                f.write_str(&fmt_coeff_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        MPoly::from_zpoly(self).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn t1() -> MPoly {
        MPoly::var(Var::T1)
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = t1().add_ref(&MPoly::one());
        let z = p.sub_ref(&p);
        assert!(z.is_zero());
    }

    #[test]
    fn mul_binomial() {
        let p = t1().add_ref(&MPoly::one());
        let sq = p.mul_ref(&p);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&Monomial::var(Var::T1, 1)), q(2));
        assert_eq!(sq, p.pow(2));
    }

    #[test]
    fn exact_division() {
        let a = MPoly::one().sub_ref(&t1().pow(2));
        let b = MPoly::one().sub_ref(&t1());
        let qt = a.div_exact(&b).unwrap();
        assert_eq!(qt, MPoly::one().add_ref(&t1()));
        assert!(b.div_exact(&a).is_none());
        let h = MPoly::var(Var::H);
        assert!(a.div_exact(&h).is_none());
    }

    #[test]
    fn integer_exact_division_requires_divisible_coefficients() {
        let a: ZPoly = Poly::from_terms(vec![
            (Monomial::var(Var::T1, 1), BigInt::from(3)),
            (Monomial::ONE, BigInt::from(1)),
        ]);
        let b: ZPoly = Poly::from_terms(vec![
            (Monomial::var(Var::T1, 1), BigInt::from(2)),
            (Monomial::ONE, BigInt::from(1)),
        ]);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn substitute_and_eval() {
        let p = t1().pow(2).add_ref(&MPoly::var(Var::T2));
        let s = p.substitute(Var::T1, &MPoly::var(Var::U).add_ref(&MPoly::one()));
        let expect = MPoly::var(Var::U)
            .add_ref(&MPoly::one())
            .pow(2)
            .add_ref(&MPoly::var(Var::T2));
        assert_eq!(s, expect);
        let e = p.eval_var(Var::T1, &q(3));
        assert_eq!(e, MPoly::from_int(9).add_ref(&MPoly::var(Var::T2)));
    }

    #[test]
    fn display_is_descending_lex() {
        let p = MPoly::var(Var::H)
            .add_ref(&MPoly::var(Var::W))
            .add_ref(&MPoly::var(Var::T1).scale(&BigRational::new(1.into(), 2.into())))
            .sub_ref(&MPoly::one());
        assert_eq!(p.to_string(), "1/2*t1+h+w-1");
    }
}
