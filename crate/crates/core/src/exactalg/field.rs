use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::zgcd;
use super::monomial::{Monomial, Var, NVARS};
use super::poly::{MPoly, ZPoly};
use crate::error::{Error, Result};

/// Exact element of `Q(t1, t2, h, u, w)`.
///
/// Stored as a pair of integer polynomials with no common integer content,
/// a positive leading denominator coefficient, and common polynomial factors
/// cancelled as far as the gcd routine certifies. Equality is always decided
/// by cross-multiplication, so an incompletely reduced pair is still correct.
#[derive(Clone, Debug)]
pub struct FieldElem {
    num: ZPoly,
    den: ZPoly,
}

fn exact(p: &ZPoly, d: &ZPoly) -> ZPoly {
    if d.is_one() {
        return p.clone();
    }
    p.div_exact(d).expect("gcd must divide its arguments")
}

fn gcd_or_one(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_one() || b.is_one() {
        return ZPoly::one();
    }
    match zgcd(a, b) {
        Some(g) => g,
        None => {
            let m = a.monomial_content().gcd(&b.monomial_content());
            ZPoly::term(m, BigInt::one())
        }
    }
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem {
            num: ZPoly::constant(BigInt::from(n)),
            den: ZPoly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_bigratio(BigRational::new(n.into(), d.into()))
    }

    pub fn from_bigratio(r: BigRational) -> Self {
        Self::from_polys(
            ZPoly::constant(r.numer().clone()),
            ZPoly::constant(r.denom().clone()),
        )
        .expect("nonzero denominator")
    }

    pub fn var(v: Var) -> Self {
        FieldElem {
            num: ZPoly::var(v),
            den: ZPoly::one(),
        }
    }

    /// `c * prod v^e` with possibly negative exponents.
    pub fn laurent(exps: [i32; NVARS], c: i64) -> Self {
        let mut up = [0u16; NVARS];
        let mut down = [0u16; NVARS];
        for (i, &e) in exps.iter().enumerate() {
            if e >= 0 {
                up[i] = e as u16;
            } else {
                down[i] = (-e) as u16;
            }
        }
        Self::from_polys(
            ZPoly::term(Monomial(up), BigInt::from(c)),
            ZPoly::term(Monomial(down), BigInt::one()),
        )
        .expect("monomial denominator")
    }

    pub fn from_mpoly(p: &MPoly) -> Self {
        let (d, z) = p.to_integral();
        Self::from_polys(z, ZPoly::constant(d)).expect("nonzero denominator")
    }

    pub fn from_zpoly(p: ZPoly) -> Self {
        FieldElem {
            num: p,
            den: ZPoly::one(),
        }
    }

    /// `num / den`, reduced.
    pub fn from_polys(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    /// Builds from rational polynomials.
    pub fn from_mpolys(num: &MPoly, den: &MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dn, n) = num.to_integral();
        let (dd, d) = den.to_integral();
        Ok(Self::reduce(n.scale(&dd), d.scale(&dn)))
    }

    fn reduce(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = if den.as_constant().is_some() {
            ZPoly::one()
        } else {
            gcd_or_one(&num, &den)
        };
        Self::finish(exact(&num, &g), exact(&den, &g))
    }

    /// Integer content and sign normalization only.
    fn finish(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let c = num.content().gcd(&den.content());
        let c = if den.leading_is_negative() { -c } else { c };
        if c.is_one() {
            FieldElem { num, den }
        } else {
            FieldElem {
                num: num.div_integer(&c),
                den: den.div_integer(&c),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Numerator with the denominator scaled to integer content one.
    pub fn numer(&self) -> MPoly {
        let c = self.den.content();
        MPoly::from_zpoly(&self.num).scale(&BigRational::new(BigInt::one(), c))
    }

    /// Primitive integral denominator with positive leading coefficient.
    pub fn denom(&self) -> MPoly {
        let c = self.den.content();
        MPoly::from_zpoly(&self.den.div_integer(&c))
    }

    pub fn num_z(&self) -> &ZPoly {
        &self.num
    }

    pub fn den_z(&self) -> &ZPoly {
        &self.den
    }

    /// Returns the value as a rational polynomial when the denominator is
    /// a constant.
    pub fn as_polynomial(&self) -> Option<MPoly> {
        let d = self.den.as_constant()?;
        Some(MPoly::from_zpoly(&self.num).scale(&BigRational::new(BigInt::one(), d)))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add_ref(&other.num), self.den.clone());
        }
        if self.den.as_constant().is_some() && other.den.as_constant().is_some() {
            let num = self
                .num
                .mul_ref(&other.den)
                .add_ref(&other.num.mul_ref(&self.den));
            return Self::finish(num, self.den.mul_ref(&other.den));
        }
        // Knuth's scheme: only the gcd of the denominators can cancel.
        let g = gcd_or_one(&self.den, &other.den);
        let da = exact(&self.den, &g);
        let db = exact(&other.den, &g);
        let num = self.num.mul_ref(&db).add_ref(&other.num.mul_ref(&da));
        if num.is_zero() {
            return Self::zero();
        }
        let g2 = if g.is_one() { g } else { gcd_or_one(&num, &g) };
        let num = exact(&num, &g2);
        let den = da.mul_ref(&exact(&other.den, &g2));
        Self::finish(num, den)
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        FieldElem {
            num: -self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = gcd_or_one(&self.num, &other.den);
        let g2 = gcd_or_one(&other.num, &self.den);
        let num = exact(&self.num, &g1).mul_ref(&exact(&other.num, &g2));
        let den = exact(&self.den, &g2).mul_ref(&exact(&other.den, &g1));
        Self::finish(num, den)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.mul_ref(&Self::from_int(n))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(FieldElem {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    /// Exact equality by cross-multiplication.
    pub fn field_eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        self.num.mul_ref(&other.den) == other.num.mul_ref(&self.den)
    }

    /// Simultaneous substitution of variables by field elements.
    pub fn subst(&self, bindings: &[(Var, FieldElem)]) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let (n_num, n_den) = subst_poly(&self.num, bindings);
        let (d_num, d_den) = subst_poly(&self.den, bindings);
        if d_num.is_zero() {
            let culprit = bindings
                .iter()
                .find(|b| subst_poly(&self.den, std::slice::from_ref(b)).0.is_zero())
                .unwrap_or(&bindings[bindings.len() - 1]);
            return Err(Error::Pole {
                var: culprit.0,
                value: culprit.1.to_string(),
            });
        }
        let num = FieldElem::reduce(n_num, n_den);
        let den = FieldElem::reduce(d_num, d_den);
        num.try_div(&den)
    }

    /// `t1 <-> t2`.
    pub fn swap_t(&self) -> Self {
        let f = |m: &Monomial| {
            let mut e = m.0;
            e.swap(Var::T1.index(), Var::T2.index());
            Monomial(e)
        };
        FieldElem {
            num: self.num.remap_monomials(f),
            den: self.den.remap_monomials(f),
        }
        .renormalized()
    }

    /// `t1 -> 1/t1`, `t2 -> 1/t2`.
    pub fn invert_t(&self) -> Self {
        let dn = [self.num.degree(Var::T1), self.num.degree(Var::T2)];
        let dd = [self.den.degree(Var::T1), self.den.degree(Var::T2)];
        let flip = |p: &ZPoly, d: [u16; 2]| {
            p.remap_monomials(|m| {
                m.with_exp(Var::T1, d[0] - m.exp(Var::T1))
                    .with_exp(Var::T2, d[1] - m.exp(Var::T2))
            })
        };
        let mut num = flip(&self.num, dn);
        let mut den = flip(&self.den, dd);
        // N(1/t) = flip(N) / t^dn, so the ratio picks up t^(dd - dn).
        let shift = |a: u16, b: u16| -> (u16, u16) {
            if a >= b {
                (a - b, 0)
            } else {
                (0, b - a)
            }
        };
        let (n1, d1) = shift(dd[0], dn[0]);
        let (n2, d2) = shift(dd[1], dn[1]);
        num = num.mul_monomial(
            &Monomial::var(Var::T1, n1).mul(&Monomial::var(Var::T2, n2)),
            &BigInt::one(),
        );
        den = den.mul_monomial(
            &Monomial::var(Var::T1, d1).mul(&Monomial::var(Var::T2, d2)),
            &BigInt::one(),
        );
        Self::reduce(num, den)
    }

    /// Rewrites modulo `h^2 = t1 t2` and reduces.
    pub fn reduce_geometric(&self) -> Self {
        let f = |p: &ZPoly| {
            p.remap_monomials(|m| {
                let k = m.exp(Var::H) / 2;
                m.with_exp(Var::H, m.exp(Var::H) % 2)
                    .with_exp(Var::T1, m.exp(Var::T1) + k)
                    .with_exp(Var::T2, m.exp(Var::T2) + k)
            })
        };
        Self::reduce(f(&self.num), f(&self.den))
    }

    fn renormalized(self) -> Self {
        Self::finish(self.num, self.den)
    }

    /// Canonical text form.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

/// Substitutes into a polynomial; returns `(numerator, denominator)`.
fn subst_poly(p: &ZPoly, bindings: &[(Var, FieldElem)]) -> (ZPoly, ZPoly) {
    let degs: Vec<u16> = bindings.iter().map(|(v, _)| p.degree(*v)).collect();
    let mut pow_cache: Vec<(Vec<ZPoly>, Vec<ZPoly>)> = bindings
        .iter()
        .zip(&degs)
        .map(|((_, val), &d)| {
            let mut ps = vec![ZPoly::one()];
            let mut qs = vec![ZPoly::one()];
            for k in 1..=d as usize {
                ps.push(ps[k - 1].mul_ref(&val.num));
                qs.push(qs[k - 1].mul_ref(&val.den));
            }
            (ps, qs)
        })
        .collect();
    let mut out = ZPoly::zero();
    for (m, c) in p.terms() {
        let mut rest = *m;
        let mut acc = ZPoly::one();
        for (i, (v, _)) in bindings.iter().enumerate() {
            let e = m.exp(*v) as usize;
            rest = rest.with_exp(*v, 0);
            let (ps, qs) = &mut pow_cache[i];
            acc = acc.mul_ref(&ps[e]).mul_ref(&qs[degs[i] as usize - e]);
        }
        out = out.add_ref(&acc.mul_monomial(&rest, c));
    }
    let den = pow_cache
        .iter()
        .zip(&degs)
        .fold(ZPoly::one(), |acc, ((_, qs), &d)| {
            acc.mul_ref(&qs[d as usize])
        });
    (out, den)
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field_eq(other)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Var> for FieldElem {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                self.$inner(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &'a FieldElem) -> FieldElem {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

impl<'a> Neg for &'a FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.neg_ref()
    }
}

/// `num` alone when the denominator is one, otherwise `(num)/(den)`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denom();
        if den.is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({})/({})", self.numer(), den)
        }
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse;

    fn p(s: &str) -> FieldElem {
        parse(s).unwrap()
    }

    #[test]
    fn common_denominator() {
        let a = p("t1/(1-t1)") + p("1/(1-t1)");
        assert!(a.field_eq(&p("(1+t1)/(1-t1)")));
    }

    #[test]
    fn cancellation_to_polynomial() {
        let a = p("(1-t1^2)/(1-t1)");
        assert!(a.field_eq(&p("1+t1")));
        assert_eq!(a.as_polynomial().unwrap().to_string(), "t1+1");
    }

    #[test]
    fn zero_quotient() {
        let z = p("h-h").try_div(&p("t1+3")).unwrap();
        assert!(z.is_zero());
        assert!(p("0/(1-w)").field_eq(&FieldElem::zero()));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p("t1").try_div(&p("u-u")), Err(Error::DivisionByZero));
    }

    #[test]
    fn inequality() {
        assert!(!p("t1/t2").field_eq(&p("t2/t1")));
    }

    #[test]
    fn substitution_at_w_zero() {
        let a = p("(h*(1+u)+w*(1+h^2*u))/(h+w)");
        let b = a.subst(&[(Var::W, FieldElem::zero())]).unwrap();
        assert!(b.field_eq(&p("1+u")));
    }

    #[test]
    fn substitution_pole() {
        let a = p("1/(h+w)");
        let err = a.subst(&[(Var::W, -FieldElem::var(Var::H))]).unwrap_err();
        assert!(matches!(err, Error::Pole { var: Var::W, .. }));
    }

    #[test]
    fn simultaneous_substitution_swaps() {
        let a = p("t1^2/(1-t2)");
        let b = a
            .subst(&[
                (Var::T1, FieldElem::var(Var::T2)),
                (Var::T2, FieldElem::var(Var::T1)),
            ])
            .unwrap();
        assert!(b.field_eq(&a.swap_t()));
        assert!(b.field_eq(&p("t2^2/(1-t1)")));
    }

    #[test]
    fn invert_t_matches_substitution() {
        let a = p("(1-t1^2*t2)/(t1-3*t2^3+h)");
        let s = a
            .subst(&[(Var::T1, p("1/t1")), (Var::T2, p("1/t2"))])
            .unwrap();
        assert!(s.field_eq(&a.invert_t()));
        assert!(a.invert_t().invert_t().field_eq(&a));
    }

    #[test]
    fn geometric_reduction() {
        let a = p("h^3 - t1*t2*h");
        assert!(a.reduce_geometric().is_zero());
    }

    #[test]
    fn laurent_monomial() {
        let a = FieldElem::laurent([-1, 2, 0, 1, 0], 3);
        assert!(a.field_eq(&p("3*t2^2*u/t1")));
    }

    #[test]
    fn canonical_denominator_is_primitive_and_positive() {
        let a = p("1/(2-4*t1)");
        assert_eq!(a.to_string(), "(-1/2)/(2*t1-1)");
    }
}
