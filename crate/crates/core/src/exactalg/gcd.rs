//! Multivariate polynomial gcd over the integers.
//!
//! Uses the heuristic gcd: evaluate one variable at a large integer, recurse,
//! and lift the result back by symmetric ξ-adic interpolation. Every candidate
//! is confirmed by exact division, so a returned value is always a common
//! divisor. When the heuristic gives up (or the evaluation points would get
//! unreasonably large) the caller receives `None` and must treat the pair as
//! coprime up to the cheap monomial/integer contents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Var;
use super::poly::{MPoly, Poly, ZPoly};

const MAX_ATTEMPTS: usize = 6;
/// Budget on `log2(ξ) * Π(deg+1)`, a rough bound on the bit size of the
/// integers produced at the bottom of the recursion.
const BIT_BUDGET: f64 = 4.0e6;

fn symmetric_mod(c: &BigInt, x: &BigInt) -> BigInt {
    let mut r = c.mod_floor(x);
    if &r * 2 > *x {
        r -= x;
    }
    r
}

fn interpolate(h: &ZPoly, x: &BigInt, v: Var) -> ZPoly {
    let mut h = h.clone();
    let mut terms = Vec::new();
    let mut i: u16 = 0;
    while !h.is_zero() {
        let g = h.map_coeffs(|c| symmetric_mod(c, x));
        for (m, c) in g.terms() {
            terms.push((m.with_exp(v, i), c.clone()));
        }
        h = h.sub_ref(&g).div_integer(x);
        i += 1;
    }
    let out = Poly::from_terms(terms);
    if out.leading_is_negative() {
        -out
    } else {
        out
    }
}

fn primitive(p: &ZPoly) -> ZPoly {
    let c = p.content();
    let p = if c.is_zero() || c.is_one() {
        p.clone()
    } else {
        p.div_integer(&c)
    };
    if p.leading_is_negative() {
        -p
    } else {
        p
    }
}

fn estimate_bits(f: &ZPoly, g: &ZPoly, vars: &[Var]) -> f64 {
    let norm = f.max_norm().min(g.max_norm());
    let bits = (norm.bits() as f64 + 6.0).max(8.0);
    vars.iter().fold(bits, |acc, &v| {
        acc * (f.degree(v).min(g.degree(v)) as f64 + 1.0).max(1.0)
    })
}

/// Returns `(h, f/h, g/h)` with `h = gcd(f, g)`.
fn heu(f: &ZPoly, g: &ZPoly, vars: &[Var]) -> Option<(ZPoly, ZPoly, ZPoly)> {
    if f.is_zero() {
        let h = primitive(g);
        let s = if g.leading_is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let h = h.scale(&(g.content() * &s));
        return Some((h.clone(), ZPoly::zero(), ZPoly::one()));
    }
    if g.is_zero() {
        let s = if f.leading_is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let h = f.scale(&s);
        return Some((h, ZPoly::one(), ZPoly::zero()));
    }
    let (fc, gc) = (f.content(), g.content());
    let common = fc.gcd(&gc);
    let f = f.div_integer(&common);
    let g = g.div_integer(&common);

    let Some((&v, rest)) = vars.split_first() else {
        let a = f.as_constant().expect("no variables left");
        let b = g.as_constant().expect("no variables left");
        let h = a.gcd(&b);
        return Some((
            ZPoly::constant(&h * &common),
            ZPoly::constant(&a / &h),
            ZPoly::constant(&b / &h),
        ));
    };

    let fnorm = f.max_norm();
    let gnorm = g.max_norm();
    let bound: BigInt = 2 * fnorm.clone().min(gnorm.clone()) + 29;
    let lc_ratio = (&fnorm / f.leading_coeff().abs()).min(&gnorm / g.leading_coeff().abs());
    let mut x: BigInt = bound.clone().min(99 * bound.sqrt()).max(2 * lc_ratio + 4);

    for _ in 0..MAX_ATTEMPTS {
        let ff = f.eval_var(v, &x);
        let gg = g.eval_var(v, &x);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some((h, cff, cfg)) = heu(&ff, &gg, rest) {
                let h = primitive(&interpolate(&h, &x, v));
                if let (Some(qf), Some(qg)) = (f.div_exact(&h), g.div_exact(&h)) {
                    return Some((h.scale(&common), qf, qg));
                }
                let cff = interpolate(&cff, &x, v);
                if let Some(h2) = f.div_exact(&cff) {
                    if let Some(qg) = g.div_exact(&h2) {
                        return Some((h2.scale(&common), cff, qg));
                    }
                }
                let cfg = interpolate(&cfg, &x, v);
                if let Some(h3) = g.div_exact(&cfg) {
                    if let Some(qf) = f.div_exact(&h3) {
                        return Some((h3.scale(&common), qf, cfg));
                    }
                }
            }
        }
        x = 73794 * &x * x.sqrt().sqrt() / 27011;
    }
    None
}

/// Gcd of two integer polynomials, normalized primitive with positive
/// leading coefficient. `None` if the heuristic could not certify one.
pub fn zgcd(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    if f.is_zero() && g.is_zero() {
        return Some(ZPoly::zero());
    }
    if f.is_zero() {
        return Some(primitive(g));
    }
    if g.is_zero() {
        return Some(primitive(f));
    }
    // Monomial contents split off exactly; the heuristic then runs on the
    // cofactors, which is both cheaper and keeps evaluation points small.
    let mf = f.monomial_content();
    let mg = g.monomial_content();
    let mono = mf.gcd(&mg);
    let f1 = primitive(&f.div_monomial(&mf));
    let g1 = primitive(&g.div_monomial(&mg));
    let mono_poly = ZPoly::term(mono, BigInt::one());

    if f1.is_one() || g1.is_one() {
        return Some(mono_poly);
    }
    if f1 == g1 {
        return Some(mono_poly.mul_ref(&f1));
    }
    if let Some(q) = f1.div_exact(&g1) {
        let _ = q;
        return Some(mono_poly.mul_ref(&g1));
    }
    if let Some(q) = g1.div_exact(&f1) {
        let _ = q;
        return Some(mono_poly.mul_ref(&f1));
    }
    let mut vars: Vec<Var> = Var::ALL
        .into_iter()
        .filter(|&v| f1.contains_var(v) || g1.contains_var(v))
        .collect();
    // A variable present in only one argument cannot occur in the gcd; a
    // variable absent from both can be skipped outright.
    let only_one: Vec<Var> = vars
        .iter()
        .copied()
        .filter(|&v| f1.contains_var(v) != g1.contains_var(v))
        .collect();
    if !only_one.is_empty() {
        // gcd(f, g) = gcd(coefficients of f in v..., g) when g is free of v.
        let (with, without) = if f1.contains_var(only_one[0]) {
            (&f1, &g1)
        } else {
            (&g1, &f1)
        };
        let mut acc = without.clone();
        for (_, c) in with.coefficients_in(only_one[0]) {
            acc = zgcd(&acc, &c)?;
            if acc.is_one() {
                break;
            }
        }
        return Some(mono_poly.mul_ref(&acc));
    }
    // Evaluate high-degree variables last so the outer interpolations stay
    // on small integers.
    vars.sort_by_key(|&v| f1.degree(v).max(g1.degree(v)));
    if estimate_bits(&f1, &g1, &vars) > BIT_BUDGET {
        return None;
    }
    let (h, _, _) = heu(&f1, &g1, &vars)?;
    Some(mono_poly.mul_ref(&primitive(&h)))
}

/// Gcd of rational polynomials up to a rational unit, returned primitive over
/// the integers. Falls back to the monomial gcd when the heuristic fails.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    let (_, fz) = f.to_integral();
    let (_, gz) = g.to_integral();
    match zgcd(&fz, &gz) {
        Some(h) => MPoly::from_zpoly(&h),
        None => {
            let mono = fz.monomial_content().gcd(&gz.monomial_content());
            MPoly::term(mono, One::one())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Monomial;

    fn z(terms: &[([u16; 5], i64)]) -> ZPoly {
        Poly::from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial(*e), BigInt::from(*c)))
                .collect(),
        )
    }

    #[test]
    fn univariate_gcd() {
        // (1 - t1)(1 + t1) and (1 - t1)^2
        let a = z(&[([0; 5], 1), ([2, 0, 0, 0, 0], -1)]);
        let b = z(&[([0; 5], 1), ([1, 0, 0, 0, 0], -2), ([2, 0, 0, 0, 0], 1)]);
        let g = zgcd(&a, &b).unwrap();
        assert_eq!(g, z(&[([0; 5], -1), ([1, 0, 0, 0, 0], 1)]));
    }

    #[test]
    fn bivariate_gcd_with_common_factor() {
        let p = z(&[([1, 0, 0, 0, 0], 1), ([0, 1, 0, 0, 0], -3), ([0; 5], 2)]);
        let a = p.mul_ref(&z(&[([2, 0, 0, 0, 0], 1), ([0, 1, 0, 0, 0], 1)]));
        let b = p.mul_ref(&z(&[([1, 1, 0, 0, 0], 5), ([0; 5], -7)]));
        let g = zgcd(&a, &b).unwrap();
        assert_eq!(g, primitive(&p));
    }

    #[test]
    fn five_variable_gcd() {
        let p = z(&[([0, 0, 1, 0, 0], 1), ([0, 0, 0, 0, 1], 1)]); // h + w
        let q1 = z(&[([1, 0, 0, 1, 0], 1), ([0; 5], 1)]); // 1 + t1 u
        let q2 = z(&[([0, 1, 2, 0, 1], 2), ([0, 0, 0, 1, 0], -1)]);
        let a = p.mul_ref(&q1).mul_ref(&q1);
        let b = p.mul_ref(&q1).mul_ref(&q2);
        let g = zgcd(&a, &b).unwrap();
        assert_eq!(g, primitive(&p.mul_ref(&q1)));
    }

    #[test]
    fn coprime_gives_one() {
        let a = z(&[([1, 0, 0, 0, 0], 1), ([0; 5], 1)]);
        let b = z(&[([0, 1, 0, 0, 0], 1), ([0; 5], 1)]);
        assert_eq!(zgcd(&a, &b).unwrap(), ZPoly::one());
    }

    #[test]
    fn monomial_content_is_kept() {
        let a = z(&[([2, 1, 0, 0, 0], 4), ([1, 1, 0, 0, 0], 6)]);
        let b = z(&[([1, 2, 0, 0, 0], 10)]);
        assert_eq!(zgcd(&a, &b).unwrap(), z(&[([1, 1, 0, 0, 0], 1)]));
    }
}
