//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use wreathmac::exactalg::{parse, FieldElem};
use wreathmac::multisym::{Generator, MultiSym};
use wreathmac::partitions::{partitions_of, Partition};

pub fn fe(s: &str) -> FieldElem {
    parse(s).unwrap()
}

fn z(mu: &Partition) -> BigInt {
    let mut counts: HashMap<usize, u32> = HashMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    let mut out = BigInt::one();
    for (p, k) in counts {
        for i in 1..=k {
            out *= p * i as usize;
        }
    }
    out
}

/// Coefficient of `x^lambda` in `p_mu(x_1..x_n)`, by expanding the product.
fn p_to_m(mu: &Partition, n: usize) -> HashMap<Vec<usize>, i64> {
    let mut poly: HashMap<Vec<usize>, i64> = HashMap::from([(vec![0; n], 1)]);
    for &part in mu.parts() {
        let mut next = HashMap::new();
        for (e, c) in &poly {
            for v in 0..n {
                let mut e2 = e.clone();
                e2[v] += part;
                *next.entry(e2).or_insert(0) += c;
            }
        }
        poly = next;
    }
    poly
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pr) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Monomial symmetric functions of degree `n` in power sums (l = 1).
fn monomial_basis(n: usize) -> (Vec<Partition>, Vec<MultiSym>) {
    let parts = partitions_of(n);
    // r[mu][lambda] = [x^lambda] p_mu
    let r: Vec<Vec<BigRational>> = parts
        .iter()
        .map(|mu| {
            let e = p_to_m(mu, n);
            parts
                .iter()
                .map(|lam| {
                    let mut key = lam.parts().to_vec();
                    key.resize(n, 0);
                    BigRational::from_integer(BigInt::from(*e.get(&key).unwrap_or(&0)))
                })
                .collect()
        })
        .collect();
    let rinv = invert(&r);
    // m_lambda = sum_mu rinv[lambda][mu] p_mu
    let ms = parts
        .iter()
        .enumerate()
        .map(|(li, _)| {
            let mut f = MultiSym::zero(1);
            for (mi, mu) in parts.iter().enumerate() {
                let c = rinv[li][mi].clone();
                if !c.is_zero() {
                    let m = mu.parts().iter().map(|&k| Generator::x(0, k)).collect();
                    f.add_term(m, FieldElem::from_bigratio(c));
                }
            }
            f
        })
        .collect();
    (parts, ms)
}

/// `<p_lambda, p_mu>_{q,t} = delta z_lambda prod (1 - q^l_i) / (1 - t^l_i)`.
fn qt_pairing(f: &MultiSym, g: &MultiSym, q: &str, t: &str) -> FieldElem {
    let mut acc = FieldElem::zero();
    for (m, c) in f.terms() {
        let d = g.coeff(m);
        if d.is_zero() {
            continue;
        }
        let mu = Partition::new(m.iter().map(|g| g.degree).collect()).unwrap();
        let mut w = FieldElem::from_bigratio(BigRational::from_integer(z(&mu)));
        for &k in mu.parts() {
            w = w.mul_ref(&fe(&format!("(1-({q})^{k})/(1-({t})^{k})")));
        }
        acc = acc.add_ref(&c.mul_ref(&d).mul_ref(&w));
    }
    acc
}

/// Macdonald `P_lambda(x; q, t)` for all partitions of `n`, by Gram-Schmidt
/// on monomials in increasing reverse-lexicographic order.
pub fn macdonald_p(n: usize, q: &str, t: &str) -> Vec<(Partition, MultiSym)> {
    let (parts, ms) = monomial_basis(n);
    let mut done: Vec<(Partition, MultiSym, FieldElem)> = Vec::new();
    for (lam, m) in parts.iter().zip(ms).rev() {
        let mut p = m.clone();
        for (_, prev, norm) in &done {
            let c = qt_pairing(&m, prev, q, t).try_div(norm).unwrap();
            p = p.try_sub(&prev.scale(&c)).unwrap();
        }
        let norm = qt_pairing(&p, &p, q, t);
        done.push((lam.clone(), p, norm));
    }
    done.into_iter().map(|(l, p, _)| (l, p)).collect()
}

/// Modified Macdonald `H~_lambda = t^n(lambda) J_lambda[X/(1-1/t); q, 1/t]`
/// with `q = t1`, `t = t2`.
pub fn modified_macdonald(n: usize) -> Vec<(Partition, MultiSym)> {
    macdonald_p(n, "t1", "1/t2")
        .into_iter()
        .map(|(lam, p)| {
            // J = c_lambda(q, t') P with t' = 1/t, standard arms and legs.
            let lt = lam.transpose();
            let mut c = fe("1");
            let mut nl = 0;
            for (i, &row) in lam.parts().iter().enumerate() {
                nl += i * row;
                for j in 1..=row {
                    let arm = row - j;
                    let leg = lt.parts()[j - 1] - (i + 1);
                    c = c.mul_ref(&fe(&format!("1-t1^{arm}*(1/t2)^{}", leg + 1)));
                }
            }
            let j = p.scale(&c);
            let plethysm = j.substitute(|g| {
                let k = g.degree;
                Some(MultiSym::monomial(
                    1,
                    vec![*g],
                    fe(&format!("1/(1-(1/t2)^{k})")),
                ))
            });
            (lam, plethysm.scale(&fe(&format!("t2^{nl}"))))
        })
        .collect()
}
