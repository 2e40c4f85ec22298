//! Schur, multi-Schur and vec-Schur views of the power-sum basis.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use super::{hall_pairing, z_factor, Alphabet, Generator, MultiSym, PowerMonomial};
use crate::error::{Error, Result};
use crate::exactalg::{BigRational, FieldElem};
use crate::partitions::{core_quot, from_core_quot, multipartitions, partitions_of, Partition};

type CharKey = (Vec<usize>, Vec<usize>);

fn char_memo() -> &'static Mutex<HashMap<CharKey, i64>> {
    static M: OnceLock<Mutex<HashMap<CharKey, i64>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Symmetric-group character `chi^lambda(mu)` by the Murnaghan-Nakayama
/// rule on beta-sets.
pub fn character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    mn(lambda.parts(), mu.parts())
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = char_memo().lock().expect("poisoned").get(&key) {
        return v;
    }
    let n = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + n - 1 - i)
        .collect();
    let k = mu[0];
    let rest = &mu[1..];
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - k;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (n - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest);
    }
    char_memo().lock().expect("poisoned").insert(key, total);
    total
}

type SchurRow = Arc<Vec<(Partition, BigRational)>>;

fn schur_cache() -> &'static Mutex<HashMap<Partition, SchurRow>> {
    static C: OnceLock<Mutex<HashMap<Partition, SchurRow>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Power-sum expansion `s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu`.
fn schur_row(lambda: &Partition) -> SchurRow {
    if let Some(r) = schur_cache().lock().expect("poisoned").get(lambda) {
        return r.clone();
    }
    let row: Vec<(Partition, BigRational)> = partitions_of(lambda.size())
        .into_iter()
        .filter_map(|mu| {
            let chi = character(lambda, &mu);
            if chi == 0 {
                return None;
            }
            let gens: Vec<Generator> = mu.parts().iter().map(|&n| Generator::x(0, n)).collect();
            let z = z_factor(&gens);
            Some((mu, BigRational::new(BigInt::from(chi), z)))
        })
        .collect();
    let row = Arc::new(row);
    schur_cache()
        .lock()
        .expect("poisoned")
        .insert(lambda.clone(), row.clone());
    row
}

/// Single-colour Schur function in colour 0 of alphabet X, with `l = 1`.
pub fn schur_powersum(lambda: &Partition) -> MultiSym {
    colored_schur(lambda, 1, 0)
}

fn colored_schur(lambda: &Partition, l: usize, color: usize) -> MultiSym {
    let mut out = MultiSym::zero(l);
    for (mu, c) in schur_row(lambda).iter() {
        let m: PowerMonomial = mu.parts().iter().map(|&n| Generator::x(color, n)).collect();
        out.add_term(m, FieldElem::from_bigratio(c.clone()));
    }
    out
}

/// `s_{lambda^(0)} ⊗ ... ⊗ s_{lambda^(l-1)}` in alphabet X.
pub fn multi_schur(parts: &[Partition]) -> MultiSym {
    let l = parts.len();
    parts
        .iter()
        .enumerate()
        .fold(MultiSym::one(l), |acc, (i, p)| {
            acc.times(&colored_schur(p, l, i))
        })
}

/// The multi-Schur function of the `l`-quotient of `lambda`.
pub fn vec_schur(lambda: &Partition, l: usize) -> Result<MultiSym> {
    Ok(multi_schur(&core_quot(lambda, l)?.quotient))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    PowerSum,
    MultiSchur,
    VecSchur { core: Partition },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BasisLabel {
    Power(Vec<(Alphabet, usize, usize)>),
    MultiSchur(Vec<Partition>),
    VecSchur(Partition),
}

pub type Expansion = Vec<(BasisLabel, FieldElem)>;

/// Expansion coefficients of `f` in a basis. Schur-type bases need a
/// single alphabet; the result is checked by reassembly.
pub fn to_basis(f: &MultiSym, basis: &Basis) -> Result<Expansion> {
    if *basis == Basis::PowerSum {
        return Ok(f
            .terms()
            .map(|(m, c)| {
                let label = m.iter().map(|g| (g.alphabet, g.color, g.degree)).collect();
                (BasisLabel::Power(label), c.clone())
            })
            .collect());
    }
    let mut alphabet = None;
    for (m, _) in f.terms() {
        for g in m {
            if *alphabet.get_or_insert(g.alphabet) != g.alphabet {
                return Err(Error::MixedAlphabets);
            }
        }
    }
    let alphabet = alphabet.unwrap_or(Alphabet::X);
    let fx = f.rename_alphabet(alphabet, Alphabet::X);
    let l = f.l();
    let mut degrees: Vec<usize> = fx
        .terms()
        .map(|(m, _)| m.iter().map(|g| g.degree).sum())
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = Vec::new();
    let mut assembled = MultiSym::zero(l);
    for d in degrees {
        let part = fx.homogeneous_part(d);
        for tuple in multipartitions(d, l) {
            let s = multi_schur(&tuple);
            let c = hall_pairing(&s, &part)?;
            if c.is_zero() {
                continue;
            }
            assembled = assembled.plus(&s.scale(&c));
            let label = match basis {
                Basis::VecSchur { core } => BasisLabel::VecSchur(from_core_quot(core, &tuple, l)?),
                _ => BasisLabel::MultiSchur(tuple),
            };
            out.push((label, c));
        }
    }
    let residual = fx.plus(&assembled.scale(&FieldElem::from_int(-1)));
    if !residual.is_zero() {
        return Err(Error::Residual {
            residual: residual.to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse;
    use crate::partitions::part;

    fn px(l: usize, c: usize, n: usize) -> MultiSym {
        MultiSym::generator(l, Generator::x(c, n)).unwrap()
    }

    #[test]
    fn small_characters() {
        assert_eq!(character(&part("2"), &part("1,1")), 1);
        assert_eq!(character(&part("1,1"), &part("2")), -1);
        assert_eq!(character(&part("2,1"), &part("3")), -1);
        assert_eq!(character(&part("2,1"), &part("1,1,1")), 2);
        assert_eq!(character(&part("2,2"), &part("2,2")), 2);
        assert_eq!(character(&part("3,1"), &part("2,1,1")), 1);
    }

    #[test]
    fn schur_small() {
        assert!(schur_powersum(&part("1")).field_eq(&px(1, 0, 1)));
        let half = FieldElem::from_ratio(1, 2);
        let p11 = px(1, 0, 1).pow(2);
        let want = px(1, 0, 2).scale(&half).plus(&p11.scale(&half));
        assert!(schur_powersum(&part("2")).field_eq(&want));
        let want = px(1, 0, 2).scale(&-half.clone()).plus(&p11.scale(&half));
        assert!(schur_powersum(&part("1,1")).field_eq(&want));
    }

    #[test]
    fn vec_schur_small() {
        assert!(vec_schur(&part("3,1"), 3)
            .unwrap()
            .field_eq(&MultiSym::one(3)));
        assert!(vec_schur(&part("2"), 2).unwrap().field_eq(&px(2, 0, 1)));
        assert!(vec_schur(&part("1,1"), 2).unwrap().field_eq(&px(2, 1, 1)));
    }

    #[test]
    fn schur_orthonormal() {
        for l in 1..=2 {
            for d in 0..=3 {
                let tuples = multipartitions(d, l);
                for a in &tuples {
                    for b in &tuples {
                        let v = hall_pairing(&multi_schur(a), &multi_schur(b)).unwrap();
                        if a == b {
                            assert!(v.is_one(), "{a:?}");
                        } else {
                            assert!(v.is_zero(), "{a:?} {b:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn basis_expansions() {
        let e = to_basis(&px(2, 0, 1), &Basis::MultiSchur).unwrap();
        assert_eq!(
            e,
            vec![(
                BasisLabel::MultiSchur(vec![part("1"), part("")]),
                FieldElem::one()
            )]
        );
        let lam = part("3");
        let e = to_basis(
            &vec_schur(&lam, 2).unwrap(),
            &Basis::VecSchur { core: part("1") },
        );
        assert_eq!(
            e.unwrap(),
            vec![(BasisLabel::VecSchur(lam), FieldElem::one())]
        );
    }

    #[test]
    fn basis_round_trip() {
        let t = parse("t1/(1+t2)").unwrap();
        let f = px(2, 0, 1)
            .pow(3)
            .plus(&px(2, 1, 2).times(&px(2, 0, 1)).scale(&t))
            .plus(&px(2, 1, 1));
        let e = to_basis(&f, &Basis::MultiSchur).unwrap();
        let mut back = MultiSym::zero(2);
        for (label, c) in e {
            let BasisLabel::MultiSchur(tuple) = label else {
                unreachable!()
            };
            back = back.plus(&multi_schur(&tuple).scale(&c));
        }
        assert!(back.field_eq(&f));
    }

    #[test]
    fn mixed_alphabets_rejected() {
        let f = px(1, 0, 1).times(&MultiSym::generator(1, Generator::y(0, 1)).unwrap());
        assert_eq!(to_basis(&f, &Basis::MultiSchur), Err(Error::MixedAlphabets));
    }
}
