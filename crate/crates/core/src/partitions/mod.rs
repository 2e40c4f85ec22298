//! Partitions, Maya diagrams, cores and quotients.
//!
//! Boxes are `(a, b)` with `a` the part index and `b` the position inside
//! the part, both 1-based. Content is `a - b`; the arm of a box counts later
//! parts reaching its position, the leg counts the rest of its own part.

mod fixed;
mod maya;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::FieldElem;

pub use fixed::fixed_points;
pub use maya::{core_quot, from_core_quot, CoreQuotient, MayaDiagram};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxStats {
    pub arm: usize,
    pub leg: usize,
    pub hook: usize,
    pub content: i64,
}

impl Partition {
    /// Validates and wraps; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("{parts:?} is not a partition"),
            });
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `a` (1-based), zero past the end.
    pub fn part(&self, a: usize) -> usize {
        if a == 0 {
            return 0;
        }
        self.parts.get(a - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a >= 1 && b >= 1 && b <= self.part(a)
    }

    /// All boxes `(a, b)` in part-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |b| (i + 1, b)))
    }

    pub fn box_stats(&self, a: usize, b: usize) -> Result<BoxStats> {
        if !self.contains(a, b) {
            return Err(Error::BoxOutside {
                a,
                b,
                partition: self.to_string(),
            });
        }
        let arm = self.parts[a..].iter().take_while(|&&p| p >= b).count();
        let leg = self.parts[a - 1] - b;
        Ok(BoxStats {
            arm,
            leg,
            hook: arm + leg + 1,
            content: a as i64 - b as i64,
        })
    }

    pub fn transpose(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=first)
                .map(|b| self.parts.iter().take_while(|&&p| p >= b).count())
                .collect(),
        }
    }

    /// Number of boxes of each content, as `(min_content, counts)`.
    pub fn content_counts(&self) -> (i64, Vec<usize>) {
        let lo = 1 - self.part(1) as i64;
        let hi = self.len() as i64 - 1;
        let mut counts = vec![0usize; (hi - lo + 1).max(0) as usize];
        for (a, b) in self.boxes() {
            counts[(a as i64 - b as i64 - lo) as usize] += 1;
        }
        (lo, counts)
    }

    /// `self ⊴ other` in dominance order; with `l`, additionally equal
    /// `l`-cores.
    pub fn dominance_leq(&self, other: &Partition, l: Option<usize>) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.to_string(),
                right: other.to_string(),
            });
        }
        if let Some(l) = l {
            if core_quot(self, l)?.core != core_quot(other, l)?.core {
                return Ok(false);
            }
        }
        let (mut s, mut t) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            s += self.parts.get(i).copied().unwrap_or(0);
            t += other.parts.get(i).copied().unwrap_or(0);
            if s > t {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_core(&self, l: usize) -> Result<bool> {
        Ok(core_quot(self, l)?.quotient.iter().all(|q| q.is_empty()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts; the empty string (or `∅`) is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut pos = 0;
        for tok in s.split(',') {
            let t = tok.trim();
            let p: usize = t.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("invalid part '{t}'"),
            })?;
            parts.push(p);
            pos += tok.len() + 1;
        }
        if parts.contains(&0) {
            return Err(Error::Parse {
                pos: 0,
                msg: "parts must be positive".into(),
            });
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with the given `l`-core, in descending lexicographic
/// order.
pub fn enumerate(n: usize, l: usize, core: &Partition) -> Result<Vec<Partition>> {
    if l == 0 {
        return Err(Error::InvalidModulus(l));
    }
    let cs = core.size();
    if n < cs || (n - cs) % l != 0 {
        return Ok(Vec::new());
    }
    let d = (n - cs) / l;
    let mut out = Vec::new();
    for quot in multipartitions(d, l) {
        if let Ok(p) = from_core_quot(core, &quot, l) {
            out.push(p);
        } else {
            return Err(Error::NotCore {
                partition: core.to_string(),
                l,
            });
        }
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// All `l`-tuples of partitions with total size `d`, in a fixed order:
/// size vectors ascending in reverse-lex, then components by
/// [`partitions_of`].
pub fn multipartitions(d: usize, l: usize) -> Vec<Vec<Partition>> {
    fn compositions(d: usize, l: usize) -> Vec<Vec<usize>> {
        if l == 0 {
            return if d == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in (0..=d).rev() {
            for mut rest in compositions(d - first, l - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for sizes in compositions(d, l) {
        let mut acc: Vec<Vec<Partition>> = vec![vec![]];
        for &s in &sizes {
            let mut next = Vec::new();
            for prefix in &acc {
                for p in partitions_of(s) {
                    let mut v = prefix.clone();
                    v.push(p);
                    next.push(v);
                }
            }
            acc = next;
        }
        out.extend(acc);
    }
    out
}

fn residue(x: i64, l: usize) -> usize {
    x.rem_euclid(l as i64) as usize
}

/// Coefficients of `sum_{(a,b)} alpha_{(a-b) mod l}` on `alpha_1..alpha_{l-1}`
/// after `alpha_0 = -(alpha_1 + ... + alpha_{l-1})`.
pub fn core_to_root(kappa: &Partition, l: usize) -> Result<Vec<i64>> {
    if l == 0 {
        return Err(Error::InvalidModulus(l));
    }
    if !kappa.is_core(l)? {
        return Err(Error::NotCore {
            partition: kappa.to_string(),
            l,
        });
    }
    let mut n = vec![0i64; l];
    for (a, b) in kappa.boxes() {
        n[residue(a as i64 - b as i64, l)] += 1;
    }
    Ok((1..l).map(|i| n[i] - n[0]).collect())
}

/// `sum t1^(1-b) t2^(1-a)` over boxes with `a - b ≡ m (mod l)`.
pub fn taut_character(lambda: &Partition, m: i64, l: usize) -> FieldElem {
    let mut acc = FieldElem::zero();
    for (a, b) in lambda.boxes() {
        if residue(a as i64 - b as i64 - m, l) == 0 {
            acc = acc + FieldElem::laurent([1 - b as i32, 1 - a as i32, 0, 0, 0], 1);
        }
    }
    acc
}

/// `prod (1 + u t1^(1-b) t2^(1-a))` over boxes with `a - b ≡ m (mod l)`.
pub fn classical_descendant(lambda: &Partition, m: i64, l: usize) -> FieldElem {
    let one = FieldElem::one();
    let mut acc = FieldElem::one();
    for (a, b) in lambda.boxes() {
        if residue(a as i64 - b as i64 - m, l) == 0 {
            let w = FieldElem::laurent([1 - b as i32, 1 - a as i32, 0, 1, 0], 1);
            acc = acc * (&one + &w);
        }
    }
    acc
}

/// `prod (1 + u t1^(b-1) t2^(a-1))` over boxes with `a - b ≡ m (mod l)`.
pub fn evaluation_product(lambda: &Partition, m: i64, l: usize) -> FieldElem {
    let one = FieldElem::one();
    let mut acc = FieldElem::one();
    for (a, b) in lambda.boxes() {
        if residue(a as i64 - b as i64 - m, l) == 0 {
            let w = FieldElem::laurent([b as i32 - 1, a as i32 - 1, 0, 1, 0], 1);
            acc = acc * (&one + &w);
        }
    }
    acc
}

/// Shorthand used throughout the tests and CLI.
pub fn part(s: &str) -> Partition {
    s.parse().expect("valid partition literal")
}
