use std::collections::BTreeSet;

use serde::Serialize;

use super::Partition;
use crate::error::{Error, Result};

/// A two-colouring of the integers, black far to the left and white far to
/// the right.
///
/// Stored as its charge and the finite set of positions where it differs
/// from the vacuum of that charge (black exactly below `-charge`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MayaDiagram {
    charge: i64,
    deviations: BTreeSet<i64>,
}

impl MayaDiagram {
    /// The vacuum `v_c`: black exactly at positions `< c`. Its charge is `-c`.
    pub fn vacuum(c: i64) -> Self {
        MayaDiagram {
            charge: -c,
            deviations: BTreeSet::new(),
        }
    }

    /// Builds from a colouring that is black below `lo` and white from `hi`
    /// on; `black` is consulted only on `lo..hi`.
    pub fn from_window(lo: i64, hi: i64, black: impl Fn(i64) -> bool) -> Self {
        let mut charge = 0i64;
        let mut blacks = Vec::new();
        for i in lo..hi {
            let b = black(i);
            if b {
                blacks.push(i);
            }
            if i < 0 && !b {
                charge += 1;
            }
            if i >= 0 && b {
                charge -= 1;
            }
        }
        // Positions outside the window are already vacuum-like, except for
        // the stretch between the window and the origin.
        if hi < 0 {
            charge += -hi; // white on hi..0
        }
        if lo > 0 {
            charge -= lo; // black on 0..lo
        }
        let split = -charge;
        let mut deviations = BTreeSet::new();
        let lo2 = lo.min(split);
        let hi2 = hi.max(split);
        for i in lo2..hi2 {
            let b = if i < lo {
                true
            } else if i >= hi {
                false
            } else {
                blacks.binary_search(&i).is_ok()
            };
            if b != (i < split) {
                deviations.insert(i);
            }
        }
        MayaDiagram { charge, deviations }
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn deviations(&self) -> &BTreeSet<i64> {
        &self.deviations
    }

    pub fn is_black(&self, i: i64) -> bool {
        (i < -self.charge) != self.deviations.contains(&i)
    }

    /// A window outside of which the diagram is vacuum-like in both
    /// directions and agrees with "black below, white above".
    pub fn window(&self) -> (i64, i64) {
        let s = -self.charge;
        let lo = self.deviations.first().copied().unwrap_or(s).min(s).min(0);
        let hi = self
            .deviations
            .last()
            .map(|x| x + 1)
            .unwrap_or(s)
            .max(s)
            .max(0);
        (lo, hi)
    }

    /// `m~(k) = m(k - c(m))`, which has charge zero.
    pub fn shifted(&self) -> MayaDiagram {
        let c = self.charge;
        let (lo, hi) = self.window();
        MayaDiagram::from_window(lo + c, hi + c, |k| self.is_black(k - c))
    }

    /// Runner `i` of the `l`-abacus: `k -> m(i + k l)`.
    pub fn slice(&self, i: usize, l: usize) -> MayaDiagram {
        let (lo, hi) = self.window();
        let l = l as i64;
        let i = i as i64;
        let klo = (lo - i).div_euclid(l);
        let khi = (hi - i).div_euclid(l) + 1;
        MayaDiagram::from_window(klo, khi, |k| self.is_black(i + k * l))
    }

    /// Inverse of slicing: interleaves `l` runners.
    pub fn interleave(runners: &[MayaDiagram]) -> MayaDiagram {
        let l = runners.len() as i64;
        let mut lo = 0;
        let mut hi = 0;
        for (i, r) in runners.iter().enumerate() {
            let (a, b) = r.window();
            lo = lo.min(i as i64 + a * l);
            hi = hi.max(i as i64 + b * l);
        }
        MayaDiagram::from_window(lo, hi, |p| {
            let i = p.rem_euclid(l);
            runners[i as usize].is_black(p.div_euclid(l))
        })
    }

    /// Partition of a charge-zero diagram.
    pub fn to_partition(&self) -> Result<Partition> {
        if self.charge != 0 {
            return Err(Error::NonzeroCharge(self.charge));
        }
        let (lo, hi) = self.window();
        // c_i = #{k >= i black} for i >= 0 and #{k < i white} for i <= 0.
        let content = |i: i64| -> usize {
            if i >= 0 {
                (i..hi).filter(|&k| self.is_black(k)).count()
            } else {
                (lo..i).filter(|&k| !self.is_black(k)).count()
            }
        };
        let mut parts = Vec::new();
        for a in 1.. {
            let mut len = 0;
            for b in 1.. {
                let c = content(a as i64 - b as i64);
                if (a.min(b)) <= c {
                    len = b;
                } else {
                    break;
                }
            }
            if len == 0 {
                break;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }
}

impl Partition {
    /// The charge-zero Maya diagram of the partition.
    pub fn maya(&self) -> MayaDiagram {
        let (lo, counts) = self.content_counts();
        let c = |j: i64| -> i64 {
            let idx = j - lo;
            if idx < 0 || idx as usize >= counts.len() {
                0
            } else {
                counts[idx as usize] as i64
            }
        };
        let wlo = lo - 1;
        let whi = self.len() as i64 + 1;
        MayaDiagram::from_window(wlo, whi, |i| {
            let d = c(i) - c(i + 1);
            if i < 0 {
                d == 0
            } else {
                d == 1
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreQuotient {
    pub l: usize,
    pub core: Partition,
    pub quotient: Vec<Partition>,
}

impl CoreQuotient {
    pub fn quotient_size(&self) -> usize {
        self.quotient.iter().map(|q| q.size()).sum()
    }
}

/// `l`-core and `l`-quotient via the abacus: the core pushes every runner to
/// its vacuum, the quotient reads each runner after the charge shift.
pub fn core_quot(lambda: &Partition, l: usize) -> Result<CoreQuotient> {
    if l == 0 {
        return Err(Error::InvalidModulus(l));
    }
    let m = lambda.maya();
    let runners: Vec<MayaDiagram> = (0..l).map(|i| m.slice(i, l)).collect();
    let quotient = runners
        .iter()
        .map(|r| r.shifted().to_partition())
        .collect::<Result<Vec<_>>>()?;
    let vacua: Vec<MayaDiagram> = runners
        .iter()
        .map(|r| MayaDiagram::vacuum(-r.charge()))
        .collect();
    let core = MayaDiagram::interleave(&vacua).to_partition()?;
    Ok(CoreQuotient { l, core, quotient })
}

/// Rebuilds a partition from an `l`-core and an `l`-quotient.
pub fn from_core_quot(core: &Partition, quotient: &[Partition], l: usize) -> Result<Partition> {
    if l == 0 {
        return Err(Error::InvalidModulus(l));
    }
    if quotient.len() != l {
        return Err(Error::ModulusMismatch(quotient.len(), l));
    }
    let m = core.maya();
    let runners: Vec<MayaDiagram> = (0..l).map(|i| m.slice(i, l)).collect();
    if runners.iter().any(|r| !r.deviations().is_empty()) {
        return Err(Error::NotCore {
            partition: core.to_string(),
            l,
        });
    }
    let rebuilt: Vec<MayaDiagram> = runners
        .iter()
        .zip(quotient)
        .map(|(r, q)| {
            // m(k) = m~(k + c)
            let c = r.charge();
            let qm = q.maya();
            let (lo, hi) = qm.window();
            MayaDiagram::from_window(lo - c, hi - c, |k| qm.is_black(k + c))
        })
        .collect();
    MayaDiagram::interleave(&rebuilt).to_partition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;

    #[test]
    fn vacuum_charge_convention() {
        let v = MayaDiagram::vacuum(3);
        assert_eq!(v.charge(), -3);
        assert!(v.is_black(2));
        assert!(!v.is_black(3));
        assert_eq!(v.shifted(), MayaDiagram::vacuum(0));
    }

    #[test]
    fn figure_example() {
        let m = part("3,2,2,1,1,1").maya();
        assert_eq!(m.charge(), 0);
        let blacks: Vec<i64> = (-6..8).filter(|&i| m.is_black(i)).collect();
        assert_eq!(blacks, vec![-6, -5, -4, -2, 1, 5]);
        assert_eq!(m.to_partition().unwrap(), part("3,2,2,1,1,1"));
    }

    #[test]
    fn empty_is_vacuum() {
        assert_eq!(Partition::empty().maya(), MayaDiagram::vacuum(0));
        assert_eq!(
            MayaDiagram::vacuum(0).to_partition().unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn nonzero_charge_is_rejected() {
        assert_eq!(
            MayaDiagram::vacuum(1).to_partition(),
            Err(Error::NonzeroCharge(-1))
        );
    }

    #[test]
    fn worked_core_quotient() {
        let cq = core_quot(&part("3,2,2,1,1,1"), 3).unwrap();
        assert_eq!(cq.core, part("3,1"));
        assert_eq!(cq.quotient, vec![part(""), part(""), part("1,1")]);
        assert_eq!(
            from_core_quot(&cq.core, &cq.quotient, 3).unwrap(),
            part("3,2,2,1,1,1")
        );
    }

    #[test]
    fn small_quotients_at_two() {
        let a = core_quot(&part("2"), 2).unwrap();
        assert_eq!(a.quotient, vec![part("1"), part("")]);
        let b = core_quot(&part("1,1"), 2).unwrap();
        assert_eq!(b.quotient, vec![part(""), part("1")]);
    }

    #[test]
    fn cores_are_fixed() {
        for (k, l) in [("3,1", 3), ("1", 2), ("2,1", 2), ("", 4)] {
            let cq = core_quot(&part(k), l).unwrap();
            assert_eq!(cq.core, part(k));
            assert!(cq.quotient.iter().all(|q| q.is_empty()));
        }
    }
}
