//! Plethysm matrices on a degree block of multi-Schur functions.

use std::sync::{Arc, OnceLock};

use crate::error::Result;
use crate::exactalg::{FieldElem, Var};
use crate::multisym::{hall_pairing, multi_schur, MultiSym};
use crate::par::{self, Execution, OnceMap};
use crate::partitions::{multipartitions, Partition};

/// All multi-Schur functions of one total degree.
pub struct Block {
    pub l: usize,
    pub d: usize,
    pub tuples: Vec<Vec<Partition>>,
    pub schur: Vec<MultiSym>,
}

impl Block {
    pub fn index_of(&self, tuple: &[Partition]) -> Option<usize> {
        self.tuples.iter().position(|t| t == tuple)
    }

    /// Index of `((d), ∅, ..., ∅)`.
    pub fn vacuum_index(&self) -> usize {
        let mut t = vec![Partition::empty(); self.l];
        t[0] = Partition::new(if self.d == 0 { vec![] } else { vec![self.d] })
            .expect("valid partition");
        self.index_of(&t).expect("present in block")
    }

    /// Multi-Schur coefficients of a degree-`d` element.
    pub fn coefficients(&self, f: &MultiSym) -> Result<Vec<FieldElem>> {
        self.schur.iter().map(|s| hall_pairing(s, f)).collect()
    }
}

/// Composite plethysms whose matrices the solver needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plethysm {
    /// `Γ_{t1}^{-1}`
    T1Inv,
    /// `Γ_{t2^{-1}} Γ_{t1}^{-1}`
    T2AfterT1Inv,
    /// `Γ_{t2^{-1}}^{-1}`
    T2Inv,
    /// `Γ_{t1} Γ_{t2^{-1}}^{-1}`
    T1AfterT2Inv,
}

impl Plethysm {
    pub fn apply(self, f: &MultiSym) -> Result<MultiSym> {
        let t1 = FieldElem::var(Var::T1);
        let t2inv = FieldElem::laurent([0, -1, 0, 0, 0], 1);
        Ok(match self {
            Plethysm::T1Inv => f.gamma(&t1, true)?,
            Plethysm::T2AfterT1Inv => f.gamma(&t1, true)?.gamma(&t2inv, false)?,
            Plethysm::T2Inv => f.gamma(&t2inv, true)?,
            Plethysm::T1AfterT2Inv => f.gamma(&t2inv, true)?.gamma(&t1, false)?,
        })
    }
}

/// Dense matrix, `m[row][col]`.
pub type Matrix = Vec<Vec<FieldElem>>;

fn blocks() -> &'static OnceMap<(usize, usize), Arc<Block>> {
    static C: OnceLock<OnceMap<(usize, usize), Arc<Block>>> = OnceLock::new();
    C.get_or_init(OnceMap::new)
}

fn matrices() -> &'static OnceMap<(usize, usize, Plethysm), Result<Arc<Matrix>>> {
    static C: OnceLock<OnceMap<(usize, usize, Plethysm), Result<Arc<Matrix>>>> = OnceLock::new();
    C.get_or_init(OnceMap::new)
}

pub fn block(l: usize, d: usize) -> Arc<Block> {
    blocks().get_or_init(&(l, d), || {
        let tuples = multipartitions(d, l);
        let schur = tuples.iter().map(|t| multi_schur(t)).collect();
        Arc::new(Block {
            l,
            d,
            tuples,
            schur,
        })
    })
}

/// `m[rho][nu] = <s_rho, P s_nu>`, computed once per `(l, d, P)`.
pub fn matrix(l: usize, d: usize, p: Plethysm) -> Result<Arc<Matrix>> {
    matrices().get_or_init(&(l, d, p), || {
        let b = block(l, d);
        let mode = par::outermost(Execution::current());
        let cols = par::try_map(mode, &b.schur, |s| b.coefficients(&p.apply(s)?))?;
        let n = cols.len();
        let m = (0..n)
            .map(|r| (0..n).map(|c| cols[c][r].clone()).collect())
            .collect();
        Ok(Arc::new(m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse;

    #[test]
    fn block_sizes() {
        assert_eq!(block(3, 3).tuples.len(), 22);
        assert_eq!(block(2, 2).tuples.len(), 5);
        assert_eq!(block(1, 0).vacuum_index(), 0);
    }

    #[test]
    fn inverse_matrix_at_one_color() {
        // l = 1, d = 1: Γ_{t1}^{-1} p1 = p1 / (1 - t1).
        let m = matrix(1, 1, Plethysm::T1Inv).unwrap();
        assert_eq!(m[0][0], parse("1/(1-t1)").unwrap());
    }
}
