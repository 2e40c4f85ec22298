//! Wreath Macdonald polynomials from their triangularity axioms, their
//! norms, Cauchy kernels and classical evaluations.

pub mod block;
pub mod linalg;

use std::sync::{Arc, OnceLock};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{FieldElem, Var};
use crate::multisym::{
    hall_pairing, multi_schur, to_basis, wreath_adjoint, Alphabet, Basis, Endo, Generator,
    MultiSym, MultiSymJson,
};
use crate::par::{self, Execution, OnceMap};
use crate::partitions::{core_quot, enumerate, from_core_quot, Partition};
use crate::report::Report;
use crate::vertex::c_coeff;

use block::{block, matrix, Plethysm};
use linalg::Solution;

/// Labeling convention for the quotient: colour `i` of the multi-Schur
/// label carries quotient component `i + rotate`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SolveOptions {
    pub rotate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathRecord {
    pub l: usize,
    pub lambda: Partition,
    pub core: Partition,
    pub degree: usize,
    #[serde(skip)]
    pub h: MultiSym,
    /// Vec-Schur coefficients, indexed by partitions of the block.
    #[serde(skip)]
    pub coeffs: Vec<(Partition, FieldElem)>,
    pub norm: FieldElem,
    #[serde(skip)]
    pub rotate: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputBasis {
    PowerSum,
    Schur,
    VecSchur,
}

impl WreathRecord {
    pub fn to_json(&self, basis: OutputBasis) -> Result<Value> {
        let h = match basis {
            OutputBasis::PowerSum => {
                serde_json::to_value(MultiSymJson::from(&self.h)).expect("serializable")
            }
            OutputBasis::Schur => {
                let e = to_basis(&self.h, &Basis::MultiSchur)?;
                Value::Array(
                    e.into_iter()
                        .map(|(label, c)| json!({"label": label, "coeff": c}))
                        .collect(),
                )
            }
            OutputBasis::VecSchur => Value::Array(
                self.coeffs
                    .iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(p, c)| json!({"label": p, "coeff": c}))
                    .collect(),
            ),
        };
        Ok(json!({
            "l": self.l,
            "lambda": self.lambda,
            "core": self.core,
            "degree": self.degree,
            "basis": match basis {
                OutputBasis::PowerSum => "p",
                OutputBasis::Schur => "schur",
                OutputBasis::VecSchur => "vecschur",
            },
            "H": h,
            "norm": self.norm,
        }))
    }
}

fn unrotate_label(tuple: &[Partition], r: usize) -> Vec<Partition> {
    let l = tuple.len();
    (0..l).map(|i| tuple[(i + l - r % l) % l].clone()).collect()
}

/// The partitions labelling a block, in block order.
pub fn block_partitions(
    core: &Partition,
    l: usize,
    d: usize,
    rotate: usize,
) -> Result<Vec<Partition>> {
    block(l, d)
        .tuples
        .iter()
        .map(|t| from_core_quot(core, &unrotate_label(t, rotate), l))
        .collect()
}

type RecordKey = (Partition, usize, SolveOptions);

fn records() -> &'static OnceMap<RecordKey, Result<Arc<WreathRecord>>> {
    static C: OnceLock<OnceMap<RecordKey, Result<Arc<WreathRecord>>>> = OnceLock::new();
    C.get_or_init(OnceMap::new)
}

pub fn wreath_macdonald(lambda: &Partition, l: usize) -> Result<Arc<WreathRecord>> {
    wreath_macdonald_with(lambda, l, SolveOptions::default())
}

pub fn wreath_macdonald_with(
    lambda: &Partition,
    l: usize,
    opts: SolveOptions,
) -> Result<Arc<WreathRecord>> {
    if l == 0 {
        return Err(Error::InvalidModulus(0));
    }
    records().get_or_init(&(lambda.clone(), l, opts), || {
        solve_record(lambda, l, opts).map(Arc::new)
    })
}

/// Solves a list of records, in parallel when enabled.
pub fn wreath_records(lambdas: &[Partition], l: usize) -> Result<Vec<Arc<WreathRecord>>> {
    warm_blocks(lambdas, l)?;
    par::try_map(Execution::current(), lambdas, |lam| {
        wreath_macdonald(lam, l)
    })
}

/// Fills the matrix caches for every block the given partitions touch.
fn warm_blocks(lambdas: &[Partition], l: usize) -> Result<()> {
    let mut degrees: Vec<usize> = lambdas
        .iter()
        .map(|lam| core_quot(lam, l).map(|cq| cq.quotient_size()))
        .collect::<Result<_>>()?;
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        for p in [
            Plethysm::T1Inv,
            Plethysm::T2AfterT1Inv,
            Plethysm::T2Inv,
            Plethysm::T1AfterT2Inv,
        ] {
            matrix(l, d, p)?;
        }
    }
    Ok(())
}

fn solve_record(lambda: &Partition, l: usize, opts: SolveOptions) -> Result<WreathRecord> {
    let cq = core_quot(lambda, l)?;
    let d = cq.quotient_size();
    let b = block(l, d);
    let nus = block_partitions(&cq.core, l, d, opts.rotate)?;
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (i, nu) in nus.iter().enumerate() {
        if lambda.dominance_leq(nu, None)? {
            upper.push(i);
        }
        if nu.dominance_leq(lambda, None)? {
            lower.push(i);
        }
    }
    // Parametrize by the smaller side, so that one condition holds by
    // construction and the other becomes the linear system.
    let (span, target, inv, comp) = if upper.len() <= lower.len() {
        (&upper, &lower, Plethysm::T1Inv, Plethysm::T2AfterT1Inv)
    } else {
        (&lower, &upper, Plethysm::T2Inv, Plethysm::T1AfterT2Inv)
    };
    let a = matrix(l, d, inv)?;
    let k = matrix(l, d, comp)?;
    let v0 = b.vacuum_index();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for rho in (0..nus.len()).filter(|r| !target.contains(r)) {
        rows.push(span.iter().map(|&mu| k[rho][mu].clone()).collect());
        rhs.push(FieldElem::zero());
    }
    rows.push(span.iter().map(|&mu| a[v0][mu].clone()).collect());
    rhs.push(FieldElem::one());
    let mismatch = |detail: String| Error::ConventionMismatch {
        l,
        lambda: lambda.to_string(),
        detail,
    };
    let x = match linalg::solve(&rows, &rhs) {
        Solution::Unique(x) => x,
        Solution::Underdetermined(rank) => {
            return Err(mismatch(format!(
                "solution not unique: rank {rank} for {} unknowns in block of size {}",
                span.len(),
                nus.len()
            )))
        }
        Solution::Inconsistent(row) => {
            return Err(mismatch(format!(
                "inconsistent system (row {row} of {}) in block of size {}",
                rows.len(),
                nus.len()
            )))
        }
    };
    let mut coeffs = Vec::with_capacity(nus.len());
    let mut h = MultiSym::zero(l);
    for (nu_idx, nu) in nus.iter().enumerate() {
        let c = span
            .iter()
            .zip(&x)
            .fold(FieldElem::zero(), |acc, (&mu, xi)| {
                acc.add_ref(&a[nu_idx][mu].mul_ref(xi))
            });
        if !c.is_zero() {
            h = h.plus(&b.schur[nu_idx].scale(&c));
        }
        coeffs.push((nu.clone(), c));
    }
    Ok(WreathRecord {
        l,
        lambda: lambda.clone(),
        core: cq.core,
        degree: d,
        h,
        coeffs,
        norm: norm(lambda, l),
        rotate: opts.rotate,
    })
}

/// Re-checks both triangularity conditions, the normalization and
/// homogeneity directly from `H`, without the solver's matrices.
pub fn verify_axioms(rec: &WreathRecord) -> Result<Report> {
    let mut report = Report::new("axioms")
        .param("l", rec.l)
        .param("lambda", rec.lambda.to_string());
    let l = rec.l;
    let d = rec.degree;
    let nus = block_partitions(&rec.core, l, d, rec.rotate)?;
    let b = block(l, d);
    let t1 = FieldElem::var(Var::T1);
    let t2inv = FieldElem::laurent([0, -1, 0, 0, 0], 1);
    let conditions = [
        ("gamma_t1", rec.h.gamma(&t1, false)?, true),
        ("gamma_t2_inverse", rec.h.gamma(&t2inv, false)?, false),
    ];
    for (name, g, up) in conditions {
        for (idx, nu) in nus.iter().enumerate() {
            let allowed = if up {
                rec.lambda.dominance_leq(nu, None)?
            } else {
                nu.dominance_leq(&rec.lambda, None)?
            };
            if allowed {
                continue;
            }
            let c = hall_pairing(&b.schur[idx], &g)?;
            report.record(
                (!c.is_zero()).then(|| json!({"condition": name, "mu": nu, "coefficient": c})),
            );
        }
    }
    let mut vac = vec![Partition::empty(); l];
    if d > 0 {
        vac[0] = Partition::new(vec![d])?;
    }
    let n = hall_pairing(&multi_schur(&vac), &rec.h)?;
    report.record((!n.is_one()).then(|| json!({"condition": "normalization", "value": n})));
    let homogeneous = rec
        .h
        .terms()
        .all(|(m, _)| m.iter().map(|g| g.degree).sum::<usize>() == d);
    report.record((!homogeneous).then(|| json!({"condition": "homogeneity"})));
    Ok(report.finish())
}

/// Product formula for the norm over boxes with hook divisible by `l`.
pub fn norm(lambda: &Partition, l: usize) -> FieldElem {
    let mut acc = FieldElem::one();
    for (a, b) in lambda.boxes() {
        let s = lambda.box_stats(a, b).expect("box in partition");
        if s.hook as usize % l != 0 {
            continue;
        }
        let (arm, leg) = (s.arm as i32, s.leg as i32);
        let f1 = FieldElem::one().sub_ref(&FieldElem::laurent([leg + 1, -arm, 0, 0, 0], 1));
        let f2 = FieldElem::one().sub_ref(&FieldElem::laurent([-leg, arm + 1, 0, 0, 0], 1));
        acc = acc.mul_ref(&f1).mul_ref(&f2);
    }
    acc
}

fn empty_core_partitions(size: usize, l: usize) -> Result<Vec<Partition>> {
    enumerate(size, l, &Partition::empty())
}

/// `<H_lambda, inv swap H_mu'>` against `delta N_lambda` for all empty-core
/// partitions of `size`.
pub fn verify_orthogonality(l: usize, size: usize) -> Result<Report> {
    let mut report = Report::new("orthogonality")
        .param("l", l)
        .param("size", size);
    let lams = empty_core_partitions(size, l)?;
    let recs = wreath_records(&lams, l)?;
    let duals = par::try_map(Execution::current(), &lams, |mu| -> Result<MultiSym> {
        let h = wreath_macdonald(&mu.transpose(), l)?;
        wreath_adjoint(&h.h.endo(Endo::Swap).endo(Endo::Inv))
    })?;
    let pairs: Vec<(usize, usize)> = (0..lams.len())
        .flat_map(|i| (0..lams.len()).map(move |j| (i, j)))
        .collect();
    let values = par::try_map(Execution::current(), &pairs, |&(i, j)| {
        hall_pairing(&recs[i].h, &duals[j])
    })?;
    for (&(i, j), got) in pairs.iter().zip(values) {
        let want = if i == j {
            recs[i].norm.clone()
        } else {
            FieldElem::zero()
        };
        report.record(
            (!got.field_eq(&want))
                .then(|| json!({"lambda": lams[i], "mu": lams[j], "got": got, "expected": want})),
        );
    }
    Ok(report.finish())
}

/// `exp(sum_{i, n <= D} coeff(i, n) p^(i)_n)` in alphabet X.
pub fn kernel_exp(
    l: usize,
    d: usize,
    coeff: impl Fn(usize, usize) -> Result<FieldElem>,
) -> Result<MultiSym> {
    let mut e = MultiSym::zero(l);
    for n in 1..=d {
        for i in 0..l {
            e.add_term(vec![Generator::x(i, n)], coeff(i, n)?);
        }
    }
    e.exp_truncated(d)
}

/// `1 / (n (1 - t1^(nl)) (1 - t2^(nl)))`
pub fn cauchy_denominator(l: usize, n: usize) -> FieldElem {
    let e = (n * l) as i32;
    let d = FieldElem::one()
        .sub_ref(&FieldElem::laurent([e, 0, 0, 0, 0], 1))
        .mul_ref(&FieldElem::one().sub_ref(&FieldElem::laurent([0, e, 0, 0, 0], 1)))
        .scale_int(n as i64);
    d.inv().expect("nonzero")
}

/// Closed form of the wreath Cauchy kernel, truncated to bidegree `(D, D)`.
pub fn wreath_cauchy_kernel(l: usize, d: usize) -> Result<MultiSym> {
    let mut e = MultiSym::zero(l);
    for n in 1..=d {
        let scale = cauchy_denominator(l, n);
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    let color = (2 * l + k - i - j) % l;
                    let c = FieldElem::laurent([(n * j) as i32, (n * k) as i32, 0, 0, 0], 1)
                        .mul_ref(&scale);
                    let mut m = vec![Generator::x(i, n), Generator::y(color, n)];
                    m.sort();
                    e.add_term(m, c);
                }
            }
        }
    }
    e.exp_truncated(d)
}

/// The same kernel written through inverse plethysms:
/// `exp(sum (1/n) p_n[x] neg Γ_{t2}^{-1} neg Γ_{t1}^{-1} neg p_n[y])`.
pub fn wreath_cauchy_middle(l: usize, d: usize) -> Result<MultiSym> {
    let t1 = FieldElem::var(Var::T1);
    let t2 = FieldElem::var(Var::T2);
    let mut e = MultiSym::zero(l);
    for n in 1..=d {
        for i in 0..l {
            let p = MultiSym::generator(l, Generator::x(i, n))?;
            let y = p
                .endo(Endo::Neg)
                .gamma(&t1, true)?
                .endo(Endo::Neg)
                .gamma(&t2, true)?
                .endo(Endo::Neg)
                .rename_alphabet(Alphabet::X, Alphabet::Y);
            e = e.plus(&p.times(&y).scale(&FieldElem::from_ratio(1, n as i64)));
        }
    }
    e.exp_truncated(d)
}

/// Partitions with the given core whose quotient has size at most `d`.
fn with_core_up_to(core: &Partition, l: usize, d: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for k in 0..=d {
        out.extend(enumerate(core.size() + k * l, l, core)?);
    }
    Ok(out)
}

fn compare(report: &mut Report, what: &str, got: &MultiSym, want: &MultiSym) {
    let diff = got.first_difference(want);
    report.record(diff.map(|(m, a, b)| {
        let mono: Vec<_> = m.iter().map(|g| (g.alphabet, g.color, g.degree)).collect();
        json!({"identity": what, "monomial": mono, "left": a, "right": b})
    }));
}

/// `sum vec_s_lambda[x] vec_s_lambda[y]` over a core against the plain
/// Cauchy exponential.
pub fn schur_cauchy_check(l: usize, core: &Partition, d: usize) -> Result<Report> {
    let mut report = Report::new("schur-cauchy")
        .param("l", l)
        .param("core", core.to_string())
        .param("degree", d);
    let mut lhs = MultiSym::zero(l);
    for lam in with_core_up_to(core, l, d)? {
        let s = crate::multisym::vec_schur(&lam, l)?;
        lhs = lhs.plus(&s.times(&s.rename_alphabet(Alphabet::X, Alphabet::Y)));
    }
    let mut e = MultiSym::zero(l);
    for n in 1..=d {
        for i in 0..l {
            let mut m = vec![Generator::x(i, n), Generator::y(i, n)];
            m.sort();
            e.add_term(m, FieldElem::from_ratio(1, n as i64));
        }
    }
    compare(&mut report, "schur-cauchy", &lhs, &e.exp_truncated(d)?);
    Ok(report.finish())
}

/// Left side of the wreath Cauchy identity:
/// `sum N^-1 H_lambda[x] inv swap H_lambda'[y]`.
pub fn wreath_cauchy_sum(l: usize, core: &Partition, d: usize) -> Result<MultiSym> {
    let lams = with_core_up_to(core, l, d)?;
    let mut all = lams.clone();
    all.extend(lams.iter().map(|p| p.transpose()));
    all.sort();
    all.dedup();
    wreath_records(&all, l)?;
    let terms = par::try_map(Execution::current(), &lams, |lam| -> Result<MultiSym> {
        let h = wreath_macdonald(lam, l)?;
        let dual = wreath_macdonald(&lam.transpose(), l)?;
        let y = dual
            .h
            .endo(Endo::Swap)
            .endo(Endo::Inv)
            .rename_alphabet(Alphabet::X, Alphabet::Y);
        Ok(h.h.times(&y).scale(&h.norm.inv()?))
    })?;
    Ok(terms.iter().fold(MultiSym::zero(l), |acc, t| acc.plus(t)))
}

pub fn wreath_cauchy_check(l: usize, core: &Partition, d: usize) -> Result<Report> {
    let mut report = Report::new("wreath-cauchy")
        .param("l", l)
        .param("core", core.to_string())
        .param("degree", d);
    let closed = wreath_cauchy_kernel(l, d)?;
    compare(
        &mut report,
        "middle=closed",
        &wreath_cauchy_middle(l, d)?,
        &closed,
    );
    compare(
        &mut report,
        "sum=closed",
        &wreath_cauchy_sum(l, core, d)?,
        &closed,
    );
    Ok(report.finish())
}

fn require_empty_core(what: &'static str, lambda: &Partition, l: usize) -> Result<()> {
    let cq = core_quot(lambda, l)?;
    if !cq.core.is_empty() {
        return Err(Error::UnsupportedCore {
            what,
            core: cq.core.to_string(),
        });
    }
    Ok(())
}

fn check_residue(m: usize, l: usize) -> Result<()> {
    if m >= l {
        return Err(Error::ResidueOutOfRange { residue: m, l });
    }
    Ok(())
}

/// `H_lambda` at `p^(j)_k = delta_{0j} - delta_{mj} (-u)^k`, and the box
/// product it should equal.
pub fn evaluate_h(lambda: &Partition, l: usize, m: usize) -> Result<(FieldElem, FieldElem)> {
    check_residue(m, l)?;
    require_empty_core("evaluation formula", lambda, l)?;
    let rec = wreath_macdonald(lambda, l)?;
    let neg_u = FieldElem::var(Var::U).neg_ref();
    let lhs = rec.h.specialize(|g| {
        let mut v = FieldElem::from_int((g.color == 0) as i64);
        if g.color == m {
            v = v.sub_ref(&neg_u.pow(g.degree as i32).expect("u is nonzero"));
        }
        v
    });
    let rhs = crate::partitions::evaluation_product(lambda, m as i64, l);
    Ok((lhs, rhs))
}

/// The evaluation formula for every empty-core partition up to `max_size`
/// and every residue.
pub fn evaluation_check(l: usize, max_size: usize) -> Result<Report> {
    let mut report = Report::new("eval-all")
        .param("l", l)
        .param("max_size", max_size);
    let mut cases = Vec::new();
    for size in 0..=max_size {
        for lam in empty_core_partitions(size, l)? {
            for m in 0..l {
                cases.push((lam.clone(), m));
            }
        }
    }
    let lams: Vec<Partition> = cases.iter().map(|c| c.0.clone()).collect();
    wreath_records(&lams, l)?;
    let results = par::try_map(Execution::current(), &cases, |(lam, m)| {
        evaluate_h(lam, l, *m)
    })?;
    for ((lam, m), (lhs, rhs)) in cases.iter().zip(results) {
        report.record(
            (!lhs.field_eq(&rhs)).then(|| json!({"lambda": lam, "m": m, "lhs": lhs, "rhs": rhs})),
        );
    }
    Ok(report.finish())
}

/// `prod_{(a,b) in lambda', a-b = m mod l} (1 + u t1^(1-a) t2^(1-b))`
fn transposed_descendant(lambda: &Partition, m: usize, l: usize) -> FieldElem {
    let lt = lambda.transpose();
    let mut acc = FieldElem::one();
    for (a, b) in lt.boxes() {
        if (a as i64 - b as i64).rem_euclid(l as i64) as usize != m {
            continue;
        }
        let t = FieldElem::laurent([1 - a as i32, 1 - b as i32, 0, 1, 0], 1);
        acc = acc.mul_ref(&FieldElem::one().add_ref(&t));
    }
    acc
}

/// Generating-function form of the evaluation formula through degree `D`.
pub fn classical_generating_check(l: usize, m: usize, d: usize) -> Result<Report> {
    check_residue(m, l)?;
    let mut report = Report::new("classical")
        .param("l", l)
        .param("m", m)
        .param("degree", d);
    let lams = with_core_up_to(&Partition::empty(), l, d)?;
    wreath_records(&lams, l)?;
    let terms = par::try_map(Execution::current(), &lams, |lam| -> Result<MultiSym> {
        let rec = wreath_macdonald(lam, l)?;
        let c = transposed_descendant(lam, m, l).try_div(&rec.norm)?;
        Ok(rec.h.scale(&c))
    })?;
    let lhs = terms.iter().fold(MultiSym::zero(l), |acc, t| acc.plus(t));
    let neg_u = FieldElem::var(Var::U).neg_ref();
    let rhs = kernel_exp(l, d, |i, n| {
        let c0 = c_coeff(l, i, 0, n)?.value;
        let cm = c_coeff(l, i, m, n)?.value;
        Ok(c0
            .sub_ref(&cm.mul_ref(&neg_u.pow(n as i32)?))
            .mul_ref(&cauchy_denominator(l, n)))
    })?;
    compare(&mut report, "classical", &lhs, &rhs);
    Ok(report.finish())
}
