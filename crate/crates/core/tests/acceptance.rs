//! Acceptance suite: one pass/fail line per criterion, exact comparisons
//! throughout. Exits nonzero if any criterion fails.

mod common;

use std::time::Instant;

use wreathmac::partitions::{core_quot, enumerate, from_core_quot, part, partitions_of, Partition};
use wreathmac::report::Report;
use wreathmac::vertex::{capped_vertex_both, verify_abrr, verify_derivation, verify_vertex};
use wreathmac::wreath::{
    classical_generating_check, evaluation_check, schur_cauchy_check, verify_axioms,
    verify_orthogonality, wreath_cauchy_check, wreath_macdonald, wreath_records,
};
use wreathmac::Result;

fn empty_core_up_to(l: usize, max: usize) -> Vec<Partition> {
    (0..=max)
        .flat_map(|n| enumerate(n, l, &Partition::empty()).unwrap())
        .collect()
}

fn axioms() -> Result<Report> {
    let mut r = Report::new("defining axioms");
    for (l, max) in [(1, 3), (2, 6), (3, 6)] {
        let lams = empty_core_up_to(l, max);
        for rec in wreath_records(&lams, l)? {
            r.absorb(verify_axioms(&rec)?);
        }
    }
    Ok(r)
}

fn oracle() -> Result<Report> {
    let mut r = Report::new("one-color oracle");
    for n in 1..=4 {
        for (lam, want) in common::modified_macdonald(n) {
            let got = wreath_macdonald(&lam, 1)?;
            r.record((!got.h.field_eq(&want)).then(|| serde_json::json!({"lambda": lam})));
        }
    }
    Ok(r)
}

fn orthogonality() -> Result<Report> {
    let mut r = Report::new("orthogonality and norms");
    for l in 1..=3 {
        for size in 0..=3 * l {
            r.absorb(verify_orthogonality(l, size)?);
        }
    }
    Ok(r)
}

fn cauchy() -> Result<Report> {
    let mut r = Report::new("cauchy kernels");
    for l in 1..=3 {
        let mut cores = vec![Partition::empty()];
        if l > 1 {
            cores.push(part("1"));
        }
        for core in &cores {
            r.absorb(schur_cauchy_check(l, core, 2)?);
            r.absorb(wreath_cauchy_check(l, core, 2)?);
        }
    }
    Ok(r)
}

fn evaluation() -> Result<Report> {
    let mut r = Report::new("evaluation formula");
    for l in 1..=3 {
        r.absorb(evaluation_check(l, 3 * l)?);
    }
    for l in 1..=2 {
        for m in 0..l {
            r.absorb(classical_generating_check(l, m, 2)?);
        }
    }
    Ok(r)
}

fn main_theorem() -> Result<Report> {
    let mut r = Report::new("main theorem");
    for l in 1..=2 {
        for size in [l, 2 * l] {
            for lam in enumerate(size, l, &Partition::empty())? {
                r.absorb(verify_vertex(&lam, l)?);
            }
        }
    }
    let (v, agree) = capped_vertex_both(&part("1"), 1)?;
    let want = common::fe("(h*(1+u)+w*(1+h^2*u))/(h+w)");
    r.record((!agree || !v.value.field_eq(&want)).then(|| serde_json::json!({"value": v.value})));
    Ok(r)
}

fn operators() -> Result<Report> {
    let mut r = Report::new("operator identities");
    for l in 1..=2 {
        for d in 0..=2 {
            r.absorb(verify_abrr(l, d)?);
            r.absorb(verify_derivation(l, d)?);
        }
    }
    Ok(r)
}

fn bijections() -> Result<Report> {
    let mut r = Report::new("combinatorial bijections");
    for n in 0..=10 {
        for lam in partitions_of(n) {
            let m = lam.maya();
            let ok = m.charge() == 0 && m.to_partition()? == lam;
            r.record((!ok).then(|| serde_json::json!({"maya": lam})));
            for l in 2..=4 {
                let cq = core_quot(&lam, l)?;
                let back = from_core_quot(&cq.core, &cq.quotient, l)?;
                let ok = back == lam && cq.core.size() + l * cq.quotient_size() == n;
                r.record((!ok).then(|| serde_json::json!({"core_quot": lam, "l": l})));
            }
        }
    }
    let cq = core_quot(&part("3,2,2,1,1,1"), 3)?;
    let quot: Vec<String> = cq.quotient.iter().map(|q| format!("({q})")).collect();
    let got = format!("{} {}", cq.core, quot.join(""));
    r.record((got != "3,1 ()()(1,1)").then(|| serde_json::json!({"example": got})));
    Ok(r)
}

fn main() {
    type Criterion = (&'static str, fn() -> Result<Report>);
    let criteria: [Criterion; 8] = [
        ("defining axioms, l<=3, |lambda|<=3l (6 at l=3)", axioms),
        ("l=1 oracle, |lambda|<=4", oracle),
        ("orthogonality and norms, |lambda|<=3l, l<=3", orthogonality),
        ("Schur and wreath Cauchy kernels to bidegree (2,2)", cauchy),
        ("evaluation formula and its generating function", evaluation),
        (
            "capped vertex: routes agree, classical limit, single box",
            main_theorem,
        ),
        ("ABRR and derivation identities, l<=2, D<=2", operators),
        ("Maya and core-quotient bijections", bijections),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) if r.passed() => (true, format!("{} comparisons", r.compared)),
            Ok(r) => (
                false,
                format!(
                    "{} of {} failed; first: {}",
                    r.failures.len(),
                    r.compared,
                    r.failures[0]
                ),
            ),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name} ({detail})",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        eprintln!("criterion {} took {:.1?}", i + 1, start.elapsed());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
