use serde_json::{json, Value};
use wreathmac::exactalg::{parse, FieldElem, Var};
use wreathmac::multisym::{to_basis, Basis, BasisLabel};
use wreathmac::partitions::{enumerate, Partition};
use wreathmac::report::Report;
use wreathmac::vertex::{self, Route};
use wreathmac::wreath::{self, OutputBasis, SolveOptions};
use wreathmac::Error;

use crate::args::{BasisArg, Check, Cli, Command, Format, Global, RouteArg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one command: exit code plus what goes to each stream.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

fn error_outcome(e: Error) -> Outcome {
    let code = match e {
        Error::UnsupportedCore { .. }
        | Error::ResidueOutOfRange { .. }
        | Error::InvalidModulus(_)
        | Error::NotCore { .. }
        | Error::Parse { .. }
        | Error::ModulusMismatch(..) => EXIT_USAGE,
        _ => EXIT_FAIL,
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {e}"),
    }
}

fn emit(format: Format, value: &Value, text: String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => text + "\n",
    }
}

fn show(g: &Global, x: &FieldElem) -> FieldElem {
    if g.geometric {
        x.reduce_geometric()
    } else {
        x.clone()
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    if let Command::Batch { manifest } = &cli.command {
        return crate::batch::run(manifest, &cli.global);
    }
    match dispatch(&cli.command, &cli.global) {
        Ok(o) => o,
        Err(e) => error_outcome(e),
    }
}

fn check_l(l: usize) -> Result<(), Error> {
    if l == 0 {
        return Err(Error::InvalidModulus(0));
    }
    Ok(())
}

fn dispatch(cmd: &Command, g: &Global) -> Result<Outcome, Error> {
    match cmd {
        Command::Hpoly { target, basis } => {
            check_l(target.l)?;
            let opts = SolveOptions { rotate: g.rotate };
            let rec = wreath::wreath_macdonald_with(&target.lambda, target.l, opts)?;
            let out_basis = match basis {
                BasisArg::P => OutputBasis::PowerSum,
                BasisArg::Schur => OutputBasis::Schur,
                BasisArg::Vecschur => OutputBasis::VecSchur,
            };
            let value = rec.to_json(out_basis)?;
            let text = hpoly_text(&rec, *basis, g)?;
            Ok(Outcome::ok(emit(g.format, &value, text)))
        }
        Command::Norm { target } => {
            check_l(target.l)?;
            let n = show(g, &wreath::norm(&target.lambda, target.l));
            let value = json!({"l": target.l, "lambda": target.lambda, "norm": n});
            Ok(Outcome::ok(emit(g.format, &value, n.to_string())))
        }
        Command::Vertex {
            target,
            route,
            w,
            z,
        } => {
            check_l(target.l)?;
            let binding = match (w, z) {
                (Some(w), _) => Some(parse(w)?),
                (None, Some(z)) => {
                    let zs: Vec<&str> = z.split(',').collect();
                    if zs.len() != target.l {
                        return Ok(Outcome::usage(format!(
                            "--z needs {} values, got {}",
                            target.l,
                            zs.len()
                        )));
                    }
                    let mut prod = FieldElem::one();
                    for s in zs {
                        prod = prod.mul_ref(&parse(s)?);
                    }
                    Some(prod)
                }
                (None, None) => None,
            };
            let (pairing, agree) = vertex::capped_vertex_both(&target.lambda, target.l)?;
            let mut res = match route {
                RouteArg::Specialization => {
                    vertex::capped_vertex(&target.lambda, target.l, Route::Specialization)?
                }
                _ => pairing,
            };
            if let Some(b) = binding {
                res.value = res.value.subst(&[(Var::W, b.clone())])?;
                res.classical = res.classical.subst(&[(Var::W, b)])?;
            }
            res.value = show(g, &res.value);
            res.classical = show(g, &res.classical);
            let value = res.to_json(agree);
            let mut o = Outcome::ok(emit(g.format, &value, res.value.to_string()));
            if !agree {
                o.code = EXIT_FAIL;
                o.stderr = "pairing and specialization routes disagree".into();
            }
            Ok(o)
        }
        Command::Eval { target, m } => {
            check_l(target.l)?;
            let (lhs, rhs) = wreath::evaluate_h(&target.lambda, target.l, *m)?;
            let equal = lhs.field_eq(&rhs);
            let (lhs, rhs) = (show(g, &lhs), show(g, &rhs));
            let value = json!({
                "l": target.l, "lambda": target.lambda, "m": m,
                "lhs": lhs, "rhs": rhs, "equal": equal,
            });
            let mut o = Outcome::ok(emit(g.format, &value, lhs.to_string()));
            if !equal {
                o.code = EXIT_FAIL;
            }
            Ok(o)
        }
        Command::Verify {
            check,
            l,
            degree,
            m,
            core,
            lambda,
        } => {
            check_l(*l)?;
            let report = run_check(*check, *l, *degree, *m, core, lambda.as_ref(), g)?;
            Ok(report_outcome(report, g.format))
        }
        Command::Batch { .. } => Ok(Outcome::usage("batch manifests cannot nest")),
    }
}

fn run_check(
    check: Check,
    l: usize,
    d: usize,
    m: usize,
    core: &Partition,
    lambda: Option<&Partition>,
    g: &Global,
) -> Result<Report, Error> {
    let empty = Partition::empty();
    Ok(match check {
        Check::Cauchy => {
            let mut r = Report::new("cauchy")
                .param("l", l)
                .param("degree", d)
                .param("core", core.to_string());
            r.absorb(wreath::schur_cauchy_check(l, core, d)?);
            r.absorb(wreath::wreath_cauchy_check(l, core, d)?);
            r.finish()
        }
        Check::Orthogonality => {
            let mut r = Report::new("orthogonality")
                .param("l", l)
                .param("degree", d);
            for k in 0..=d {
                r.absorb(wreath::verify_orthogonality(l, k * l)?);
            }
            r.finish()
        }
        Check::Classical => wreath::classical_generating_check(l, m, d)?,
        Check::Abrr => vertex::verify_abrr(l, d)?,
        Check::Derivation => vertex::verify_derivation(l, d)?,
        Check::EvalAll => wreath::evaluation_check(l, d * l)?,
        Check::Axioms => {
            let mut r = Report::new("axioms").param("l", l).param("degree", d);
            let opts = SolveOptions { rotate: g.rotate };
            for k in 0..=d {
                for lam in enumerate(k * l, l, &empty)? {
                    let rec = wreath::wreath_macdonald_with(&lam, l, opts)?;
                    r.absorb(wreath::verify_axioms(&rec)?);
                }
            }
            r.finish()
        }
        Check::Vertex => match lambda {
            Some(lam) => vertex::verify_vertex(lam, l)?,
            None => {
                let mut r = Report::new("vertex").param("l", l).param("degree", d);
                for k in 1..=d {
                    for lam in enumerate(k * l, l, &empty)? {
                        r.absorb(vertex::verify_vertex(&lam, l)?);
                    }
                }
                r.finish()
            }
        },
        Check::SyntheticFail => {
            let mut r = Report::new("synthetic-fail").param("l", l);
            r.fail(json!({"reason": "negative control"}));
            r.finish()
        }
    })
}

pub fn report_text(r: &Report) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut s = format!(
        "{} {} {} compared={}",
        if r.passed() { "PASS" } else { "FAIL" },
        r.check,
        params.join(" "),
        r.compared
    );
    for f in &r.failures {
        s.push_str(&format!("\n  failure: {f}"));
    }
    s
}

fn report_outcome(r: Report, format: Format) -> Outcome {
    let value = serde_json::to_value(&r).expect("serializable");
    Outcome {
        code: if r.passed() { EXIT_OK } else { EXIT_FAIL },
        stdout: emit(format, &value, report_text(&r)),
        stderr: format!("{} took {:.3?}", r.check, r.wall_time),
    }
}

fn label_text(label: &BasisLabel) -> String {
    match label {
        BasisLabel::Power(m) if m.is_empty() => "1".into(),
        BasisLabel::Power(m) => m
            .iter()
            .map(|(a, c, n)| format!("p{a}{c}_{n}"))
            .collect::<Vec<_>>()
            .join("*"),
        BasisLabel::MultiSchur(t) => {
            let parts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
            format!("s({})", parts.join("|"))
        }
        BasisLabel::VecSchur(p) => format!("vs({p})"),
    }
}

fn hpoly_text(rec: &wreath::WreathRecord, basis: BasisArg, g: &Global) -> Result<String, Error> {
    let expansion = match basis {
        BasisArg::P => to_basis(&rec.h, &Basis::PowerSum)?,
        BasisArg::Schur => to_basis(&rec.h, &Basis::MultiSchur)?,
        BasisArg::Vecschur => rec
            .coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (BasisLabel::VecSchur(p.clone()), c.clone()))
            .collect(),
    };
    Ok(expansion
        .iter()
        .map(|(label, c)| format!("{}\t{}", label_text(label), show(g, c)))
        .collect::<Vec<_>>()
        .join("\n"))
}
