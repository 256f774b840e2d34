use serde_json::{json, Value};

use ppa::catalog::{build, draw_params, Family};
use ppa::cauchon::{
    gk_normalize, verify_eq_3_2, verify_lemma_3_6, verify_round_trip, verify_theta_poisson, DeletionContext,
    GkOptions, IdentityReport,
};
use ppa::exactalg::{format_rational, parse_rational};
use ppa::format::{gk_result_json, integer_matrix_json, params_json, quadratic_json, rational_json, spec_to_doc};
use ppa::poisson::{center_lattice, ppa_to_table, verify_jacobi, verify_step_condition, IteratedPPASpec, QuadraticSpec};
use ppa::skewfields::{
    decide_iso_2x2, decide_iso_case_b, orbit_membership_bounded, witness_isomorphism, OrbitVerdict, SkewMatrix,
};
use ppa::torus::{derive_s, enumerate_variable_hstable, verify_thm17, TorusData};
use ppa::{Error, LaurentPolynomial, Result};

use crate::output::Emitter;
use crate::{input, Cli, Command, IsoMode, Source};

/// 1 for a failed mathematical check, 2 for unusable input.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::MalformedSpec(_)
        | Error::Shape(_)
        | Error::ArityMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::InvalidParameters(_)
        | Error::LaurentInput { .. } => 2,
        _ => 1,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Catalog { .. } => "catalog",
        Command::Verify(_) => "verify",
        Command::Gk { .. } => "gk",
        Command::Theta { .. } => "theta",
        Command::Hstable(_) => "hstable",
        Command::Iso { .. } => "iso",
        Command::Center { .. } => "center",
    }
}

pub fn dispatch(cli: &Cli, out: &mut Emitter) -> u8 {
    let config = json!({ "seed": cli.seed, "draws": cli.draws, "cutoff": cli.cutoff, "budget": cli.budget });
    out.header(command_name(&cli.command), config);
    let result = match &cli.command {
        Command::Catalog { family, n, params } => catalog(cli, out, *family, *n, params.as_deref()),
        Command::Verify(src) => verify(cli, out, src),
        Command::Gk { source, strategy, certify } => gk(cli, out, source, (*strategy).into(), *certify),
        Command::Theta { spec, step, s, apply } => theta(cli, out, spec, *step, s.as_deref(), apply.as_deref()),
        Command::Hstable(src) => hstable(cli, out, src),
        Command::Iso { lambda, mu, mode } => iso(cli, out, lambda, mu, *mode),
        Command::Center { lambda } => center(out, lambda),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let code = error_code(&e);
            let kind = if code == 2 { "input" } else { "hypothesis" };
            if out.format() == crate::output::Format::Human {
                eprintln!("error: {e}");
            } else {
                out.record("error", json!({ "kind": kind, "message": e.to_string() }), String::new);
            }
            code
        }
    }
}

struct Instance {
    label: String,
    spec: IteratedPPASpec,
    torus: Option<TorusData>,
    expected: Option<QuadraticSpec>,
}

fn instances(cli: &Cli, src: &Source) -> Result<Vec<Instance>> {
    if let Some(path) = &src.spec {
        let (spec, torus) = input::algebra(path)?;
        return Ok(vec![Instance { label: path.display().to_string(), spec, torus, expected: None }]);
    }
    let family = src.family.expect("clap requires a spec or a family");
    let n = src.n.expect("clap requires --n with --family");
    draw_params(family, n, cli.seed, cli.draws)?
        .into_iter()
        .enumerate()
        .map(|(k, params)| {
            let inst = build(&params)?;
            Ok(Instance {
                label: format!("{family} n={n} draw {}", k + 1),
                spec: inst.spec,
                torus: Some(inst.torus),
                expected: Some(inst.expected_lambda),
            })
        })
        .collect()
}

fn show(p: &LaurentPolynomial, spec: &IteratedPPASpec) -> String {
    p.display_with(spec.names())
}

fn catalog(cli: &Cli, out: &mut Emitter, family: Family, n: usize, params: Option<&std::path::Path>) -> Result<bool> {
    let params = match params {
        Some(path) => {
            let p = input::params(path)?;
            if p.family() != family || p.n() != n {
                return Err(Error::InvalidParameters(format!(
                    "parameter file describes {} n={}, not {family} n={n}",
                    p.family(),
                    p.n()
                )));
            }
            p
        }
        None => draw_params(family, n, cli.seed, 1)?.remove(0),
    };
    let inst = build(&params)?;
    let doc = serde_json::to_value(spec_to_doc(&inst.spec, Some(&inst.torus))).expect("plain data serializes");
    let human = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    out.record(
        "algebra",
        json!({
            "family": family.name(),
            "n": n,
            "params": params_json(&params),
            "document": doc,
            "expected_lambda": quadratic_json(&inst.expected_lambda),
        }),
        || human,
    );
    Ok(true)
}

fn verify(cli: &Cli, out: &mut Emitter, src: &Source) -> Result<bool> {
    let mut all = true;
    for inst in instances(cli, src)? {
        let spec = &inst.spec;
        let names = spec.names();
        let jac = verify_jacobi(&ppa_to_table(spec));
        all &= jac.passed();
        let failures: Vec<Value> = jac
            .failures
            .iter()
            .map(|f| {
                let (i, j, k) = f.triple;
                json!({ "triple": [names[i], names[j], names[k]], "jacobiator": show(&f.jacobiator, spec) })
            })
            .collect();
        out.record(
            "jacobi",
            json!({ "instance": inst.label, "triples": jac.triples_checked, "passed": jac.passed(), "failures": failures }),
            || format!("{}: {}", inst.label, jac),
        );
        for i in 1..spec.n() {
            let rep = verify_step_condition(spec, i)?;
            all &= rep.passed();
            let failures: Vec<Value> = rep
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "check": f.check.to_string(),
                        "a": names[f.a],
                        "b": f.b.map(|b| names[b].clone()),
                        "lhs": show(&f.lhs, spec),
                        "rhs": show(&f.rhs, spec),
                    })
                })
                .collect();
            out.record(
                "step",
                json!({
                    "instance": inst.label,
                    "step": i + 1,
                    "identities": rep.identities_checked,
                    "passed": rep.passed(),
                    "failures": failures,
                }),
                || format!("{}: {}", inst.label, rep),
            );
        }
        if let Some(td) = &inst.torus {
            let rep = verify_thm17(spec, td)?;
            // eigenvalue vanishing only voids the bound; mismatches are errors
            let graded = rep.eta_mismatches.is_empty() && rep.grading_failures.is_empty();
            all &= graded;
            let shifts = if rep.passed() { Some(derive_s(spec, td)?) } else { None };
            out.record(
                "torus",
                json!({
                    "instance": inst.label,
                    "graded": graded,
                    "bound_applies": rep.passed(),
                    "bound": rep.bound.to_string(),
                    "eigenvalues": rep.eigenvalues.iter().map(|e| e.as_ref().map(rational_json)).collect::<Vec<_>>(),
                    "eta_mismatches": rep.eta_mismatches.iter().map(|m| json!({
                        "step": m.step + 1,
                        "generator": names[m.generator],
                        "alpha": show(&m.alpha, spec),
                        "eta_action": show(&m.eta_action, spec),
                    })).collect::<Vec<_>>(),
                    "grading_failures": rep.grading_failures.iter().map(|g| json!({
                        "step": g.step + 1,
                        "generator": names[g.generator],
                        "map": g.map,
                        "value": show(&g.value, spec),
                        "expected_weight": g.expected_weight,
                    })).collect::<Vec<_>>(),
                    "shifts": shifts.as_ref().map(|v| v.iter().map(|s| s.as_ref().map(rational_json)).collect::<Vec<_>>()),
                }),
                || format!("{}: {}", inst.label, rep),
            );
        }
    }
    Ok(all)
}

fn gk(cli: &Cli, out: &mut Emitter, src: &Source, strategy: ppa::cauchon::Case3Strategy, certify: bool) -> Result<bool> {
    let mut all = true;
    for inst in instances(cli, src)? {
        let opts = GkOptions { cutoff: cli.cutoff, strategy, certify, torus: inst.torus.clone() };
        let r = gk_normalize(&inst.spec, &opts)?;
        let matches = inst.expected.as_ref().map(|e| *e == r.lambda_out);
        all &= r.certified() && matches != Some(false);
        let mut fields = gk_result_json(&r);
        fields["instance"] = json!(inst.label);
        fields["matches_expected"] = json!(matches);
        out.record("gk", fields, || {
            let mut s = format!("{}:\n{}", inst.label, r);
            if let Some(m) = matches {
                s.push_str(&format!("\nmatches expected output: {m}"));
            }
            s
        });
    }
    Ok(all)
}

fn identity_record(out: &mut Emitter, spec: &IteratedPPASpec, args: &[&str], rep: &IdentityReport) -> bool {
    let passed = rep.passed();
    out.record(
        "identity",
        json!({
            "identity": rep.identity,
            "arguments": args,
            "passed": passed,
            "lhs": show(&rep.lhs, spec),
            "rhs": show(&rep.rhs, spec),
        }),
        || {
            let verdict = if passed { "holds" } else { "FAILS" };
            format!("[{}] {} {verdict}: {} vs {}", args.join(", "), rep.identity, show(&rep.lhs, spec), show(&rep.rhs, spec))
        },
    );
    passed
}

fn theta(
    cli: &Cli,
    out: &mut Emitter,
    path: &std::path::Path,
    step: usize,
    s: Option<&str>,
    apply: Option<&std::path::Path>,
) -> Result<bool> {
    let (spec, torus) = input::algebra(path)?;
    let n = spec.n();
    if step < 2 || step > n {
        return Err(Error::InvalidParameters(format!("step must lie in 2..={n}")));
    }
    let top = step - 1;
    let s = match (s, spec.s(top), &torus) {
        (Some(text), _, _) => parse_rational(text)?,
        (None, Some(v), _) => v.clone(),
        (None, None, Some(td)) => derive_s(&spec, td)?[top].clone().ok_or_else(|| Error::MissingShift {
            step,
            reason: "the torus does not determine s here".into(),
        })?,
        (None, None, None) => {
            return Err(Error::MissingShift { step, reason: "pass --s or supply s or torus data in the spec".into() })
        }
    };
    let ctx = DeletionContext::new(&spec, top, s.clone(), cli.cutoff)?;
    let names = spec.names();
    out.record("context", json!({ "step": step, "generator": names[top], "s": format_rational(&s) }), || {
        format!("deleting the derivation of {} with s = {}", names[top], format_rational(&s))
    });
    let gens: Vec<LaurentPolynomial> = (0..n).map(|j| LaurentPolynomial::var(n, j)).collect();
    for j in 0..top {
        let image = ctx.theta(&gens[j])?;
        let inverse = ctx.theta_inverse(&gens[j])?;
        out.record(
            "theta",
            json!({ "generator": names[j], "image": show(&image, &spec), "inverse": show(&inverse, &spec) }),
            || format!("theta({}) = {}; theta^-1({}) = {}", names[j], show(&image, &spec), names[j], show(&inverse, &spec)),
        );
    }
    let mut all = true;
    for j in 0..top {
        all &= identity_record(out, &spec, &[&names[j]], &verify_eq_3_2(&ctx, &gens[j])?);
        for rep in verify_round_trip(&ctx, &gens[j])? {
            all &= identity_record(out, &spec, &[&names[j]], &rep);
        }
        for k in j + 1..top {
            all &= identity_record(out, &spec, &[&names[j], &names[k]], &verify_theta_poisson(&ctx, &gens[j], &gens[k])?);
            for power in 1..=2 {
                let rep = verify_lemma_3_6(&ctx, &gens[j], &gens[k], power)?;
                let p = power.to_string();
                all &= identity_record(out, &spec, &[&names[j], &names[k], &p], &rep);
            }
        }
    }
    if let Some(p) = apply {
        let f = input::laurent(p, n)?;
        let image = ctx.theta(&f)?;
        out.record("apply", json!({ "input": show(&f, &spec), "image": show(&image, &spec) }), || {
            format!("theta({}) = {}", show(&f, &spec), show(&image, &spec))
        });
    }
    Ok(all)
}

fn hstable(cli: &Cli, out: &mut Emitter, src: &Source) -> Result<bool> {
    let mut all = true;
    for inst in instances(cli, src)? {
        let spec = &inst.spec;
        let subsets = enumerate_variable_hstable(&ppa_to_table(spec))?;
        let named: Vec<Vec<&str>> =
            subsets.iter().map(|s| s.iter().map(|&j| spec.names()[j].as_str()).collect()).collect();
        let bound = match &inst.torus {
            Some(td) => {
                let rep = verify_thm17(spec, td)?;
                rep.passed().then_some(rep.bound)
            }
            None => None,
        };
        let within = bound.as_ref().is_none_or(|b| num_bigint::BigUint::from(subsets.len()) <= *b);
        all &= within;
        out.record(
            "hstable",
            json!({
                "instance": inst.label,
                "count": subsets.len(),
                "bound": bound.as_ref().map(ToString::to_string),
                "within_bound": within,
                "subsets": named,
            }),
            || {
                let b = bound.as_ref().map_or("none".to_string(), ToString::to_string);
                let mut s = format!("{}: {} variable ideals (bound {b})", inst.label, subsets.len());
                for set in &named {
                    s.push_str(&format!("\n  <{}>", set.join(", ")));
                }
                s
            },
        );
    }
    Ok(all)
}

fn skew_json(m: &SkewMatrix) -> Value {
    serde_json::to_value(ppa::format::skew_to_doc(m)).expect("plain data serializes")
}

fn iso(cli: &Cli, out: &mut Emitter, lp: &std::path::Path, mp: &std::path::Path, mode: IsoMode) -> Result<bool> {
    let lam = input::skew(lp)?;
    let mu = input::skew(mp)?;
    if lam.n() != mu.n() {
        out.record("iso", json!({ "verdict": "no", "method": "dimension", "witness": null, "reason": "different numbers of variables" }), || {
            "verdict: no (different numbers of variables)".into()
        });
        return Ok(true);
    }
    let mut ok = true;
    let (verdict, method, witness, reason) = match mode {
        IsoMode::TwoByTwo => {
            let v = decide_iso_2x2(&lam, &mu)?;
            (if v { "yes" } else { "no" }, "two-variable", None, "lambda_12 compared with +-mu_12".to_string())
        }
        IsoMode::CaseB => {
            let d = decide_iso_case_b(&lam, &mu)?;
            (if d.verdict { "yes" } else { "no" }, "cyclic", d.witness, d.reason)
        }
        IsoMode::Orbit => orbit(cli, &lam, &mu)?,
        IsoMode::Auto => match decide_iso_case_b(&lam, &mu) {
            Ok(d) => {
                if lam.n() == 2 && decide_iso_2x2(&lam, &mu)? != d.verdict {
                    ok = false;
                }
                (if d.verdict { "yes" } else { "no" }, "cyclic", d.witness, d.reason)
            }
            Err(Error::Hypothesis(_)) => orbit(cli, &lam, &mu)?,
            Err(e) => return Err(e),
        },
    };
    let check = witness.as_ref().map(|a| witness_isomorphism(a, &lam, cli.seed)).transpose()?;
    if let Some(c) = &check {
        ok &= c.passed() && c.mu == mu;
    }
    out.record(
        "iso",
        json!({
            "verdict": verdict,
            "method": method,
            "reason": reason,
            "witness": witness.as_ref().map(integer_matrix_json),
            "bracket_check": check.as_ref().map(|c| c.passed()),
            "lambda": skew_json(&lam),
            "mu": skew_json(&mu),
        }),
        || {
            let mut s = format!("verdict: {verdict} ({method}: {reason})");
            if let Some(a) = &witness {
                s.push_str(&format!("\nwitness A = {a}"));
            }
            s
        },
    );
    Ok(ok)
}

type Decision = (&'static str, &'static str, Option<ppa::IntegerMatrix>, String);

fn orbit(cli: &Cli, lam: &SkewMatrix, mu: &SkewMatrix) -> Result<Decision> {
    let search = orbit_membership_bounded(lam, mu, cli.budget)?;
    Ok(match search.verdict {
        OrbitVerdict::Member(a) if a.is_unimodular() => {
            ("yes", "orbit-search", Some(a), format!("unimodular witness after {} candidates", search.candidates_examined))
        }
        OrbitVerdict::Member(a) => (
            "undecided",
            "orbit-search",
            None,
            format!("only a non-unimodular integer matrix {a} was found within budget {}", cli.budget),
        ),
        OrbitVerdict::NotFoundWithinBudget => match search.obstruction {
            Some(why) => ("no", "orbit-obstruction", None, why),
            None => ("undecided", "orbit-search", None, format!("no witness within budget {}", cli.budget)),
        },
    })
}

fn center(out: &mut Emitter, path: &std::path::Path) -> Result<bool> {
    let lam = input::skew(path)?;
    let q = lam
        .as_quadratic()
        .ok_or_else(|| Error::InvalidParameters("the central lattice needs rational entries".into()))?;
    let lattice = center_lattice(&q);
    let basis: Vec<Vec<Value>> =
        lattice.basis().iter().map(|r| r.iter().map(ppa::format::integer_json).collect()).collect();
    out.record("center", json!({ "rank": lattice.rank(), "basis": basis }), || {
        format!("central monomial exponents: {lattice} (rank {})", lattice.rank())
    });
    Ok(true)
}
