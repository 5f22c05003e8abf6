//! Executes the commands of an elaborated document in order.

use serde_json::{json, Map, Value};

use pact_core::algebra::Algebra;
use pact_core::crossed::{associativity_via_condition_x, is_graded, CrossedProduct};
use pact_core::envelope::{
    build_enveloping, check_alpha_identity, compare_envelopings, embed_crossed, has_enveloping, morita_context,
    verify_enveloping,
};
use pact_core::error::PactError;
use pact_core::group::Group;
use pact_core::linalg::sub;
use pact_core::multiplier::MultiplierAlgebra;
use pact_core::paction::ConditionXWitness;
use pact_core::preps::elementary::{elementary_grading, elementary_rep, iso_bis};
use pact_core::preps::semigroup::{agrees_with_pair_model, kpar_iso, PresentedMonoid, ORACLE_MAX_ORDER};
use pact_core::preps::InjectivityVerdict;

use crate::ast::*;
use crate::elaborate::{elaborate, Env};
use crate::element::crossed_element;
use crate::error::{CliError, Result};
use crate::print::print_decl_line;
use crate::report::{CommandResult, Report, Status};

/// Node budget for the presented-monoid oracle.
const ORACLE_NODES: usize = 100_000;

/// Elaborates and runs; parse and name errors abort, command failures are
/// recorded in the report.
pub fn run(doc: &SpecDocument) -> Result<Report> {
    let env = elaborate(doc)?;
    let mut report = Report::default();
    for (cmd, pos) in doc.commands() {
        let text = print_decl_line(&Decl::Command(cmd.clone()));
        let result = match execute(&env, cmd) {
            Ok(data) => {
                let failures = check_expectations(cmd, &data);
                let status = if failures.is_empty() { Status::Ok } else { Status::Violated };
                CommandResult { line: pos.line, command: text, status, failures, data }
            }
            Err(e) => CommandResult {
                line: pos.line,
                command: text,
                status: Status::Error,
                failures: vec![e.to_string()],
                data: Map::new(),
            },
        };
        report.results.push(result);
    }
    Ok(report)
}

fn check_expectations(cmd: &Command, data: &Map<String, Value>) -> Vec<String> {
    cmd.expect
        .iter()
        .filter_map(|x| {
            let want: Value = serde_json::from_str(x.value.as_str()).expect("checked during elaboration");
            match data.get(x.key.as_str()) {
                Some(got) if *got == want => None,
                Some(got) => Some(format!("expected {}={want}, got {got}", x.key.as_str())),
                None => Some(format!("expected {}={want}, but the result has no `{}`", x.key.as_str(), x.key.as_str())),
            }
        })
        .collect()
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("results are objects"),
    }
}

fn core(pos: Pos) -> impl Fn(PactError) -> CliError {
    move |e| CliError::semantic(pos, e.to_string())
}

fn execute(env: &Env, cmd: &Command) -> Result<Map<String, Value>> {
    match (&cmd.verb, &cmd.args) {
        (Verb::Verify, CommandArgs::Action(a)) => {
            let pa = &env.action(a)?.action;
            let report = pa.verify();
            let grp = pa.group();
            let violations: Vec<String> = report
                .violations
                .iter()
                .map(|v| match v.h {
                    Some(h) => format!("{} at ({}, {}): {}", v.condition, grp.label(v.g), grp.label(h), v.detail),
                    None => format!("{} at {}: {}", v.condition, grp.label(v.g), v.detail),
                })
                .collect();
            Ok(obj(json!({
                "valid": report.is_valid(),
                "condition_ii": report.condition_ii,
                "condition_ii_prime": report.condition_ii_prime,
                "violations": violations,
            })))
        }
        (Verb::Crossed, CommandArgs::Action(a)) => {
            let pa = &env.action(a)?.action;
            let cp = CrossedProduct::build(pa).map_err(core(a.pos))?;
            let blocks: Vec<Value> =
                pa.group().elements().map(|g| json!([pa.group().label(g), cp.block(g).len()])).collect();
            Ok(obj(json!({
                "dim": cp.dim(),
                "basis": cp.labels(),
                "blocks": blocks,
                "graded": is_graded(&cp),
            })))
        }
        (Verb::Assoc, CommandArgs::Assoc { action, power }) => {
            let pa = &env.action(action)?.action;
            let cp = CrossedProduct::build(pa).map_err(core(action.pos))?;
            let witness = cp.associativity_witness();
            let local = associativity_via_condition_x(pa).map_err(core(action.pos))?;
            let mut out = obj(json!({
                "associative": witness.is_none(),
                "witness": witness.map(|(i, j, k)| {
                    let l = cp.labels();
                    json!([l[i], l[j], l[k]])
                }),
                "associator": witness.map(|(i, j, k)| {
                    let (x, y, z) = (cp.basis(i), cp.basis(j), cp.basis(k));
                    cp.format(&sub(&cp.mul(&cp.mul(&x, &y), &z), &cp.mul(&x, &cp.mul(&y, &z))))
                }),
                "via_condition_x": local.is_none(),
                "condition_x_fails_at": local.as_ref().map(|(g, _)| pa.group().label(*g).to_string()),
            }));
            out.insert("agree".into(), json!(witness.is_none() == local.is_none()));
            if let Some(p) = power {
                let x = crossed_element(&cp, p)?;
                let xx = cp.mul(&x, &x);
                out.insert("x".into(), json!(cp.format(&x)));
                out.insert("xx".into(), json!(cp.format(&xx)));
                out.insert("xx_x".into(), json!(cp.format(&cp.mul(&xx, &x))));
                out.insert("x_xx".into(), json!(cp.format(&cp.mul(&x, &xx))));
            }
            Ok(out)
        }
        (Verb::Multipliers, CommandArgs::Target(t)) => {
            let alg = env.algebra_or_ideal(t)?;
            let m = MultiplierAlgebra::new(&alg).map_err(core(t.pos))?;
            let phi = m.phi();
            Ok(obj(json!({
                "dim_base": alg.dim(),
                "dim": m.dim(),
                "unital": alg.is_unital(),
                "phi_kernel_dim": phi.kernel().dim(),
                "phi_bijective": phi.is_bijective(),
                "phi_image_ideal": m.phi_image_ideal().is_ok(),
                "lr_associative": m.is_lr_associative(),
            })))
        }
        (Verb::LrAssoc, CommandArgs::Target(t)) => {
            let alg = env.algebra_or_ideal(t)?;
            let m = MultiplierAlgebra::new(&alg).map_err(core(t.pos))?;
            let witness = m.lr_witness();
            Ok(obj(json!({
                "lr_associative": witness.is_none(),
                "witness": witness.map(|(a, b, k)| json!({
                    "first": format!("m{}", a + 1),
                    "second": format!("m{}", b + 1),
                    "basis": alg.labels()[k],
                })),
                "dim_multipliers": m.dim(),
            })))
        }
        (Verb::Semiprime, CommandArgs::Target(t)) => semiprime(&env.algebra_or_ideal(t)?, t.pos),
        (Verb::Envelope, CommandArgs::Action(a)) => {
            let value = env.action(a)?;
            let pa = &value.action;
            let exists = has_enveloping(pa).map_err(core(a.pos))?;
            let mut out = obj(json!({ "has_enveloping": exists }));
            if !exists {
                return Ok(out);
            }
            let envelope = build_enveloping(pa).map_err(core(a.pos))?;
            let verdict = verify_enveloping(pa, &envelope);
            let emb = embed_crossed(pa, &envelope).map_err(core(a.pos))?;
            out.insert("dim_b".into(), json!(envelope.global.algebra().dim()));
            out.insert("verified".into(), json!(verdict.ok()));
            out.insert("alpha_identity".into(), json!(check_alpha_identity(pa).map_err(core(a.pos))?));
            out.insert("embedding_rank".into(), json!(emb.map.rank()));
            out.insert("embedding_injective".into(), json!(emb.map.is_injective()));
            out.insert("crossed_dim".into(), json!(emb.source.dim()));
            out.insert("enveloping_crossed_dim".into(), json!(emb.target.dim()));
            if let Some(source) = &value.source {
                let iso = compare_envelopings(pa, &envelope, source).map(|m| m.is_bijective()).unwrap_or(false);
                out.insert("source_admissible".into(), json!(value.admissible.unwrap_or(false)));
                out.insert("source_dim".into(), json!(source.global.algebra().dim()));
                out.insert("compare_iso".into(), json!(iso));
            }
            Ok(out)
        }
        (Verb::Morita, CommandArgs::Action(a)) => {
            let pa = &env.action(a)?.action;
            let envelope = build_enveloping(pa).map_err(core(a.pos))?;
            let mc = morita_context(pa, &envelope).map_err(core(a.pos))?;
            let r = &mc.report;
            Ok(obj(json!({
                "ok": r.ok(),
                "m_dim": mc.m.dim(),
                "n_dim": mc.n.dim(),
                "mn_dim": r.mn_dim,
                "nm_dim": r.nm_dim,
                "small_dim": r.small_dim,
                "large_dim": r.large_dim,
                "mn_is_small": r.mn_is_small,
                "nm_is_large": r.nm_is_large,
                "m_right_ideal": r.m_right_ideal,
                "n_left_ideal": r.n_left_ideal,
                "m_left_module": r.m_left_module,
                "n_right_module": r.n_right_module,
                "compatibility": r.compatibility,
            })))
        }
        (Verb::Kpar, CommandArgs::Group(g)) => kpar(env, env.group(g)?, g.pos),
        (Verb::Elementary, CommandArgs::Subset { group, elements }) => {
            let grp = env.group(group)?;
            let subset = env.subset(grp, elements)?;
            let erd = elementary_rep(grp, &subset, env.field).map_err(core(group.pos))?;
            let target = erd.target();
            let iso = iso_bis(&erd);
            let n = erd.n();
            let transitive = (0..n).all(|i| (0..n).all(|j| erd.transitivity_witness(i, j).is_ok()));
            let pi: Vec<Value> =
                grp.elements().map(|g| json!([grp.label(g), target.format(erd.rep().image(g))])).collect();
            let grading = elementary_grading(&erd).map_err(core(group.pos))?;
            Ok(obj(json!({
                "n": n,
                "stabilizer_order": erd.stabilizer().order(),
                "target": erd.target_name(),
                "target_dim": target.dim(),
                "translates": erd.translates().iter().map(|t| grp.format_subset(t)).collect::<Vec<_>>(),
                "representatives": erd.representatives().iter().map(|&r| grp.label(r)).collect::<Vec<_>>(),
                "pi": pi,
                "iso": iso.is_ok(),
                "injective_by_expectation": matches!(&iso, Ok(b) if b.injectivity == InjectivityVerdict::Injective),
                "transitive": transitive,
                "grading": degree_table(grp, target, &grading.degrees),
                "graded_iso": grading.ok(),
            })))
        }
        (Verb::Grading, CommandArgs::Subset { group, elements }) => {
            let grp = env.group(group)?;
            let subset = env.subset(grp, elements)?;
            let erd = elementary_rep(grp, &subset, env.field).map_err(core(group.pos))?;
            let grading = elementary_grading(&erd).map_err(core(group.pos))?;
            Ok(obj(json!({
                "degrees": degree_table(grp, erd.target(), &grading.degrees),
                "images_homogeneous": grading.images_homogeneous,
                "multiplicative": grading.multiplicative,
                "graded_iso": grading.ok(),
            })))
        }
        (Verb::ConditionX, CommandArgs::ConditionX { action, element }) => {
            let pa = &env.action(action)?.action;
            let grp = pa.group();
            let elements: Vec<usize> = match element {
                Some(g) => vec![grp.index_of(g.as_str()).expect("checked during elaboration")],
                None => grp.elements().collect(),
            };
            let mut rows = Vec::new();
            let mut holds = true;
            for g in elements {
                let slice = pa.slice(g).map_err(core(action.pos))?;
                let w = slice.condition_x_check();
                holds &= w.is_none();
                rows.push(json!({
                    "element": grp.label(g),
                    "holds": w.is_none(),
                    "witness": w.map(|w| witness_json(slice.base(), slice.plus().basis(), &w)),
                }));
            }
            Ok(obj(json!({ "holds": holds, "elements": rows })))
        }
        _ => unreachable!("arguments match their verb by construction"),
    }
}

fn witness_json(alg: &Algebra, plus: &[pact_core::linalg::Vector], w: &ConditionXWitness) -> Value {
    json!({
        "a": alg.labels()[w.a],
        "b": alg.format(&plus[w.b]),
        "c": alg.labels()[w.c],
        "lhs": alg.format(&w.lhs),
        "rhs": alg.format(&w.rhs),
    })
}

fn degree_table(grp: &Group, target: &Algebra, degrees: &[usize]) -> Vec<Value> {
    degrees.iter().enumerate().map(|(k, &d)| json!([target.labels()[k], grp.label(d)])).collect()
}

fn semiprime(alg: &Algebra, pos: Pos) -> Result<Map<String, Value>> {
    let finite_small = alg.field().is_finite() && alg.dim() <= pact_core::algebra::DEFAULT_EXHAUSTIVE_BOUND;
    if finite_small {
        let p = alg.semiprime_predicates().map_err(core(pos))?;
        return Ok(obj(json!({
            "semiprime": p.no_nilpotent_ideal,
            "method": "exhaustive",
            "ideals": p.ideals,
            "all_non_degenerate": p.all_non_degenerate,
            "all_idempotent_or_non_degenerate": p.all_idempotent_or_non_degenerate,
            "all_right_non_degenerate": p.all_right_non_degenerate,
            "all_left_non_degenerate": p.all_left_non_degenerate,
            "no_nilpotent_ideal": p.no_nilpotent_ideal,
            "predicates_agree": p.agree(),
        })));
    }
    let (semiprime, method) = alg.is_semiprime_with(pact_core::algebra::DEFAULT_EXHAUSTIVE_BOUND).map_err(core(pos))?;
    let method = match method {
        pact_core::algebra::SemiprimeMethod::TraceForm => "trace form",
        pact_core::algebra::SemiprimeMethod::Exhaustive => "exhaustive",
    };
    Ok(obj(json!({ "semiprime": semiprime, "method": method })))
}

fn kpar(env: &Env, grp: &Group, pos: Pos) -> Result<Map<String, Value>> {
    let iso = kpar_iso(grp, env.field);
    let iso = match iso {
        Ok(i) => Some(i),
        Err(PactError::VerificationFailed(_)) => None,
        Err(e) => return Err(core(pos)(e)),
    };
    let semigroup = pact_core::preps::semigroup::ExelSemigroup::new(grp).map_err(core(pos))?;
    let mut out = obj(json!({
        "order": grp.order(),
        "semigroup_size": semigroup.len(),
        "expected_size": pact_core::preps::semigroup::ExelSemigroup::expected_len(grp.order()),
        "dim_kpar": semigroup.len(),
        "iso": iso.is_some(),
        "labels": semigroup.labels(),
    }));
    if grp.order() <= ORACLE_MAX_ORDER {
        let oracle = PresentedMonoid::enumerate(grp, ORACLE_NODES).map_err(core(pos))?;
        out.insert("oracle_size".into(), json!(oracle.len()));
        out.insert("oracle_agrees".into(), json!(agrees_with_pair_model(&semigroup, &oracle)));
    }
    Ok(out)
}

pub fn check(text: &str) -> Result<SpecDocument> {
    let doc = crate::parse::parse_spec(text)?;
    elaborate(&doc)?;
    Ok(doc)
}
