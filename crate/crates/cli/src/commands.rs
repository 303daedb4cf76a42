use std::path::PathBuf;

use flattice::falgebra::quotient_by_band;
use flattice::io::{emit_algebra, parse_algebra, HomDocument, LoadedAlgebra, SubspaceDocument};
use flattice::lattice::{generated_dimension, two_point_closure_of};
use flattice::propsuite::{run_suite, GenConfig};
use flattice::{
    check_multext, is_sublattice, sublattice_closure_of, tensor_falgebra, verify_falgebra, verify_universal,
    AlgebraHom, FAlgebra, LatticeHom, QVector, Rational, Subspace,
};
use serde_json::{json, Value};

use crate::report::{Failure, Success};
use crate::Command;

pub struct Context<'a> {
    pub inputs: &'a [PathBuf],
    pub seed: Option<u64>,
    pub max_points: usize,
}

type Outcome = Result<Success, Failure>;

impl Context<'_> {
    fn expect_inputs(&self, names: &[&str]) -> Result<(), Failure> {
        if self.inputs.len() != names.len() {
            return Err(Failure::Input(format!(
                "expected {} input file(s) ({}), got {}",
                names.len(),
                names.join(" "),
                self.inputs.len()
            )));
        }
        Ok(())
    }

    fn read(&self, k: usize) -> Result<String, Failure> {
        let path = &self.inputs[k];
        std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }

    fn algebra(&self, k: usize) -> Result<LoadedAlgebra, Failure> {
        Ok(parse_algebra(&self.read(k)?)?)
    }

    /// Loads an algebra and attaches its weight; failure to be an
    /// f-algebra is a mathematical failure.
    fn verified(&self, k: usize) -> Result<LoadedAlgebra, Failure> {
        let mut a = self.algebra(k)?;
        a.algebra = a.algebra.verified()?;
        Ok(a)
    }

    fn hom(&self, k: usize, domain: &LoadedAlgebra, codomain: &LoadedAlgebra) -> Result<flattice::QLinearMap, Failure> {
        Ok(HomDocument::from_json(&self.read(k)?)?.load(domain, codomain)?)
    }
}

fn strings(v: &QVector) -> Vec<String> {
    v.values().iter().map(|x| x.to_string()).collect()
}

fn vjson(v: &QVector) -> Value {
    json!(strings(v))
}

fn vectors(vs: &[QVector]) -> Value {
    Value::Array(vs.iter().map(vjson).collect())
}

fn show(v: &QVector) -> String {
    v.to_string()
}

fn weight_of(a: &FAlgebra<Rational>) -> &QVector {
    a.weight().expect("verified").values()
}

pub fn run(command: &Command, ctx: &Context) -> Outcome {
    match command {
        Command::Check => check(ctx),
        Command::Weight => weight(ctx),
        Command::Closure => closure(ctx),
        Command::Tensor => tensor(ctx),
        Command::Semiprime => semiprime(ctx),
        Command::Identity => identity(ctx),
        Command::Quotient => quotient(ctx),
        Command::HomCheck => hom_check(ctx),
        Command::HomExtend => hom_extend(ctx),
        Command::Universal => universal(ctx),
        Command::Selftest { instances } => selftest(ctx, *instances),
    }
}

fn check(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A"])?;
    let a = ctx.algebra(0)?;
    let r = verify_falgebra(&a.algebra)?;
    let pair = |p: Option<(usize, usize)>| p.map_or(Value::Null, |(i, j)| json!([i, j]));
    let triple = |p: Option<(usize, usize, usize)>| p.map_or(Value::Null, |(i, j, k)| json!([i, j, k]));
    let result = json!({
        "name": a.name,
        "points": a.algebra.ambient().size(),
        "dim": a.algebra.dim(),
        "weight": r.weight_form.as_ref().map(|w| vjson(w.values())).unwrap_or(Value::Null),
        "commutativity_violation": pair(r.commutativity),
        "associativity_violation": triple(r.associativity),
        "positivity_violation": pair(r.positivity),
        "disjointness_violation": triple(r.disjointness),
        "f_algebra": r.passed(),
    });
    let mut lines = vec![format!("{}: {} points, dimension {}", a.name, a.algebra.ambient().size(), a.algebra.dim())];
    match &r.weight_form {
        Ok(w) => lines.push(format!("weight {}", show(w.values()))),
        Err(e) => lines.push(format!("no weight form: {e}")),
    }
    if r.passed() {
        return Ok(Success::pass(result, lines));
    }
    let witness = match &r.weight_form {
        Err(flattice::Error::NotFAlgebra { i, j, point }) => json!({ "basis_pair": [i, j], "point": point }),
        Err(e) => json!(e.to_string()),
        Ok(_) => json!("axiom violation on basis or atoms; see result"),
    };
    Ok(Success::fail(result, witness, lines))
}

fn weight(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A"])?;
    let a = ctx.verified(0)?;
    let w = weight_of(&a.algebra);
    Ok(Success::pass(
        json!({ "name": a.name, "w": vjson(w), "upsilon": a.algebra.carrier().upsilon() }),
        vec![format!("w = {}", show(w))],
    ))
}

fn closure(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["X"])?;
    let doc = SubspaceDocument::from_json(&ctx.read(0)?)?;
    let (points, vs) = doc.load()?;
    let x = Subspace::span(points, &vs)?;
    let l = sublattice_closure_of(points, &vs)?;
    l.verify_certificates()?;
    let alt = two_point_closure_of(points, &vs)?;
    alt.verify_certificates()?;
    if alt.space() != l.space() || generated_dimension(&x) != l.dim() {
        return Err(Failure::Math {
            kind: "Internal",
            message: "closure routes disagree".into(),
            witness: None,
        });
    }
    let certs = l.certificates().expect("closure is certified");
    let exprs: Vec<String> = certs.exprs().iter().map(|e| e.to_string()).collect();
    let mut lines = vec![format!(
        "span of dimension {} generates a sublattice of dimension {}{}",
        x.dim(),
        l.dim(),
        if is_sublattice(&x) { " (already a sublattice)" } else { "" }
    )];
    for (b, e) in l.basis().iter().zip(&exprs) {
        lines.push(format!("{} = {e}", show(b)));
    }
    Ok(Success::pass(
        json!({
            "name": doc.name,
            "input_dim": x.dim(),
            "is_sublattice": is_sublattice(&x),
            "dim": l.dim(),
            "basis": vectors(l.basis()),
            "atoms": vectors(&l.atoms().into_iter().map(|a| a.vector).collect::<Vec<_>>()),
            "certificates": exprs,
        }),
        lines,
    ))
}

fn tensor(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A", "B"])?;
    let a = ctx.verified(0)?;
    let b = ctx.verified(1)?;
    let t = tensor_falgebra(&a.algebra, &b.algebra)?;
    let (n, m) = (t.points.left.size(), t.points.right.size());
    let u = weight_of(&t.algebra);
    let rows: Vec<Vec<String>> = (0..n)
        .map(|s| (0..m).map(|o| u[t.points.index(s, o)].to_string()).collect())
        .collect();
    let identity = t.algebra.find_identity()?;
    let name = format!("{}⊗{}", a.name, b.name);
    let doc: Value = serde_json::from_str(&emit_algebra(&name, &t.algebra)).expect("emitted JSON");
    let mut lines = vec![format!("{name}: {n}×{m} points, dimension {}", t.algebra.dim())];
    for r in &rows {
        lines.push(format!("u: [{}]", r.join(", ")));
    }
    if let Some(e) = &identity {
        lines.push(format!("identity {}", show(e)));
    }
    Ok(Success::pass(
        json!({
            "shape": [n, m],
            "dim": t.algebra.dim(),
            "u": rows,
            "identity": identity.as_ref().map(vjson),
            "algebra": doc,
        }),
        lines,
    ))
}

fn semiprime(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A"])?;
    let a = ctx.verified(0)?;
    let witness = a.algebra.nilpotent_witness()?;
    let result = json!({ "name": a.name, "semi_prime": witness.is_none() });
    Ok(match witness {
        None => Success::pass(result, vec![format!("{} is semi-prime", a.name)]),
        Some(x) => Success::fail(
            result,
            json!(show(&x)),
            vec![format!("{} is not semi-prime: {} squares to zero", a.name, show(&x))],
        ),
    })
}

fn identity(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A"])?;
    let a = ctx.verified(0)?;
    Ok(match a.algebra.find_identity()? {
        Some(e) => Success::pass(
            json!({ "name": a.name, "e": vjson(&e) }),
            vec![format!("e = {}", show(&e))],
        ),
        None => {
            let w = weight_of(&a.algebra);
            let zero = a.algebra.carrier().upsilon().into_iter().find(|&p| w[p] == Rational::from_integer(0.into()));
            let witness = match zero {
                Some(p) => json!(format!("weight vanishes at point {p}")),
                None => json!("1/w is not in the carrier"),
            };
            Success::fail(json!({ "name": a.name, "e": Value::Null }), witness, vec!["no identity".into()])
        }
    })
}

fn quotient(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A"])?;
    let a = ctx.verified(0)?;
    let band = a.algebra.nilpotent_band()?;
    let q = quotient_by_band(&a.algebra, &band)?;
    let name = format!("{}/N", a.name);
    let doc: Value = serde_json::from_str(&emit_algebra(&name, &q.algebra)).expect("emitted JSON");
    Ok(Success::pass(
        json!({
            "band": vectors(band.basis()),
            "kept_points": q.points,
            "quotient": doc,
        }),
        vec![
            format!("nilpotent band of dimension {}", band.dim()),
            format!("quotient on points {:?}, dimension {}", q.points, q.algebra.dim()),
        ],
    ))
}

fn hom_check(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A", "C", "T"])?;
    let a = ctx.verified(0)?;
    let c = ctx.verified(1)?;
    let t = ctx.hom(2, &a, &c)?;
    let h = AlgebraHom::new(t, a.algebra, c.algebra, ctx.max_points)?;
    let result = json!({
        "lattice_hom": h.is_lattice_hom(),
        "multiplicative": h.is_multiplicative(),
        "cells": h.lattice_check().cells,
    });
    let lines = vec![
        format!("lattice homomorphism: {}", h.is_lattice_hom()),
        format!("multiplicative: {}", h.is_multiplicative()),
    ];
    if let Some(x) = &h.lattice_check().witness {
        return Ok(Success::fail(result, json!({ "lattice": show(x) }), lines));
    }
    if let Some((i, j)) = h.mult_check().witness {
        return Ok(Success::fail(result, json!({ "basis_pair": [i, j] }), lines));
    }
    Ok(Success::pass(result, lines))
}

fn hom_extend(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A", "B", "T", "X"])?;
    let a = ctx.verified(0)?;
    let b = ctx.verified(1)?;
    let t = ctx.hom(2, &a, &b)?;
    let doc = SubspaceDocument::from_json(&ctx.read(3)?)?;
    let (points, vs) = doc.load()?;
    let x = Subspace::span(points, &vs)?;
    let (lt, _) = LatticeHom::decide(a.algebra.carrier().clone(), t, ctx.max_points)?;
    let r = check_multext(&lt, &x, &a.algebra, &b.algebra, ctx.max_points)?;
    let stages: Vec<Value> = r
        .stages
        .iter()
        .map(|s| json!({ "stage": s.name, "pairs": s.pairs, "passed": s.witness.is_none() }))
        .collect();
    let lines = r
        .stages
        .iter()
        .map(|s| format!("{:<12} {} pairs {}", s.name, s.pairs, if s.witness.is_none() { "ok" } else { "FAILED" }))
        .collect();
    let result = json!({ "stages": stages });
    match r.stages.iter().find_map(|s| s.witness.as_ref().map(|w| (s.name, w))) {
        Some((stage, (y, z))) => Ok(Success::fail(
            result,
            json!({ "stage": stage, "pair": [show(y), show(z)] }),
            lines,
        )),
        None => Ok(Success::pass(result, lines)),
    }
}

fn universal(ctx: &Context) -> Outcome {
    ctx.expect_inputs(&["A", "B", "C", "T_A", "T_B"])?;
    let a = ctx.verified(0)?;
    let b = ctx.verified(1)?;
    let c = ctx.verified(2)?;
    let ta = ctx.hom(3, &a, &c)?;
    let tb = ctx.hom(4, &b, &c)?;
    let ta = AlgebraHom::new(ta, a.algebra, c.algebra.clone(), ctx.max_points)?;
    let tb = AlgebraHom::new(tb, b.algebra, c.algebra, ctx.max_points)?;
    let r = verify_universal(&ta, &tb, 20, ctx.seed.unwrap_or(0), ctx.max_points)?;
    let s = if r.precondition.is_none() && r.existence.is_none() {
        flattice::induced_tensor_hom(&ta, &tb, ctx.max_points)
            .ok()
            .map(|s| vectors(s.hom.map().images()))
    } else {
        None
    };
    let fields = [
        ("precondition", &r.precondition),
        ("existence", &r.existence),
        ("positivity", &r.positivity),
        ("lattice_hom", &r.lattice_hom),
        ("generator_identity", &r.generator_identity),
        ("uniqueness", &r.uniqueness),
    ];
    let lines: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("{k}: {}", v.as_deref().unwrap_or("ok")))
        .collect();
    let checks: serde_json::Map<String, Value> = fields
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v.is_none())))
        .collect();
    let result = json!({ "checks": checks, "samples": r.samples, "s_matrix": s });
    match fields.iter().find_map(|(k, v)| v.as_ref().map(|m| (k, m))) {
        Some((k, m)) => Ok(Success::fail(result, json!({ "check": k, "detail": m }), lines)),
        None => Ok(Success::pass(result, lines)),
    }
}

fn selftest(ctx: &Context, instances: Option<usize>) -> Outcome {
    ctx.expect_inputs(&[])?;
    let mut cfg = GenConfig::default();
    if let Some(seed) = ctx.seed {
        cfg.seed = seed;
    }
    cfg.max_cell_points = ctx.max_points;
    if let Some(n) = instances {
        cfg.instance_count = n;
        cfg.heavy_instance_count = n / 2;
        cfg.mutation_trials = n / 4;
    }
    let report = run_suite(&cfg);
    let mut lines: Vec<String> = report
        .properties
        .iter()
        .chain([&report.mutation])
        .map(|p| {
            let status = if p.no_evidence {
                "NO EVIDENCE"
            } else if p.ok() {
                "PASS"
            } else {
                "FAIL"
            };
            format!("{status:<4} {:<3} {}/{}  {}", p.id, p.passed, p.instances, p.description)
        })
        .collect();
    lines.push(format!("coverage: {}", serde_json::to_string(&report.coverage).expect("serializes")));
    let result = serde_json::to_value(&report).expect("serializes");
    if report.passed() {
        return Ok(Success::pass(result, lines));
    }
    let witness = report
        .properties
        .iter()
        .chain([&report.mutation])
        .find(|p| !p.ok())
        .map(|p| json!({ "property": p.id, "counterexample": p.first_counterexample }))
        .unwrap_or_else(|| {
            let coverage = serde_json::to_value(&report.coverage).expect("serializes");
            let empty: Vec<&String> = coverage
                .as_object()
                .map(|m| m.iter().filter(|(_, v)| v.as_u64() == Some(0)).map(|(k, _)| k).collect())
                .unwrap_or_default();
            json!({ "insufficient_coverage": empty })
        });
    Ok(Success::fail(result, witness, lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_strings_are_reduced() {
        let v = QVector::new(vec![Rational::new(2.into(), 2.into()), Rational::new(1.into(), 2.into())]);
        assert_eq!(strings(&v), vec!["1", "1/2"]);
    }
}
