//! JSON and text renderings of analysis results.
//!
//! Rationals are strings (`"-1/20"`) so that values survive any JSON reader;
//! algebraic numbers are polynomials in tower generators listed alongside.

use serde_json::{json, Value};

use crate::arith::rational::fmt_rational;
use crate::arith::{Rational, Tower};
use crate::bounds::{AxisBound, BoundValue, DetectedLines, LineBound};
use crate::branching::{Branch, BranchStatus, CriticalWitness, Multiplicity, MultiplicityResult};
use crate::darboux::{DarbouxCertificate, DarbouxSearch};
use crate::error::Error;
use crate::lotka::{LvReport, LvVerdict};

fn q(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

fn tower_json(k: &Tower) -> Value {
    Value::Array(
        k.describe()
            .into_iter()
            .map(|(name, minpoly, certified)| json!({"generator": name, "minpoly": minpoly, "certified": certified}))
            .collect(),
    )
}

fn status_name(s: &BranchStatus) -> String {
    match s {
        BranchStatus::CapExceeded(kind) => format!("cap-exceeded:{kind}"),
        other => serde_json::to_value(other).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
    }
}

pub fn branch_json(b: &Branch) -> Value {
    json!({
        "series": b.fmt("z"),
        "exponents": b.terms.iter().map(|(e, _)| q(e)).collect::<Vec<_>>(),
        "coefficients": b.terms.iter().map(|(_, c)| b.tower.fmt(c)).collect::<Vec<_>>(),
        "tower": tower_json(&b.tower),
        "conjugacy_degree": b.conjugacy,
        "status": status_name(&b.status),
        "exact": b.exact,
    })
}

pub fn witness_json(w: &CriticalWitness) -> Value {
    json!({
        "rule": serde_json::to_value(w.rule).unwrap_or(Value::Null),
        "lambda": q(&w.lambda),
        "step": w.step,
        "prefix": crate::poly_ode::bipoly::fmt_terms(w.prefix.iter().cloned(), &w.tower, "z"),
        "tower": tower_json(&w.tower),
    })
}

fn outcome_json(m: &Multiplicity) -> (Value, Value, Value, Value) {
    match m {
        Multiplicity::Finite(n) => (json!("finite"), json!(n), Value::Null, Value::Null),
        Multiplicity::Critical(w) => (json!("critical"), Value::Null, witness_json(w), Value::Null),
        Multiplicity::Capped { lower_bound, caps } => (
            json!("capped"),
            json!(lower_bound),
            Value::Null,
            json!(caps.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        ),
    }
}

pub fn multiplicity_json(point: &str, r: &MultiplicityResult) -> Value {
    let (status, mul, witness, caps) = outcome_json(&r.outcome);
    let mut v = json!({
        "point": point,
        "status": status,
        "mul": mul,
        "branches": r.tree.branches.iter().map(branch_json).collect::<Vec<_>>(),
        "flags": r.tree.flags.iter().collect::<Vec<_>>(),
    });
    if !witness.is_null() {
        v["criticality_witness"] = witness;
    }
    if !caps.is_null() {
        v["caps_hit"] = caps;
    }
    v
}

pub fn multiplicity_text(point: &str, r: &MultiplicityResult) -> String {
    let mut s = match &r.outcome {
        Multiplicity::Finite(n) => format!("Mul{point} = {n}\n"),
        Multiplicity::Critical(w) => format!("Mul{point} = critical\n{}", witness_text(w)),
        Multiplicity::Capped { lower_bound, caps } => {
            let names: Vec<String> = caps.iter().map(|c| c.to_string()).collect();
            format!("Mul{point} >= {lower_bound} (inconclusive, caps hit: {})\n", names.join(", "))
        }
    };
    for b in &r.tree.branches {
        s.push_str(&format!("  [{}] conj {}: {}\n", status_name(&b.status), b.conjugacy, b.fmt("z")));
        for (name, minpoly, certified) in b.tower.describe() {
            let tag = if certified { "" } else { " (presumed irreducible)" };
            s.push_str(&format!("      {name}: {minpoly} = 0{tag}\n"));
        }
    }
    for f in &r.tree.flags {
        s.push_str(&format!("  flag: {f}\n"));
    }
    s
}

fn witness_text(w: &CriticalWitness) -> String {
    let rule = serde_json::to_value(w.rule).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
    let prefix = crate::poly_ode::bipoly::fmt_terms(w.prefix.iter().cloned(), &w.tower, "z");
    format!("  witness: {rule}, lambda = {}, step {}, prefix {}\n", fmt_rational(&w.lambda), w.step, prefix)
}

fn bound_value_json(b: &BoundValue) -> Value {
    match b {
        BoundValue::Value(n) => json!({"status": "finite", "value": n}),
        BoundValue::Inconclusive { lower_bound, caps } => json!({
            "status": "inconclusive",
            "lower_bound": lower_bound,
            "caps_hit": caps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
        BoundValue::Blocked { point, witness } => json!({
            "status": "blocked",
            "point": point,
            "criticality_witness": witness_json(witness),
        }),
    }
}

fn bound_value_text(b: &BoundValue) -> String {
    match b {
        BoundValue::Value(n) => n.to_string(),
        BoundValue::Inconclusive { lower_bound, .. } => format!("inconclusive (finished points sum to {lower_bound})"),
        BoundValue::Blocked { point, .. } => format!("unavailable, critical at {point}"),
    }
}

pub fn axis_bound_json(b: &AxisBound) -> Value {
    json!({
        "m": b.m,
        "k": b.k,
        "points": b.points.iter().map(|p| {
            let mut v = multiplicity_json(&p.root.label(), &p.multiplicity);
            v["count"] = json!(p.root.count());
            v
        }).collect::<Vec<_>>(),
        "summands": b.points.iter().map(|p| match p.multiplicity.outcome.finite() {
            Some(n) => json!(n),
            None => Value::Null,
        }).collect::<Vec<_>>(),
        "sum_bound": b.sum_bound.value(),
        "sum_bound_detail": bound_value_json(&b.sum_bound),
        "axis_count_bound": b.axis_count_bound,
        "degree_measured": "w",
    })
}

pub fn axis_bound_text(b: &AxisBound) -> String {
    let mut s = format!("axis z = 0: M = {}, k = {}\n", b.m, b.k);
    for p in &b.points {
        let lbl = p.root.label();
        let count = if p.root.count() > 1 { format!(" (x{})", p.root.count()) } else { String::new() };
        let line = multiplicity_text(&lbl, &p.multiplicity);
        let mut lines = line.lines();
        if let Some(first) = lines.next() {
            s.push_str(&format!("{first}{count}\n"));
        }
        for l in lines {
            s.push_str(&format!("{l}\n"));
        }
    }
    s.push_str(&format!("deg_w f <= {} (sum of multiplicities)\n", bound_value_text(&b.sum_bound)));
    match b.axis_count_bound {
        Some(n) => s.push_str(&format!("deg_w f <= {n} (M(k+1))\n")),
        None => s.push_str("M(k+1) bound unavailable: not every axis point is finite\n"),
    }
    s
}

pub fn line_bound_json(l: &LineBound) -> Value {
    let t = &l.transform;
    json!({
        "line": {"a": q(&t.a), "b": q(&t.b), "c": q(&t.c), "f": t.line().to_string()},
        "swapped": t.swapped,
        "transformed": t.system.fmt(&Tower::rationals()),
        "m": l.m,
        "axis": axis_bound_json(&l.axis),
        "line_bound": l.line_bound.value(),
        "line_bound_detail": bound_value_json(&l.line_bound),
        "degree_measured": "total",
    })
}

pub fn line_bound_text(l: &LineBound) -> String {
    let t = &l.transform;
    let mut s = format!(
        "line {} = 0{}\ntransformed: {}\n",
        t.line(),
        if t.swapped { " (z and w exchanged first)" } else { "" },
        t.system.fmt(&Tower::rationals())
    );
    s.push_str(&axis_bound_text(&l.axis));
    s.push_str(&format!("deg f <= {} (M(M+1), M = {})\n", bound_value_text(&l.line_bound), l.m));
    s
}

pub fn certificate_json(c: &DarbouxCertificate) -> Value {
    json!({
        "f": c.f.to_string(),
        "cofactor": c.cofactor.to_string(),
        "degree": c.f.degree(),
        "strict": c.strict,
        "constant_components": c.constant_components.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "irreducible": c.irreducible,
    })
}

fn certificate_text(c: &DarbouxCertificate) -> String {
    let strict = if c.strict { "strict" } else { "non-strict" };
    let irr = match c.irreducible {
        Some(true) => "irreducible",
        Some(false) => "reducible",
        None => "presumed irreducible",
    };
    format!("  {}  cofactor {}  ({strict}, {irr})\n", c.f, c.cofactor)
}

pub fn darboux_json(s: &DarbouxSearch, max_degree: u32) -> Value {
    json!({
        "max_degree": max_degree,
        "certificates": s.certificates.iter().map(certificate_json).collect::<Vec<_>>(),
        "flags": s.flags.iter().collect::<Vec<_>>(),
        "complete": s.complete,
    })
}

pub fn darboux_text(s: &DarbouxSearch, max_degree: u32) -> String {
    let mut out = format!("Darboux polynomials of degree <= {max_degree}:\n");
    for c in &s.certificates {
        out.push_str(&certificate_text(c));
    }
    if s.certificates.is_empty() {
        out.push_str("  none\n");
    }
    for f in &s.flags {
        out.push_str(&format!("  flag: {f}\n"));
    }
    if !s.complete {
        out.push_str("  search incomplete\n");
    }
    out
}

pub fn lines_json(d: &DetectedLines) -> Value {
    json!({
        "lines": d.lines.iter().map(|l| json!({"a": q(&l.a), "b": q(&l.b), "c": q(&l.c), "f": l.poly().to_string()})).collect::<Vec<_>>(),
        "conjugate_families": d.families.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "dicritical": d.dicritical,
        "irrational_slopes": d.irrational_slopes,
    })
}

pub fn lines_text(d: &DetectedLines) -> String {
    let mut s = String::from("invariant lines:\n");
    for l in &d.lines {
        s.push_str(&format!("  {} = 0\n", l.poly()));
    }
    for f in &d.families {
        s.push_str(&format!("  {f} = 0 (conjugate lines)\n"));
    }
    if d.dicritical {
        s.push_str("  flag: infinitely many invariant lines\n");
    }
    if d.irrational_slopes {
        s.push_str("  flag: lines with irrational slope not listed\n");
    }
    s
}

pub fn lv_json(r: &LvReport) -> Value {
    let verdict = match &r.verdict {
        LvVerdict::Inapplicable { violated } => json!({"status": "inapplicable", "violated": violated}),
        LvVerdict::StrictCurve { certificate } => json!({"status": "strict-curve", "certificate": certificate_json(certificate)}),
        LvVerdict::NoStrictCurve { sum_bound, searched_degree, search } => json!({
            "status": "no-strict-curve",
            "sum_bound": bound_value_json(sum_bound),
            "darboux": darboux_json(search, *searched_degree),
        }),
    };
    json!({
        "params": {"a": q(&r.params.a), "b": q(&r.params.b), "c": q(&r.params.c)},
        "genericity": serde_json::to_value(&r.genericity).unwrap_or(Value::Null),
        "line_condition": q(&r.line_condition),
        "verdict": verdict,
    })
}

pub fn lv_text(r: &LvReport) -> String {
    let mut s = format!("LV {}: a(1-c) + (1-b) = {}\n", r.params.label(), fmt_rational(&r.line_condition));
    match &r.verdict {
        LvVerdict::Inapplicable { violated } => s.push_str(&format!("inapplicable: violated {}\n", violated.join(", "))),
        LvVerdict::StrictCurve { certificate } => {
            s.push_str("strict invariant curve:\n");
            s.push_str(&certificate_text(certificate));
        }
        LvVerdict::NoStrictCurve { sum_bound, searched_degree, search } => {
            s.push_str(&format!("no strict invariant curve; deg_w bound {}\n", bound_value_text(sum_bound)));
            s.push_str(&darboux_text(search, *searched_degree));
        }
    }
    s
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.to_string()});
    match e {
        Error::Parse(p) => {
            v["kind"] = json!("parse");
            v["line"] = json!(p.line);
            v["column"] = json!(p.column);
        }
        Error::CapExceeded { kind, limit } => {
            v["kind"] = json!("cap");
            v["cap"] = json!(kind.to_string());
            v["limit"] = json!(limit);
        }
        Error::NotCoprime(g) => {
            v["kind"] = json!("not-coprime");
            v["common_factor"] = json!(g);
        }
        Error::NotInvariant(r) => {
            v["kind"] = json!("not-invariant");
            v["remainder"] = json!(r);
        }
        Error::Arith(_) => v["kind"] = json!("arithmetic"),
        Error::Invalid(_) => v["kind"] = json!("invalid"),
    }
    v
}
