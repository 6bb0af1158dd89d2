//! JSON and text rendering. Every number in the JSON schema is a string.

use std::fmt::Write;

use freecurves::chern::ChernData;
use freecurves::logmod::Classification;
use freecurves::polycore::HomoPoly;
use freecurves::triples::{TheoremReport, TripleData};
use serde_json::{json, Value};

pub fn s<T: ToString>(x: T) -> Value {
    Value::String(x.to_string())
}

pub fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(s).collect())
}

pub fn curve_json(name: &str, f: &HomoPoly) -> Value {
    json!({ "name": name, "polynomial": f.to_string(), "degree": s(f.degree()) })
}

pub fn classification_json(cls: &Classification, bound: u32) -> Value {
    let mut v = json!({
        "kind": serde_json::to_value(cls.kind()).unwrap(),
        "label": cls.label(),
        "exponents": cls.exponents().map(|(a, b)| strings([a, b])),
        "level": cls.level().map(s),
        "defect": cls.defect().map(s),
        "mdr": s(cls.mdr()),
        "generator_degrees": strings(cls.generator_degrees()),
        "generators": strings(cls.generators()),
        "bound": s(bound),
    });
    match cls {
        Classification::Free { saito_constant, .. } => v["saito_constant"] = s(saito_constant),
        Classification::PlusOneGenerated { relation, .. } => {
            v["relation"] = json!({ "degree": s(relation.degree), "coefficients": strings(&relation.coefficients) })
        }
        Classification::Other { pattern_open, .. } => v["pattern_open"] = Value::Bool(*pattern_open),
    }
    v
}

pub fn chern_json(cd: Option<&ChernData>) -> Value {
    match cd {
        Some(c) => json!({ "rank": s(c.rank), "c1": s(c.c1), "c2": s(c.c2) }),
        None => Value::Null,
    }
}

pub fn classification_text(out: &mut String, cls: &Classification, chern: Option<&ChernData>) {
    let _ = writeln!(out, "class: {}", cls.label());
    match cls {
        Classification::Free {
            exponents: (a, b),
            saito_constant,
            ..
        } => {
            let _ = writeln!(out, "  exponents: ({a}, {b})");
            let _ = writeln!(out, "  saito: det(theta_E, theta_2, theta_3) = {saito_constant} f");
        }
        Classification::PlusOneGenerated {
            exponents: (a, b),
            level,
            defect,
            relation,
            ..
        } => {
            let _ = writeln!(out, "  exponents: ({a}, {b})");
            let _ = writeln!(out, "  level: {level}");
            let _ = writeln!(out, "  defect: {defect}");
            let c: Vec<String> = relation.coefficients.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  relation in degree {}: ({})", relation.degree, c.join(", "));
        }
        Classification::Other {
            bound, pattern_open, ..
        } => {
            let _ = writeln!(out, "  searched up to degree {bound}");
            if *pattern_open {
                let _ = writeln!(out, "  generators still appear near the bound; a larger --bound may change the verdict");
            }
        }
    }
    let _ = writeln!(out, "  mdr: {}", cls.mdr());
    let degs: Vec<String> = cls.generator_degrees().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "  generator degrees: {}", degs.join(", "));
    for g in cls.generators() {
        let _ = writeln!(out, "    {g}");
    }
    if let Some(c) = chern {
        let _ = writeln!(out, "chern: c1 = {}, c2 = {}", c.c1, c.c2);
    }
}

pub fn triple_json(t: &TripleData, direction: &str) -> Value {
    json!({
        "c": t.f_c.to_string(),
        "cprime": t.f_cprime.to_string(),
        "line": t.line.to_string(),
        "card_cpp": s(t.card_cpp),
        "eps": s(t.eps),
        "eps_source": serde_json::to_value(t.eps_source).unwrap(),
        "direction": direction,
    })
}

pub fn theorem_json(r: &TheoremReport) -> Value {
    serde_json::to_value(r).unwrap()
}

pub fn theorem_text(out: &mut String, r: &TheoremReport) {
    let id = serde_json::to_value(r.theorem).unwrap();
    let _ = write!(out, "{}: {}", id.as_str().unwrap(), r.verdict);
    if let Some(h) = r.hypotheses.iter().find(|h| !h.holds) {
        let _ = writeln!(out, " ({} fails: {})", h.name, h.detail);
        return;
    }
    let _ = write!(out, "; predicted {}, computed {}", r.predicted, r.computed);
    if let Some(b) = &r.branch {
        let _ = write!(out, "; branch {b}");
    }
    let _ = writeln!(out);
}
