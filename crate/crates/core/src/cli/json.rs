//! Machine-readable reports and their text rendering. Both renderings carry
//! the same canonical ideal strings.

use serde_json::{json, Map, Value};

use crate::foliation::{FoliationReport, JRadical};
use crate::graded::UnfoldingIdeal;
use crate::ideals::{HilbertPolynomial, Ideal};

/// Version tag of `report.schema.json`.
pub const SCHEMA_VERSION: &str = "folcalc-report/1";

pub fn ideal_json(i: &Ideal, names: &[String]) -> Value {
    json!(i.canonical_strings_with(names))
}

pub fn hilbert_json(p: &HilbertPolynomial) -> Value {
    let coeffs: Map<String, Value> = p.coefficients().iter().map(|(r, c)| (format!("P{r}"), json!(c))).collect();
    json!({
        "basis": p.to_string(),
        "expanded": p.expanded_string(),
        "coefficients": coeffs,
    })
}

pub fn unfolding_json(u: &UnfoldingIdeal) -> Value {
    json!({
        "d_max": u.d_max,
        "slack": u.slack,
        "certified": u.certified(),
        "degrees": u.degrees,
    })
}

pub fn report_json(r: &FoliationReport, names: &[String], omega: &str) -> Value {
    let witness = match &r.predicates.j_radical {
        JRadical::False(Some(w)) => json!(w.display_with(names).to_string()),
        _ => Value::Null,
    };
    json!({
        "schema": SCHEMA_VERSION,
        "input": { "vars": names, "omega": omega },
        "n": r.n,
        "e": r.e,
        "ideals": {
            "J": ideal_json(&r.j, names),
            "CdOmega": ideal_json(&r.cdomega, names),
            "K": ideal_json(&r.k, names),
            "L": ideal_json(&r.l, names),
            "I": ideal_json(&r.unfolding.ideal, names),
        },
        "predicates": {
            "in_U": r.predicates.in_u,
            "kupka_nonempty": r.predicates.kupka_nonempty,
            "I_equals_K": r.predicates.i_equals_k,
            "J_radical": r.predicates.j_radical.as_str(),
            "J_radical_witness": witness,
            "K_comaximal_with_CdOmega": r.predicates.k_comaximal_with_cdomega,
            "IJ_iso_SL_hilbert": r.predicates.ij_iso_sl_hilbert,
        },
        "hilbert": {
            "I/J": hilbert_json(&r.hilbert.p_ij),
            "S/L": hilbert_json(&r.hilbert.p_sl),
            "equal": r.hilbert.equal,
            "leading_terms_agree": r.hilbert.leading_terms_agree,
            "kupka_disjoint_from_non_kupka": r.hilbert.kupka_disjoint_from_non_kupka,
        },
        "unfolding": unfolding_json(&r.unfolding),
        "timings_ms": {
            "J": r.timings.j_ms,
            "K": r.timings.k_ms,
            "L": r.timings.l_ms,
            "I": r.timings.i_ms,
            "predicates": r.timings.predicates_ms,
        },
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Text rendering of a JSON value as indented `key: value` lines; arrays of
/// strings (ideals) are written as compact JSON arrays.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for it in items {
                            out.push_str(&format!("{pad}  -\n"));
                            write_text(it, indent + 2, out);
                        }
                    }
                    Value::Array(_) => out.push_str(&format!("{pad}{k}: {x}\n")),
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}
