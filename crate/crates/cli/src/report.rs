//! Structured reports and their text rendering.

use gpw_core::bass_serre::LineCover;
use gpw_core::{GroupContext, GroupElement, SearchCertificate, SupportReport, VertexSet};
use serde::Serialize;
use serde_json::{json, Map, Value};

/// The single top-level object printed by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    pub bounds: Value,
}

impl Report {
    pub fn new(command: &str, input: Value, result: Value) -> Self {
        Report {
            command: command.to_string(),
            input,
            result,
            certificate: None,
            bounds: json!({}),
        }
    }

    pub fn with_bounds(mut self, bounds: Value) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn with_certificate(mut self, certificate: Value) -> Self {
        self.certificate = Some(certificate);
        self
    }

    /// Adds a field to `result`.
    pub fn insert(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.result {
            map.insert(key.to_string(), value);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_section(&mut out, &self.result, "");
        if let Some(cert) = &self.certificate {
            out.push_str("certificate:\n");
            render_section(&mut out, cert, "  ");
        }
        if self.bounds.as_object().is_some_and(|b| !b.is_empty()) {
            out.push_str("bounds:\n");
            render_section(&mut out, &self.bounds, "  ");
        }
        out
    }
}

fn render_section(out: &mut String, value: &Value, indent: &str) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(inner) if !inner.is_empty() => {
                        out.push_str(&format!("{indent}{key}:\n"));
                        render_section(out, v, &format!("{indent}  "));
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{indent}{key}:\n"));
                        for item in items {
                            out.push_str(&format!("{indent}  - {}\n", inline(item)));
                        }
                    }
                    _ => out.push_str(&format!("{indent}{key}: {}\n", inline(v))),
                }
            }
        }
        other => out.push_str(&format!("{indent}{}\n", inline(other))),
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

pub fn word(g: &GroupElement) -> Value {
    Value::String(g.to_word())
}

pub fn words(gs: &[GroupElement]) -> Value {
    Value::Array(gs.iter().map(word).collect())
}

pub fn vertex_set(ctx: &GroupContext, set: &VertexSet) -> Value {
    json!(ctx.graph().set_names(set))
}

/// Saturated bounds do not fit in a JSON number for most readers.
pub fn bound(b: u128) -> Value {
    u64::try_from(b).map_or_else(|_| json!(format!("≥ {}", u64::MAX)), |b| json!(b))
}

pub fn support_report(ctx: &GroupContext, r: &SupportReport) -> Value {
    json!({
        "supp": vertex_set(ctx, &r.supp),
        "cone": vertex_set(ctx, &r.cone),
        "finite_cone": vertex_set(ctx, &r.finite_cone),
        "stsupp": vertex_set(ctx, &r.stsupp),
        "components": words(&r.components),
        "irreducible": r.irreducible,
        "stably_irreducible": r.stably_irreducible,
        "strongly_irreducible": r.strongly_irreducible,
        "regular": r.regular,
    })
}

pub fn certificate(ctx: &GroupContext, c: &SearchCertificate) -> Value {
    json!({
        "element": word(&c.element),
        "n": c.n(),
        "letters": c.letters,
        "exponent_trace": c.exponent_trace.iter().map(|&(m, n)| json!([m, n])).collect::<Vec<_>>(),
        "achieved": vertex_set(ctx, &c.achieved),
        "classification": support_report(ctx, &c.classification),
    })
}

pub fn line_cover(cover: &LineCover) -> Value {
    json!({
        "rows": cover.rows,
        "columns": cover.columns,
        "rays": cover.rays.iter().map(|&(p, q)| format!("{p}/{q}")).collect::<Vec<_>>(),
    })
}

pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        let mut r = Report::new("supp", json!({}), json!({"supp": ["a", "b"], "regular": true}));
        r.insert("note", json!("x"));
        let text = r.with_bounds(json!({"cap": 11})).to_text();
        assert_eq!(text, "note: x\nregular: true\nsupp: [a, b]\nbounds:\n  cap: 11\n");
    }

    #[test]
    fn saturated_bounds_are_strings() {
        assert_eq!(bound(7), json!(7));
        assert!(bound(u128::MAX).is_string());
    }
}
