//! Input documents: UTF-8 `key: value` files or JSON objects.
//!
//! ```text
//! # comment
//! name: p2a
//! vars: x y z
//! omega: y*z^2*dx + x^2*z*dy
//!        - (x^2*y + x*y*z)*dz        (indented lines continue a value)
//! map: x0, x1, x2
//! field X: [x0, -x1, 0]
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exterior::{DiffForm, VectorField};
use crate::polyring::Polynomial;

use super::parse::{parse_form, parse_polynomial_list, parse_vector_field, ParseError, Vars};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(deserialize_with = "de_vars")]
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub fields: BTreeMap<String, String>,
}

fn de_vars<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum V {
        List(Vec<String>),
        Text(String),
    }
    Ok(match V::deserialize(d)? {
        V::List(v) => v,
        V::Text(s) => split_vars(&s),
    })
}

fn split_vars(s: &str) -> Vec<String> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(str::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocError {
    Syntax { line: usize, message: String },
    Json(String),
    MissingKey(&'static str),
    Expression { key: String, error: ParseError },
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Syntax { line, message } => write!(f, "input line {line}: {message}"),
            DocError::Json(m) => write!(f, "invalid JSON input: {m}"),
            DocError::MissingKey(k) => write!(f, "missing key `{k}`"),
            DocError::Expression { key, error } => write!(f, "in `{key}`: {error}"),
        }
    }
}

impl std::error::Error for DocError {}

/// Split a comma-separated list at top-level commas (outside brackets).
fn split_top_level(s: &str) -> Vec<String> {
    let s = s.trim();
    let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

impl InputDocument {
    /// Parse either format; JSON is recognized by a leading `{`.
    pub fn parse(text: &str) -> Result<InputDocument, DocError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()));
        }
        let mut entries: Vec<(usize, String, String)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if content.trim().is_empty() {
                continue;
            }
            if content.starts_with(|c: char| c.is_whitespace()) {
                match entries.last_mut() {
                    Some((_, _, v)) => {
                        v.push(' ');
                        v.push_str(content.trim());
                        continue;
                    }
                    None => {
                        return Err(DocError::Syntax { line, message: "continuation line without a key".into() })
                    }
                }
            }
            let Some((key, value)) = content.split_once(':') else {
                return Err(DocError::Syntax { line, message: "expected `key: value`".into() });
            };
            entries.push((line, key.trim().to_string(), value.trim().to_string()));
        }
        let mut doc = InputDocument::default();
        let mut seen_vars = false;
        for (line, key, value) in entries {
            match key.as_str() {
                "name" => doc.name = Some(value),
                "vars" => {
                    doc.vars = split_vars(&value);
                    seen_vars = true;
                }
                "omega" => doc.omega = Some(value),
                "map" => doc.map = Some(split_top_level(&value)),
                k if k.starts_with("field ") => {
                    doc.fields.insert(k["field ".len()..].trim().to_string(), value);
                }
                _ => return Err(DocError::Syntax { line, message: format!("unknown key `{key}`") }),
            }
        }
        if !seen_vars {
            return Err(DocError::MissingKey("vars"));
        }
        Ok(doc)
    }

    /// Render as a `key: value` document.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("name: {n}\n"));
        }
        s.push_str(&format!("vars: {}\n", self.vars.join(" ")));
        if let Some(w) = &self.omega {
            s.push_str(&format!("omega: {w}\n"));
        }
        if let Some(m) = &self.map {
            s.push_str(&format!("map: {}\n", m.join(", ")));
        }
        for (k, v) in &self.fields {
            s.push_str(&format!("field {k}: {v}\n"));
        }
        s
    }

    pub fn variables(&self) -> Result<Vars, DocError> {
        Vars::new(&self.vars).map_err(|error| DocError::Expression { key: "vars".into(), error })
    }

    pub fn form(&self) -> Result<DiffForm, DocError> {
        let text = self.omega.as_deref().ok_or(DocError::MissingKey("omega"))?;
        parse_form(text, &self.variables()?).map_err(|error| DocError::Expression { key: "omega".into(), error })
    }

    pub fn map_components(&self) -> Result<Vec<Polynomial>, DocError> {
        let comps = self.map.as_ref().ok_or(DocError::MissingKey("map"))?;
        let vars = self.variables()?;
        let joined = format!("[{}]", comps.join(", "));
        parse_polynomial_list(&joined, &vars).map_err(|error| DocError::Expression { key: "map".into(), error })
    }

    pub fn vector_fields(&self) -> Result<BTreeMap<String, VectorField>, DocError> {
        let vars = self.variables()?;
        self.fields
            .iter()
            .map(|(k, v)| {
                parse_vector_field(v, &vars)
                    .map(|x| (k.clone(), x))
                    .map_err(|error| DocError::Expression { key: format!("field {k}"), error })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_with_continuation() {
        let doc = InputDocument::parse(
            "# first example\nname: p2a\nvars: x y z\nomega: y*z^2*dx + x^2*z*dy\n   - (x^2*y + x*y*z)*dz\n",
        )
        .unwrap();
        assert_eq!(doc.vars, ["x", "y", "z"]);
        assert_eq!(doc.form().unwrap().nvars(), 3);
        let again = InputDocument::parse(&doc.to_text()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn json_input() {
        let doc = InputDocument::parse(r#"{"vars": "x0 x1 x2", "omega": "x1*dx0 - x0*dx1"}"#).unwrap();
        assert_eq!(doc.vars.len(), 3);
        let doc2 = InputDocument::parse(r#"{"vars": ["a","b","c","d"], "map": ["a","b","c"]}"#).unwrap();
        assert_eq!(doc2.map_components().unwrap().len(), 3);
    }

    #[test]
    fn errors() {
        assert!(matches!(InputDocument::parse("omega: dx"), Err(DocError::MissingKey("vars"))));
        assert!(matches!(InputDocument::parse("vars: x\nfoo: 1"), Err(DocError::Syntax { line: 2, .. })));
        let doc = InputDocument::parse("vars: x y z\nomega: x*dx +").unwrap();
        assert!(matches!(doc.form(), Err(DocError::Expression { .. })));
    }
}
