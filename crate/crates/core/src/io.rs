//! Hypergraph file formats.
//!
//! JSON:
//!
//! ```json
//! {"vertices": ["a", "b"], "edges": [{"weight": 1.0, "members": {"a": 2.0, "b": 1.0}}]}
//! ```
//!
//! Text: one edge per line, `ω v1:γ1 v2:γ2 ...`. Blank lines and lines
//! starting with `#` are ignored; vertices are declared in order of first
//! appearance.

use std::fmt;
use std::path::Path;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph::{build_hypergraph, Hypergraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypergraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub weight: f64,
    #[serde(with = "ordered_members")]
    pub members: Vec<(String, f64)>,
}

/// Members as a JSON object whose key order is kept.
mod ordered_members {
    use super::*;

    pub fn serialize<S: Serializer>(members: &[(String, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(members.len()))?;
        for (k, v) in members {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }

    struct MembersVisitor;

    impl<'de> Visitor<'de> for MembersVisitor {
        type Value = Vec<(String, f64)>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object mapping vertex names to weights")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = Vec::with_capacity(access.size_hint().unwrap_or(0));
            while let Some((k, v)) = access.next_entry::<String, f64>()? {
                out.push((k, v));
            }
            Ok(out)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(String, f64)>, D::Error> {
        d.deserialize_map(MembersVisitor)
    }
}

pub fn parse_json(src: &str) -> Result<HypergraphSpec> {
    serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
}

pub fn emit_json(spec: &HypergraphSpec) -> String {
    serde_json::to_string_pretty(spec).expect("spec serializes")
}

pub fn parse_text(src: &str) -> Result<HypergraphSpec> {
    let mut vertices: Vec<String> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for (lineno, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let weight_field = fields.next().expect("non-empty line");
        let weight: f64 = weight_field.parse().map_err(|_| {
            Error::Parse(format!("line {}: bad edge weight `{weight_field}`", lineno + 1))
        })?;
        let mut members = Vec::new();
        for field in fields {
            let (name, gamma) = field.rsplit_once(':').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `vertex:weight`, got `{field}`", lineno + 1))
            })?;
            let gamma: f64 = gamma.parse().map_err(|_| {
                Error::Parse(format!("line {}: bad vertex weight in `{field}`", lineno + 1))
            })?;
            if seen.insert(name.to_string()) {
                vertices.push(name.to_string());
            }
            members.push((name.to_string(), gamma));
        }
        edges.push(EdgeSpec { weight, members });
    }
    Ok(HypergraphSpec { vertices, edges })
}

/// Text form. Fails for vertex names containing whitespace, or for vertices
/// that belong to no edge (the text format cannot declare them).
pub fn emit_text(spec: &HypergraphSpec) -> Result<String> {
    let mut used = std::collections::HashSet::new();
    for e in &spec.edges {
        used.extend(e.members.iter().map(|(n, _)| n.as_str()));
    }
    let mut first_seen = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for e in &spec.edges {
        for (n, _) in &e.members {
            if seen.insert(n.as_str()) {
                first_seen.push(n.as_str());
            }
        }
    }
    let declared: Vec<&str> = spec.vertices.iter().map(String::as_str).collect();
    if first_seen != declared {
        return Err(Error::InvalidParameter(
            "text format needs every vertex in an edge, declared in order of first appearance"
                .to_string(),
        ));
    }
    let mut out = String::new();
    for e in &spec.edges {
        out.push_str(&e.weight.to_string());
        for (name, gamma) in &e.members {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidParameter(format!(
                    "vertex name `{name}` cannot be written in text format"
                )));
            }
            out.push(' ');
            out.push_str(name);
            out.push(':');
            out.push_str(&gamma.to_string());
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parse either format, sniffing JSON by a leading `{`.
pub fn parse_any(src: &str) -> Result<HypergraphSpec> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<HypergraphSpec> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_any(&src)
}

pub fn load_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph> {
    build_hypergraph(&load_spec(path)?)
}
