//! JSON schemas: quiver definition files and graded element files.
//!
//! The quiver document has top-level keys `vertices`, `arrows`,
//! `fixed_types`, optional `framing`, and `params`; unknown keys are
//! rejected. Weights are affine-linear expressions in declared parameters,
//! e.g. `"t1"` or `"-t1-t2"`.

use super::model::*;
use crate::symbolic::{parse_polynomial, Polynomial, Variable};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, thiserror::Error)]
pub enum JsonError {
    #[error("json: {0}")]
    Syntax(String),
    #[error("bad weight expression `{0}`: {1}")]
    Weight(String, String),
    #[error("reserved name `{0}` (x*/u* digit patterns and `hbar` are reserved)")]
    ReservedName(String),
    #[error("{0}")]
    Model(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: u32,
    theta: u32,
    sgn: i8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    id: u32,
    src: u32,
    tgt: u32,
    theta: u32,
    sgn: i8,
    weight: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FramingDoc {
    rank: usize,
    weights: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<VertexDoc>,
    arrows: Vec<ArrowDoc>,
    #[serde(default)]
    fixed_types: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    framing: BTreeMap<String, FramingDoc>,
    #[serde(default)]
    params: Vec<String>,
}

fn reserved(name: &str) -> bool {
    if name == "hbar" {
        return true;
    }
    let mut chars = name.chars();
    match chars.next() {
        Some('x') | Some('u') => chars.next().map_or(false, |c| c.is_ascii_digit()),
        _ => false,
    }
}

fn parse_weight(src: &str, declared: &[String]) -> Result<Polynomial, JsonError> {
    let p = parse_polynomial(src).map_err(|e| JsonError::Weight(src.into(), e.to_string()))?;
    if !p.is_affine() {
        return Err(JsonError::Weight(src.into(), "not affine-linear".into()));
    }
    for v in p.variables() {
        match v {
            Variable::Weight(n) => {
                if !declared.iter().any(|d| d == n.as_str()) {
                    return Err(JsonError::Weight(
                        src.into(),
                        format!("undeclared parameter {n}"),
                    ));
                }
            }
            other => {
                return Err(JsonError::Weight(
                    src.into(),
                    format!("only declared parameters may appear, found {other}"),
                ))
            }
        }
    }
    Ok(p)
}

pub fn quiver_from_json(text: &str) -> Result<DualityQuiver, JsonError> {
    let doc: QuiverDoc =
        serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    for p in &doc.params {
        if reserved(p) {
            return Err(JsonError::ReservedName(p.clone()));
        }
    }
    let vertices = doc
        .vertices
        .iter()
        .map(|v| VertexData {
            id: v.id,
            theta: v.theta,
            sgn: v.sgn,
        })
        .collect();
    let mut arrows = Vec::new();
    for a in &doc.arrows {
        arrows.push(ArrowData {
            id: a.id,
            src: a.src,
            tgt: a.tgt,
            theta: a.theta,
            sgn: a.sgn,
            weight: parse_weight(&a.weight, &doc.params)?,
        });
    }
    let mut fixed_types = BTreeMap::new();
    for (k, v) in &doc.fixed_types {
        let id: u32 = k
            .parse()
            .map_err(|_| JsonError::Model(format!("bad vertex id key {k}")))?;
        let ty = match v.as_str() {
            "Sp" => FixedType::Sp,
            "OEven" => FixedType::OEven,
            "OOdd" => FixedType::OOdd,
            other => return Err(JsonError::Model(format!("unknown fixed type {other}"))),
        };
        fixed_types.insert(id, ty);
    }
    let mut framing = Framing::new();
    for (k, f) in &doc.framing {
        let id: u32 = k
            .parse()
            .map_err(|_| JsonError::Model(format!("bad orbit id key {k}")))?;
        let mut weights = Vec::new();
        for w in &f.weights {
            if reserved(w) {
                return Err(JsonError::ReservedName(w.clone()));
            }
            weights.push(Variable::weight(w));
        }
        framing.insert(id, FramingBlock { rank: f.rank, weights });
    }
    Ok(DualityQuiver {
        vertices,
        arrows,
        fixed_types,
        framing,
        params: doc.params,
    })
}

pub fn quiver_to_json(q: &DualityQuiver) -> String {
    let doc = QuiverDoc {
        vertices: q
            .vertices
            .iter()
            .map(|v| VertexDoc {
                id: v.id,
                theta: v.theta,
                sgn: v.sgn,
            })
            .collect(),
        arrows: q
            .arrows
            .iter()
            .map(|a| ArrowDoc {
                id: a.id,
                src: a.src,
                tgt: a.tgt,
                theta: a.theta,
                sgn: a.sgn,
                weight: a.weight.to_string().replace(' ', ""),
            })
            .collect(),
        fixed_types: q
            .fixed_types
            .iter()
            .map(|(k, v)| {
                (
                    k.to_string(),
                    match v {
                        FixedType::Sp => "Sp".to_string(),
                        FixedType::OEven => "OEven".to_string(),
                        FixedType::OOdd => "OOdd".to_string(),
                    },
                )
            })
            .collect(),
        framing: q
            .framing
            .iter()
            .map(|(k, f)| {
                (
                    k.to_string(),
                    FramingDoc {
                        rank: f.rank,
                        weights: f.weights.iter().map(|w| w.to_string()).collect(),
                    },
                )
            })
            .collect(),
        params: q.params.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

// ---------------------------------------------------------------------------
// Graded element files
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    /// Vertex id (algebra) or orbit representative (module) -> rank.
    pub grading: BTreeMap<String, u32>,
    /// Canonical polynomial text.
    pub poly: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    /// "algebra" or "module"
    pub kind: String,
    pub components: Vec<ComponentDoc>,
}

impl ElementDoc {
    pub fn parse(text: &str) -> Result<ElementDoc, JsonError> {
        serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_jordan() {
        let q = jordan_tripled(FixedType::Sp);
        let text = quiver_to_json(&q);
        let q2 = quiver_from_json(&text).unwrap();
        assert!(q2.validate().is_valid());
        let text2 = quiver_to_json(&q2);
        assert_eq!(text, text2);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"vertices": [], "arrows": [], "params": [], "bogus": 1}"#;
        assert!(quiver_from_json(text).is_err());
    }

    #[test]
    fn undeclared_weight_rejected() {
        let text = r#"{
            "vertices": [{"id": 1, "theta": 1, "sgn": -1}],
            "arrows": [{"id": 0, "src": 1, "tgt": 1, "theta": 0, "sgn": 1, "weight": "t9"}],
            "fixed_types": {"1": "Sp"},
            "params": ["t1"]
        }"#;
        assert!(matches!(quiver_from_json(text), Err(JsonError::Weight(..))));
    }

    #[test]
    fn reserved_param_rejected() {
        let text = r#"{
            "vertices": [],
            "arrows": [],
            "params": ["x1_1_1"]
        }"#;
        assert!(matches!(
            quiver_from_json(text),
            Err(JsonError::ReservedName(_))
        ));
    }
}
