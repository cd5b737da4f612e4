//! Serialization of complexes and derived reports.
//!
//! Two input formats: the dart-level `ComplexDocument` (alpha pairs, sigma
//! cycles, multiplicities keyed by vertex-representative dart) and the
//! friendlier `GraphDocument` (vertices with rotations of edge endpoints),
//! which compiles down to the former. JSON keys are kept in sorted order so
//! serialization is byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::ExtendedQuiver;
use crate::ribbon::{BrauerComplex, Dart, RibbonComplex, StructureError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document: {0}")]
    BadDocument(String),
    #[error("invalid complex: {0:?}")]
    Structure(Vec<StructureError>),
}

/// Dart-level document: the visible form of a Brauer complex.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexDocument {
    pub darts: usize,
    pub alpha: Vec<(Dart, Dart)>,
    pub sigma: Vec<Vec<Dart>>,
    pub mult: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_labels: Option<BTreeMap<String, String>>,
}

impl ComplexDocument {
    pub fn from_complex(b: &BrauerComplex) -> ComplexDocument {
        let c = b.complex();
        let alpha = c
            .edges()
            .iter()
            .map(|&e| (e, c.alpha(e)))
            .collect();
        let sigma = c.vertices().iter().map(|&v| c.rotation(v)).collect();
        let mult = b
            .mult_map()
            .iter()
            .map(|(&v, &m)| (v.to_string(), m))
            .collect();
        let edge_labels = if c.edge_labels().is_empty() {
            None
        } else {
            Some(
                c.edge_labels()
                    .iter()
                    .map(|(&e, l)| (e.to_string(), l.clone()))
                    .collect(),
            )
        };
        ComplexDocument {
            darts: c.dart_count(),
            alpha,
            sigma,
            mult,
            edge_labels,
        }
    }

    pub fn to_complex(&self) -> Result<BrauerComplex, IoError> {
        let n = self.darts;
        let mut alpha = vec![usize::MAX; n];
        for &(a, b) in &self.alpha {
            if a >= n || b >= n {
                return Err(IoError::BadDocument(format!("alpha pair ({a},{b}) out of range")));
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        if alpha.iter().any(|&d| d == usize::MAX) {
            return Err(IoError::BadDocument("alpha pairs do not cover all darts".into()));
        }
        let mut sigma = vec![usize::MAX; n];
        for cyc in &self.sigma {
            for (i, &d) in cyc.iter().enumerate() {
                if d >= n {
                    return Err(IoError::BadDocument(format!("sigma dart {d} out of range")));
                }
                if sigma[d] != usize::MAX {
                    return Err(IoError::BadDocument(format!("dart {d} in two sigma cycles")));
                }
                sigma[d] = cyc[(i + 1) % cyc.len()];
            }
        }
        if sigma.iter().any(|&d| d == usize::MAX) {
            return Err(IoError::BadDocument("sigma cycles do not cover all darts".into()));
        }
        let labels = self
            .edge_labels
            .clone()
            .unwrap_or_default()
            .into_iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|d| (d, v))
                    .map_err(|_| IoError::BadDocument(format!("bad edge key {k}")))
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        let complex = RibbonComplex::with_labels(alpha, sigma, labels).map_err(IoError::Structure)?;
        let mut mult = BTreeMap::new();
        for (k, &m) in &self.mult {
            let v: usize = k
                .parse()
                .map_err(|_| IoError::BadDocument(format!("bad vertex key {k}")))?;
            mult.insert(complex.vertex_of(v.min(n.saturating_sub(1))), m);
            if v >= n {
                return Err(IoError::BadDocument(format!("vertex key {v} out of range")));
            }
        }
        BrauerComplex::new(complex, mult).map_err(IoError::Structure)
    }
}

/// Vertex-centric document; each rotation entry names an edge and one of its
/// two endpoints. Compiles to a `ComplexDocument` with darts `2k`, `2k+1`
/// for the k-th edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphVertex {
    pub id: String,
    pub mult: u32,
    /// Counter-clockwise rotation: `(edge id, endpoint 0|1)`.
    pub rotation: Vec<(String, u8)>,
}

impl GraphDocument {
    pub fn compile(&self) -> Result<ComplexDocument, IoError> {
        let edge_index: BTreeMap<&str, usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        if edge_index.len() != self.edges.len() {
            return Err(IoError::BadDocument("duplicate edge ids".into()));
        }
        let n = 2 * self.edges.len();
        let mut seen = vec![false; n];
        let mut sigma_cycles = Vec::new();
        let mut mult = BTreeMap::new();
        for v in &self.vertices {
            let mut cyc = Vec::new();
            for (e, end) in &v.rotation {
                let &k = edge_index
                    .get(e.as_str())
                    .ok_or_else(|| IoError::BadDocument(format!("unknown edge {e}")))?;
                if *end > 1 {
                    return Err(IoError::BadDocument(format!("endpoint {end} not in {{0,1}}")));
                }
                let d = 2 * k + *end as usize;
                if seen[d] {
                    return Err(IoError::BadDocument(format!(
                        "endpoint {e}:{end} appears twice"
                    )));
                }
                seen[d] = true;
                cyc.push(d);
            }
            if cyc.is_empty() {
                return Err(IoError::BadDocument(format!("vertex {} has no darts", v.id)));
            }
            mult.insert(cyc.iter().min().unwrap().to_string(), v.mult);
            sigma_cycles.push(cyc);
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(IoError::BadDocument(format!(
                "edge endpoint for dart {d} missing from all rotations"
            )));
        }
        let alpha = (0..self.edges.len()).map(|k| (2 * k, 2 * k + 1)).collect();
        let edge_labels = Some(
            self.edges
                .iter()
                .enumerate()
                .map(|(k, e)| ((2 * k).to_string(), e.clone()))
                .collect(),
        );
        Ok(ComplexDocument {
            darts: n,
            alpha,
            sigma: sigma_cycles,
            mult,
            edge_labels,
        })
    }
}

/// Parses either document flavor, detected by shape.
pub fn parse_complex(text: &str) -> Result<BrauerComplex, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("vertices").is_some() {
        let doc: GraphDocument = serde_json::from_value(value)?;
        doc.compile()?.to_complex()
    } else {
        let doc: ComplexDocument = serde_json::from_value(value)?;
        doc.to_complex()
    }
}

pub fn to_json(b: &BrauerComplex) -> String {
    serde_json::to_string_pretty(&ComplexDocument::from_complex(b)).expect("serializable")
}

/// Quiver report document mirroring `ExtendedQuiver`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverDocument {
    pub vertices: Vec<usize>,
    pub arrows: Vec<ArrowDocument>,
    pub a_cycles: Vec<Vec<usize>>,
    pub g_cycles: Vec<Vec<usize>>,
    pub a_cycle_mult: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowDocument {
    pub source: usize,
    pub target: usize,
    pub a_cycle: usize,
    pub a_pos: usize,
    pub g_cycle: usize,
    pub g_pos: usize,
    pub formal: bool,
}

impl QuiverDocument {
    pub fn from_quiver(q: &ExtendedQuiver) -> QuiverDocument {
        QuiverDocument {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDocument {
                    source: a.source,
                    target: a.target,
                    a_cycle: a.a_cycle,
                    a_pos: a.a_pos,
                    g_cycle: a.g_cycle,
                    g_pos: a.g_pos,
                    formal: a.formal,
                })
                .collect(),
            a_cycles: q.a_cycles.clone(),
            g_cycles: q.g_cycles.clone(),
            a_cycle_mult: q.a_cycle_mult.clone(),
        }
    }

    pub fn to_quiver(&self) -> ExtendedQuiver {
        ExtendedQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| crate::quiver::Arrow {
                    source: a.source,
                    target: a.target,
                    a_cycle: a.a_cycle,
                    a_pos: a.a_pos,
                    g_cycle: a.g_cycle,
                    g_pos: a.g_pos,
                    formal: a.formal,
                })
                .collect(),
            a_cycles: self.a_cycles.clone(),
            g_cycles: self.g_cycles.clone(),
            a_cycle_mult: self.a_cycle_mult.clone(),
        }
    }
}

/// 1-skeleton in DOT format with multiplicity labels; inspection only.
pub fn to_dot(b: &BrauerComplex) -> String {
    let c = b.complex();
    let mut out = String::from("graph brauer {\n");
    for v in c.vertices() {
        out.push_str(&format!("  v{v} [label=\"v{v} (f={})\"];\n", b.mult(v)));
    }
    for e in c.edges() {
        let u = c.vertex_of(e);
        let w = c.vertex_of(c.alpha(e));
        let label = c
            .edge_labels()
            .get(&e)
            .cloned()
            .unwrap_or_else(|| format!("e{e}"));
        out.push_str(&format!("  v{u} -- v{w} [label=\"{label}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::*;

    #[test]
    fn document_round_trip_on_fixtures() {
        for b in [segment(), theta(), theta_loop(), star3(), decagon_c1()] {
            let doc = ComplexDocument::from_complex(&b);
            let text = serde_json::to_string(&doc).unwrap();
            let back = parse_complex(&text).unwrap();
            assert_eq!(back.canonical_key(), b.canonical_key());
            // byte stability: serialize(parse(serialize(x))) == serialize(x)
            let text2 = serde_json::to_string(&ComplexDocument::from_complex(&back)).unwrap();
            assert_eq!(text, text2);
        }
    }

    #[test]
    fn graph_document_compiles() {
        let doc = GraphDocument {
            vertices: vec![
                GraphVertex {
                    id: "U".into(),
                    mult: 1,
                    rotation: vec![("a".into(), 0), ("b".into(), 0), ("c".into(), 0)],
                },
                GraphVertex {
                    id: "W".into(),
                    mult: 1,
                    rotation: vec![("a".into(), 1), ("b".into(), 1), ("c".into(), 1)],
                },
            ],
            edges: vec!["a".into(), "b".into(), "c".into()],
        };
        let b = doc.compile().unwrap().to_complex().unwrap();
        assert_eq!(b.canonical_key(), theta().canonical_key());
    }

    #[test]
    fn graph_document_rejects_duplicate_endpoints() {
        let doc = GraphDocument {
            vertices: vec![GraphVertex {
                id: "U".into(),
                mult: 1,
                rotation: vec![("a".into(), 0), ("a".into(), 0)],
            }],
            edges: vec!["a".into()],
        };
        assert!(doc.compile().is_err());
    }

    #[test]
    fn dot_export_mentions_all_edges() {
        let dot = to_dot(&theta());
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
