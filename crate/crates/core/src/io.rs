//! JSON document formats and DOT export.
//!
//! Every document is one JSON object with a `kind` field. Emission is
//! compact with sorted keys, so equal values give identical bytes. Ground
//! elements and message indices are 1-based in every document.
//!
//! | kind             | fields                                                     |
//! |------------------|------------------------------------------------------------|
//! | `polymatroid`    | `n`, `rank` (2^n entries, bitmask order)                   |
//! | `matroid`        | `n`, and `rank` or `independent` (lists of elements)       |
//! | `representation` | `q`, `rows`, `matrices` (each a list of columns)           |
//! | `network`        | `nodes`, `inputs`, `edges`, `demands`                      |
//! | `code`           | `q`, `k`, `m`, `encodings` (edge id to row-major `mk x k`) |
//! | `mapping`        | `f` (edge id to element)                                   |
//! | `script`         | `step1`, `step2`, `step3` (`[i, u]` pairs)                 |

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coding::{PolymatroidMapping, VectorLinearCode};
use crate::constructor::ChoiceScript;
use crate::ff_linalg::{FieldSpec, FqMatrix};
use crate::matroid::{Matroid, Presentation};
use crate::network::{EdgeId, Network, NodeId};
use crate::polymatroid::{GroundVector, RankTable};
use crate::representation::Representation;
use crate::{elements_mask, mask_elements, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{kind} document: {message}")]
    Invalid { kind: &'static str, message: String },
}

fn invalid(kind: &'static str, message: impl Into<String>) -> IoError {
    IoError::Invalid { kind, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Polymatroid(RankTable),
    Matroid(Matroid),
    Representation(Representation),
    Network(Network),
    Code(VectorLinearCode),
    Mapping(PolymatroidMapping),
    Script(ChoiceScript),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Polymatroid(_) => "polymatroid",
            Document::Matroid(_) => "matroid",
            Document::Representation(_) => "representation",
            Document::Network(_) => "network",
            Document::Code(_) => "code",
            Document::Mapping(_) => "mapping",
            Document::Script(_) => "script",
        }
    }
}

/// A parsed document plus non-fatal findings (e.g. a rank table that fails
/// the axioms, which only becomes an error when it is used).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub document: Document,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawInput {
    edge: u32,
    head: String,
    msg: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawEdge {
    id: u32,
    tail: String,
    head: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDemand {
    node: String,
    msg: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Raw {
    Polymatroid {
        n: usize,
        rank: Vec<u32>,
    },
    Matroid {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rank: Option<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        independent: Option<Vec<Vec<usize>>>,
    },
    Representation {
        q: u32,
        rows: usize,
        matrices: Vec<Vec<Vec<u32>>>,
    },
    Network {
        nodes: Vec<String>,
        inputs: Vec<RawInput>,
        edges: Vec<RawEdge>,
        demands: Vec<RawDemand>,
    },
    Code {
        q: u32,
        k: usize,
        m: usize,
        encodings: BTreeMap<String, Vec<u32>>,
    },
    Mapping {
        f: BTreeMap<String, usize>,
    },
    Script {
        step1: Vec<u32>,
        step2: Vec<(usize, Vec<u32>)>,
        step3: Vec<(usize, Vec<u32>)>,
    },
}

/// Compact JSON with sorted keys, no trailing newline.
pub fn emit(doc: &Document) -> String {
    let raw = to_raw(doc);
    let value = serde_json::to_value(&raw).expect("plain data serializes");
    serde_json::to_string(&value).expect("value serializes")
}

/// Parses exactly one document.
pub fn parse(text: &str) -> Result<Parsed, IoError> {
    let mut docs = parse_stream(text)?;
    match docs.len() {
        1 => Ok(docs.remove(0)),
        n => Err(IoError::Syntax(format!("expected one document, found {n}"))),
    }
}

/// Parses a whitespace-separated sequence of documents.
pub fn parse_stream(text: &str) -> Result<Vec<Parsed>, IoError> {
    let mut out = Vec::new();
    for (index, value) in serde_json::Deserializer::from_str(text).into_iter::<serde_json::Value>().enumerate() {
        let value = value.map_err(|e| IoError::Syntax(e.to_string()))?;
        let raw: Raw = serde_json::from_value(value)
            .map_err(|e| IoError::Syntax(format!("document {}: {e}", index + 1)))?;
        out.push(from_raw(raw)?);
    }
    Ok(out)
}

fn one_based(elements: impl Iterator<Item = usize>) -> Vec<usize> {
    elements.map(|i| i + 1).collect()
}

fn to_raw(doc: &Document) -> Raw {
    match doc {
        Document::Polymatroid(t) => Raw::Polymatroid { n: t.n(), rank: t.values().to_vec() },
        Document::Matroid(m) => match m.presentation() {
            Presentation::Rank(t) => Raw::Matroid { n: m.n(), rank: Some(t.values().to_vec()), independent: None },
            Presentation::Independent(_) => Raw::Matroid {
                n: m.n(),
                rank: None,
                independent: Some(m.independent_sets().into_iter().map(|s| one_based(mask_elements(s))).collect()),
            },
        },
        Document::Representation(rep) => Raw::Representation {
            q: rep.field().p(),
            rows: rep.rows(),
            matrices: rep.matrices().iter().map(|a| a.columns().collect()).collect(),
        },
        Document::Network(net) => Raw::Network {
            nodes: net.nodes.iter().map(|v| v.0.clone()).collect(),
            inputs: net
                .inputs
                .iter()
                .map(|s| RawInput { edge: s.edge.0, head: s.head.0.clone(), msg: s.msg })
                .collect(),
            edges: net
                .edges
                .iter()
                .map(|e| RawEdge { id: e.id.0, tail: e.tail.0.clone(), head: e.head.0.clone() })
                .collect(),
            demands: net.demands.iter().map(|d| RawDemand { node: d.node.0.clone(), msg: d.msg }).collect(),
        },
        Document::Code(code) => Raw::Code {
            q: code.field().p(),
            k: code.k(),
            m: code.m(),
            encodings: code.encodings().iter().map(|(e, mat)| (e.0.to_string(), mat.data().to_vec())).collect(),
        },
        Document::Mapping(f) => Raw::Mapping { f: f.entries().iter().map(|(e, &i)| (e.0.to_string(), i + 1)).collect() },
        Document::Script(s) => {
            let pairs = |v: &[(usize, GroundVector)]| {
                v.iter().map(|(i, u)| (i + 1, u.components().to_vec())).collect::<Vec<_>>()
            };
            Raw::Script { step1: s.step1.components().to_vec(), step2: pairs(&s.step2), step3: pairs(&s.step3) }
        }
    }
}

fn field(kind: &'static str, q: u32) -> Result<FieldSpec, IoError> {
    FieldSpec::new(q).map_err(|e| invalid(kind, format!("field `q`: {e}")))
}

fn from_raw(raw: Raw) -> Result<Parsed, IoError> {
    let mut warnings = Vec::new();
    let document = match raw {
        Raw::Polymatroid { n, rank } => {
            let t = rank_table("polymatroid", n, rank)?;
            if let Verdict::Violation(v) = t.check_rank_axioms() {
                warnings.push(format!("rank table is not a polymatroid rank function: {v}"));
            }
            Document::Polymatroid(t)
        }
        Raw::Matroid { n, rank, independent } => {
            let m = match (rank, independent) {
                (Some(rank), None) => Matroid::from_rank(rank_table("matroid", n, rank)?),
                (None, Some(sets)) => {
                    let mut masks = Vec::with_capacity(sets.len());
                    for set in sets {
                        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i > n) {
                            return Err(invalid("matroid", format!("field `independent`: element {bad} out of range")));
                        }
                        masks.push(elements_mask(set.iter().map(|i| i - 1)));
                    }
                    Matroid::from_independent_sets(n, &masks)
                }
                _ => return Err(invalid("matroid", "exactly one of `rank` or `independent` is required")),
            }
            .map_err(|e| invalid("matroid", e.to_string()))?;
            if let Verdict::Violation(v) = m.check() {
                warnings.push(format!("not a matroid: {v}"));
            }
            Document::Matroid(m)
        }
        Raw::Representation { q, rows, matrices } => {
            let f = field("representation", q)?;
            let mut mats = Vec::with_capacity(matrices.len());
            for (i, cols) in matrices.iter().enumerate() {
                let m = FqMatrix::from_columns(rows, cols)
                    .map_err(|e| invalid("representation", format!("field `matrices[{i}]`: {e}")))?;
                mats.push(m);
            }
            Document::Representation(
                Representation::new(f, rows, mats).map_err(|e| invalid("representation", e.to_string()))?,
            )
        }
        Raw::Network { nodes, inputs, edges, demands } => {
            let mut net = Network::new();
            for v in nodes {
                net.add_node(NodeId(v));
            }
            for s in inputs {
                net.add_input(s.edge, NodeId(s.head), s.msg);
            }
            for e in edges {
                net.add_edge(e.id, NodeId(e.tail), NodeId(e.head));
            }
            for d in demands {
                net.add_demand(NodeId(d.node), d.msg);
            }
            if let Verdict::Violation(v) = net.validate() {
                return Err(invalid("network", v.to_string()));
            }
            Document::Network(net)
        }
        Raw::Code { q, k, m, encodings } => {
            let f = field("code", q)?;
            let mut mats = BTreeMap::new();
            for (key, data) in encodings {
                let e = edge_key("code", "encodings", &key)?;
                let mat = FqMatrix::new(m * k, k, data)
                    .map_err(|err| invalid("code", format!("field `encodings.{e}`: {err}")))?;
                mats.insert(EdgeId(e), mat);
            }
            Document::Code(VectorLinearCode::new(f, k, m, mats).map_err(|e| invalid("code", e.to_string()))?)
        }
        Raw::Mapping { f } => {
            let mut map = BTreeMap::new();
            for (key, i) in f {
                let e = edge_key("mapping", "f", &key)?;
                if i == 0 {
                    return Err(invalid("mapping", format!("field `f.{e}`: elements are 1-based")));
                }
                map.insert(EdgeId(e), i - 1);
            }
            Document::Mapping(PolymatroidMapping::new(map))
        }
        Raw::Script { step1, step2, step3 } => {
            let pairs = |name: &str, v: Vec<(usize, Vec<u32>)>| -> Result<Vec<(usize, GroundVector)>, IoError> {
                v.into_iter()
                    .map(|(i, u)| {
                        if i == 0 {
                            Err(invalid("script", format!("field `{name}`: elements are 1-based")))
                        } else {
                            Ok((i - 1, GroundVector::new(u)))
                        }
                    })
                    .collect()
            };
            Document::Script(ChoiceScript {
                step1: GroundVector::new(step1),
                step2: pairs("step2", step2)?,
                step3: pairs("step3", step3)?,
            })
        }
    };
    Ok(Parsed { document, warnings })
}

fn edge_key(kind: &'static str, name: &str, key: &str) -> Result<u32, IoError> {
    key.parse().map_err(|_| invalid(kind, format!("field `{name}`: key `{key}` is not an edge id")))
}

fn rank_table(kind: &'static str, n: usize, rank: Vec<u32>) -> Result<RankTable, IoError> {
    let expected = 1usize.checked_shl(n as u32).unwrap_or(0);
    if rank.len() != expected {
        return Err(invalid(kind, format!("field `rank`: expected {expected} entries for n={n}, found {}", rank.len())));
    }
    RankTable::new(rank).map_err(|e| invalid(kind, format!("field `rank`: {e}")))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn column_summary(mat: &FqMatrix, wide: bool) -> String {
    mat.columns()
        .map(|c| {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            parts.join(if wide { "," } else { "" })
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the network as a DOT digraph. Each input edge comes from a boxed
/// pseudo-node labelled with its message; demanding nodes list their demands.
/// With a code, every edge label also shows its encoding's columns.
pub fn export_dot(net: &Network, code: Option<&VectorLinearCode>) -> String {
    if net.nodes.is_empty() && net.inputs.is_empty() {
        return "digraph {}\n".to_string();
    }
    let wide = code.is_some_and(|c| c.field().p() > 10);
    let label = |e: EdgeId| match code.and_then(|c| c.encoding(e)) {
        Some(mat) => format!("{e}: {}", column_summary(mat, wide)),
        None => e.to_string(),
    };
    let mut out = String::from("digraph {\n  rankdir=TB;\n");
    let mut inputs: Vec<_> = net.inputs.iter().collect();
    inputs.sort_by_key(|s| s.msg);
    for s in &inputs {
        let _ = writeln!(out, "  {} [shape=box,label=\"x{}\"];", quote(&format!("src:x{}", s.msg)), s.msg);
    }
    for v in &net.nodes {
        let demands = net.demands_at(v);
        if demands.is_empty() {
            let _ = writeln!(out, "  {} [label={}];", quote(&format!("node:{v}")), quote(v.as_str()));
        } else {
            let list: Vec<String> = demands.iter().map(|j| format!("x{j}")).collect();
            let _ = writeln!(
                out,
                "  {} [shape=doublecircle,label={}];",
                quote(&format!("node:{v}")),
                quote(&format!("{v}\\ndemands: {}", list.join(",")))
            );
        }
    }
    for s in &inputs {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&format!("src:x{}", s.msg)),
            quote(&format!("node:{}", s.head)),
            quote(&label(s.edge))
        );
    }
    for e in &net.edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&format!("node:{}", e.tail)),
            quote(&format!("node:{}", e.head)),
            quote(&label(e.id))
        );
    }
    out.push_str("}\n");
    out
}
