//! Text encodings: the edge-JSON object format and graph6.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Graph;
use crate::error::{Error, Result};

/// Largest order graph6 encodes with its one-byte size prefix.
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeJson,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-json" | "json" => Ok(GraphFormat::EdgeJson),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::Parse {
                location: "format".into(),
                message: format!("unknown graph format {other:?}"),
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<String, String>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges)?;
        match j.labels {
            None => Ok(g),
            Some(raw) => {
                let mut labels = BTreeMap::new();
                for (k, name) in raw {
                    let v: usize = k.parse().map_err(|_| {
                        Error::Validation(format!("label key {k:?} is not a vertex index"))
                    })?;
                    labels.insert(v, name);
                }
                g.with_labels(labels)
            }
        }
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g
                .labels()
                .map(|l| l.iter().map(|(v, s)| (v.to_string(), s.clone())).collect()),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    let message = e.to_string();
    // Graph-level checks run inside deserialization and surface as data errors.
    if e.classify() == serde_json::error::Category::Data && message.starts_with("invalid input:") {
        return Error::Validation(message);
    }
    Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message,
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeJson => {
            let raw: GraphJson = serde_json::from_str(text).map_err(json_error)?;
            Graph::try_from(raw)
        }
        GraphFormat::Graph6 => from_graph6(text),
    }
}

pub fn to_edge_json(g: &Graph) -> String {
    serde_json::to_string(g).expect("graph serialization is infallible")
}

/// Encodes with the standard graph6 layout: size byte, then the upper
/// triangle column by column, six bits per printable character.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::capacity("graph6 vertex count", GRAPH6_MAX_VERTICES, n));
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((63 + n as u8) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((63 + acc) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((63 + (acc << (6 - filled))) as char);
    }
    Ok(out)
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let body = text.trim_end_matches(['\n', '\r']);
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body);
    let bytes = body.as_bytes();
    let err = |byte: usize, message: String| Error::Parse {
        location: format!("byte {byte}"),
        message,
    };
    let Some(&first) = bytes.first() else {
        return Err(err(0, "empty graph6 string".into()));
    };
    if !(63..=126).contains(&first) {
        return Err(err(0, format!("invalid size byte {first:#x}")));
    }
    if first == 126 {
        return Err(err(
            0,
            format!("multi-byte sizes (n > {GRAPH6_MAX_VERTICES}) are not supported"),
        ));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - 1 != need {
        return Err(err(
            bytes.len().min(need + 1),
            format!("expected {need} data bytes for n={n}, found {}", bytes.len() - 1),
        ));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            let pos = 1 + idx / 6;
            let b = bytes[pos];
            if !(63..=126).contains(&b) {
                return Err(err(pos, format!("invalid data byte {b:#x}")));
            }
            if ((b - 63) >> (5 - idx % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    // padding bits must be zero
    if !nbits.is_multiple_of(6) {
        let last = bytes[need] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(err(need, "nonzero padding bits".into()));
        }
    }
    Graph::from_edges(n, &edges)
}
