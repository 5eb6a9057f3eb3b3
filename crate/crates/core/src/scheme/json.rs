use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ColoredScheme, HScheme};
use crate::error::{Error, Result};
use crate::graph::format::json_error;
use crate::graph::Graph;

/// Vertex references are accepted as integers or decimal strings.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Text(String),
}

impl VertexRef {
    fn resolve(&self) -> Result<usize> {
        match self {
            VertexRef::Index(i) => Ok(*i),
            VertexRef::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("{s:?} is not a vertex index"))),
        }
    }
}

/// Wire form of a scheme: `{"pattern", "host", "roots": {"h": g},
/// "paths": {"u-v": [g0, g1, ...]}, "colors"?: [..]}`.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct SchemeJson {
    pub pattern: Graph,
    pub host: Graph,
    pub roots: BTreeMap<String, VertexRef>,
    pub paths: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<usize>>,
}

pub(crate) fn parse_vertex(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Validation(format!("{s:?} is not a vertex index")))
}

fn parse_edge_key(k: &str) -> Result<(usize, usize)> {
    let (a, b) = k
        .split_once('-')
        .ok_or_else(|| Error::Validation(format!("path key {k:?} is not of the form u-v")))?;
    Ok((parse_vertex(a)?, parse_vertex(b)?))
}

impl SchemeJson {
    pub fn into_scheme(self) -> Result<(HScheme, Option<Vec<usize>>)> {
        let mut roots = vec![usize::MAX; self.pattern.n()];
        for (h, g) in &self.roots {
            let h = parse_vertex(h)?;
            if h >= roots.len() {
                return Err(Error::Validation(format!("root given for missing pattern vertex {h}")));
            }
            roots[h] = g.resolve()?;
        }
        if let Some(v) = roots.iter().position(|&r| r == usize::MAX) {
            return Err(Error::Validation(format!("pattern vertex {v} has no root")));
        }
        let mut paths = BTreeMap::new();
        for (k, p) in self.paths {
            paths.insert(parse_edge_key(&k)?, p);
        }
        let s = HScheme::new(self.pattern, self.host, roots, paths)?;
        Ok((s, self.colors))
    }

    pub fn from_scheme(s: &HScheme, colors: Option<&[usize]>) -> Self {
        SchemeJson {
            pattern: s.pattern.clone(),
            host: s.host.clone(),
            roots: s
                .roots
                .iter()
                .enumerate()
                .map(|(h, &g)| (h.to_string(), VertexRef::Index(g)))
                .collect(),
            paths: s
                .paths
                .iter()
                .map(|(&(u, v), p)| (format!("{u}-{v}"), p.clone()))
                .collect(),
            colors: colors.map(<[usize]>::to_vec),
        }
    }

    pub fn from_colored(c: &ColoredScheme) -> Self {
        Self::from_scheme(&c.scheme, Some(&c.colors))
    }
}

/// Parses scheme JSON; a `colors` array, when present, is returned alongside.
pub fn parse_scheme(text: &str) -> Result<(HScheme, Option<Vec<usize>>)> {
    let raw: SchemeJson = serde_json::from_str(text).map_err(json_error)?;
    raw.into_scheme()
}

pub fn scheme_to_json(s: &HScheme) -> String {
    serde_json::to_string(&SchemeJson::from_scheme(s, None)).expect("scheme serializes")
}
