use std::io::Read;
use std::path::Path;

use scheme_minor_core::graph::format::{parse_graph, GraphFormat};
use scheme_minor_core::Graph;

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

/// Edge JSON when the text starts with `{`, graph6 otherwise.
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = read_text(path)?;
    let trimmed = text.trim();
    let format = if trimmed.starts_with('{') {
        GraphFormat::EdgeJson
    } else {
        GraphFormat::Graph6
    };
    Ok(parse_graph(trimmed, format)?)
}
