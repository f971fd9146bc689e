//! Graph files: graph6 or the JSON edge list.

use std::path::Path;

use anyhow::{Context, Result};
use turan_core::SmallGraph;

pub fn read_graph(path: &Path) -> Result<SmallGraph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text, path.extension().is_some_and(|e| e == "g6"))
        .with_context(|| format!("parsing {}", path.display()))
}

/// graph6 when `graph6_by_name`, otherwise sniffed: a leading `{` means JSON.
pub fn parse_graph(text: &str, graph6_by_name: bool) -> Result<SmallGraph> {
    let trimmed = text.trim_start();
    if !graph6_by_name && trimmed.starts_with('{') {
        return Ok(SmallGraph::from_json(trimmed)?);
    }
    // One graph per file; ignore an optional `>>graph6<<` header.
    let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
    let line = body.lines().next().unwrap_or("");
    Ok(SmallGraph::decode_graph6(line)?)
}
