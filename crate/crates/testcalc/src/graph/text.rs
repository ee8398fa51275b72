//! Line-oriented text format for graphs.
//!
//! ```text
//! # comment
//! node <id> [<label...>]
//! edge <src> <dst>
//! ```
//!
//! Ids are whitespace-free tokens; a node's optional label is the rest of
//! its line. Blank lines and lines starting with `#` are skipped. Unknown
//! keywords, redeclared nodes, duplicate edges, and edges naming undeclared
//! nodes are all errors.

use thiserror::Error;

use super::ProgramGraph;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct GraphTextError {
    pub line: usize,
    pub message: String,
}

pub fn parse_graph_text(src: &str) -> Result<ProgramGraph, GraphTextError> {
    let mut graph = ProgramGraph::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| GraphTextError { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (trimmed, ""),
        };
        match keyword {
            "node" => {
                if rest.is_empty() {
                    return Err(err("`node` needs an id".into()));
                }
                let (id, label) = match rest.split_once(char::is_whitespace) {
                    Some((id, label)) => (id, Some(label.trim())),
                    None => (rest, None),
                };
                let node = graph
                    .add_node(id)
                    .map_err(|_| err(format!("node `{id}` declared twice")))?;
                if let Some(label) = label {
                    graph.set_label(node, label);
                }
            }
            "edge" => {
                let mut tokens = rest.split_whitespace();
                let (Some(src_id), Some(dst_id), None) =
                    (tokens.next(), tokens.next(), tokens.next())
                else {
                    return Err(err("`edge` needs exactly two node ids".into()));
                };
                let src = graph
                    .node_id(src_id)
                    .ok_or_else(|| err(format!("edge references undeclared node `{src_id}`")))?;
                let dst = graph
                    .node_id(dst_id)
                    .ok_or_else(|| err(format!("edge references undeclared node `{dst_id}`")))?;
                graph
                    .add_edge(src, dst)
                    .map_err(|_| err(format!("duplicate edge ({src_id}, {dst_id})")))?;
            }
            other => {
                return Err(err(format!(
                    "unknown keyword `{other}` (expected `node` or `edge`)"
                )));
            }
        }
    }
    Ok(graph)
}

/// Inverse of [`parse_graph_text`]; nodes first, then edges, both in
/// insertion order.
pub fn write_graph_text(graph: &ProgramGraph) -> String {
    let mut out = String::new();
    for node in graph.nodes() {
        match graph.label(node) {
            Some(label) => out.push_str(&format!("node {} {}\n", graph.node_name(node), label)),
            None => out.push_str(&format!("node {}\n", graph.node_name(node))),
        }
    }
    for (a, b) in graph.edges() {
        out.push_str(&format!(
            "edge {} {}\n",
            graph.node_name(a),
            graph.node_name(b)
        ));
    }
    out
}
