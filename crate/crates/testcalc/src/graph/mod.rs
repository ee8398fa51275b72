//! Directed graphs of program statements and their structural metrics.
//!
//! A [`ProgramGraph`] is a finite ordered set of named nodes plus a set of
//! directed edges. Nodes and edges remember their insertion order, so every
//! derived artifact (component lists, basis paths, DOT output) is
//! reproducible byte for byte.
//!
//! Component counting and the circuit rank treat the graph as undirected;
//! sources, sinks, and path enumeration use the directed view.

use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

mod basis;
mod dot;
mod reduce;
mod text;

pub use reduce::{ReductionStep, StructureReport};
pub use text::{parse_graph_text, write_graph_text, GraphTextError};

/// Identifier of a node inside one [`ProgramGraph`].
///
/// Ids are dense indexes assigned in insertion order. They are only
/// meaningful for the graph that issued them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("node `{0}` already exists")]
    DuplicateNode(String),
    #[error("edge ({0}, {1}) already exists")]
    DuplicateEdge(String, String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("graph is not single-entry/single-exit: {0}")]
    NotSingleEntryExit(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// Node, edge, and component counts together with the two cyclomatic
/// numbers: `circuit_rank = e - n + p` and `mccabe = e - n + 2p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GraphMetrics {
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub circuit_rank: usize,
    pub mccabe: usize,
}

/// A walk through the graph: a nonempty node sequence in which every
/// consecutive pair is an edge. Nodes may repeat (loops do).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    nodes: Vec<NodeId>,
}

impl Path {
    /// Validates that `nodes` is nonempty and that each consecutive pair is
    /// an edge of `graph`.
    pub fn new(graph: &ProgramGraph, nodes: Vec<NodeId>) -> Result<Self, GraphError> {
        if nodes.is_empty() {
            return Err(GraphError::InvalidPath(
                "a path needs at least one node".into(),
            ));
        }
        for &n in &nodes {
            if n.0 >= graph.node_count() {
                return Err(GraphError::InvalidPath(format!(
                    "node index {} is out of range",
                    n.0
                )));
            }
        }
        for w in nodes.windows(2) {
            if !graph.has_edge(w[0], w[1]) {
                return Err(GraphError::InvalidPath(format!(
                    "({}, {}) is not an edge",
                    graph.node_name(w[0]),
                    graph.node_name(w[1])
                )));
            }
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Consecutive node pairs, in traversal order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    /// How often this path traverses each edge of `graph`, indexed by edge
    /// insertion order.
    pub fn incidence(&self, graph: &ProgramGraph) -> Vec<u64> {
        let mut counts = vec![0u64; graph.edge_count()];
        for (a, b) in self.edges() {
            let idx = graph
                .edge_index(a, b)
                .expect("path edge must exist in the graph");
            counts[idx] += 1;
        }
        counts
    }

    pub fn node_names<'g>(&self, graph: &'g ProgramGraph) -> Vec<&'g str> {
        self.nodes.iter().map(|&n| graph.node_name(n)).collect()
    }
}

/// Directed graph with insertion-ordered nodes and edges.
///
/// Edges form a set: inserting the same `(src, dst)` pair twice through
/// [`ProgramGraph::add_edge`] is an error. Self-loops are allowed.
#[derive(Debug, Clone, Default)]
pub struct ProgramGraph {
    names: Vec<String>,
    labels: Vec<Option<String>>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    edge_set: HashSet<(usize, usize)>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl ProgramGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> Result<NodeId, GraphError> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(GraphError::DuplicateNode(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.labels.push(None);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        Ok(NodeId(id))
    }

    pub fn set_label(&mut self, node: NodeId, label: impl Into<String>) {
        self.labels[node.0] = Some(label.into());
    }

    /// Adds a directed edge; a second insertion of the same pair is an error.
    pub fn add_edge(&mut self, src: NodeId, dst: NodeId) -> Result<(), GraphError> {
        if !self.insert_edge(src, dst) {
            return Err(GraphError::DuplicateEdge(
                self.names[src.0].clone(),
                self.names[dst.0].clone(),
            ));
        }
        Ok(())
    }

    /// Set-semantics insertion: returns `false` when the edge was already
    /// present. Used by builders that derive the same edge twice (a goto
    /// landing on the fall-through successor, say).
    pub fn insert_edge(&mut self, src: NodeId, dst: NodeId) -> bool {
        if !self.edge_set.insert((src.0, dst.0)) {
            return false;
        }
        self.edges.push((src.0, dst.0));
        self.succ[src.0].push(dst.0);
        self.pred[dst.0].push(src.0);
        true
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied().map(NodeId)
    }

    pub fn node_name(&self, node: NodeId) -> &str {
        &self.names[node.0]
    }

    pub fn label(&self, node: NodeId) -> Option<&str> {
        self.labels[node.0].as_deref()
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.names.len()).map(NodeId)
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().map(|&(a, b)| (NodeId(a), NodeId(b)))
    }

    pub fn has_edge(&self, src: NodeId, dst: NodeId) -> bool {
        self.edge_set.contains(&(src.0, dst.0))
    }

    /// Position of `(src, dst)` in edge insertion order.
    pub fn edge_index(&self, src: NodeId, dst: NodeId) -> Option<usize> {
        self.edges.iter().position(|&e| e == (src.0, dst.0))
    }

    pub fn successors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.succ[node.0].iter().copied().map(NodeId)
    }

    pub fn predecessors(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.pred[node.0].iter().copied().map(NodeId)
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.succ[node.0].len()
    }

    pub fn in_degree(&self, node: NodeId) -> usize {
        self.pred[node.0].len()
    }

    /// Partition of the nodes into undirected connected components.
    ///
    /// Components are ordered by their smallest member, members ascending.
    /// Every node lands in exactly one component; the empty graph has none.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let n = self.names.len();
        let mut undirected: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            undirected[a].push(b);
            undirected[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &undirected[u] {
                    if !seen[v] {
                        seen[v] = true;
                        component.push(v);
                        queue.push_back(v);
                    }
                }
            }
            component.sort_unstable();
            components.push(component.into_iter().map(NodeId).collect());
        }
        components
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// `e - n + p`: the number of independent cycles of the undirected view.
    pub fn circuit_rank(&self) -> usize {
        let p = self.component_count();
        self.edges.len() + p - self.names.len()
    }

    /// `e - n + 2p`: cyclomatic complexity. For a connected
    /// single-entry/single-exit graph this is the size of a basis path set.
    pub fn mccabe_complexity(&self) -> usize {
        let p = self.component_count();
        self.edges.len() + 2 * p - self.names.len()
    }

    pub fn metrics(&self) -> GraphMetrics {
        let p = self.component_count();
        let n = self.names.len();
        let e = self.edges.len();
        GraphMetrics {
            nodes: n,
            edges: e,
            components: p,
            circuit_rank: e + p - n,
            mccabe: e + 2 * p - n,
        }
    }

    /// Nodes with in-degree 0, in insertion order.
    pub fn source_nodes(&self) -> Vec<NodeId> {
        self.nodes().filter(|&n| self.in_degree(n) == 0).collect()
    }

    /// Nodes with out-degree 0, in insertion order.
    pub fn sink_nodes(&self) -> Vec<NodeId> {
        self.nodes().filter(|&n| self.out_degree(n) == 0).collect()
    }

    /// Returns `(entry, exit)` when the graph has exactly one source and one
    /// sink, they differ (unless the graph is a single node), and every node
    /// lies on some entry-to-exit path.
    pub fn single_entry_single_exit(&self) -> Option<(NodeId, NodeId)> {
        let sources = self.source_nodes();
        let sinks = self.sink_nodes();
        if sources.len() != 1 || sinks.len() != 1 {
            return None;
        }
        let (entry, exit) = (sources[0], sinks[0]);
        if entry == exit && self.names.len() != 1 {
            return None;
        }
        let forward = self.reachable(entry.0, false);
        let backward = self.reachable(exit.0, true);
        if forward.iter().any(|&r| !r) || backward.iter().any(|&r| !r) {
            return None;
        }
        Some((entry, exit))
    }

    fn reachable(&self, start: usize, reversed: bool) -> Vec<bool> {
        let mut seen = vec![false; self.names.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let next = if reversed { &self.pred[u] } else { &self.succ[u] };
            for &v in next {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub(crate) fn require_single_entry_single_exit(
        &self,
    ) -> Result<(NodeId, NodeId), GraphError> {
        self.single_entry_single_exit().ok_or_else(|| {
            let sources = self.source_nodes().len();
            let sinks = self.sink_nodes().len();
            GraphError::NotSingleEntryExit(format!(
                "{sources} source(s), {sinks} sink(s)"
            ))
        })
    }

    /// Convenience wrapper around [`ProgramGraph::structure_report`].
    pub fn is_structured(&self) -> Result<bool, GraphError> {
        Ok(self.structure_report()?.structured)
    }
}
