//! Flattening a chart to a plain finite state machine.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::ProgramGraph;

use super::{Chart, ChartError};

/// A deterministic FSM over the chart's leaf blobs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatFsm {
    states: BTreeSet<String>,
    initial: String,
    transitions: BTreeMap<(String, String), String>,
    provenance: BTreeMap<(String, String, String), usize>,
}

/// A flat FSM viewed as a graph: one node per state, one edge per connected
/// state pair, with the labels that share an edge collected alongside.
#[derive(Debug, Clone)]
pub struct FsmGraph {
    pub graph: ProgramGraph,
    pub edge_labels: BTreeMap<(String, String), Vec<String>>,
}

impl FlatFsm {
    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    /// `(src, label, dst)` triples in sorted order.
    pub fn transitions(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.transitions
            .iter()
            .map(|((src, label), dst)| (src.as_str(), label.as_str(), dst.as_str()))
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    /// Index of the chart transition each flat transition came from.
    pub fn provenance(&self) -> &BTreeMap<(String, String, String), usize> {
        &self.provenance
    }

    /// Consumes `labels` from the initial state; the trace holds every state
    /// visited, so its length is the number of labels consumed plus one.
    pub fn run<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<String>, ChartError> {
        let mut trace = vec![self.initial.clone()];
        let mut current = self.initial.clone();
        for label in labels {
            let label = label.as_ref();
            let key = (current.clone(), label.to_string());
            let Some(next) = self.transitions.get(&key) else {
                return Err(ChartError::NoTransition {
                    state: current,
                    label: label.to_string(),
                });
            };
            current = next.clone();
            trace.push(current.clone());
        }
        Ok(trace)
    }

    /// Projects the FSM onto a [`ProgramGraph`]: parallel labels between the
    /// same state pair collapse to one edge and are recorded in the label map.
    pub fn to_graph(&self) -> FsmGraph {
        let mut graph = ProgramGraph::new();
        for state in &self.states {
            graph.add_node(state).expect("states are unique");
        }
        let mut edge_labels: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for (src, label, dst) in self.transitions() {
            edge_labels
                .entry((src.to_string(), dst.to_string()))
                .or_default()
                .push(label.to_string());
        }
        for (src, dst) in edge_labels.keys() {
            let a = graph.node_id(src).unwrap();
            let b = graph.node_id(dst).unwrap();
            graph.insert_edge(a, b);
        }
        FsmGraph { graph, edge_labels }
    }
}

impl Serialize for FlatFsm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Edge<'a> {
            src: &'a str,
            label: &'a str,
            dst: &'a str,
        }
        let mut out = serializer.serialize_struct("FlatFsm", 3)?;
        out.serialize_field("states", &self.states)?;
        out.serialize_field("initial", &self.initial)?;
        let edges: Vec<Edge> = self
            .transitions()
            .map(|(src, label, dst)| Edge { src, label, dst })
            .collect();
        out.serialize_field("transitions", &edges)?;
        out.end()
    }
}

impl Chart {
    /// Leaf descendants of `blob` (the blob itself when it is a leaf),
    /// sorted.
    fn leaf_descendants(&self, blob: &str) -> BTreeSet<String> {
        if self.is_leaf(blob) {
            return BTreeSet::from([blob.to_string()]);
        }
        let mut leaves = BTreeSet::new();
        let mut stack: Vec<&str> = vec![blob];
        while let Some(b) = stack.pop() {
            if self.is_leaf(b) {
                leaves.insert(b.to_string());
            } else {
                stack.extend(self.children(b).iter().map(String::as_str));
            }
        }
        leaves
    }

    /// Follows initial markers from `blob` down to a leaf.
    fn initial_leaf(&self, blob: &str) -> String {
        let mut current = blob;
        while !self.is_leaf(current) {
            let markers = self.initial_markers_of(current);
            debug_assert_eq!(markers.len(), 1, "validated charts have one marker");
            current = &markers[0].dst;
        }
        current.to_string()
    }

    /// Flattens a validated chart to a deterministic FSM.
    ///
    /// States are the leaf blobs. A transition out of a composite expands to
    /// one transition from each leaf descendant; a transition into a
    /// composite is redirected to its initial leaf; the machine's initial
    /// state is the root's marker resolved down to a leaf.
    pub fn flatten(&self) -> Result<FlatFsm, ChartError> {
        self.validate().map_err(ChartError::Invalid)?;
        let states = self.leaves();
        let initial = self.initial_leaf(self.root());
        let mut transitions: BTreeMap<(String, String), String> = BTreeMap::new();
        let mut provenance: BTreeMap<(String, String, String), usize> = BTreeMap::new();
        for (index, t) in self.transitions().iter().enumerate() {
            let Some(src) = &t.src else { continue };
            let label = t.label.clone().expect("validated transitions are labeled");
            let target = self.initial_leaf(&t.dst);
            for source in self.leaf_descendants(src) {
                let key = (source.clone(), label.clone());
                match transitions.get(&key) {
                    Some(existing) if *existing == target => {
                        return Err(ChartError::ConflictingTransition {
                            state: source,
                            label,
                            dst: target,
                        });
                    }
                    Some(existing) => {
                        return Err(ChartError::NondeterministicTransition {
                            state: source,
                            label,
                            first: existing.clone(),
                            second: target,
                        });
                    }
                    None => {
                        transitions.insert(key, target.clone());
                        provenance.insert((source, label.clone(), target.clone()), index);
                    }
                }
            }
        }
        Ok(FlatFsm {
            states,
            initial,
            transitions,
            provenance,
        })
    }
}
