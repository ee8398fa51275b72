//! Hierarchical state charts and their validation.
//!
//! A chart is a tree of blobs (states that may contain other states) plus
//! transitions. A transition without a source is an initial marker: it
//! designates the initial child of the blob containing its destination.
//! Labeled transitions connect arbitrary blobs.
//!
//! Validation enforces that containment is a single-rooted tree, that the
//! root and every composite blob targeted by a transition carry exactly one
//! initial marker among their children, and that markers are unlabeled while
//! ordinary transitions are labeled.
//!
//! Orthogonal regions, history, and guards are out of scope: the model is
//! plain OR-hierarchy plus labeled edges, enough to flatten to an FSM.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

mod flatten;
mod json;

pub use flatten::{FlatFsm, FsmGraph};
pub use json::chart_from_json;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartDiagnostic {
    #[error("unknown blob `{id}` referenced by {context}")]
    UnknownBlob { id: String, context: String },
    #[error("blob `{id}` has more than one parent")]
    MultipleParents { id: String },
    #[error("containment cycle through blob `{id}`")]
    ContainmentCycle { id: String },
    #[error("blob `{id}` is outside the root's containment tree")]
    UnrootedBlob { id: String },
    #[error("the root blob `{id}` may not be contained in another blob")]
    RootHasParent { id: String },
    #[error("composite blob `{id}` needs exactly one initial marker among its children, found none")]
    MissingInitial { id: String },
    #[error("blob `{id}` has {count} initial markers among its children")]
    ExtraInitial { id: String, count: usize },
    #[error("initial marker into `{dst}` must not carry a label")]
    InitialHasLabel { dst: String },
    #[error("transition {src} -> {dst} needs a nonempty label")]
    MissingLabel { src: String, dst: String },
    #[error("initial marker may not target the root blob `{id}`")]
    InitialTargetsRoot { id: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("invalid chart: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ChartDiagnostic>),
    #[error("nondeterministic transition from `{state}` on `{label}` (to `{first}` and `{second}`)")]
    NondeterministicTransition {
        state: String,
        label: String,
        first: String,
        second: String,
    },
    #[error("transitions overlap: `{state}` on `{label}` to `{dst}` arises twice")]
    ConflictingTransition {
        state: String,
        label: String,
        dst: String,
    },
    #[error("no transition from `{state}` on `{label}`")]
    NoTransition { state: String, label: String },
}

/// A transition edge; `src == None` marks an initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartTransition {
    pub src: Option<String>,
    pub dst: String,
    pub label: Option<String>,
}

impl ChartTransition {
    pub fn initial(dst: impl Into<String>) -> Self {
        Self {
            src: None,
            dst: dst.into(),
            label: None,
        }
    }

    pub fn labeled(
        src: impl Into<String>,
        dst: impl Into<String>,
        label: impl Into<String>,
    ) -> Self {
        Self {
            src: Some(src.into()),
            dst: dst.into(),
            label: Some(label.into()),
        }
    }
}

/// Blob hierarchy plus transitions, as declared. Use
/// [`Chart::validate`] before interpreting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    blobs: BTreeMap<String, Vec<String>>,
    root: String,
    transitions: Vec<ChartTransition>,
}

impl Chart {
    pub fn new(
        blobs: BTreeMap<String, Vec<String>>,
        root: impl Into<String>,
        transitions: Vec<ChartTransition>,
    ) -> Self {
        Self {
            blobs,
            root: root.into(),
            transitions,
        }
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn transitions(&self) -> &[ChartTransition] {
        &self.transitions
    }

    /// Every declared blob id: map keys, their children, and the root.
    pub fn blob_ids(&self) -> BTreeSet<String> {
        let mut ids: BTreeSet<String> = self.blobs.keys().cloned().collect();
        for children in self.blobs.values() {
            ids.extend(children.iter().cloned());
        }
        ids.insert(self.root.clone());
        ids
    }

    pub fn children(&self, id: &str) -> &[String] {
        self.blobs.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_leaf(&self, id: &str) -> bool {
        self.children(id).is_empty()
    }

    /// Leaf blobs in sorted order.
    pub fn leaves(&self) -> BTreeSet<String> {
        self.blob_ids()
            .into_iter()
            .filter(|id| self.is_leaf(id))
            .collect()
    }

    fn parents(&self) -> HashMap<&str, &str> {
        let mut parent: HashMap<&str, &str> = HashMap::new();
        for (blob, children) in &self.blobs {
            for child in children {
                parent.entry(child.as_str()).or_insert(blob.as_str());
            }
        }
        parent
    }

    /// Initial markers scoped to `blob`, i.e. markers whose destination is a
    /// direct child of `blob`.
    fn initial_markers_of<'a>(&'a self, blob: &str) -> Vec<&'a ChartTransition> {
        self.transitions
            .iter()
            .filter(|t| t.src.is_none() && self.children(blob).iter().any(|c| c == &t.dst))
            .collect()
    }

    /// All structural and marker diagnostics, in a deterministic order.
    /// An empty list means the chart is well-formed.
    pub fn validate(&self) -> Result<(), Vec<ChartDiagnostic>> {
        let mut diagnostics = Vec::new();
        let ids = self.blob_ids();

        // single-parent containment
        let mut seen_child: BTreeSet<&str> = BTreeSet::new();
        for children in self.blobs.values() {
            for child in children {
                if !seen_child.insert(child.as_str()) {
                    diagnostics.push(ChartDiagnostic::MultipleParents { id: child.clone() });
                }
            }
        }
        if seen_child.contains(self.root.as_str()) {
            diagnostics.push(ChartDiagnostic::RootHasParent {
                id: self.root.clone(),
            });
        }

        // every blob must reach the root through parent links, without cycles
        let parent = self.parents();
        let mut cyclic: BTreeSet<String> = BTreeSet::new();
        for id in &ids {
            if *id == self.root {
                continue;
            }
            let mut walk: Vec<&str> = vec![id.as_str()];
            let mut cur = id.as_str();
            loop {
                match parent.get(cur) {
                    None => {
                        diagnostics.push(ChartDiagnostic::UnrootedBlob { id: id.clone() });
                        break;
                    }
                    Some(&p) if p == self.root => break,
                    Some(&p) => {
                        if walk.contains(&p) {
                            let cycle_min = walk
                                .iter()
                                .skip_while(|&&w| w != p)
                                .chain(std::iter::once(&p))
                                .min()
                                .unwrap()
                                .to_string();
                            cyclic.insert(cycle_min);
                            break;
                        }
                        walk.push(p);
                        cur = p;
                    }
                }
            }
        }
        for id in cyclic {
            diagnostics.push(ChartDiagnostic::ContainmentCycle { id });
        }

        // transition endpoints and labeling rules
        for (i, t) in self.transitions.iter().enumerate() {
            let context = format!("transition {}", i + 1);
            if let Some(src) = &t.src {
                if !ids.contains(src) {
                    diagnostics.push(ChartDiagnostic::UnknownBlob {
                        id: src.clone(),
                        context: context.clone(),
                    });
                }
                if t.label.as_deref().unwrap_or("").is_empty() {
                    diagnostics.push(ChartDiagnostic::MissingLabel {
                        src: src.clone(),
                        dst: t.dst.clone(),
                    });
                }
            } else {
                if t.label.is_some() {
                    diagnostics.push(ChartDiagnostic::InitialHasLabel { dst: t.dst.clone() });
                }
                if t.dst == self.root {
                    diagnostics.push(ChartDiagnostic::InitialTargetsRoot {
                        id: self.root.clone(),
                    });
                }
            }
            if !ids.contains(&t.dst) {
                diagnostics.push(ChartDiagnostic::UnknownBlob {
                    id: t.dst.clone(),
                    context,
                });
            }
        }

        // initial markers: required on the root and on every composite that
        // is a transition destination; never more than one per blob
        let mut needs_initial: BTreeSet<&str> = BTreeSet::new();
        needs_initial.insert(self.root.as_str());
        for t in &self.transitions {
            if ids.contains(&t.dst) && !self.is_leaf(&t.dst) {
                needs_initial.insert(t.dst.as_str());
            }
        }
        for id in &ids {
            let markers = self.initial_markers_of(id).len();
            if markers > 1 {
                diagnostics.push(ChartDiagnostic::ExtraInitial {
                    id: id.clone(),
                    count: markers,
                });
            } else if markers == 0 && needs_initial.contains(id.as_str()) {
                diagnostics.push(ChartDiagnostic::MissingInitial { id: id.clone() });
            }
        }

        if diagnostics.is_empty() {
            Ok(())
        } else {
            Err(diagnostics)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// root { A { A1, A2 }, B } with initials -> A (root) and -> A1 (in A),
    /// plus A -> B on "go".
    pub(crate) fn worked_chart() -> Chart {
        Chart::new(
            BTreeMap::from([
                ("root".to_string(), vec!["A".to_string(), "B".to_string()]),
                ("A".to_string(), vec!["A1".to_string(), "A2".to_string()]),
            ]),
            "root",
            vec![
                ChartTransition::initial("A"),
                ChartTransition::initial("A1"),
                ChartTransition::labeled("A", "B", "go"),
            ],
        )
    }

    #[test]
    fn worked_chart_is_valid() {
        assert_eq!(worked_chart().validate(), Ok(()));
    }

    #[test]
    fn blob_with_two_parents_is_invalid() {
        let chart = Chart::new(
            BTreeMap::from([
                ("root".to_string(), vec!["A".to_string(), "B".to_string()]),
                ("A".to_string(), vec!["X".to_string()]),
                ("B".to_string(), vec!["X".to_string()]),
            ]),
            "root",
            vec![ChartTransition::initial("A")],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::MultipleParents { id } if id == "X")));
    }

    #[test]
    fn composite_destination_without_initial_is_invalid() {
        let chart = Chart::new(
            BTreeMap::from([
                ("root".to_string(), vec!["A".to_string(), "B".to_string()]),
                ("B".to_string(), vec!["B1".to_string()]),
            ]),
            "root",
            vec![
                ChartTransition::initial("A"),
                ChartTransition::labeled("A", "B", "go"),
            ],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::MissingInitial { id } if id == "B")));
    }

    #[test]
    fn root_needs_an_initial_marker() {
        let chart = Chart::new(
            BTreeMap::from([("root".to_string(), vec!["A".to_string()])]),
            "root",
            vec![],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::MissingInitial { id } if id == "root")));
    }

    #[test]
    fn two_markers_in_one_blob_are_invalid() {
        let chart = Chart::new(
            BTreeMap::from([("root".to_string(), vec!["A".to_string(), "B".to_string()])]),
            "root",
            vec![ChartTransition::initial("A"), ChartTransition::initial("B")],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::ExtraInitial { id, count: 2 } if id == "root")));
    }

    #[test]
    fn labeled_marker_and_unlabeled_transition_are_invalid() {
        let chart = Chart::new(
            BTreeMap::from([("root".to_string(), vec!["A".to_string(), "B".to_string()])]),
            "root",
            vec![
                ChartTransition {
                    src: None,
                    dst: "A".to_string(),
                    label: Some("x".to_string()),
                },
                ChartTransition {
                    src: Some("A".to_string()),
                    dst: "B".to_string(),
                    label: None,
                },
            ],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::InitialHasLabel { .. })));
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::MissingLabel { .. })));
    }

    #[test]
    fn unknown_transition_endpoint_is_invalid() {
        let chart = Chart::new(
            BTreeMap::from([("root".to_string(), vec!["A".to_string()])]),
            "root",
            vec![
                ChartTransition::initial("A"),
                ChartTransition::labeled("A", "nowhere", "go"),
            ],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::UnknownBlob { id, .. } if id == "nowhere")));
    }

    #[test]
    fn containment_cycle_is_reported() {
        let chart = Chart::new(
            BTreeMap::from([
                ("root".to_string(), vec!["A".to_string()]),
                ("A".to_string(), vec!["B".to_string()]),
                ("B".to_string(), vec!["A".to_string()]),
            ]),
            "root",
            vec![ChartTransition::initial("A")],
        );
        let diagnostics = chart.validate().unwrap_err();
        assert!(diagnostics
            .iter()
            .any(|d| matches!(d, ChartDiagnostic::ContainmentCycle { .. })
                || matches!(d, ChartDiagnostic::MultipleParents { .. })));
    }
}
