//! JSON input format for charts.
//!
//! ```json
//! {
//!   "blobs": {"root": ["A", "B"], "A": ["A1", "A2"]},
//!   "root": "root",
//!   "transitions": [
//!     {"src": null, "dst": "A"},
//!     {"src": null, "dst": "A1"},
//!     {"src": "A", "dst": "B", "label": "go"}
//!   ]
//! }
//! ```
//!
//! Leaves may appear only as children; listing them with an empty child
//! array is also fine. `"src": null` (or an absent `src`) marks an initial
//! state and must come without a label.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::{Chart, ChartTransition};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    blobs: BTreeMap<String, Vec<String>>,
    root: String,
    transitions: Vec<RawTransition>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    #[serde(default)]
    src: Option<String>,
    dst: String,
    #[serde(default)]
    label: Option<String>,
}

/// Parses the document structure; semantic checks stay with
/// [`Chart::validate`].
pub fn chart_from_json(src: &str) -> Result<Chart, serde_json::Error> {
    let raw: RawChart = serde_json::from_str(src)?;
    let transitions = raw
        .transitions
        .into_iter()
        .map(|t| ChartTransition {
            src: t.src,
            dst: t.dst,
            label: t.label,
        })
        .collect();
    Ok(Chart::new(raw.blobs, raw.root, transitions))
}
