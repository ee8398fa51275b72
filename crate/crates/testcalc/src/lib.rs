#![forbid(unsafe_code)]

//! Discrete-math toolkit for software testing.
//!
//! The crate bundles the small formalisms a tester keeps reaching for:
//!
//! * [`graph`] — directed program graphs with structural metrics
//!   (components, circuit rank, cyclomatic complexity, basis paths,
//!   structuredness by pattern reduction) and DOT/text serialization.
//! * [`minilang`] — a tiny imperative language whose only purpose is to
//!   manufacture program graphs from source text.
//! * [`proplogic`] — propositional expressions, truth tables, the
//!   element-set/truth-function/correspondence decomposition, and
//!   truth-table entailment.
//! * [`behaviors`] — set algebra over specified, programmed, and tested
//!   behaviors: the eight-region classification, fault taxonomies, test
//!   method validation, and finite functions with image computation.
//! * [`statechart`] — hierarchical state charts validated and flattened
//!   to plain finite state machines.
//!
//! Everything is deterministic: equal inputs produce byte-identical
//! reports, tables, and DOT output.

pub mod behaviors;
pub mod graph;
pub mod minilang;
pub mod proplogic;
pub mod statechart;
