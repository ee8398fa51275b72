//! Structuredness by iterated pattern collapsing.
//!
//! A single-entry/single-exit graph is structured when repeatedly collapsing
//! the four structured-programming shapes reduces it to a single node:
//!
//! * sequence — edge `a -> b` with `a` having out-degree 1 and `b` in-degree 1
//!   (blocked while the reverse edge exists; that pair is a loop),
//! * if-then-else — a test with two single-statement arms meeting at a join,
//! * if-then — a test with one arm and a direct edge to the join,
//! * while/repeat loop — a two-node cycle with exactly one edge out of the
//!   pair and all outside entries into one of its nodes. A self-loop is the
//!   degenerate one-node case.
//!
//! Every collapse of a predicate shape (anything but sequence) lowers the
//! cyclomatic complexity by exactly one, so a fully reduced graph satisfies
//! `mccabe = 1 + predicate collapses`.

use std::collections::BTreeSet;
use std::fmt;

use super::{GraphError, ProgramGraph};

/// One collapse applied during reduction. Names refer to the surviving
/// representative of each region, i.e. the first statement of a sequence or
/// the test of a branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    Sequence { head: String, absorbed: String },
    IfThenElse { test: String, then_arm: String, else_arm: String, join: String },
    IfThen { test: String, arm: String, join: String },
    Loop { head: String, body: String },
    SelfLoop { node: String },
}

impl ReductionStep {
    /// Collapses that correspond to a decision in the program.
    pub fn is_predicate(&self) -> bool {
        !matches!(self, ReductionStep::Sequence { .. })
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Sequence { head, absorbed } => {
                write!(f, "sequence: {head} absorbs {absorbed}")
            }
            ReductionStep::IfThenElse { test, then_arm, else_arm, join } => {
                write!(f, "if-then-else: {test} [{then_arm} | {else_arm}] join {join}")
            }
            ReductionStep::IfThen { test, arm, join } => {
                write!(f, "if-then: {test} [{arm}] join {join}")
            }
            ReductionStep::Loop { head, body } => write!(f, "loop: {head} with body {body}"),
            ReductionStep::SelfLoop { node } => write!(f, "self-loop: {node}"),
        }
    }
}

/// Outcome of the reduction: whether it reached a single node, the collapse
/// trace, and whatever graph remained when it got stuck.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub structured: bool,
    pub steps: Vec<ReductionStep>,
    pub residual: ProgramGraph,
}

impl StructureReport {
    pub fn predicate_collapses(&self) -> usize {
        self.steps.iter().filter(|s| s.is_predicate()).count()
    }
}

struct Reducer<'g> {
    graph: &'g ProgramGraph,
    alive: Vec<bool>,
    succ: Vec<BTreeSet<usize>>,
    pred: Vec<BTreeSet<usize>>,
    steps: Vec<ReductionStep>,
}

impl<'g> Reducer<'g> {
    fn new(graph: &'g ProgramGraph) -> Self {
        let n = graph.node_count();
        let mut succ = vec![BTreeSet::new(); n];
        let mut pred = vec![BTreeSet::new(); n];
        for (a, b) in graph.edges() {
            succ[a.index()].insert(b.index());
            pred[b.index()].insert(a.index());
        }
        Self {
            graph,
            alive: vec![true; n],
            succ,
            pred,
            steps: Vec::new(),
        }
    }

    fn name(&self, u: usize) -> String {
        self.graph.node_name(super::NodeId(u)).to_string()
    }

    fn live_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(|&u| self.alive[u])
    }

    fn remove_edge(&mut self, a: usize, b: usize) {
        self.succ[a].remove(&b);
        self.pred[b].remove(&a);
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.succ[a].insert(b);
        self.pred[b].insert(a);
    }

    fn kill(&mut self, u: usize) {
        debug_assert!(self.succ[u].is_empty() && self.pred[u].is_empty());
        self.alive[u] = false;
    }

    fn collapse_self_loop(&mut self) -> bool {
        let Some(u) = self.live_nodes().find(|&u| self.succ[u].contains(&u)) else {
            return false;
        };
        self.remove_edge(u, u);
        self.steps.push(ReductionStep::SelfLoop { node: self.name(u) });
        true
    }

    fn collapse_sequence(&mut self) -> bool {
        let found = self.live_nodes().find_map(|a| {
            if self.succ[a].len() != 1 {
                return None;
            }
            let b = *self.succ[a].iter().next().unwrap();
            (b != a && self.pred[b].len() == 1 && !self.succ[b].contains(&a)).then_some((a, b))
        });
        let Some((a, b)) = found else { return false };
        self.remove_edge(a, b);
        for c in self.succ[b].clone() {
            self.remove_edge(b, c);
            self.add_edge(a, c);
        }
        self.kill(b);
        self.steps.push(ReductionStep::Sequence {
            head: self.name(a),
            absorbed: self.name(b),
        });
        true
    }

    /// Single-statement arm: only predecessor is `t`, only successor is its
    /// join.
    fn arm_target(&self, t: usize, x: usize) -> Option<usize> {
        if x == t || self.pred[x] != BTreeSet::from([t]) || self.succ[x].len() != 1 {
            return None;
        }
        let j = *self.succ[x].iter().next().unwrap();
        (j != x && j != t).then_some(j)
    }

    fn collapse_if_then_else(&mut self) -> bool {
        let found = self.live_nodes().find_map(|t| {
            if self.succ[t].len() != 2 {
                return None;
            }
            let mut arms = self.succ[t].iter();
            let x = *arms.next().unwrap();
            let y = *arms.next().unwrap();
            let jx = self.arm_target(t, x)?;
            let jy = self.arm_target(t, y)?;
            (jx == jy && jx != x && jx != y).then_some((t, x, y, jx))
        });
        let Some((t, x, y, j)) = found else { return false };
        self.remove_edge(t, x);
        self.remove_edge(t, y);
        self.remove_edge(x, j);
        self.remove_edge(y, j);
        self.add_edge(t, j);
        self.kill(x);
        self.kill(y);
        self.steps.push(ReductionStep::IfThenElse {
            test: self.name(t),
            then_arm: self.name(x),
            else_arm: self.name(y),
            join: self.name(j),
        });
        true
    }

    fn collapse_if_then(&mut self) -> bool {
        let found = self.live_nodes().find_map(|t| {
            if self.succ[t].len() != 2 {
                return None;
            }
            let targets: Vec<usize> = self.succ[t].iter().copied().collect();
            for (&x, &j) in [(&targets[0], &targets[1]), (&targets[1], &targets[0])] {
                if self.arm_target(t, x) == Some(j) {
                    return Some((t, x, j));
                }
            }
            None
        });
        let Some((t, x, j)) = found else { return false };
        self.remove_edge(t, x);
        self.remove_edge(x, j);
        self.kill(x);
        self.steps.push(ReductionStep::IfThen {
            test: self.name(t),
            arm: self.name(x),
            join: self.name(j),
        });
        true
    }

    fn collapse_loop(&mut self) -> bool {
        let found = self.live_nodes().find_map(|u| {
            self.succ[u]
                .iter()
                .copied()
                .filter(|&v| v > u && self.succ[v].contains(&u))
                .find_map(|v| self.loop_keeper(u, v).map(|z| (u, v, z)))
        });
        let Some((u, v, z)) = found else { return false };
        let k = if z == u { v } else { u };
        self.remove_edge(u, v);
        self.remove_edge(v, u);
        for c in self.succ[k].clone() {
            self.remove_edge(k, c);
            self.add_edge(z, c);
        }
        self.kill(k);
        self.steps.push(ReductionStep::Loop {
            head: self.name(z),
            body: self.name(k),
        });
        true
    }

    /// A collapsible two-node cycle has no self-loops, exactly one edge out
    /// of the pair, and every outside entry targeting the same node, which
    /// becomes the survivor.
    fn loop_keeper(&self, u: usize, v: usize) -> Option<usize> {
        if self.succ[u].contains(&u) || self.succ[v].contains(&v) {
            return None;
        }
        let outs = (self.succ[u].len() - 1) + (self.succ[v].len() - 1);
        if outs != 1 {
            return None;
        }
        let ins_u = self.pred[u].iter().any(|&w| w != v);
        let ins_v = self.pred[v].iter().any(|&w| w != u);
        match (ins_u, ins_v) {
            (true, true) => None,
            (false, true) => Some(v),
            _ => Some(u),
        }
    }

    fn run(mut self) -> StructureReport {
        loop {
            let collapsed = self.collapse_self_loop()
                || self.collapse_sequence()
                || self.collapse_if_then_else()
                || self.collapse_if_then()
                || self.collapse_loop();
            if !collapsed {
                break;
            }
        }
        let live: Vec<usize> = self.live_nodes().collect();
        let mut residual = ProgramGraph::new();
        for &u in &live {
            residual.add_node(self.name(u)).expect("distinct names survive");
        }
        for &u in &live {
            for &v in &self.succ[u] {
                let a = residual.node_id(&self.name(u)).unwrap();
                let b = residual.node_id(&self.name(v)).unwrap();
                residual.insert_edge(a, b);
            }
        }
        StructureReport {
            structured: live.len() == 1,
            steps: self.steps,
            residual,
        }
    }
}

impl ProgramGraph {
    /// Reduces the graph by the structured patterns and reports whether a
    /// single node remained, along with the collapse trace and the residual
    /// graph where reduction stopped.
    ///
    /// Requires a single-entry/single-exit graph.
    pub fn structure_report(&self) -> Result<StructureReport, GraphError> {
        self.require_single_entry_single_exit()?;
        Ok(Reducer::new(self).run())
    }
}

#[cfg(test)]
mod tests {
    use super::super::ProgramGraph;

    #[test]
    fn diamond_is_structured() {
        let g = super::super::tests::diamond();
        let report = g.structure_report().unwrap();
        assert!(report.structured);
        assert_eq!(report.predicate_collapses(), 1);
        assert_eq!(g.mccabe_complexity(), 1 + report.predicate_collapses());
    }

    #[test]
    fn while_around_diamond_is_structured() {
        // entry -> w; w -> t -> {a,b} -> j; j -> w; w -> exit
        let mut g = ProgramGraph::new();
        let entry = g.add_node("entry").unwrap();
        let w = g.add_node("w").unwrap();
        let t = g.add_node("t").unwrap();
        let a = g.add_node("a").unwrap();
        let b = g.add_node("b").unwrap();
        let j = g.add_node("j").unwrap();
        let exit = g.add_node("exit").unwrap();
        for (x, y) in [(entry, w), (w, t), (t, a), (t, b), (a, j), (b, j), (j, w), (w, exit)] {
            g.add_edge(x, y).unwrap();
        }
        let report = g.structure_report().unwrap();
        assert!(report.structured, "trace: {:?}", report.steps);
        assert_eq!(report.predicate_collapses(), 2);
        assert_eq!(g.mccabe_complexity(), 3);
    }

    #[test]
    fn if_then_triangle_is_structured() {
        let mut g = ProgramGraph::new();
        let t = g.add_node("t").unwrap();
        let x = g.add_node("x").unwrap();
        let j = g.add_node("j").unwrap();
        g.add_edge(t, x).unwrap();
        g.add_edge(t, j).unwrap();
        g.add_edge(x, j).unwrap();
        assert!(g.structure_report().unwrap().structured);
    }

    #[test]
    fn jump_into_loop_body_is_not_structured() {
        // x -> t_if -> {t_w, y}; loop t_w <-> y entered at both nodes
        let mut g = ProgramGraph::new();
        let entry = g.add_node("entry").unwrap();
        let x = g.add_node("x").unwrap();
        let t_if = g.add_node("t_if").unwrap();
        let t_w = g.add_node("t_w").unwrap();
        let y = g.add_node("y").unwrap();
        let z = g.add_node("z").unwrap();
        let exit = g.add_node("exit").unwrap();
        for (a, b) in [
            (entry, x),
            (x, t_if),
            (t_if, t_w),
            (t_if, y),
            (t_w, y),
            (y, t_w),
            (t_w, z),
            (z, exit),
        ] {
            g.add_edge(a, b).unwrap();
        }
        let report = g.structure_report().unwrap();
        assert!(!report.structured);
        assert!(report.residual.node_count() > 1);
    }

    #[test]
    fn self_loop_reduces_as_degenerate_loop() {
        // entry -> t (self-loop) -> exit
        let mut g = ProgramGraph::new();
        let entry = g.add_node("entry").unwrap();
        let t = g.add_node("t").unwrap();
        let exit = g.add_node("exit").unwrap();
        g.add_edge(entry, t).unwrap();
        g.add_edge(t, t).unwrap();
        g.add_edge(t, exit).unwrap();
        let report = g.structure_report().unwrap();
        assert!(report.structured);
        assert_eq!(report.predicate_collapses(), 1);
    }

    #[test]
    fn repeat_loop_is_structured() {
        // entry -> body <-> test; test -> exit
        let mut g = ProgramGraph::new();
        let entry = g.add_node("entry").unwrap();
        let body = g.add_node("body").unwrap();
        let test = g.add_node("test").unwrap();
        let exit = g.add_node("exit").unwrap();
        g.add_edge(entry, body).unwrap();
        g.add_edge(body, test).unwrap();
        g.add_edge(test, body).unwrap();
        g.add_edge(test, exit).unwrap();
        let report = g.structure_report().unwrap();
        assert!(report.structured, "trace: {:?}", report.steps);
        assert_eq!(report.predicate_collapses(), 1);
    }

    #[test]
    fn structure_requires_single_entry_exit() {
        let g = super::super::tests::seven_node_graph();
        assert!(g.structure_report().is_err());
    }
}
