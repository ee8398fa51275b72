//! Translation of programs into program graphs.
//!
//! Every executable statement (assignment, if test, while test) becomes one
//! node named `s1`, `s2`, ... in source order, labeled with its text, and
//! framed by synthetic `ENTRY` and `EXIT` nodes. An edge `(i, j)` means
//! statement `j` can execute immediately after statement `i`.
//!
//! Gotos and labels contribute no nodes. A goto turns into edges from its
//! predecessors straight to the labeled statement; a label names whatever
//! executes next from its position, which is `EXIT` for a trailing label.
//! A goto that can only spin through labels back to itself resolves to
//! `EXIT`.

use std::collections::HashMap;

use crate::graph::{GraphMetrics, NodeId, ProgramGraph, StructureReport};

use super::{parse_program, ParseError, Program, Stmt};

/// Statement counts by kind; `executable` is what ends up as graph nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SourceStats {
    pub assigns: usize,
    pub ifs: usize,
    pub whiles: usize,
    pub gotos: usize,
    pub labels: usize,
}

impl SourceStats {
    pub fn executable(&self) -> usize {
        self.assigns + self.ifs + self.whiles
    }

    fn collect(stmts: &[Stmt], stats: &mut SourceStats) {
        for stmt in stmts {
            match stmt {
                Stmt::Assign { .. } => stats.assigns += 1,
                Stmt::If {
                    then_branch,
                    else_branch,
                    ..
                } => {
                    stats.ifs += 1;
                    Self::collect(then_branch, stats);
                    if let Some(else_branch) = else_branch {
                        Self::collect(else_branch, stats);
                    }
                }
                Stmt::While { body, .. } => {
                    stats.whiles += 1;
                    Self::collect(body, stats);
                }
                Stmt::Goto { .. } => stats.gotos += 1,
                Stmt::Label { .. } => stats.labels += 1,
            }
        }
    }

    pub fn of(program: &Program) -> SourceStats {
        let mut stats = SourceStats {
            assigns: 0,
            ifs: 0,
            whiles: 0,
            gotos: 0,
            labels: 0,
        };
        Self::collect(program.stmts(), &mut stats);
        stats
    }
}

/// The control point reached after some statements: the nodes whose
/// execution may fall through to whatever comes next, plus label names
/// still waiting for that next thing.
#[derive(Default, Clone)]
struct Point {
    fringe: Vec<NodeId>,
    pending: Vec<String>,
}

impl Point {
    fn at(node: NodeId) -> Self {
        Self {
            fringe: vec![node],
            pending: Vec::new(),
        }
    }

    fn merge(mut self, other: Point) -> Point {
        for node in other.fringe {
            if !self.fringe.contains(&node) {
                self.fringe.push(node);
            }
        }
        self.pending.extend(other.pending);
        self
    }
}

struct Builder {
    graph: ProgramGraph,
    counter: usize,
    label_node: HashMap<String, NodeId>,
    label_alias: HashMap<String, String>,
    gotos: Vec<(Vec<NodeId>, String)>,
}

impl Builder {
    fn new_node(&mut self, label: String) -> NodeId {
        self.counter += 1;
        let node = self
            .graph
            .add_node(format!("s{}", self.counter))
            .expect("generated names are unique");
        self.graph.set_label(node, label);
        node
    }

    /// Routes a control point into `target`: fringe nodes gain an edge and
    /// waiting labels resolve to `target`.
    fn connect(&mut self, point: Point, target: NodeId) {
        for node in point.fringe {
            self.graph.insert_edge(node, target);
        }
        for label in point.pending {
            self.label_node.insert(label, target);
        }
    }

    fn walk(&mut self, stmts: &[Stmt], mut point: Point) -> Point {
        for stmt in stmts {
            match stmt {
                Stmt::Assign { text } => {
                    let node = self.new_node(text.clone());
                    self.connect(point, node);
                    point = Point::at(node);
                }
                Stmt::If {
                    cond,
                    then_branch,
                    else_branch,
                } => {
                    let test = self.new_node(format!("if ({cond})"));
                    self.connect(point, test);
                    let after_then = self.walk(then_branch, Point::at(test));
                    let after_else = match else_branch {
                        Some(else_branch) => self.walk(else_branch, Point::at(test)),
                        None => Point::at(test),
                    };
                    point = after_then.merge(after_else);
                }
                Stmt::While { cond, body } => {
                    let test = self.new_node(format!("while ({cond})"));
                    self.connect(point, test);
                    let after_body = self.walk(body, Point::at(test));
                    self.connect(after_body, test);
                    point = Point::at(test);
                }
                Stmt::Goto { label } => {
                    for alias in point.pending.drain(..) {
                        self.label_alias.insert(alias, label.clone());
                    }
                    self.gotos
                        .push((std::mem::take(&mut point.fringe), label.clone()));
                }
                Stmt::Label { name } => {
                    point.pending.push(name.clone());
                }
            }
        }
        point
    }

    fn resolve_label(&self, label: &str, exit: NodeId) -> NodeId {
        let mut seen = vec![label];
        let mut current = label;
        loop {
            if let Some(&node) = self.label_node.get(current) {
                return node;
            }
            match self.label_alias.get(current) {
                Some(next) if seen.contains(&next.as_str()) => return exit,
                Some(next) => {
                    seen.push(next);
                    current = next;
                }
                None => unreachable!("parser guarantees every goto target is a label"),
            }
        }
    }
}

/// Builds the program graph of a well-formed program. Total: every parsed
/// program translates, including the empty one (`ENTRY -> EXIT`).
pub fn build_program_graph(program: &Program) -> ProgramGraph {
    let mut builder = Builder {
        graph: ProgramGraph::new(),
        counter: 0,
        label_node: HashMap::new(),
        label_alias: HashMap::new(),
        gotos: Vec::new(),
    };
    let entry = builder.graph.add_node("ENTRY").expect("fresh graph");
    let end = builder.walk(program.stmts(), Point::at(entry));
    let exit = builder.graph.add_node("EXIT").expect("fresh graph");
    builder.connect(end, exit);
    for (fringe, label) in std::mem::take(&mut builder.gotos) {
        let target = builder.resolve_label(&label, exit);
        for node in fringe {
            builder.graph.insert_edge(node, target);
        }
    }
    builder.graph
}

/// Everything the pipeline knows about one source text.
#[derive(Debug, Clone)]
pub struct SourceReport {
    pub graph: ProgramGraph,
    pub metrics: GraphMetrics,
    pub stats: SourceStats,
    /// `None` when the graph is not single-entry/single-exit (possible only
    /// with unreachable statements); otherwise the reduction outcome.
    pub structure: Option<StructureReport>,
}

/// Parses, builds the graph, and bundles metrics with the structuredness
/// verdict. The residual graph inside [`StructureReport`] shows where
/// reduction got stuck when the program is unstructured.
pub fn analyze_source(src: &str) -> Result<SourceReport, ParseError> {
    let program = parse_program(src)?;
    let graph = build_program_graph(&program);
    let metrics = graph.metrics();
    let structure = graph.structure_report().ok();
    Ok(SourceReport {
        metrics,
        stats: SourceStats::of(&program),
        structure,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_of(src: &str) -> ProgramGraph {
        build_program_graph(&parse_program(src).unwrap())
    }

    #[test]
    fn empty_program_is_entry_to_exit() {
        let g = graph_of("");
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.mccabe_complexity(), 1);
    }

    #[test]
    fn three_assignments_in_sequence() {
        let g = graph_of("x = 1; y = 2; z = 3;");
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.mccabe_complexity(), 1);
    }

    #[test]
    fn if_then_else_has_mccabe_two() {
        let g = graph_of("if (c) { x = 1; } else { x = 2; }");
        assert_eq!(g.mccabe_complexity(), 2);
        assert!(g.single_entry_single_exit().is_some());
    }

    #[test]
    fn while_with_body_has_mccabe_two_and_is_structured() {
        let g = graph_of("while (c) { x = 1; }");
        assert_eq!(g.mccabe_complexity(), 2);
        assert!(g.structure_report().unwrap().structured);
    }

    #[test]
    fn empty_while_body_makes_a_self_loop() {
        let g = graph_of("while (c) {}");
        let test = g.node_id("s1").unwrap();
        assert!(g.has_edge(test, test));
        assert!(g.structure_report().unwrap().structured);
    }

    #[test]
    fn goto_collapses_to_an_edge() {
        // the goto jumps straight to z's node; it owns no node itself
        let g = graph_of("x = 1; goto L; L: z = 3;");
        assert_eq!(g.node_count(), 4);
        let x = g.node_id("s1").unwrap();
        let z = g.node_id("s2").unwrap();
        assert!(g.has_edge(x, z));
    }

    #[test]
    fn goto_to_fall_through_adds_no_duplicate_edge() {
        let g = graph_of("if (c) { goto L; } L: y = 2;");
        let test = g.node_id("s1").unwrap();
        let y = g.node_id("s2").unwrap();
        assert!(g.has_edge(test, y));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn trailing_label_binds_to_exit() {
        let g = graph_of("x = 1;\ngoto L;\nL:\n");
        let x = g.node_id("s1").unwrap();
        let exit = g.node_id("EXIT").unwrap();
        assert!(g.has_edge(x, exit));
    }

    #[test]
    fn label_goto_spin_resolves_to_exit() {
        let g = graph_of("x = 1; L: goto L;");
        let x = g.node_id("s1").unwrap();
        let exit = g.node_id("EXIT").unwrap();
        assert!(g.has_edge(x, exit));
        assert!(g.single_entry_single_exit().is_some());
    }

    #[test]
    fn node_labels_carry_statement_text() {
        let g = graph_of("x = 1; if (c) { y = 2; }");
        assert_eq!(g.label(g.node_id("s1").unwrap()), Some("x = 1"));
        assert_eq!(g.label(g.node_id("s2").unwrap()), Some("if (c)"));
    }

    #[test]
    fn always_single_entry_single_exit_for_reachable_programs() {
        for src in [
            "",
            "x = 1;",
            "if (a) { x = 1; }",
            "if (a) { x = 1; } else { y = 1; }",
            "while (a) { if (b) { x = 1; } }",
            "L: x = 1; if (a) { goto L; }",
        ] {
            let g = graph_of(src);
            assert!(g.single_entry_single_exit().is_some(), "source: {src}");
        }
    }

    #[test]
    fn unreachable_code_loses_single_entry() {
        // y = 2 can never execute; it becomes a second source
        let g = graph_of("goto L; y = 2; L: z = 1;");
        assert!(g.single_entry_single_exit().is_none());
        assert_eq!(g.source_nodes().len(), 2);
    }

    #[test]
    fn goto_into_while_body_is_unstructured() {
        let with_goto = "\
x = 0;
if (p) { goto L; }
while (c) {
  L:
  y = 2;
}
z = 3;
";
        let without_goto = "\
x = 0;
while (c) {
  L:
  y = 2;
}
z = 3;
";
        let jumped = analyze_source(with_goto).unwrap();
        let clean = analyze_source(without_goto).unwrap();
        assert!(!jumped.structure.as_ref().unwrap().structured);
        assert!(clean.structure.as_ref().unwrap().structured);
        assert!(jumped.metrics.mccabe > clean.metrics.mccabe);
    }

    #[test]
    fn decision_count_law_for_goto_free_sources() {
        let report = analyze_source(
            "a = 1;\nif (p) { b = 1; } else { c = 1; }\nwhile (q) { if (r) { d = 1; } }\n",
        )
        .unwrap();
        assert_eq!(report.stats.ifs, 2);
        assert_eq!(report.stats.whiles, 1);
        assert_eq!(report.metrics.mccabe, 1 + 2 + 1);
        assert!(report.structure.unwrap().structured);
    }

    #[test]
    fn node_count_law() {
        let report = analyze_source("x = 1; if (c) { y = 2; } while (d) { z = 3; }").unwrap();
        assert_eq!(
            report.metrics.nodes,
            report.stats.executable() + 2
        );
    }
}
