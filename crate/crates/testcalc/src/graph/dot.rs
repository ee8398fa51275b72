//! DOT (graphviz) serialization.

use super::ProgramGraph;

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

impl ProgramGraph {
    /// Deterministic DOT digraph: nodes then edges, each in insertion order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for node in self.nodes() {
            match self.label(node) {
                Some(label) => out.push_str(&format!(
                    "  {} [label={}];\n",
                    quoted(self.node_name(node)),
                    quoted(label)
                )),
                None => out.push_str(&format!("  {};\n", quoted(self.node_name(node)))),
            }
        }
        for (a, b) in self.edges() {
            out.push_str(&format!(
                "  {} -> {};\n",
                quoted(self.node_name(a)),
                quoted(self.node_name(b))
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::ProgramGraph;

    #[test]
    fn empty_graph() {
        assert_eq!(ProgramGraph::new().to_dot(), "digraph G {\n}\n");
    }

    #[test]
    fn single_edge() {
        let mut g = ProgramGraph::new();
        let a = g.add_node("a").unwrap();
        let b = g.add_node("b").unwrap();
        g.add_edge(a, b).unwrap();
        assert!(g.to_dot().contains("\"a\" -> \"b\";"));
    }

    #[test]
    fn seven_node_graph_line_counts() {
        let dot = super::super::tests::seven_node_graph().to_dot();
        let lines: Vec<&str> = dot.lines().collect();
        let edge_lines = lines.iter().filter(|l| l.contains("->")).count();
        assert_eq!(edge_lines, 6);
        assert_eq!(lines.len() - 2 - edge_lines, 7);
    }

    #[test]
    fn labels_and_quotes_are_escaped() {
        let mut g = ProgramGraph::new();
        let a = g.add_node("a").unwrap();
        g.set_label(a, "say \"hi\"");
        assert!(g.to_dot().contains(r#""a" [label="say \"hi\""];"#));
    }

    #[test]
    fn output_is_deterministic() {
        let build = || {
            let mut g = ProgramGraph::new();
            let a = g.add_node("a").unwrap();
            let b = g.add_node("b").unwrap();
            g.add_edge(b, a).unwrap();
            g.add_edge(a, b).unwrap();
            g.to_dot()
        };
        assert_eq!(build(), build());
    }
}
