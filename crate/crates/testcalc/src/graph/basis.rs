//! Basis path generation by the baseline method.
//!
//! For a connected single-entry/single-exit graph the cyclomatic complexity
//! `e - n + 2` equals the size of a maximal set of entry-to-exit paths with
//! linearly independent edge-incidence vectors. The construction here:
//!
//! 1. The baseline is the lexicographically first simple entry-to-exit path,
//!    preferring earlier-inserted edges at every step.
//! 2. A spanning tree oriented toward the exit is grown outward from the
//!    baseline, so every node has a default continuation that rejoins the
//!    baseline and reaches the exit without cycling.
//! 3. Every non-tree edge is a decision to flip exactly once: its path walks
//!    an already-generated path to the edge's source, crosses the edge, then
//!    follows default continuations to the exit.
//!
//! Each generated path contains its own flip edge exactly once and flip
//! edges of later paths not at all, which makes the incidence matrix
//! triangular in the flip columns and hence of full row rank.

use std::collections::VecDeque;

use super::{GraphError, NodeId, Path, ProgramGraph};

impl ProgramGraph {
    /// Entry-to-exit paths whose edge-incidence vectors are linearly
    /// independent; exactly [`ProgramGraph::mccabe_complexity`] of them, the
    /// baseline first.
    ///
    /// Fails with [`GraphError::NotSingleEntryExit`] unless the graph has a
    /// unique source, a unique sink, and every node on an entry-to-exit path.
    pub fn basis_paths(&self) -> Result<Vec<Path>, GraphError> {
        let (entry, exit) = self.require_single_entry_single_exit()?;
        if self.node_count() == 1 {
            return Ok(vec![Path::new(self, vec![entry])?]);
        }

        let baseline = self.leftmost_simple_path(entry.index(), exit.index());

        // Default successor toward the exit; the baseline seeds the tree so
        // the first path never leaves it.
        let n = self.node_count();
        let mut next: Vec<Option<usize>> = vec![None; n];
        let mut in_tree = vec![false; n];
        for w in baseline.windows(2) {
            next[w[0]] = Some(w[1]);
        }
        for &u in &baseline {
            in_tree[u] = true;
        }
        let mut queue: VecDeque<usize> = baseline.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for u in self.predecessors(NodeId(v)) {
                let u = u.index();
                if !in_tree[u] {
                    in_tree[u] = true;
                    next[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }

        let flips: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| next[u] != Some(v))
            .collect();

        let mut paths: Vec<Vec<usize>> = vec![baseline];
        let mut done = vec![false; flips.len()];
        loop {
            let mut progressed = false;
            for (i, &(u, v)) in flips.iter().enumerate() {
                if done[i] {
                    continue;
                }
                let Some(prefix) = paths.iter().find_map(|p| {
                    p.iter().position(|&x| x == u).map(|pos| p[..=pos].to_vec())
                }) else {
                    continue;
                };
                let mut path = prefix;
                path.push(v);
                let mut cur = v;
                while let Some(succ) = next[cur] {
                    path.push(succ);
                    cur = succ;
                }
                paths.push(path);
                done[i] = true;
                progressed = true;
            }
            if !progressed {
                break;
            }
        }
        assert!(
            done.iter().all(|&d| d),
            "every non-tree edge is reachable in a single-entry/single-exit graph"
        );

        paths
            .into_iter()
            .map(|p| Path::new(self, p.into_iter().map(NodeId).collect()))
            .collect()
    }

    /// First simple path from `entry` to `exit` in edge-preference order.
    /// Commits an outgoing edge as soon as the exit stays reachable without
    /// revisiting the running prefix, so no backtracking is needed.
    fn leftmost_simple_path(&self, entry: usize, exit: usize) -> Vec<usize> {
        let mut on_path = vec![false; self.node_count()];
        let mut path = vec![entry];
        on_path[entry] = true;
        while *path.last().unwrap() != exit {
            let u = *path.last().unwrap();
            let step = self
                .succ[u]
                .iter()
                .copied()
                .find(|&v| !on_path[v] && self.exit_reachable_avoiding(v, exit, &on_path));
            let v = step.expect("single-entry/single-exit guarantees a continuation");
            on_path[v] = true;
            path.push(v);
        }
        path
    }

    fn exit_reachable_avoiding(&self, from: usize, exit: usize, avoid: &[bool]) -> bool {
        if from == exit {
            return true;
        }
        let mut seen = vec![false; self.node_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if v == exit {
                    return true;
                }
                if !seen[v] && !avoid[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::super::ProgramGraph;

    fn path_names(g: &ProgramGraph, paths: &[super::Path]) -> Vec<Vec<String>> {
        paths
            .iter()
            .map(|p| p.node_names(g).iter().map(|s| s.to_string()).collect())
            .collect()
    }

    #[test]
    fn diamond_yields_both_arms() {
        let g = super::super::tests::diamond();
        let paths = g.basis_paths().unwrap();
        assert_eq!(
            path_names(&g, &paths),
            [["test", "then", "join"], ["test", "else", "join"]]
        );
    }

    #[test]
    fn straight_line_yields_itself() {
        let mut g = ProgramGraph::new();
        let a = g.add_node("a").unwrap();
        let b = g.add_node("b").unwrap();
        let c = g.add_node("c").unwrap();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, c).unwrap();
        let paths = g.basis_paths().unwrap();
        assert_eq!(path_names(&g, &paths), [["a", "b", "c"]]);
    }

    #[test]
    fn while_loop_yields_skip_and_one_traversal() {
        let mut g = ProgramGraph::new();
        let entry = g.add_node("entry").unwrap();
        let test = g.add_node("test").unwrap();
        let body = g.add_node("body").unwrap();
        let exit = g.add_node("exit").unwrap();
        g.add_edge(test, body).unwrap();
        g.add_edge(body, test).unwrap();
        g.add_edge(test, exit).unwrap();
        g.add_edge(entry, test).unwrap();
        assert_eq!(g.mccabe_complexity(), 2);
        let paths = g.basis_paths().unwrap();
        assert_eq!(
            path_names(&g, &paths),
            vec![
                vec!["entry", "test", "exit"],
                vec!["entry", "test", "body", "test", "exit"],
            ]
        );
    }

    #[test]
    fn non_single_entry_exit_is_an_error() {
        let g = super::super::tests::seven_node_graph();
        assert!(g.basis_paths().is_err());
    }

    #[test]
    fn self_loop_counts_as_a_decision() {
        let mut g = ProgramGraph::new();
        let a = g.add_node("a").unwrap();
        let m = g.add_node("m").unwrap();
        let z = g.add_node("z").unwrap();
        g.add_edge(a, m).unwrap();
        g.add_edge(m, m).unwrap();
        g.add_edge(m, z).unwrap();
        let paths = g.basis_paths().unwrap();
        assert_eq!(
            path_names(&g, &paths),
            vec![vec!["a", "m", "z"], vec!["a", "m", "m", "z"]]
        );
    }

    #[test]
    fn single_node_graph_has_one_trivial_path() {
        let mut g = ProgramGraph::new();
        g.add_node("only").unwrap();
        let paths = g.basis_paths().unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].nodes().len(), 1);
    }
}
