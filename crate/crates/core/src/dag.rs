//! Directed acyclic graph over dataset columns.
//!
//! The learned structure is stored as a node list (short column names) plus
//! weighted directed edges. Construction rejects self-loops, duplicate edges
//! and cycles, so holding a `Dag` is proof of acyclicity.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Weighted directed edge, endpoints given as indices into `Dag::nodes`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DagEdge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Directed acyclic graph with named nodes and weighted edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Dag {
    nodes: Vec<String>,
    edges: Vec<DagEdge>,
}

impl Dag {
    /// Build a DAG, validating node names, edge endpoints and acyclicity.
    pub fn new(nodes: Vec<String>, edges: Vec<DagEdge>) -> Result<Self> {
        let unique: BTreeSet<&str> = nodes.iter().map(String::as_str).collect();
        if unique.len() != nodes.len() {
            return Err(Error::Schema("duplicate node name in dag".into()));
        }
        let mut seen = BTreeSet::new();
        for edge in &edges {
            if edge.from >= nodes.len() || edge.to >= nodes.len() {
                return Err(Error::Shape(format!(
                    "edge ({}, {}) out of range for {} nodes",
                    edge.from,
                    edge.to,
                    nodes.len()
                )));
            }
            if edge.from == edge.to {
                return Err(Error::Schema(format!(
                    "self-loop on node {}",
                    nodes[edge.from]
                )));
            }
            if !seen.insert((edge.from, edge.to)) {
                return Err(Error::Schema(format!(
                    "duplicate edge {} -> {}",
                    nodes[edge.from], nodes[edge.to]
                )));
            }
        }
        let dag = Dag { nodes, edges };
        if dag.topological_order().is_none() {
            return Err(Error::Schema("edge set contains a cycle".into()));
        }
        Ok(dag)
    }

    /// Node names in declaration order.
    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DagEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    /// Parent indices of `node`, sorted ascending.
    pub fn parents(&self, node: usize) -> Vec<usize> {
        let mut parents: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.to == node)
            .map(|e| e.from)
            .collect();
        parents.sort_unstable();
        parents
    }

    /// Nodes with a directed path into `node` (excluding `node` itself).
    pub fn ancestors(&self, node: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = self.parents(node);
        while let Some(cur) = stack.pop() {
            if out.insert(cur) {
                stack.extend(self.parents(cur));
            }
        }
        out
    }

    /// Kahn topological sort; `None` means the edge set is cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        topological_order(self.nodes.len(), self.edges.iter().map(|e| (e.from, e.to)))
    }

    /// Drop every edge pointing into `node`. Used for do-surgery.
    pub fn without_incoming(&self, node: usize) -> Dag {
        Dag {
            nodes: self.nodes.clone(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|e| e.to != node)
                .collect(),
        }
    }

    /// Render as Graphviz DOT. Deterministic: nodes lexicographic, edges
    /// ordered by (from, to) name pair, weights rounded to 3 decimals.
    pub fn to_dot(&self) -> String {
        let mut node_names: Vec<&str> = self.nodes.iter().map(String::as_str).collect();
        node_names.sort_unstable();
        let mut edge_lines: Vec<(&str, &str, f64)> = self
            .edges
            .iter()
            .map(|e| (self.nodes[e.from].as_str(), self.nodes[e.to].as_str(), e.weight))
            .collect();
        edge_lines.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let mut out = String::from("digraph {\n");
        for name in node_names {
            let _ = writeln!(out, "  \"{name}\";");
        }
        for (from, to, weight) in edge_lines {
            let _ = writeln!(out, "  \"{from}\" -> \"{to}\" [label=\"{weight:.3}\"];");
        }
        out.push_str("}\n");
        out
    }

    /// Serialize to the flat text format read back by [`Dag::from_text`].
    /// Weights use shortest round-trip float formatting.
    pub fn to_text(&self) -> String {
        let mut out = String::from("causal-crm dag v1\n");
        let _ = writeln!(out, "nodes {}", self.nodes.len());
        for name in &self.nodes {
            let _ = writeln!(out, "{name}");
        }
        let _ = writeln!(out, "edges {}", self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", self.nodes[e.from], self.nodes[e.to], e.weight);
        }
        out
    }

    /// Parse the format produced by [`Dag::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let fail = |message: &str| Error::Format {
            what: "dag text".into(),
            message: message.into(),
        };
        let mut lines = text.lines();
        if lines.next() != Some("causal-crm dag v1") {
            return Err(fail("missing or unsupported header"));
        }
        let node_count: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("nodes "))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fail("expected `nodes <count>`"))?;
        let mut nodes = Vec::with_capacity(node_count);
        for _ in 0..node_count {
            nodes.push(
                lines
                    .next()
                    .ok_or_else(|| fail("truncated node list"))?
                    .to_string(),
            );
        }
        let edge_count: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("edges "))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fail("expected `edges <count>`"))?;
        let mut edges = Vec::with_capacity(edge_count);
        for _ in 0..edge_count {
            let line = lines.next().ok_or_else(|| fail("truncated edge list"))?;
            let mut parts = line.split_whitespace();
            let from_name = parts.next().ok_or_else(|| fail("bad edge line"))?;
            let to_name = parts.next().ok_or_else(|| fail("bad edge line"))?;
            let weight: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| fail("bad edge weight"))?;
            let from = nodes
                .iter()
                .position(|n| n == from_name)
                .ok_or_else(|| fail("edge references unknown node"))?;
            let to = nodes
                .iter()
                .position(|n| n == to_name)
                .ok_or_else(|| fail("edge references unknown node"))?;
            edges.push(DagEdge { from, to, weight });
        }
        Dag::new(nodes, edges)
    }
}

/// Kahn topological sort over an edge iterator; `None` if cyclic.
pub fn topological_order(
    node_count: usize,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Option<Vec<usize>> {
    let mut in_degree = vec![0usize; node_count];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (from, to) in edges {
        in_degree[to] += 1;
        children[from].push(to);
    }
    let mut ready: Vec<usize> = (0..node_count).filter(|&i| in_degree[i] == 0).collect();
    ready.reverse(); // pop() visits lowest index first
    let mut order = Vec::with_capacity(node_count);
    while let Some(node) = ready.pop() {
        order.push(node);
        for &child in &children[node] {
            in_degree[child] -= 1;
            if in_degree[child] == 0 {
                ready.push(child);
            }
        }
        ready.sort_unstable_by(|a, b| b.cmp(a));
    }
    (order.len() == node_count).then_some(order)
}

/// True iff the nonzero support of a square adjacency matrix is acyclic.
pub fn support_is_acyclic(adjacency: &ndarray::Array2<f64>) -> bool {
    let d = adjacency.nrows();
    let edges = (0..d).flat_map(|i| {
        (0..d).filter_map(move |j| (i != j && adjacency[[i, j]] != 0.0).then_some((i, j)))
    });
    topological_order(d, edges).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn empty_graph_is_acyclic() {
        let dag = Dag::new(names(&["A", "B"]), vec![]).unwrap();
        assert!(dag.topological_order().is_some());
        assert_eq!(dag.edge_count(), 0);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Dag::new(
            names(&["a", "b"]),
            vec![
                DagEdge { from: 0, to: 1, weight: 1.0 },
                DagEdge { from: 1, to: 0, weight: 1.0 },
            ],
        );
        assert!(err.is_err());
    }

    #[test]
    fn self_loop_and_duplicate_are_rejected() {
        assert!(Dag::new(names(&["a"]), vec![DagEdge { from: 0, to: 0, weight: 1.0 }]).is_err());
        assert!(Dag::new(
            names(&["a", "b"]),
            vec![
                DagEdge { from: 0, to: 1, weight: 1.0 },
                DagEdge { from: 0, to: 1, weight: 2.0 },
            ],
        )
        .is_err());
    }

    #[test]
    fn random_upper_triangular_is_acyclic() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let d = rng.gen_range(2..8);
            let node_names: Vec<String> = (0..d).map(|i| format!("n{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..d {
                for j in (i + 1)..d {
                    if rng.gen_bool(0.5) {
                        edges.push(DagEdge { from: i, to: j, weight: 1.0 });
                    }
                }
            }
            assert!(Dag::new(node_names, edges).is_ok());
        }
    }

    #[test]
    fn dot_output_is_deterministic_and_ordered() {
        let dag = Dag::new(
            names(&["B", "A"]),
            vec![DagEdge { from: 1, to: 0, weight: 0.5 }],
        )
        .unwrap();
        let dot = dag.to_dot();
        assert_eq!(dot, dag.to_dot());
        assert_eq!(
            dot,
            "digraph {\n  \"A\";\n  \"B\";\n  \"A\" -> \"B\" [label=\"0.500\"];\n}\n"
        );
    }

    #[test]
    fn empty_dag_dot_has_node_statements_only() {
        let dag = Dag::new(names(&["A", "B"]), vec![]).unwrap();
        let dot = dag.to_dot();
        assert_eq!(dot.matches(';').count(), 2);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn text_round_trip() {
        let dag = Dag::new(
            names(&["X1", "X2", "X3"]),
            vec![
                DagEdge { from: 0, to: 1, weight: 1.9993244218250094 },
                DagEdge { from: 1, to: 2, weight: -0.25 },
            ],
        )
        .unwrap();
        let text = dag.to_text();
        let parsed = Dag::from_text(&text).unwrap();
        assert_eq!(parsed, dag);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn ancestors_follow_paths() {
        let dag = Dag::new(
            names(&["a", "b", "c", "d"]),
            vec![
                DagEdge { from: 0, to: 1, weight: 1.0 },
                DagEdge { from: 1, to: 2, weight: 1.0 },
            ],
        )
        .unwrap();
        assert_eq!(dag.ancestors(2), BTreeSet::from([0, 1]));
        assert!(dag.ancestors(3).is_empty());
    }
}
