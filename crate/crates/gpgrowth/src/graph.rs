//! The presentation graph and the graph product it defines.
//!
//! A graph product is a finite simple graph together with a nontrivial
//! vertex group at each vertex; adjacent vertex groups commute elementwise.
//! The fixed vertex order (index order) drives every canonicalization
//! decision downstream.

use thiserror::Error;

use crate::vertex::VertexGroup;

/// Errors raised while assembling a presentation graph or graph product.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex count {groups} of group assignment does not match graph ({vertices})")]
    AssignmentMismatch { vertices: usize, groups: usize },
}

/// A finite simple undirected graph with labelled vertices in a fixed
/// total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationGraph {
    labels: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl PresentationGraph {
    pub fn new(labels: Vec<String>, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v as usize >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u as usize][v as usize] {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u as usize][v as usize] = true;
            adj[v as usize][u as usize] = true;
        }
        Ok(PresentationGraph { labels, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize][v as usize]
    }

    /// Common neighbourhood of `a`: vertices adjacent to every vertex of
    /// `a`. The empty set has link `V` (vacuous quantifier).
    pub fn link(&self, a: &[u32]) -> Vec<u32> {
        (0..self.vertex_count() as u32)
            .filter(|&u| a.iter().all(|&v| self.adjacent(u, v)))
            .collect()
    }

    /// Connected components of the complement of the induced subgraph on
    /// `a`, listed in canonical vertex order.
    pub fn complement_components(&self, a: &[u32]) -> Vec<Vec<u32>> {
        assert!(
            !a.is_empty(),
            "complement components of the empty set are undefined"
        );
        let mut sorted: Vec<u32> = a.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut seen = vec![false; sorted.len()];
        let mut components = Vec::new();
        for start in 0..sorted.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.push(sorted[i]);
                for j in 0..sorted.len() {
                    // complement edge: distinct and NOT adjacent in the graph
                    if !seen[j] && !self.adjacent(sorted[i], sorted[j]) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components.sort();
        components
    }
}

/// A graph product: presentation graph plus a vertex group per vertex.
#[derive(Debug, Clone)]
pub struct GraphProduct {
    graph: PresentationGraph,
    groups: Vec<VertexGroup>,
}

impl GraphProduct {
    pub fn new(graph: PresentationGraph, groups: Vec<VertexGroup>) -> Result<Self, GraphError> {
        if groups.len() != graph.vertex_count() {
            return Err(GraphError::AssignmentMismatch {
                vertices: graph.vertex_count(),
                groups: groups.len(),
            });
        }
        Ok(GraphProduct { graph, groups })
    }

    pub fn graph(&self) -> &PresentationGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn group(&self, v: u32) -> &VertexGroup {
        &self.groups[v as usize]
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.graph.adjacent(u, v)
    }

    /// The special subgroup on the induced subgraph spanned by `a`,
    /// as a standalone graph product. Vertex labels are preserved, so
    /// words parse identically; the embedding into the ambient group is
    /// isometric.
    pub fn special_subgroup(&self, a: &[u32]) -> GraphProduct {
        let mut sorted: Vec<u32> = a.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let labels: Vec<String> = sorted
            .iter()
            .map(|&v| self.graph.label(v).to_string())
            .collect();
        let mut edges = Vec::new();
        for (i, &u) in sorted.iter().enumerate() {
            for (j, &v) in sorted.iter().enumerate().skip(i + 1) {
                if self.graph.adjacent(u, v) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        let graph = PresentationGraph::new(labels, &edges).expect("induced subgraph is simple");
        let groups = sorted
            .iter()
            .map(|&v| self.groups[v as usize].clone())
            .collect();
        GraphProduct { graph, groups }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::VertexGroup;

    fn graph(n: usize, edges: &[(u32, u32)]) -> PresentationGraph {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        PresentationGraph::new(labels, edges).unwrap()
    }

    #[test]
    fn link_examples() {
        // K_{2,2}: parts {0,1} and {2,3}
        let k22 = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(k22.link(&[0, 1]), vec![2, 3]);

        // P_3: 0 - 1 - 2
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(p3.link(&[1]), vec![0, 2]);
        assert_eq!(p3.link(&[0, 1, 2]), Vec::<u32>::new());
        assert_eq!(p3.link(&[]), vec![0, 1, 2]);
    }

    #[test]
    fn complement_components_examples() {
        // single edge: complement has no edges, two singleton components
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(edge.complement_components(&[0, 1]), vec![vec![0], vec![1]]);

        // two isolated vertices: complement is an edge, one component
        let iso = graph(2, &[]);
        assert_eq!(iso.complement_components(&[0, 1]), vec![vec![0, 1]]);

        // K_{2,2}: complement is two disjoint edges
        let k22 = graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(
            k22.complement_components(&[0, 1, 2, 3]),
            vec![vec![0, 1], vec![2, 3]]
        );
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(
            PresentationGraph::new(vec!["a".into(), "a".into()], &[]),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        let labels = vec!["a".to_string(), "b".to_string()];
        assert_eq!(
            PresentationGraph::new(labels.clone(), &[(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            PresentationGraph::new(labels.clone(), &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert_eq!(
            PresentationGraph::new(labels, &[(0, 2)]),
            Err(GraphError::UnknownVertex(2))
        );
    }

    #[test]
    fn special_subgroup_induces() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        let gp = GraphProduct::new(
            p3,
            vec![
                VertexGroup::InfiniteCyclic,
                VertexGroup::InfiniteCyclic,
                VertexGroup::InfiniteCyclic,
            ],
        )
        .unwrap();
        let sub = gp.special_subgroup(&[0, 2]);
        assert_eq!(sub.vertex_count(), 2);
        assert!(!sub.adjacent(0, 1)); // 0 and 2 are not adjacent in P_3
        assert_eq!(sub.graph().label(1), "v2");
    }
}
