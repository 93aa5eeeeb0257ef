use std::collections::HashSet;

use super::{Graph, Vertex};

/// Anything that can answer "is `{u, v}` an edge".
pub trait Adjacency {
    fn has_edge(&self, u: Vertex, v: Vertex) -> bool;
}

impl Adjacency for Graph {
    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        Graph::has_edge(self, u, v)
    }
}

/// A set of edges, used to accumulate everything a randomized procedure
/// has exposed positively so that witnesses can be audited afterwards.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeSet {
    directed: bool,
    edges: HashSet<(Vertex, Vertex)>,
}

impl EdgeSet {
    pub fn new(directed: bool) -> EdgeSet {
        EdgeSet {
            directed,
            edges: HashSet::new(),
        }
    }

    fn key(&self, u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        if self.directed || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        let key = self.key(u, v);
        self.edges.insert(key)
    }

    pub fn remove(&mut self, u: Vertex, v: Vertex) -> bool {
        let key = self.key(u, v);
        self.edges.remove(&key)
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&self.key(u, v))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn extend_from_graph(&mut self, g: &Graph) {
        for (u, v) in g.edges() {
            self.insert(u, v);
        }
    }

    /// Adds edges given in a local numbering, translated through `to_host`.
    pub fn extend_mapped<I>(&mut self, edges: I, to_host: &[Vertex])
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        for (u, v) in edges {
            self.insert(to_host[u], to_host[v]);
        }
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        for &(u, v) in &other.edges {
            self.insert(u, v);
        }
    }

    /// Edges in sorted order, for deterministic iteration.
    pub fn sorted_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self.edges.iter().copied().collect();
        out.sort_unstable();
        out
    }

    /// Materializes the set as a graph on `n` vertices.
    pub fn to_graph(&self, n: usize) -> crate::Result<Graph> {
        Graph::from_edges(n, self.edges.iter().copied(), self.directed)
    }
}

impl Extend<(Vertex, Vertex)> for EdgeSet {
    fn extend<I: IntoIterator<Item = (Vertex, Vertex)>>(&mut self, iter: I) {
        for (u, v) in iter {
            self.insert(u, v);
        }
    }
}

impl Adjacency for EdgeSet {
    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u, v)
    }
}

impl<A: Adjacency + ?Sized> Adjacency for &A {
    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        (**self).has_edge(u, v)
    }
}
