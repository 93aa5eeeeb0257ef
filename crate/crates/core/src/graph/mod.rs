//! Simple graphs on dense vertex ids, plus paths, cycles and the
//! instance families used by the experiments.
//!
//! A [`Graph`] is immutable once built. Adjacency lists are sorted and
//! duplicate free; undirected graphs store every edge in both lists.
//! Directed graphs store out-neighbors only.

mod edges;
mod generators;
mod io;
mod path;
mod subgraph;

pub use edges::{Adjacency, EdgeSet};
pub use generators::*;
pub use io::{read_edge_list, write_edge_list, GraphJson};
pub use path::{Cycle, Path};
pub use subgraph::Subgraph;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex id. Vertices of a graph with `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    directed: bool,
    edge_count: usize,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize, directed: bool) -> Graph {
        Graph {
            adjacency: vec![Vec::new(); n],
            directed,
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I, directed: bool) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            if !directed {
                adjacency[v].push(u);
            }
        }
        Ok(Graph::from_unsorted(adjacency, directed))
    }

    /// Sorts and dedups the lists. Callers guarantee ids are in range and
    /// loop free.
    pub(crate) fn from_unsorted(mut adjacency: Vec<Vec<Vertex>>, directed: bool) -> Graph {
        let mut total = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        let edge_count = if directed { total } else { total / 2 };
        Graph {
            adjacency,
            directed,
            edge_count,
        }
    }

    /// Wraps lists that are already sorted, deduplicated and (for
    /// undirected graphs) symmetric.
    pub(crate) fn from_sorted(adjacency: Vec<Vec<Vertex>>, directed: bool) -> Graph {
        let total: usize = adjacency.iter().map(Vec::len).sum();
        let edge_count = if directed { total } else { total / 2 };
        Graph {
            adjacency,
            directed,
            edge_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// Sorted neighbors of `v` (out-neighbors when directed).
    ///
    /// Panics if `v` is out of range; use [`Graph::try_neighbors`] for a
    /// checked lookup.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn try_neighbors(&self, v: Vertex) -> Result<&[Vertex]> {
        self.check_vertex(v)?;
        Ok(&self.adjacency[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// `true` if `{u, v}` (or the arc `u -> v` when directed) is present.
    /// Out-of-range ids simply answer `false`.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Minimum (out-)degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Average degree `2e/n` (or `e/n` for directed graphs).
    pub fn average_degree(&self) -> f64 {
        if self.vertex_count() == 0 {
            return 0.0;
        }
        let total: usize = self.adjacency.iter().map(Vec::len).sum();
        total as f64 / self.vertex_count() as f64
    }

    /// Iterates every edge once: `u < v` for undirected graphs, every arc
    /// for directed ones.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let directed = self.directed;
        self.adjacency.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| directed || u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        } else {
            Ok(())
        }
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in
    /// the order given. The returned [`Subgraph`] remembers the mapping.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<Subgraph> {
        let n = self.vertex_count();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if local[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} listed twice in induced vertex set"
                )));
            }
            local[v] = i;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Ok(Subgraph::new(
            Graph::from_sorted(adjacency, self.directed),
            vertices.to_vec(),
        ))
    }

    /// Edge union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.vertex_count() != other.vertex_count() || self.directed != other.directed {
            return Err(Error::InvalidParameter(
                "union needs graphs on the same vertex set and orientation".into(),
            ));
        }
        let adjacency = self
            .adjacency
            .iter()
            .zip(&other.adjacency)
            .map(|(a, b)| merge_sorted(a, b))
            .collect();
        Ok(Graph::from_sorted(adjacency, self.directed))
    }

    /// Returns a copy with the extra edges added.
    pub fn with_edges<I>(&self, extra: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let added = Graph::from_edges(self.vertex_count(), extra, self.directed)?;
        self.union(&added)
    }

    /// Full validity scan: ids in range, sorted lists, no loops or
    /// duplicates, symmetry for undirected graphs.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        let mut total = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            total += list.len();
            for pair in list.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::InvalidGraph(format!("adjacency of {u} unsorted or duplicated")));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count: n,
                    });
                }
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if !self.directed && !self.has_edge(v, u) {
                    return Err(Error::InvalidGraph(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        let expected = if self.directed { total } else { total / 2 };
        if expected != self.edge_count {
            return Err(Error::InvalidGraph("edge count out of sync".into()));
        }
        Ok(())
    }

    /// Undirected view of a directed graph (arcs lose orientation).
    pub fn to_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut adjacency = self.adjacency.clone();
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                adjacency[v].push(u);
            }
        }
        Graph::from_unsorted(adjacency, false)
    }

    /// Connected components (weak components for directed graphs), each
    /// sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let undirected;
        let g = if self.directed {
            undirected = self.to_undirected();
            &undirected
        } else {
            self
        };
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in g.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Proper 2-coloring if the (undirected view of the) graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let undirected;
        let g = if self.directed {
            undirected = self.to_undirected();
            &undirected
        } else {
            self
        };
        let n = g.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &w in g.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Cut vertices of the undirected graph (iterative Hopcroft–Tarjan).
    pub fn articulation_points(&self) -> Vec<Vertex> {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbor index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (v, parent, idx) = *top;
                if idx < self.adjacency[v].len() {
                    top.2 += 1;
                    let w = self.adjacency[v][idx];
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }
}

pub(crate) fn merge_sorted(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
