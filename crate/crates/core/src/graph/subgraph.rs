use std::collections::HashMap;

use super::{Cycle, Graph, Path, Vertex};
use crate::error::{Error, Result};

/// A graph whose vertices are a subset of some host graph's vertices.
///
/// Local vertex `i` corresponds to host vertex `host_ids()[i]`. The edge
/// set need not be induced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    graph: Graph,
    to_host: Vec<Vertex>,
}

impl Subgraph {
    pub fn new(graph: Graph, to_host: Vec<Vertex>) -> Subgraph {
        debug_assert_eq!(graph.vertex_count(), to_host.len());
        Subgraph { graph, to_host }
    }

    /// Builds a subgraph from host-labelled edges over the given host
    /// vertex set. Edges touching vertices outside the set are rejected.
    pub fn from_host_edges<I>(host_vertices: Vec<Vertex>, edges: I, directed: bool) -> Result<Subgraph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let index: HashMap<Vertex, Vertex> = host_vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if index.len() != host_vertices.len() {
            return Err(Error::InvalidParameter("duplicate host vertex".into()));
        }
        let mut local_edges = Vec::new();
        for (u, v) in edges {
            match (index.get(&u), index.get(&v)) {
                (Some(&a), Some(&b)) => local_edges.push((a, b)),
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "edge {u}-{v} leaves the subgraph vertex set"
                    )))
                }
            }
        }
        let graph = Graph::from_edges(host_vertices.len(), local_edges, directed)?;
        Ok(Subgraph {
            graph,
            to_host: host_vertices,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn host_ids(&self) -> &[Vertex] {
        &self.to_host
    }

    pub fn to_host(&self, local: Vertex) -> Vertex {
        self.to_host[local]
    }

    pub fn vertex_count(&self) -> usize {
        self.to_host.len()
    }

    /// Host ids, sorted.
    pub fn sorted_host_ids(&self) -> Vec<Vertex> {
        let mut ids = self.to_host.clone();
        ids.sort_unstable();
        ids
    }

    /// Local id of a host vertex, if present.
    pub fn local_of(&self, host: Vertex) -> Option<Vertex> {
        self.to_host.iter().position(|&v| v == host)
    }

    /// Map from host id to local id.
    pub fn host_index(&self) -> HashMap<Vertex, Vertex> {
        self.to_host.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }

    pub fn lift_path(&self, path: &Path) -> Path {
        path.map(|v| self.to_host[v])
    }

    pub fn lift_cycle(&self, cycle: &Cycle) -> Cycle {
        cycle.map(|v| self.to_host[v])
    }

    /// Edges in host labels.
    pub fn host_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.graph.edges().map(|(u, v)| (self.to_host[u], self.to_host[v]))
    }

    /// Vertex and edge union in host labels. Vertices of `self` keep their
    /// local ids; new vertices from `other` are appended.
    pub fn union(&self, other: &Subgraph) -> Result<Subgraph> {
        let mut ids = self.to_host.clone();
        let index = self.host_index();
        for &v in &other.to_host {
            if !index.contains_key(&v) {
                ids.push(v);
            }
        }
        let edges: Vec<_> = self.host_edges().chain(other.host_edges()).collect();
        Subgraph::from_host_edges(ids, edges, self.graph.is_directed())
    }

    /// Number of shared host vertices.
    pub fn overlap(&self, other: &Subgraph) -> usize {
        let index = self.host_index();
        other.to_host.iter().filter(|v| index.contains_key(v)).count()
    }
}
