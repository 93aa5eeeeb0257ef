use serde::{Deserialize, Serialize};

use super::{Adjacency, Vertex};
use crate::error::{Error, Result};

/// A sequence of vertices meant to be a simple path. Construction does not
/// check adjacency; call [`Path::validate`] against the graph the path is
/// claimed to live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Path {
        Path { vertices }
    }

    pub fn single(v: Vertex) -> Path {
        Path { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    /// Number of edges. The empty path and a single vertex both have length 0.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> Option<Vertex> {
        self.vertices.first().copied()
    }

    pub fn end(&self) -> Option<Vertex> {
        self.vertices.last().copied()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Maps every vertex through `map` (e.g. a subgraph's host ids).
    pub fn map(&self, map: impl Fn(Vertex) -> Vertex) -> Path {
        Path {
            vertices: self.vertices.iter().map(|&v| map(v)).collect(),
        }
    }

    /// Checks distinctness and that consecutive vertices are adjacent in `g`.
    pub fn validate<A: Adjacency + ?Sized>(&self, g: &A) -> Result<()> {
        check_distinct(&self.vertices).map_err(Error::InvalidPath)?;
        for pair in self.vertices.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(Error::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(())
    }
}

impl From<Vec<Vertex>> for Path {
    fn from(vertices: Vec<Vertex>) -> Path {
        Path::new(vertices)
    }
}

/// A cyclically ordered vertex sequence with at least three vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn new(vertices: Vec<Vertex>) -> Result<Cycle> {
        if vertices.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "a cycle needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        Ok(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    /// Number of edges, which equals the number of vertices.
    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn map(&self, map: impl Fn(Vertex) -> Vertex) -> Cycle {
        Cycle {
            vertices: self.vertices.iter().map(|&v| map(v)).collect(),
        }
    }

    /// Edges of the cycle, including the closing one.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Cuts the cycle open at position `at`, giving the Hamilton path of
    /// its vertex set that starts at `vertices[at]` and walks forward.
    pub fn open_at(&self, at: usize) -> Path {
        let n = self.vertices.len();
        Path::new((0..n).map(|i| self.vertices[(at + i) % n]).collect())
    }

    pub fn validate<A: Adjacency + ?Sized>(&self, g: &A) -> Result<()> {
        check_distinct(&self.vertices).map_err(Error::InvalidCycle)?;
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidCycle(format!("{u} and {v} are not adjacent")));
            }
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vertex>> for Cycle {
    type Error = Error;

    fn try_from(vertices: Vec<Vertex>) -> Result<Cycle> {
        Cycle::new(vertices)
    }
}

impl From<Cycle> for Vec<Vertex> {
    fn from(c: Cycle) -> Vec<Vertex> {
        c.vertices
    }
}

fn check_distinct(vertices: &[Vertex]) -> std::result::Result<(), String> {
    let mut seen = std::collections::HashSet::with_capacity(vertices.len());
    for &v in vertices {
        if !seen.insert(v) {
            return Err(format!("vertex {v} repeated"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};

    #[test]
    fn path_length_counts_edges() {
        assert_eq!(Path::new(vec![]).length(), 0);
        assert_eq!(Path::single(4).length(), 0);
        assert_eq!(Path::new(vec![0, 1, 2]).length(), 2);
    }

    #[test]
    fn path_validation() {
        let g = path_graph(4).unwrap();
        Path::new(vec![0, 1, 2, 3]).validate(&g).unwrap();
        assert!(Path::new(vec![0, 2]).validate(&g).is_err());
        let k = complete_graph(4).unwrap();
        assert!(Path::new(vec![0, 1, 0]).validate(&k).is_err());
    }

    #[test]
    fn cycle_validation() {
        let g = cycle_graph(5).unwrap();
        let c = Cycle::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(c.length(), 5);
        c.validate(&g).unwrap();
        assert!(Cycle::new(vec![0, 1, 2, 4, 3]).unwrap().validate(&g).is_err());
        assert!(Cycle::new(vec![0, 1]).is_err());
        assert_eq!(c.open_at(3).vertices(), &[3, 4, 0, 1, 2]);
    }
}
