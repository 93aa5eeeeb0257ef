//! Deterministic instance families.

use super::{Graph, Vertex};
use crate::error::{Error, Result};

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

/// `K_n`: minimum degree `n - 1`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    require(n >= 1, "complete_graph needs n >= 1")?;
    let adjacency = (0..n).map(|v| (0..n).filter(|&w| w != v).collect()).collect();
    Ok(Graph::from_sorted(adjacency, false))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    require(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1")?;
    let adjacency = (0..a + b)
        .map(|v| if v < a { (a..a + b).collect() } else { (0..a).collect() })
        .collect();
    Ok(Graph::from_sorted(adjacency, false))
}

/// Two copies of `K_{k+1}` glued at one vertex: cliques `0..=k` and
/// `k..=2k`, sharing vertex `k`. Minimum degree `k`, longest cycle `k + 1`.
pub fn two_cliques_shared_vertex(k: usize) -> Result<Graph> {
    require(k >= 2, "two_cliques_shared_vertex needs k >= 2")?;
    let n = 2 * k + 1;
    let adjacency = (0..n)
        .map(|v| {
            let mut list: Vec<Vertex> = Vec::new();
            if v <= k {
                list.extend((0..=k).filter(|&w| w != v));
            }
            if v >= k {
                list.extend((k..n).filter(|&w| w != v));
            }
            list.sort_unstable();
            list.dedup();
            list
        })
        .collect();
    Ok(Graph::from_sorted(adjacency, false))
}

/// Blow-up of the cycle of length `parts`: every cycle vertex becomes an
/// independent set of size `k` (part `i` is `i*k..(i+1)*k`) and every cycle
/// edge a complete bipartite graph. When `directed`, blocks are oriented
/// from part `i` to part `i + 1`, so every vertex has out-degree exactly `k`.
pub fn blowup_cycle(parts: usize, k: usize, directed: bool) -> Result<Graph> {
    require(parts >= 3, "blowup_cycle needs at least 3 parts")?;
    require(k >= 1, "blowup_cycle needs k >= 1")?;
    let n = parts * k;
    let part_range = |i: usize| (i % parts) * k..(i % parts) * k + k;
    let adjacency = (0..n)
        .map(|v| {
            let p = v / k;
            let mut list: Vec<Vertex> = part_range(p + 1).collect();
            if !directed {
                list.extend(part_range(p + parts - 1));
                list.sort_unstable();
                list.dedup();
            }
            list
        })
        .collect();
    Ok(Graph::from_sorted(adjacency, directed))
}

/// Part index of a vertex of [`blowup_cycle`].
pub fn blowup_part(v: Vertex, k: usize) -> usize {
    v / k
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    require(n >= 1, "path_graph needs n >= 1")?;
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)), false)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    require(n >= 3, "cycle_graph needs n >= 3")?;
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)), false)
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges, false).expect("static edge list")
}

/// Triangular prism: triangles `0,1,2` and `3,4,5` with rungs `i - (i+3)`.
pub fn prism_graph() -> Graph {
    Graph::from_edges(
        6,
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        false,
    )
    .expect("static edge list")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_counts() {
        let k1 = complete_graph(1).unwrap();
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
        assert_eq!(complete_graph(3).unwrap().edge_count(), 3);
        let k = 7;
        assert_eq!(complete_graph(k + 1).unwrap().min_degree(), k);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn complete_bipartite_counts() {
        assert_eq!(complete_bipartite(1, 1).unwrap().edge_count(), 1);
        let g = complete_bipartite(2, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.min_degree(), 2);
        let g = complete_bipartite(6, 6).unwrap();
        assert_eq!(g.min_degree(), 6);
        assert!(g.is_bipartite());
    }

    #[test]
    fn two_cliques_counts() {
        let g = two_cliques_shared_vertex(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
        let g = two_cliques_shared_vertex(3).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.min_degree(), 3);
        assert_eq!(g.articulation_points(), vec![3]);
    }

    #[test]
    fn blowup_counts() {
        let tri = blowup_cycle(3, 1, true).unwrap();
        assert_eq!(tri.edge_count(), 3);
        assert!(tri.has_edge(0, 1) && tri.has_edge(1, 2) && tri.has_edge(2, 0));
        assert!(!tri.has_edge(1, 0));
        let g = blowup_cycle(5, 3, false).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 45));
        let d = blowup_cycle(6, 4, true).unwrap();
        assert!(d.vertices().all(|v| d.degree(v) == 4));
    }

    #[test]
    fn blowup_bipartite_iff_even() {
        for parts in 3..9 {
            let g = blowup_cycle(parts, 2, false).unwrap();
            assert_eq!(g.is_bipartite(), parts % 2 == 0, "parts = {parts}");
        }
    }

    #[test]
    fn generators_pass_validation() {
        let graphs = [
            complete_graph(6).unwrap(),
            complete_bipartite(3, 5).unwrap(),
            two_cliques_shared_vertex(4).unwrap(),
            blowup_cycle(4, 3, false).unwrap(),
            blowup_cycle(4, 3, true).unwrap(),
            path_graph(5).unwrap(),
            cycle_graph(5).unwrap(),
            petersen_graph(),
            prism_graph(),
        ];
        for g in &graphs {
            g.validate().unwrap();
        }
        assert!(petersen_graph().vertices().all(|v| petersen_graph().degree(v) == 3));
    }
}
