//! Exact solvers for small instances, used as ground truth in tests.
//!
//! Longest path and cycle run a dynamic program over (vertex subset,
//! endpoint) states; vertex connectivity enumerates separators. Each has
//! a hard size guard so that an experiment config cannot trigger an
//! exponential run by accident.

use serde::{Deserialize, Serialize};

use crate::connectivity::local_vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Path, Vertex};

/// Vertex limit of the subset dynamic programs.
pub const SUBSET_LIMIT: usize = 20;
/// Vertex limit of separator enumeration.
pub const SEPARATOR_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult<W> {
    pub optimum: usize,
    /// `None` only when there is nothing to witness (no cycle, empty graph).
    pub witness: Option<W>,
    /// Reachable (subset, endpoint) states.
    pub explored: u64,
}

fn guard(g: &Graph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        Err(Error::SizeGuard {
            vertex_count: g.vertex_count(),
            limit,
        })
    } else {
        Ok(())
    }
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

fn bits(mut m: u32) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as Vertex;
            m &= m - 1;
            v
        })
    })
}

/// `ends[mask]`: vertices `v` such that some path covering exactly `mask`
/// starts at the lowest vertex of `base` (when given) and ends at `v`.
fn subset_dp(n: usize, adj: &[u32], start: Option<Vertex>) -> (Vec<u32>, u64) {
    let mut ends = vec![0u32; 1 << n];
    let mut explored = 0u64;
    match start {
        Some(s) => ends[1 << s] = 1 << s,
        None => (0..n).for_each(|v| ends[1 << v] = 1 << v),
    }
    // vertices below the start are never used
    let allowed: u32 = match start {
        Some(s) => (((1u64 << n) - 1) as u32) & !((1u32 << s) - 1),
        None => ((1u64 << n) - 1) as u32,
    };
    for mask in 1..(1usize << n) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        explored += e.count_ones() as u64;
        for v in bits(e) {
            for w in bits(adj[v] & allowed & !(mask as u32)) {
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    (ends, explored)
}

/// Walks back through the table to recover a path covering `mask` that
/// ends at `v`.
fn recover(ends: &[u32], adj: &[u32], mut mask: u32, mut v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    while mask.count_ones() > 1 {
        let rest = mask & !(1 << v);
        // predecessor u must end a path on `rest` and have the arc u -> v
        let u = bits(ends[rest as usize])
            .find(|&u| adj[u] & (1 << v) != 0)
            .expect("table is consistent");
        out.push(u);
        mask = rest;
        v = u;
    }
    out.reverse();
    out
}

/// Longest path (in edges). Guarded at [`SUBSET_LIMIT`] vertices.
pub fn exact_longest_path(g: &Graph) -> Result<ExactResult<Path>> {
    guard(g, SUBSET_LIMIT)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(ExactResult {
            optimum: 0,
            witness: Some(Path::default()),
            explored: 0,
        });
    }
    let adj = neighbor_masks(g);
    let (ends, explored) = subset_dp(n, &adj, None);
    let (mask, v) = (1..(1usize << n))
        .filter(|&m| ends[m] != 0)
        .max_by_key(|&m| (m.count_ones(), std::cmp::Reverse(m)))
        .map(|m| (m as u32, ends[m].trailing_zeros() as Vertex))
        .expect("single vertices are paths");
    let witness = Path::new(recover(&ends, &adj, mask, v));
    Ok(ExactResult {
        optimum: witness.length(),
        witness: Some(witness),
        explored,
    })
}

/// Longest cycle; 0 and no witness for forests. Guarded at
/// [`SUBSET_LIMIT`] vertices.
pub fn exact_longest_cycle(g: &Graph) -> Result<ExactResult<Cycle>> {
    guard(g, SUBSET_LIMIT)?;
    let n = g.vertex_count();
    let adj = neighbor_masks(g);
    let mut best: Option<Vec<Vertex>> = None;
    let mut explored = 0u64;
    for s in 0..n {
        if n - s < 3 || best.as_ref().is_some_and(|b| b.len() >= n - s) {
            break;
        }
        let (ends, count) = subset_dp(n, &adj, Some(s));
        explored += count;
        for mask in 1..(1usize << n) {
            let size = mask.count_ones() as usize;
            if size < 3 || best.as_ref().is_some_and(|b| b.len() >= size) {
                continue;
            }
            // closing arc back to the start
            if let Some(v) = bits(ends[mask]).find(|&v| adj[v] & (1 << s) != 0) {
                best = Some(recover(&ends, &adj, mask as u32, v));
            }
        }
    }
    let witness = best.map(Cycle::new).transpose()?;
    Ok(ExactResult {
        optimum: witness.as_ref().map_or(0, Cycle::length),
        witness,
        explored,
    })
}

fn connected_without(g: &Graph, removed: u32) -> bool {
    let n = g.vertex_count();
    let Some(start) = (0..n).find(|&v| removed & (1 << v) == 0) else {
        return true;
    };
    let mut seen = removed | 1 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if seen & (1 << w) == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Smallest vertex separator, by enumeration. `None` for complete graphs.
pub fn minimum_separator(g: &Graph) -> Result<Option<Vec<Vertex>>> {
    guard(g, SEPARATOR_LIMIT)?;
    let g = g.to_undirected();
    let n = g.vertex_count();
    for size in 0..n.saturating_sub(1) {
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize == size && !connected_without(&g, mask) {
                return Ok(Some(bits(mask).collect()));
            }
        }
    }
    Ok(None)
}

/// Vertex connectivity: the size of a smallest separator, or `n - 1` for
/// complete graphs. Directed graphs are read as undirected. Up to
/// [`SEPARATOR_LIMIT`] vertices separators are enumerated; above that,
/// pairwise flows are used.
pub fn exact_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n <= SEPARATOR_LIMIT {
        return match minimum_separator(g).expect("within the guard") {
            Some(s) => s.len(),
            None => n.saturating_sub(1),
        };
    }
    let g = g.to_undirected();
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    // a minimum separator misses one of the first best + 1 vertices
    let mut s = 0;
    while s <= best && s < n {
        for w in g.vertices() {
            if w != s && !g.has_edge(s, w) {
                let k = local_vertex_connectivity(&g, s, w, best).expect("non-adjacent pair");
                best = best.min(k);
            }
        }
        s += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_graph, cycle_graph, path_graph, petersen_graph, prism_graph, two_cliques_shared_vertex,
    };

    #[test]
    fn longest_paths() {
        for n in 1..8 {
            let r = exact_longest_path(&path_graph(n).unwrap()).unwrap();
            assert_eq!(r.optimum, n - 1);
            assert_eq!(exact_longest_path(&complete_graph(n).unwrap()).unwrap().optimum, n - 1);
        }
        let p = petersen_graph();
        let r = exact_longest_path(&p).unwrap();
        assert_eq!(r.optimum, 9);
        r.witness.unwrap().validate(&p).unwrap();
    }

    #[test]
    fn longest_cycles() {
        assert_eq!(exact_longest_cycle(&path_graph(6).unwrap()).unwrap().optimum, 0);
        assert!(exact_longest_cycle(&path_graph(6).unwrap()).unwrap().witness.is_none());
        for n in 3..9 {
            assert_eq!(exact_longest_cycle(&cycle_graph(n).unwrap()).unwrap().optimum, n);
        }
        let g = two_cliques_shared_vertex(4).unwrap();
        let r = exact_longest_cycle(&g).unwrap();
        assert_eq!(r.optimum, 5);
        r.witness.unwrap().validate(&g).unwrap();
        // the Petersen graph is not Hamiltonian
        assert_eq!(exact_longest_cycle(&petersen_graph()).unwrap().optimum, 9);
    }

    #[test]
    fn size_guard() {
        let big = path_graph(21).unwrap();
        assert!(matches!(exact_longest_path(&big), Err(Error::SizeGuard { .. })));
        assert!(exact_longest_cycle(&big).is_err());
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(exact_connectivity(&complete_graph(6).unwrap()), 5);
        assert_eq!(exact_connectivity(&cycle_graph(9).unwrap()), 2);
        assert_eq!(exact_connectivity(&prism_graph()), 3);
        assert_eq!(exact_connectivity(&petersen_graph()), 3);
        assert_eq!(exact_connectivity(&two_cliques_shared_vertex(3).unwrap()), 1);
        // flow path above the enumeration limit
        assert_eq!(exact_connectivity(&cycle_graph(15).unwrap()), 2);
        assert_eq!(exact_connectivity(&complete_graph(14).unwrap()), 13);
        assert_eq!(exact_connectivity(&two_cliques_shared_vertex(7).unwrap()), 1);
    }
}
