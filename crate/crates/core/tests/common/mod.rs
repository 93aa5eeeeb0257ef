//! Brute-force oracles and instance builders shared by the integration
//! tests. None of these reuse the library's algorithms.

#![allow(dead_code)]

use randsub::connectivity::vertex_connectivity_at_least;
use randsub::exposure::erdos_renyi;
use randsub::{derive_seed, Cycle, Graph, Vertex};

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    erdos_renyi(n, p, seed).unwrap()
}

fn reaches(g: &Graph, removed: u32, from: u32, to: u32) -> bool {
    let mut seen = from & !removed;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        for &w in g.neighbors(v) {
            let bit = 1u32 << w;
            if removed & bit == 0 && seen & bit == 0 {
                seen |= bit;
                frontier |= bit;
            }
        }
    }
    seen & to & !removed != 0
}

fn mask(vs: &[Vertex]) -> u32 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

/// Size of a smallest vertex set meeting every `A`-`B` path. A side with a
/// single vertex may not be used (paths then share that vertex), which is
/// the fan form of Menger's theorem.
pub fn brute_force_disjoint_paths(g: &Graph, a: &[Vertex], b: &[Vertex]) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16);
    let (am, bm) = (mask(a), mask(b));
    let forbidden = if a.len() == 1 { am } else { 0 } | if b.len() == 1 { bm } else { 0 };
    let mut best = usize::MAX;
    for s in 0u32..(1 << n) {
        if s & forbidden != 0 || s.count_ones() as usize >= best {
            continue;
        }
        if !reaches(g, s, am, bm) {
            best = s.count_ones() as usize;
        }
    }
    best
}

/// Vertex connectivity by enumerating vertex sets: the smallest set whose
/// removal disconnects the graph, or `n - 1` when none does.
pub fn brute_force_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16);
    let all = (1u32 << n) - 1;
    let mut best = n.saturating_sub(1);
    for s in 0u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size >= best || n - size < 2 {
            continue;
        }
        let rest = all & !s;
        let first = 1u32 << rest.trailing_zeros();
        // disconnected iff the first remaining vertex misses another one
        let others = rest & !first;
        let mut reach_all = true;
        let mut o = others;
        while o != 0 {
            let v = o.trailing_zeros();
            o &= o - 1;
            if !reaches(g, s, first, 1 << v) {
                reach_all = false;
                break;
            }
        }
        if !reach_all {
            best = size;
        }
    }
    best
}

fn extend_paths(g: &Graph, path: &mut Vec<Vertex>, used: &mut [bool], best: &mut usize) {
    *best = (*best).max(path.len() - 1);
    let v = *path.last().unwrap();
    for &w in g.neighbors(v) {
        if !used[w] {
            used[w] = true;
            path.push(w);
            extend_paths(g, path, used, best);
            path.pop();
            used[w] = false;
        }
    }
}

/// Longest path length by exhaustive backtracking.
pub fn backtrack_longest_path(g: &Graph) -> usize {
    let mut best = 0;
    for s in g.vertices() {
        let mut used = vec![false; g.vertex_count()];
        used[s] = true;
        extend_paths(g, &mut vec![s], &mut used, &mut best);
    }
    best
}

fn close_cycles(g: &Graph, start: Vertex, path: &mut Vec<Vertex>, used: &mut [bool], best: &mut usize) {
    let v = *path.last().unwrap();
    if path.len() >= 3 && g.has_edge(v, start) {
        *best = (*best).max(path.len());
    }
    for &w in g.neighbors(v) {
        if w > start && !used[w] {
            used[w] = true;
            path.push(w);
            close_cycles(g, start, path, used, best);
            path.pop();
            used[w] = false;
        }
    }
}

/// Longest cycle length (0 if none) by backtracking from each cycle's
/// smallest vertex.
pub fn backtrack_longest_cycle(g: &Graph) -> usize {
    let mut best = 0;
    for s in g.vertices() {
        let mut used = vec![false; g.vertex_count()];
        used[s] = true;
        close_cycles(g, s, &mut vec![s], &mut used, &mut best);
    }
    best
}

/// `s` vertex-disjoint cycles on blocks of consecutive vertices plus a
/// random scaffold on all `n` vertices, densified until it is
/// `t`-connected.
pub struct Planted {
    pub graph: Graph,
    pub cycles: Vec<Cycle>,
}

pub fn planted_instance(lengths: &[usize], extra: usize, t: usize, seed: u64) -> Planted {
    let n = lengths.iter().sum::<usize>() + extra;
    let mut cycles = Vec::new();
    let mut next = 0;
    for &len in lengths {
        // scramble the cyclic order so attachments are not trivially adjacent
        let mut vs: Vec<Vertex> = (next..next + len).collect();
        let key = |v: &Vertex| derive_seed(seed, *v as u64);
        vs[1..].sort_by_key(key);
        cycles.push(Cycle::new(vs).unwrap());
        next += len;
    }
    let mut q = 2.0 * t as f64 / n as f64;
    for attempt in 0.. {
        let scaffold = random_graph(n, q.min(1.0), derive_seed(seed, 1000 + attempt));
        let graph = scaffold
            .with_edges(cycles.iter().flat_map(|c| c.edges().collect::<Vec<_>>()))
            .unwrap();
        if vertex_connectivity_at_least(&graph, t) {
            return Planted { graph, cycles };
        }
        q *= 1.25;
    }
    unreachable!()
}
