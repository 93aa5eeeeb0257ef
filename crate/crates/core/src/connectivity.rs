//! Vertex connectivity: threshold tests, Menger paths, extraction of a
//! highly connected subgraph, absorption and merging.
//!
//! A graph is `t`-connected when it has more than `t` vertices and stays
//! connected after deleting any `t - 1` of them. All flow computations use
//! the usual vertex-split network with unit capacities.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, Subgraph, Vertex};

/// Residual network over split vertices `v_in = 2v`, `v_out = 2v + 1`,
/// plus a super source and sink.
struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<u32>,
    initial: Vec<u32>,
    nodes: usize,
}

impl FlowNetwork {
    fn with_nodes(nodes: usize) -> FlowNetwork {
        FlowNetwork {
            head: vec![usize::MAX; nodes],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
            initial: Vec::new(),
            nodes,
        }
    }

    /// Split network of `g` with vertex capacity 1 and edge capacity 1;
    /// nodes `2n` and `2n + 1` are the super source and sink.
    fn split(g: &Graph) -> FlowNetwork {
        let n = g.vertex_count();
        let mut net = FlowNetwork::with_nodes(2 * n + 2);
        for v in g.vertices() {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for v in g.vertices() {
            for &w in g.neighbors(v) {
                net.add_arc(2 * v + 1, 2 * w, 1);
            }
        }
        net
    }

    fn add_arc(&mut self, a: usize, b: usize, c: u32) -> usize {
        for (from, to, cap) in [(a, b, c), (b, a, 0)] {
            self.to.push(to);
            self.cap.push(cap);
            self.initial.push(cap);
            self.next.push(self.head[from]);
            self.head[from] = self.to.len() - 1;
        }
        self.to.len() - 2
    }

    fn source(&self) -> usize {
        self.nodes - 2
    }

    fn sink(&self) -> usize {
        self.nodes - 1
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.initial);
    }

    fn set_cap(&mut self, arc: usize, c: u32) {
        self.cap[arc] = c;
        self.initial[arc] = c;
    }

    /// Augments along shortest paths until `limit` units flow.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut pred = vec![usize::MAX; self.nodes];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            pred[s] = usize::MAX - 1;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(x) = queue.pop_front() {
                let mut e = self.head[x];
                while e != usize::MAX {
                    let y = self.to[e];
                    if self.cap[e] > 0 && pred[y] == usize::MAX {
                        pred[y] = e;
                        if y == t {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                    e = self.next[e];
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut y = t;
            while y != s {
                let e = pred[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let mut e = self.head[x];
            while e != usize::MAX {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
                e = self.next[e];
            }
        }
        seen
    }

    fn flow_on(&self, e: usize) -> u32 {
        self.initial[e].saturating_sub(self.cap[e])
    }
}

/// Maximum number of internally disjoint `s`-`t` paths, capped at
/// `limit`. `s` and `t` must be distinct and non-adjacent.
pub fn local_vertex_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> Result<usize> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t || g.has_edge(s, t) {
        return Err(Error::InvalidParameter(format!(
            "{s} and {t} must be distinct and non-adjacent"
        )));
    }
    let mut net = FlowNetwork::split(g);
    Ok(net.max_flow(2 * s + 1, 2 * t, limit))
}

fn common_neighbors_at_least(g: &Graph, a: Vertex, b: Vertex, t: usize) -> bool {
    let (x, y) = (g.neighbors(a), g.neighbors(b));
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < x.len() && j < y.len() && count < t {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count >= t
}

/// A vertex set of size below `t` whose removal disconnects `g`, if one
/// exists. `None` also when `g` has at most `t` vertices and is complete.
pub fn find_small_separator(g: &Graph, t: usize) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    if t == 0 || n < 2 {
        return None;
    }
    if !g.is_connected() {
        return Some(Vec::new());
    }
    let mut net = FlowNetwork::split(g);
    // every cut smaller than t misses one of the first t vertices
    for s in 0..t.min(n) {
        for w in g.vertices() {
            if w == s || g.has_edge(s, w) || (w < t && w < s) || common_neighbors_at_least(g, s, w, t) {
                continue;
            }
            net.reset();
            let (src, dst) = (2 * s + 1, 2 * w);
            if net.max_flow(src, dst, t) < t {
                let seen = net.reachable(src);
                let cut = g.vertices().filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect();
                return Some(cut);
            }
        }
    }
    None
}

/// `true` iff `g` has more than `t` vertices and no separator of fewer
/// than `t` vertices.
pub fn vertex_connectivity_at_least(g: &Graph, t: usize) -> bool {
    let n = g.vertex_count();
    if t == 0 {
        return true;
    }
    if n <= t || g.min_degree() < t {
        return false;
    }
    find_small_separator(g, t).is_none()
}

/// Paths joining two vertex sets; see [`menger_paths`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointPathSet {
    pub paths: Vec<Path>,
    pub endpoints_in_a: Vec<Vertex>,
    pub endpoints_in_b: Vec<Vertex>,
}

impl DisjointPathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Up to `t` paths from `A` to `B` with no interior vertex in `A ∪ B`.
///
/// Paths are pairwise vertex-disjoint, except that a side consisting of a
/// single vertex is shared by all paths (the fan form: with `A = {u}`
/// and `B = {v}` this is the classic internally disjoint `u`-`v` paths).
/// The count is `min(t, m)` with `m` the maximum number of such paths,
/// which equals the size of a minimum `A`-`B` separator.
pub fn menger_paths(g: &Graph, a: &[Vertex], b: &[Vertex], t: usize) -> Result<DisjointPathSet> {
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("B"));
    }
    let n = g.vertex_count();
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &v in a {
        g.check_vertex(v)?;
        in_a[v] = true;
    }
    for &v in b {
        g.check_vertex(v)?;
        in_b[v] = true;
    }
    let fan_a = a.iter().all(|&v| v == a[0]);
    let fan_b = b.iter().all(|&v| v == b[0]);

    let mut out = DisjointPathSet {
        paths: Vec::new(),
        endpoints_in_a: Vec::new(),
        endpoints_in_b: Vec::new(),
    };
    if t == 0 {
        return Ok(out);
    }
    if fan_a && fan_b && a[0] == b[0] {
        out.paths.push(Path::single(a[0]));
        out.endpoints_in_a.push(a[0]);
        out.endpoints_in_b.push(a[0]);
        return Ok(out);
    }

    let mut net = FlowNetwork::split(g);
    let (s, sink) = (net.source(), net.sink());
    for v in g.vertices() {
        if in_a[v] {
            net.add_arc(s, 2 * v, 1);
        }
        if in_b[v] {
            net.add_arc(2 * v + 1, sink, 1);
        }
    }
    for (fan, vertex) in [(fan_a, a[0]), (fan_b, b[0])] {
        if fan {
            // the internal arc of a shared endpoint is the first arc added
            // for it; lift its capacity and that of its terminal arc
            net.set_cap(2 * vertex, t as u32);
        }
    }
    if fan_a {
        let arc = arc_between(&net, s, 2 * a[0]);
        net.set_cap(arc, t as u32);
    }
    if fan_b {
        let arc = arc_between(&net, 2 * b[0] + 1, sink);
        net.set_cap(arc, t as u32);
    }

    let flow = net.max_flow(s, sink, t);
    for _ in 0..flow {
        let walk = take_walk(&mut net, s, sink);
        let Some(path) = trim(walk, &in_a, &in_b) else { continue };
        out.endpoints_in_a.push(path[0]);
        out.endpoints_in_b.push(path[path.len() - 1]);
        out.paths.push(Path::new(path));
    }
    Ok(out)
}

fn arc_between(net: &FlowNetwork, x: usize, y: usize) -> usize {
    let mut e = net.head[x];
    while e != usize::MAX {
        if net.to[e] == y && e % 2 == 0 {
            return e;
        }
        e = net.next[e];
    }
    unreachable!("arc was added")
}

/// Follows and consumes one unit of flow from `s` to `t`, returning the
/// graph vertices visited.
fn take_walk(net: &mut FlowNetwork, s: usize, t: usize) -> Vec<Vertex> {
    let mut walk = Vec::new();
    let mut x = s;
    while x != t {
        let mut e = net.head[x];
        while e != usize::MAX {
            if e % 2 == 0 && net.flow_on(e) > 0 {
                break;
            }
            e = net.next[e];
        }
        assert!(e != usize::MAX, "flow conservation");
        net.cap[e] += 1;
        net.cap[e ^ 1] -= 1;
        x = net.to[e];
        if x != t && x % 2 == 0 {
            walk.push(x / 2);
        }
    }
    walk
}

/// Removes loops from a walk, then keeps the stretch between the last
/// `A` vertex before the first `B` vertex and that `B` vertex.
fn trim(walk: Vec<Vertex>, in_a: &[bool], in_b: &[bool]) -> Option<Vec<Vertex>> {
    let mut simple: Vec<Vertex> = Vec::with_capacity(walk.len());
    for v in walk {
        if let Some(i) = simple.iter().position(|&x| x == v) {
            simple.truncate(i + 1);
        } else {
            simple.push(v);
        }
    }
    let j = simple.iter().position(|&v| in_b[v])?;
    let i = simple[..=j].iter().rposition(|&v| in_a[v])?;
    Some(simple[i..=j].to_vec())
}

/// Best-effort extraction of a `t`-connected subgraph: drop vertices of
/// degree below `2t` until none is left, stop if the rest is
/// `t`-connected, otherwise split along a separator of fewer than `t`
/// vertices and continue with the side (plus separator) spanning more
/// edges. Gives up below `t + 1` vertices. Any returned subgraph has been
/// checked to be `t`-connected.
pub fn find_t_connected_subgraph(g: &Graph, t: usize) -> Option<Subgraph> {
    if t == 0 {
        return None;
    }
    let mut current: Vec<Vertex> = g.vertices().collect();
    loop {
        let sub = prune_low_degree(g, &current, 2 * t);
        if sub.vertex_count() < t + 1 {
            return None;
        }
        let local = sub.graph();
        // more than t vertices of degree at least 2t: no separator means
        // t-connected
        let Some(cut) = find_small_separator(local, t) else {
            return Some(sub);
        };
        let mut removed = vec![false; local.vertex_count()];
        for &v in &cut {
            removed[v] = true;
        }
        let rest: Vec<Vertex> = local.vertices().filter(|&v| !removed[v]).collect();
        let inner = local.induced_subgraph(&rest).ok()?;
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for comp in inner.graph().components() {
            let mut side: Vec<Vertex> = comp
                .iter()
                .map(|&v| sub.to_host(inner.to_host(v)))
                .chain(cut.iter().map(|&v| sub.to_host(v)))
                .collect();
            side.sort_unstable();
            let edges = g.induced_subgraph(&side).ok()?.graph().edge_count();
            let better = match &best {
                None => true,
                Some((e, s)) => edges > *e || (edges == *e && side < *s),
            };
            if better {
                best = Some((edges, side));
            }
        }
        let (_, side) = best?;
        if side.len() >= current.len() {
            return None;
        }
        current = side;
    }
}

/// Induced subgraph on `vertices` after repeatedly deleting vertices of
/// degree below `min_degree`.
fn prune_low_degree(g: &Graph, vertices: &[Vertex], min_degree: usize) -> Subgraph {
    let n = g.vertex_count();
    let mut alive = vec![false; n];
    for &v in vertices {
        alive[v] = true;
    }
    let mut degree = vec![0usize; n];
    let mut queue = Vec::new();
    for &v in vertices {
        degree[v] = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        if degree[v] < min_degree {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] + 1 == min_degree {
                    queue.push(w);
                }
            }
        }
    }
    let kept: Vec<Vertex> = vertices.iter().copied().filter(|&v| alive[v]).collect();
    g.induced_subgraph(&kept).expect("vertices are in range")
}

/// Checks that a subgraph is `t`-connected.
pub fn ensure_t_connected(c: &Subgraph, t: usize) -> Result<()> {
    if vertex_connectivity_at_least(c.graph(), t) {
        Ok(())
    } else {
        Err(Error::NotConnectedEnough(t))
    }
}

/// Adds, while possible, any vertex outside `c` with at least `t`
/// neighbours (in `h`) inside. The result holds the edges of `c` plus
/// every edge of `h` between an added vertex and the final vertex set, so
/// it does not depend on the order of additions.
pub fn absorb_vertices(c: &Subgraph, h: &Graph, t: usize) -> Result<Subgraph> {
    ensure_t_connected(c, t)?;
    let n = h.vertex_count();
    let mut inside = vec![false; n];
    for &v in c.host_ids() {
        h.check_vertex(v)?;
        inside[v] = true;
    }
    let mut count = vec![0usize; n];
    let mut queue = Vec::new();
    for &v in c.host_ids() {
        for &w in h.neighbors(v) {
            if !inside[w] {
                count[w] += 1;
                if count[w] == t {
                    queue.push(w);
                }
            }
        }
    }
    let mut added = Vec::new();
    while let Some(z) = queue.pop() {
        if inside[z] {
            continue;
        }
        inside[z] = true;
        added.push(z);
        for &w in h.neighbors(z) {
            if !inside[w] {
                count[w] += 1;
                if count[w] == t {
                    queue.push(w);
                }
            }
        }
    }
    if added.is_empty() {
        return Ok(c.clone());
    }
    added.sort_unstable();
    let mut ids = c.host_ids().to_vec();
    ids.extend_from_slice(&added);
    let mut edges: Vec<(Vertex, Vertex)> = c.host_edges().collect();
    for &z in &added {
        edges.extend(h.neighbors(z).iter().filter(|&&w| inside[w]).map(|&w| (z, w)));
    }
    let out = Subgraph::from_host_edges(ids, edges, h.is_directed())?;
    debug_assert!(vertex_connectivity_at_least(out.graph(), t));
    Ok(out)
}

/// Union of two `t`-connected subgraphs sharing at least `t` vertices;
/// `None` when they share fewer.
pub fn merge_if_overlapping(c1: &Subgraph, c2: &Subgraph, t: usize) -> Result<Option<Subgraph>> {
    ensure_t_connected(c1, t)?;
    ensure_t_connected(c2, t)?;
    if c1.overlap(c2) < t {
        return Ok(None);
    }
    let merged = c1.union(c2)?;
    debug_assert!(vertex_connectivity_at_least(merged.graph(), t));
    Ok(Some(merged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, petersen_graph, prism_graph, two_cliques_shared_vertex};

    #[test]
    fn thresholds() {
        let c = cycle_graph(7).unwrap();
        assert!(vertex_connectivity_at_least(&c, 2));
        assert!(!vertex_connectivity_at_least(&c, 3));
        let k = complete_graph(6).unwrap();
        assert!(vertex_connectivity_at_least(&k, 5));
        assert!(!vertex_connectivity_at_least(&k, 6));
        assert!(vertex_connectivity_at_least(&petersen_graph(), 3));
        assert!(vertex_connectivity_at_least(&prism_graph(), 3));
        assert!(!vertex_connectivity_at_least(&two_cliques_shared_vertex(3).unwrap(), 2));
    }

    #[test]
    fn separator_of_two_cliques() {
        let g = two_cliques_shared_vertex(4).unwrap();
        assert_eq!(find_small_separator(&g, 2), Some(vec![4]));
    }

    #[test]
    fn local_connectivity() {
        let p = petersen_graph();
        assert_eq!(local_vertex_connectivity(&p, 0, 2, 10).unwrap(), 3);
        assert!(local_vertex_connectivity(&p, 0, 1, 10).is_err());
    }

    #[test]
    fn menger_fan_on_cycle() {
        let c = cycle_graph(8).unwrap();
        let set = menger_paths(&c, &[0], &[4], 5).unwrap();
        assert_eq!(set.len(), 2);
        for p in &set.paths {
            p.validate(&c).unwrap();
            assert_eq!((p.start(), p.end()), (Some(0), Some(4)));
        }
    }

    #[test]
    fn menger_on_clique() {
        let k = complete_graph(5).unwrap();
        let set = menger_paths(&k, &[0, 1], &[2, 3], 4).unwrap();
        assert_eq!(set.len(), 2);
        assert!(menger_paths(&k, &[], &[1], 2).is_err());
    }

    #[test]
    fn menger_paths_are_disjoint_and_trimmed() {
        let g = prism_graph();
        let set = menger_paths(&g, &[0, 1, 2], &[3, 4, 5], 3).unwrap();
        assert_eq!(set.len(), 3);
        let mut used = std::collections::HashSet::new();
        for p in &set.paths {
            p.validate(&g).unwrap();
            assert_eq!(p.length(), 1);
            for &v in p.vertices() {
                assert!(used.insert(v));
            }
        }
    }

    #[test]
    fn extraction_on_two_cliques() {
        let g = two_cliques_shared_vertex(5).unwrap();
        let sub = find_t_connected_subgraph(&g, 2).unwrap();
        assert_eq!(sub.sorted_host_ids(), (0..=5).collect::<Vec<_>>());
        let k = complete_graph(9).unwrap();
        assert_eq!(find_t_connected_subgraph(&k, 2).unwrap().vertex_count(), 9);
        assert!(find_t_connected_subgraph(&cycle_graph(10).unwrap(), 2).is_none());
    }

    #[test]
    fn absorption() {
        let h = complete_graph(6).unwrap();
        let c = h.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        let out = absorb_vertices(&c, &h, 3).unwrap();
        assert_eq!(out.sorted_host_ids(), (0..6).collect::<Vec<_>>());
        let path = crate::graph::path_graph(5).unwrap();
        let c = path.induced_subgraph(&[0, 1]).unwrap();
        assert!(absorb_vertices(&c, &path, 2).is_err());
    }

    #[test]
    fn merging() {
        let h = complete_graph(6).unwrap();
        let a = h.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        let b = h.induced_subgraph(&[2, 3, 4, 5]).unwrap();
        let m = merge_if_overlapping(&a, &b, 2).unwrap().unwrap();
        assert_eq!(m.vertex_count(), 6);
        let b = h.induced_subgraph(&[3, 4, 5]).unwrap();
        assert!(merge_if_overlapping(&a, &b, 2).unwrap().is_none());
    }
}
