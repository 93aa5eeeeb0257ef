//! Depth-first exploration of `G_p` through an [`ExposureOracle`].
//!
//! Vertices are split into explored `S`, the active stack `U` and untouched
//! `T`. While the stack is nonempty the top vertex queries its edges into
//! `T` in `σ` order; a positive answer pushes the neighbour, and a vertex
//! with no unqueried edge into `T` left is popped into `S`. When the stack
//! is empty the first vertex of `T` in `σ` order becomes a new root. `U`
//! always spans a path of positive edges, which is what the long-path
//! procedures read off.

use std::borrow::Cow;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exposure::{derive_seed, split_probability, ExposureOracle};
use crate::graph::{Cycle, EdgeSet, Graph, Path, Vertex};

/// Default query budget multiplier `m` in `m·k/p`.
pub const DEFAULT_BUDGET: f64 = 1.0;
/// Budget multiplier for bipartite hosts.
pub const BIPARTITE_BUDGET: f64 = 2.0;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Root,
    Push,
    Pop,
}

/// State right after one move of the exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfsEvent {
    pub step: usize,
    pub kind: MoveKind,
    pub vertex: Vertex,
    pub s: usize,
    pub u: usize,
    pub t: usize,
    pub positives: usize,
    pub negatives: usize,
}

/// Everything a DFS run leaves behind.
#[derive(Debug, Clone)]
pub struct DfsTrace {
    pub order: Vec<Vertex>,
    /// Parent in the spanning forest; `None` for roots and unvisited vertices.
    pub parent: Vec<Option<Vertex>>,
    pub roots: Vec<Vertex>,
    /// Push and pop times; `usize::MAX` when the event never happened.
    pub entry: Vec<usize>,
    pub exit: Vec<usize>,
    /// Recorded only by [`dfs_explore`].
    pub events: Vec<DfsEvent>,
    /// Longest stack observed, bottom to top.
    pub best_path: Path,
    /// Whether the stack had emptied (a second root was taken) before the
    /// best path was first reached.
    pub restarted_before_best: bool,
    pub queries: usize,
    pub positives: usize,
    pub budget: Option<usize>,
    /// Stopped because the budget ran out.
    pub exhausted: bool,
    /// `U ∪ T` became empty.
    pub complete: bool,
}

impl DfsTrace {
    pub fn negatives(&self) -> usize {
        self.queries - self.positives
    }

    pub fn visited(&self, v: Vertex) -> bool {
        self.entry[v] != NONE
    }

    /// `a` is a proper ancestor of `b`. Only meaningful for vertices that
    /// were both pushed and popped, i.e. after a complete run.
    pub fn is_ancestor(&self, a: Vertex, b: Vertex) -> bool {
        a != b && self.entry[a] < self.entry[b] && self.exit[b] < self.exit[a]
    }

    /// Comparable in the forest: one is an ancestor of the other.
    pub fn comparable(&self, a: Vertex, b: Vertex) -> bool {
        self.is_ancestor(a, b) || self.is_ancestor(b, a)
    }

    pub fn depth(&self, mut v: Vertex) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            v = p;
            d += 1;
        }
        d
    }

    /// Forest path from `ancestor` down to `v`.
    pub fn tree_path(&self, ancestor: Vertex, v: Vertex) -> Option<Path> {
        let mut out = vec![v];
        let mut cur = v;
        while cur != ancestor {
            cur = self.parent[cur]?;
            out.push(cur);
        }
        out.reverse();
        Some(Path::new(out))
    }

    /// Forest edges `(parent, child)`.
    pub fn forest_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    pub fn write_events_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for e in &self.events {
            w.serialize(e)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_order(n: usize, sigma: &[Vertex]) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::InvalidOrder(format!("length {} for {n} vertices", sigma.len())));
    }
    let mut seen = vec![false; n];
    for &v in sigma {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidOrder(format!("vertex {v} out of range or repeated")));
        }
    }
    Ok(())
}

/// `σ` starting at `start`, then the rest ascending.
pub fn order_starting_at(n: usize, start: Vertex) -> Vec<Vertex> {
    std::iter::once(start).chain((0..n).filter(|&v| v != start)).collect()
}

/// Runs the exploration and records one event per move.
///
/// A budget of `Some(0)` returns a trace with no moves. With `None` the
/// run continues until every vertex is explored.
pub fn dfs_explore(oracle: &mut ExposureOracle<'_>, sigma: &[Vertex], query_budget: Option<usize>) -> Result<DfsTrace> {
    run(oracle, sigma, query_budget, true)
}

pub(crate) fn run(
    oracle: &mut ExposureOracle<'_>,
    sigma: &[Vertex],
    budget: Option<usize>,
    record: bool,
) -> Result<DfsTrace> {
    let g = oracle.host();
    let n = g.vertex_count();
    check_order(n, sigma)?;

    let identity = sigma.iter().enumerate().all(|(i, &v)| i == v);
    let mut rank = vec![0usize; n];
    for (i, &v) in sigma.iter().enumerate() {
        rank[v] = i;
    }
    // adjacency in σ order; borrowed when σ is the identity
    let scan: Vec<Cow<'_, [Vertex]>> = g
        .vertices()
        .map(|v| {
            if identity {
                Cow::Borrowed(g.neighbors(v))
            } else {
                let mut list = g.neighbors(v).to_vec();
                list.sort_unstable_by_key(|&w| rank[w]);
                Cow::Owned(list)
            }
        })
        .collect();

    const IN_T: u8 = 0;
    const IN_U: u8 = 1;
    const IN_S: u8 = 2;
    let mut state = vec![IN_T; n];
    let mut cursor = vec![0usize; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut trace = DfsTrace {
        order: sigma.to_vec(),
        parent: vec![None; n],
        roots: Vec::new(),
        entry: vec![NONE; n],
        exit: vec![NONE; n],
        events: Vec::new(),
        best_path: Path::default(),
        restarted_before_best: false,
        queries: 0,
        positives: 0,
        budget,
        exhausted: false,
        complete: n == 0,
    };
    let (mut s_size, mut t_size) = (0usize, n);
    let mut clock = 0usize;
    let mut next_root = 0usize;

    macro_rules! event {
        ($kind:expr, $v:expr) => {
            if record {
                trace.events.push(DfsEvent {
                    step: trace.events.len(),
                    kind: $kind,
                    vertex: $v,
                    s: s_size,
                    u: stack.len(),
                    t: t_size,
                    positives: trace.positives,
                    negatives: trace.queries - trace.positives,
                });
            }
        };
    }

    if budget == Some(0) {
        trace.exhausted = n > 0;
        return Ok(trace);
    }

    loop {
        let Some(&top) = stack.last() else {
            while next_root < n && state[sigma[next_root]] != IN_T {
                next_root += 1;
            }
            if next_root == n {
                trace.complete = true;
                break;
            }
            let r = sigma[next_root];
            state[r] = IN_U;
            t_size -= 1;
            trace.entry[r] = clock;
            clock += 1;
            stack.push(r);
            trace.roots.push(r);
            event!(MoveKind::Root, r);
            continue;
        };

        if budget.is_some_and(|b| trace.queries >= b) {
            trace.exhausted = true;
            break;
        }

        let list = &scan[top];
        let mut i = cursor[top];
        while i < list.len() && state[list[i]] != IN_T {
            i += 1;
        }
        if i == list.len() {
            cursor[top] = i;
            if stack.len() > trace.best_path.vertex_count() {
                trace.best_path = Path::new(stack.clone());
                trace.restarted_before_best = trace.roots.len() > 1;
            }
            stack.pop();
            state[top] = IN_S;
            s_size += 1;
            trace.exit[top] = clock;
            clock += 1;
            event!(MoveKind::Pop, top);
            continue;
        }
        let w = list[i];
        cursor[top] = i + 1;
        trace.queries += 1;
        if oracle.query_unchecked(top, w) {
            trace.positives += 1;
            state[w] = IN_U;
            t_size -= 1;
            trace.parent[w] = Some(top);
            trace.entry[w] = clock;
            clock += 1;
            stack.push(w);
            event!(MoveKind::Push, w);
        }
    }

    if stack.len() > trace.best_path.vertex_count() {
        trace.best_path = Path::new(stack);
        trace.restarted_before_best = trace.roots.len() > 1;
    }
    Ok(trace)
}

/// Result of [`dfs_longest_path_detailed`].
#[derive(Debug, Clone)]
pub struct DfsPathOutcome {
    pub path: Path,
    pub budget: usize,
    pub trace: DfsTrace,
}

/// Query budget `⌈m·k/p⌉` with `k` the minimum (out-)degree.
pub fn query_budget(g: &Graph, p: f64, multiplier: f64) -> usize {
    if p <= 0.0 {
        return 0;
    }
    (multiplier * g.min_degree() as f64 / p).ceil() as usize
}

/// Longest stack path of a budgeted DFS over `G_p`.
///
/// `σ` is ascending vertex order, or starts at `start` when given. The
/// path starts at `start` unless the stack emptied before the best path
/// was reached; [`DfsTrace::restarted_before_best`] reports that case.
pub fn dfs_longest_path(g: &Graph, p: f64, seed: u64, start: Option<Vertex>, budget_multiplier: f64) -> Result<Path> {
    Ok(dfs_longest_path_detailed(g, p, seed, start, budget_multiplier)?.path)
}

pub fn dfs_longest_path_detailed(
    g: &Graph,
    p: f64,
    seed: u64,
    start: Option<Vertex>,
    budget_multiplier: f64,
) -> Result<DfsPathOutcome> {
    if !(budget_multiplier >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "budget multiplier {budget_multiplier}"
        )));
    }
    let mut oracle = ExposureOracle::new(g, p, seed)?;
    let n = g.vertex_count();
    let sigma: Vec<Vertex> = match start {
        Some(s) => {
            g.check_vertex(s)?;
            order_starting_at(n, s)
        }
        None => (0..n).collect(),
    };
    let budget = query_budget(g, p, budget_multiplier);
    let trace = run(&mut oracle, &sigma, Some(budget), false)?;
    let mut path = trace.best_path.clone();
    if path.is_empty() && n > 0 {
        path = Path::single(sigma[0]);
    }
    Ok(DfsPathOutcome { path, budget, trace })
}

/// Result of [`dfs_long_cycle_detailed`].
#[derive(Debug, Clone)]
pub struct DfsCycleOutcome {
    pub cycle: Option<Cycle>,
    /// Vertex with the most ancestor edges in the host.
    pub pivot: Option<Vertex>,
    pub ancestor_edges: usize,
    pub queries: usize,
    /// Forest edges of round 1 plus the closing edge of round 2.
    pub exposed: EdgeSet,
}

/// Two-round DFS cycle: round 1 builds a spanning DFS forest of
/// `G_{p_1}`; the vertex `v` with the most host edges to its ancestors is
/// picked, and round 2 exposes those edges from the root downwards. The
/// first positive one closes a cycle with the forest path.
///
/// The rounds use `1 - sqrt(1 - p)` each so that their union is `G_p`.
pub fn dfs_long_cycle(g: &Graph, p: f64, seed: u64) -> Result<Option<Cycle>> {
    Ok(dfs_long_cycle_detailed(g, p, seed)?.cycle)
}

pub fn dfs_long_cycle_detailed(g: &Graph, p: f64, seed: u64) -> Result<DfsCycleOutcome> {
    let q = split_probability(p, 2)?;
    dfs_long_cycle_rounds(g, (q, derive_seed(seed, 1)), (q, derive_seed(seed, 2)))
}

/// [`dfs_long_cycle`] with explicit `(probability, seed)` per round.
pub fn dfs_long_cycle_rounds(g: &Graph, round1: (f64, u64), round2: (f64, u64)) -> Result<DfsCycleOutcome> {
    let n = g.vertex_count();
    let mut first = ExposureOracle::new(g, round1.0, round1.1)?;
    let mut second = ExposureOracle::new(g, round2.0, round2.1)?;
    let sigma: Vec<Vertex> = (0..n).collect();
    let trace = run(&mut first, &sigma, None, false)?;
    let mut exposed = EdgeSet::new(g.is_directed());
    for (a, b) in trace.forest_edges() {
        exposed.insert(a, b);
    }

    let mut pivot = None;
    let mut best = 0usize;
    for v in g.vertices() {
        let count = g
            .neighbors(v)
            .iter()
            .filter(|&&w| Some(w) != trace.parent[v] && trace.is_ancestor(w, v))
            .count();
        if count > best {
            best = count;
            pivot = Some(v);
        }
    }
    let mut outcome = DfsCycleOutcome {
        cycle: None,
        pivot,
        ancestor_edges: best,
        queries: trace.queries,
        exposed,
    };
    let Some(v) = pivot else {
        return Ok(outcome);
    };

    // farthest ancestor first: increasing entry time
    let mut ancestors: Vec<Vertex> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| Some(w) != trace.parent[v] && trace.is_ancestor(w, v))
        .collect();
    ancestors.sort_unstable_by_key(|&w| trace.entry[w]);
    for w in ancestors {
        outcome.queries += 1;
        if second.query_unchecked(v, w) {
            let path = trace.tree_path(w, v).expect("ancestor lies on the forest path");
            outcome.exposed.insert(v, w);
            outcome.cycle = Some(Cycle::new(path.into_vertices())?);
            break;
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};

    #[test]
    fn full_path_at_p_one() {
        let g = path_graph(8).unwrap();
        let mut o = ExposureOracle::new(&g, 1.0, 0).unwrap();
        let sigma: Vec<_> = (0..8).collect();
        let t = dfs_explore(&mut o, &sigma, None).unwrap();
        assert_eq!(t.best_path.vertices(), &sigma[..]);
        assert_eq!(t.events.iter().map(|e| e.u).max(), Some(8));
        assert!(t.complete);
    }

    #[test]
    fn clique_forest_is_a_path() {
        let g = complete_graph(4).unwrap();
        let mut o = ExposureOracle::new(&g, 1.0, 0).unwrap();
        let t = dfs_explore(&mut o, &[2, 0, 3, 1], None).unwrap();
        assert_eq!(t.best_path.vertices(), &[2, 0, 3, 1]);
        assert_eq!(t.best_path.length(), 3);
        assert_eq!(t.roots, vec![2]);
        assert_eq!(t.forest_edges().count(), 3);
    }

    #[test]
    fn zero_budget_is_empty() {
        let g = complete_graph(5).unwrap();
        let mut o = ExposureOracle::new(&g, 0.5, 0).unwrap();
        let t = dfs_explore(&mut o, &[0, 1, 2, 3, 4], Some(0)).unwrap();
        assert!(t.events.is_empty() && t.best_path.is_empty());
        assert_eq!(o.queries(), 0);
    }

    #[test]
    fn rejects_bad_order() {
        let g = complete_graph(3).unwrap();
        let mut o = ExposureOracle::new(&g, 0.5, 0).unwrap();
        assert!(dfs_explore(&mut o, &[0, 1], None).is_err());
        assert!(dfs_explore(&mut o, &[0, 1, 1], None).is_err());
    }

    #[test]
    fn longest_path_starts_at_start() {
        let g = complete_graph(50).unwrap();
        let out = dfs_longest_path_detailed(&g, 0.5, 4, Some(17), 1.0).unwrap();
        assert_eq!(out.path.start(), Some(17));
        assert!(!out.trace.restarted_before_best);
        assert!(out.trace.queries <= out.budget);
    }

    #[test]
    fn long_cycle_on_cycle_graph() {
        let g = cycle_graph(9).unwrap();
        let c = dfs_long_cycle(&g, 1.0, 3).unwrap().unwrap();
        assert_eq!(c.length(), 9);
        c.validate(&g).unwrap();
    }

    #[test]
    fn long_cycle_none_on_tree() {
        let g = path_graph(6).unwrap();
        let out = dfs_long_cycle_detailed(&g, 1.0, 3).unwrap();
        assert!(out.cycle.is_none() && out.pivot.is_none());
    }

    #[test]
    fn events_csv_has_header() {
        let g = path_graph(2).unwrap();
        let mut o = ExposureOracle::new(&g, 1.0, 0).unwrap();
        let t = dfs_explore(&mut o, &[0, 1], None).unwrap();
        let mut buf = Vec::new();
        t.write_events_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("step,kind,vertex,s,u,t,positives,negatives\n0,root,0,0,1,1,0,0\n"));
    }
}
