//! Growing and merging cycles inside highly connected graphs.
//!
//! Two disjoint cycles `C`, `C'` joined by disjoint paths merge into one
//! cycle: among the attachment points on `C`, two that are close along
//! `C` are picked, the short arc between them is dropped, and the cycle
//! continues through the two paths and the long way around `C'`. With `t`
//! paths the dropped arc has at most `|C|/t` edges.
//!
//! [`long_cycle_pipeline`] combines this with DFS cycles, a max-cut search
//! and a cluster decomposition into a best-effort long-cycle finder.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{absorb_vertices, find_t_connected_subgraph, menger_paths, merge_if_overlapping};
use crate::dfs::{dfs_long_cycle_detailed, dfs_long_cycle_rounds};
use crate::error::{Error, Result};
use crate::exposure::{derive_seed, sample_subgraph, split_probability, ExposureOracle};
use crate::graph::{Cycle, EdgeSet, Graph, Path, Subgraph, Vertex};

/// Result of [`merge_two_cycles`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeOutcome {
    pub cycle: Cycle,
    pub paths_found: usize,
    /// Edges of `C` on the dropped arc between the two attachments.
    pub gap: usize,
    /// `(1 - 1/t)|C| + |C'|/2`; guaranteed when `paths_found == t`.
    pub bound: f64,
}

fn check_disjoint(cycles: &[&Cycle]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for c in cycles {
        for &v in c.vertices() {
            if !seen.insert(v) {
                return Err(Error::CyclesNotDisjoint(v));
            }
        }
    }
    Ok(())
}

/// Splices `c2` into `c` through the paths (each from `c` to `c2`), using
/// the two attachments closest along `c`. Returns the cycle and the gap.
fn splice(c: &Cycle, c2: &Cycle, paths: &[Path]) -> Result<(Cycle, usize)> {
    if paths.len() < 2 {
        return Err(Error::TooFewPaths {
            found: paths.len(),
            needed: 2,
        });
    }
    let cv = c.vertices();
    let c2v = c2.vertices();
    let (l, l2) = (cv.len(), c2v.len());
    let pos: HashMap<Vertex, usize> = cv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let pos2: HashMap<Vertex, usize> = c2v.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut attach: Vec<(usize, usize)> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (pos[&p.vertices()[0]], i))
        .collect();
    attach.sort_unstable();
    let (mut best, mut gap) = (0, usize::MAX);
    for i in 0..attach.len() {
        let next = attach[(i + 1) % attach.len()].0;
        let g = (next + l - attach[i].0) % l;
        if g < gap {
            gap = g;
            best = i;
        }
    }
    let (pi, path_i) = (attach[best].0, &paths[attach[best].1]);
    let (pj, path_j) = {
        let (p, idx) = attach[(best + 1) % attach.len()];
        (p, &paths[idx])
    };

    let mut out: Vec<Vertex> = (0..=l - gap).map(|s| cv[(pj + s) % l]).collect();
    debug_assert_eq!(out.last(), Some(&cv[pi]));
    out.extend_from_slice(&path_i.vertices()[1..]);
    let (qi, qj) = (pos2[&path_i.end().unwrap()], pos2[&path_j.end().unwrap()]);
    let forward = (qj + l2 - qi) % l2;
    if forward >= l2 - forward {
        out.extend((1..=forward).map(|s| c2v[(qi + s) % l2]));
    } else {
        out.extend((1..=l2 - forward).map(|s| c2v[(qi + l2 - s) % l2]));
    }
    let pj_vertices = path_j.vertices();
    out.extend(pj_vertices[1..pj_vertices.len() - 1].iter().rev());
    Ok((Cycle::new(out)?, gap))
}

/// Merges two vertex-disjoint cycles of `gc` through up to `t` disjoint
/// connecting paths. Needs at least two paths.
pub fn merge_two_cycles(gc: &Graph, c: &Cycle, c2: &Cycle, t: usize) -> Result<MergeOutcome> {
    check_disjoint(&[c, c2])?;
    c.validate(gc)?;
    c2.validate(gc)?;
    let set = menger_paths(gc, c.vertices(), c2.vertices(), t)?;
    let (cycle, gap) = splice(c, c2, &set.paths)?;
    Ok(MergeOutcome {
        cycle,
        paths_found: set.len(),
        gap,
        bound: merge_bound(t, c.length(), c2.length()),
    })
}

/// `(1 - 1/t)|C| + |C'|/2`.
pub fn merge_bound(t: usize, c: usize, c2: usize) -> f64 {
    (1.0 - 1.0 / t as f64) * c as f64 + c2 as f64 / 2.0
}

/// Result of [`grow_cycle`].
#[derive(Debug, Clone, Default)]
pub struct GrowOutcome {
    pub cycle: Option<Cycle>,
    /// Best length after each round.
    pub round_lengths: Vec<usize>,
    pub merges: Vec<MergeOutcome>,
    /// Positive edges exposed by the DFS rounds.
    pub exposed: EdgeSet,
}

/// Iterative cycle growth: up to `t` rounds, each exposing `G1` at the
/// per-round share of `p`, finding a DFS cycle among the vertices off the
/// current cycle and merging it in through `gc`. `g1` and `gc` share the
/// vertex set. Stops once `target` is reached; the best cycle so far is
/// kept, so round lengths never decrease.
pub fn grow_cycle(g1: &Graph, gc: &Graph, p: f64, t: usize, seed: u64, target: usize) -> Result<GrowOutcome> {
    if t == 0 {
        return Err(Error::InvalidParameter("grow_cycle needs t >= 1".into()));
    }
    if g1.vertex_count() != gc.vertex_count() {
        return Err(Error::InvalidParameter("G1 and Gc must share the vertex set".into()));
    }
    let q = split_probability(p, t)?;
    let n = g1.vertex_count();
    let mut out = GrowOutcome {
        exposed: EdgeSet::new(g1.is_directed()),
        ..GrowOutcome::default()
    };
    for round in 0..t {
        let current = out.cycle.as_ref().map_or(0, Cycle::length);
        if current >= target && current > 0 {
            break;
        }
        let mut on_cycle = vec![false; n];
        if let Some(c) = &out.cycle {
            c.vertices().iter().for_each(|&v| on_cycle[v] = true);
        }
        let off: Vec<Vertex> = g1.vertices().filter(|&v| !on_cycle[v]).collect();
        let sub = g1.induced_subgraph(&off)?;
        let found = dfs_long_cycle_detailed(sub.graph(), q, derive_seed(seed, round as u64))?;
        out.exposed.extend_mapped(found.exposed.sorted_edges(), sub.host_ids());
        if let Some(fresh) = found.cycle.map(|c| sub.lift_cycle(&c)) {
            out.cycle = Some(match out.cycle.take() {
                None => fresh,
                Some(c) => {
                    let working = gc.with_edges(c.edges().chain(fresh.edges()))?;
                    let mut best = if fresh.length() > c.length() {
                        fresh.clone()
                    } else {
                        c.clone()
                    };
                    if let Ok(m) = merge_two_cycles(&working, &c, &fresh, t) {
                        if m.cycle.length() > best.length() {
                            best = m.cycle.clone();
                        }
                        out.merges.push(m);
                    }
                    best
                }
            });
        }
        out.round_lengths.push(out.cycle.as_ref().map_or(0, Cycle::length));
    }
    Ok(out)
}

/// One induction step of [`combine_disjoint_cycles`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombineStep {
    pub paths_found: usize,
    /// Index (into the input) of the cycle merged at this step.
    pub target: usize,
    pub paths_to_target: usize,
    pub gap: usize,
    pub length_after: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombineOutcome {
    pub cycle: Cycle,
    pub steps: Vec<CombineStep>,
    /// Whether every step found `t` paths, which is when the closed-form
    /// bound is guaranteed.
    pub full_connectivity: bool,
    /// Set when a step found fewer than two usable paths.
    pub stopped: Option<String>,
}

/// Merges `s` pairwise disjoint cycles one at a time: the current cycle
/// is joined to the union of the remaining ones by up to `t` disjoint
/// paths, the cycle receiving the most paths is spliced in, and the
/// process repeats. The first cycle is the starting one.
pub fn combine_disjoint_cycles(gc: &Graph, cycles: &[Cycle], t: usize) -> Result<CombineOutcome> {
    let refs: Vec<&Cycle> = cycles.iter().collect();
    check_disjoint(&refs)?;
    let Some(first) = cycles.first() else {
        return Err(Error::InvalidParameter("no cycles to combine".into()));
    };
    for c in cycles {
        c.validate(gc)?;
    }
    let mut out = CombineOutcome {
        cycle: first.clone(),
        steps: Vec::new(),
        full_connectivity: true,
        stopped: None,
    };
    let mut remaining: Vec<usize> = (1..cycles.len()).collect();
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    for &i in &remaining {
        for &v in cycles[i].vertices() {
            owner.insert(v, i);
        }
    }
    while !remaining.is_empty() {
        let targets: Vec<Vertex> = remaining
            .iter()
            .flat_map(|&i| cycles[i].vertices().iter().copied())
            .collect();
        let set = menger_paths(gc, out.cycle.vertices(), &targets, t)?;
        if set.len() < t {
            out.full_connectivity = false;
        }
        let mut by_target: HashMap<usize, Vec<Path>> = HashMap::new();
        for p in &set.paths {
            by_target.entry(owner[&p.end().unwrap()]).or_default().push(p.clone());
        }
        let Some((&target, paths)) = by_target.iter().max_by_key(|(&i, ps)| (ps.len(), std::cmp::Reverse(i))) else {
            out.stopped = Some("no connecting path to the remaining cycles".into());
            break;
        };
        if paths.len() < 2 {
            out.stopped = Some(format!("only {} path(s) reach any single cycle", paths.len()));
            break;
        }
        let (merged, gap) = splice(&out.cycle, &cycles[target], paths)?;
        out.steps.push(CombineStep {
            paths_found: set.len(),
            target,
            paths_to_target: paths.len(),
            gap,
            length_after: merged.length(),
        });
        out.cycle = merged;
        remaining.retain(|&i| i != target);
        for &v in cycles[target].vertices() {
            owner.remove(&v);
        }
    }
    Ok(out)
}

/// A 2-partition from local search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxCut {
    pub side: Vec<bool>,
    pub cut: usize,
}

fn cut_size(g: &Graph, side: &[bool]) -> usize {
    g.edges().filter(|&(u, v)| side[u] != side[v]).count()
}

fn improve(g: &Graph, side: &mut [bool]) {
    loop {
        let mut moved = false;
        for v in g.vertices() {
            let same = g.neighbors(v).iter().filter(|&&w| side[w] == side[v]).count();
            if 2 * same > g.degree(v) {
                side[v] = !side[v];
                moved = true;
            }
        }
        if !moved {
            return;
        }
    }
}

/// Single-vertex-move local search to a fixpoint, restarted `restarts`
/// times. Restart 0 starts from BFS parity, which is optimal on bipartite
/// graphs; the others start from random sides. At a fixpoint every vertex
/// has at least half its edges across, so the cut has at least `e(G)/2`
/// edges.
pub fn local_search_max_cut(g: &Graph, restarts: usize, seed: u64) -> MaxCut {
    let g = if g.is_directed() { g.to_undirected() } else { g.clone() };
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = MaxCut {
        side: vec![false; n],
        cut: 0,
    };
    for r in 0..restarts.max(1) {
        let mut side = if r == 0 {
            bfs_parity(&g)
        } else {
            (0..n).map(|_| rng.random()).collect()
        };
        improve(&g, &mut side);
        let cut = cut_size(&g, &side);
        if r == 0 || cut > best.cut {
            best = MaxCut { side, cut };
        }
    }
    best
}

fn bfs_parity(g: &Graph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut side = vec![false; n];
    let mut seen = vec![false; n];
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    side[w] = !side[v];
                    queue.push_back(w);
                }
            }
        }
    }
    side
}

const CUT_RESTARTS: usize = 4;
const CUT_SEED: u64 = 0x5eed;

/// Looks for a bipartite subgraph of average degree at least `threshold`:
/// a local-search max cut, then repeated removal of minimum-degree
/// vertices, keeping the densest stage. Returns the bipartite graph of cut
/// edges on the kept vertices.
pub fn densest_bipartite_cut(g: &Graph, threshold: f64) -> Option<Subgraph> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    let cut = local_search_max_cut(g, CUT_RESTARTS, CUT_SEED);
    let bip = Graph::from_edges(n, g.edges().filter(|&(u, v)| cut.side[u] != cut.side[v]), false).ok()?;

    // peel minimum-degree vertices, tracking the best average degree
    let mut degree: Vec<usize> = bip.vertices().map(|v| bip.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); bip.max_degree() + 1];
    for v in bip.vertices() {
        buckets[degree[v]].push(v);
    }
    let (mut edges, mut count) = (bip.edge_count(), n);
    let mut order = Vec::with_capacity(n);
    let mut best = (2.0 * edges as f64 / count as f64, 0usize);
    let mut d = 0usize;
    while count > 1 {
        d = d.saturating_sub(1);
        let v = loop {
            while d < buckets.len() && buckets[d].is_empty() {
                d += 1;
            }
            let v = buckets[d].pop().expect("some vertex is alive");
            if alive[v] && degree[v] == d {
                break v;
            }
        };
        alive[v] = false;
        order.push(v);
        count -= 1;
        edges -= degree[v];
        for &w in bip.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
            }
        }
        let avg = 2.0 * edges as f64 / count as f64;
        if avg > best.0 {
            best = (avg, order.len());
        }
    }
    if best.0 < threshold {
        return None;
    }
    let mut removed = vec![false; n];
    order[..best.1].iter().for_each(|&v| removed[v] = true);
    let kept: Vec<Vertex> = bip.vertices().filter(|&v| !removed[v]).collect();
    let edges: Vec<(Vertex, Vertex)> = bip.edges().filter(|&(u, v)| !removed[u] && !removed[v]).collect();
    Subgraph::from_host_edges(kept, edges, false).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterKind {
    /// Few host edges leave the cluster's exclusive vertices.
    DenseInside,
    /// Many (degree-capped) host edges join the cluster to `Y`.
    BoundaryMatched,
}

#[derive(Debug, Clone)]
pub struct Cluster {
    /// Certified `t`-connected, in host labels via `host_ids`.
    pub subgraph: Subgraph,
    /// Cluster vertices covered by no other cluster.
    pub x_part: Vec<Vertex>,
    pub kind: ClusterKind,
    /// Degree-capped host edges `(x, y)` from `x_part` to `Y`.
    pub boundary: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone)]
pub struct ClusterDecomposition {
    pub clusters: Vec<Cluster>,
    /// Vertices in exactly one cluster, sorted.
    pub x: Vec<Vertex>,
    /// All other vertices, sorted.
    pub y: Vec<Vertex>,
    pub t: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionParams {
    pub t: usize,
    pub epsilon: f64,
    /// Minimum degree of the host.
    pub k: usize,
}

/// Greedy cover of `gp` by edge-disjoint `t`-connected clusters.
///
/// Repeatedly extracts a `t`-connected subgraph from the edges not yet
/// covered, absorbs outside vertices with `t` neighbours in it, and merges
/// it with any earlier cluster sharing `t` or more vertices. Clusters are
/// then classified by the degree-capped host edges (cap `8k/ε`) from
/// their exclusive vertices to `Y`: at least `ε²k|V(C)|/4` of them makes
/// the cluster boundary-matched, otherwise dense-inside.
pub fn greedy_cluster_decomposition(
    gp: &Graph,
    g: &Graph,
    params: DecompositionParams,
) -> Result<ClusterDecomposition> {
    let n = gp.vertex_count();
    if g.vertex_count() != n {
        return Err(Error::InvalidParameter("Gp and G must share the vertex set".into()));
    }
    let t = params.t;
    let mut uncovered = EdgeSet::new(false);
    uncovered.extend_from_graph(gp);
    let mut clusters: Vec<Subgraph> = Vec::new();
    loop {
        let h = uncovered.to_graph(n)?;
        let Some(found) = find_t_connected_subgraph(&h, t) else {
            break;
        };
        let found = Subgraph::new(found.graph().clone(), found.host_ids().to_vec());
        let mut c = absorb_vertices(&found, &h, t)?;
        for (u, v) in c.host_edges() {
            uncovered.remove(u, v);
        }
        let mut i = 0;
        while i < clusters.len() {
            if let Some(m) = merge_if_overlapping(&c, &clusters[i], t)? {
                c = m;
                clusters.swap_remove(i);
                i = 0;
            } else {
                i += 1;
            }
        }
        clusters.push(c);
    }
    clusters.sort_by_key(|c| c.sorted_host_ids());

    let mut cover = vec![0usize; n];
    for c in &clusters {
        c.host_ids().iter().for_each(|&v| cover[v] += 1);
    }
    let in_x: Vec<bool> = cover.iter().map(|&c| c == 1).collect();
    let x: Vec<Vertex> = (0..n).filter(|&v| in_x[v]).collect();
    let y: Vec<Vertex> = (0..n).filter(|&v| !in_x[v]).collect();

    let cap = (8.0 * params.k as f64 / params.epsilon).floor() as usize;
    let mut y_load = vec![0usize; n];
    let out = clusters
        .into_iter()
        .map(|subgraph| {
            let x_part: Vec<Vertex> = subgraph.sorted_host_ids().into_iter().filter(|&v| in_x[v]).collect();
            let mut boundary = Vec::new();
            for &xv in &x_part {
                let mut load = 0;
                for &w in g.neighbors(xv) {
                    if load == cap {
                        break;
                    }
                    if !in_x[w] && y_load[w] < cap {
                        boundary.push((xv, w));
                        y_load[w] += 1;
                        load += 1;
                    }
                }
            }
            // loads are per cluster
            boundary.iter().for_each(|&(_, w)| y_load[w] -= 1);
            let threshold = params.epsilon.powi(2) * params.k as f64 * subgraph.vertex_count() as f64 / 4.0;
            let kind = if boundary.len() as f64 >= threshold {
                ClusterKind::BoundaryMatched
            } else {
                ClusterKind::DenseInside
            };
            Cluster {
                subgraph,
                x_part,
                kind,
                boundary,
            }
        })
        .collect();
    Ok(ClusterDecomposition { clusters: out, x, y, t })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    BipartiteCut,
    DenseCluster,
    BoundaryMatching,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub strategy: Strategy,
    pub length: usize,
    pub clusters: usize,
    pub rounds_used: usize,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineReport {
    pub cycle: Option<Cycle>,
    pub length: usize,
    pub winner: Option<Strategy>,
    pub t: usize,
    pub k: usize,
    pub omega: f64,
    pub strategies: Vec<StrategyReport>,
    /// Positive edges exposed by the winning strategy.
    #[serde(skip)]
    pub exposed: EdgeSet,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Overrides the default `max(3, ⌊(ln ω)^{1/5}⌋)`.
    pub t: Option<usize>,
}

/// Connectivity used by the pipeline for a given `ω`.
pub fn default_connectivity(omega: f64) -> usize {
    let from_formula = if omega > 1.0 {
        omega.ln().powf(0.2).floor() as usize
    } else {
        0
    };
    from_formula.max(3)
}

struct StrategyRun {
    report: StrategyReport,
    cycle: Option<Cycle>,
    exposed: EdgeSet,
}

impl StrategyRun {
    fn miss(strategy: Strategy, rounds_used: usize, clusters: usize, note: &str) -> StrategyRun {
        StrategyRun {
            report: StrategyReport {
                strategy,
                length: 0,
                clusters,
                rounds_used,
                note: Some(note.to_string()),
            },
            cycle: None,
            exposed: EdgeSet::new(false),
        }
    }
}

/// Best-effort long cycle in `G_p`. Three strategies run on independent
/// sub-seeds, each splitting `p` into three rounds whose union is `G_p`:
///
/// 1. a bipartite subgraph of average degree `5k/4` from a max cut, then a
///    DFS cycle in it;
/// 2. a cluster decomposition of round 1 and cycle growth inside a
///    dense-inside cluster;
/// 3. matchings from boundary-matched clusters into `Y` (round 2), a
///    `t`-connected piece of the cluster/`Y` graph, one DFS cycle per
///    cluster (round 3), combined through the connecting structure.
///
/// Every strategy's cycle is checked against the edges it exposed; the
/// longest wins.
pub fn long_cycle_pipeline(
    g: &Graph,
    p: f64,
    epsilon: f64,
    seed: u64,
    options: PipelineOptions,
) -> Result<PipelineReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} not in (0, 1)")));
    }
    let k = g.min_degree();
    let omega = p * k as f64;
    let t = options.t.unwrap_or_else(|| default_connectivity(omega));
    let q = split_probability(p, 3)?;
    let ctx = Context { g, q, epsilon, k, t };

    let runs: Vec<Result<StrategyRun>> = [
        Strategy::BipartiteCut,
        Strategy::DenseCluster,
        Strategy::BoundaryMatching,
    ]
    .into_par_iter()
    .enumerate()
    .map(|(i, s)| {
        let sub = derive_seed(seed, 10 + i as u64);
        let run = match s {
            Strategy::BipartiteCut => ctx.bipartite_cut(sub),
            Strategy::DenseCluster => ctx.dense_cluster(sub),
            Strategy::BoundaryMatching => ctx.boundary_matching(sub),
        }?;
        if let Some(c) = &run.cycle {
            c.validate(&run.exposed)?;
        }
        Ok(run)
    })
    .collect();

    let mut report = PipelineReport {
        cycle: None,
        length: 0,
        winner: None,
        t,
        k,
        omega,
        strategies: Vec::new(),
        exposed: EdgeSet::new(false),
    };
    for run in runs {
        let run = run?;
        let len = run.cycle.as_ref().map_or(0, Cycle::length);
        if len > report.length {
            report.length = len;
            report.cycle = run.cycle.clone();
            report.winner = Some(run.report.strategy);
            report.exposed = run.exposed;
        }
        report.strategies.push(run.report);
    }
    Ok(report)
}

struct Context<'a> {
    g: &'a Graph,
    q: f64,
    epsilon: f64,
    k: usize,
    t: usize,
}

impl Context<'_> {
    fn target(&self) -> usize {
        ((1.0 - self.epsilon) * self.k as f64).ceil() as usize
    }

    fn params(&self) -> DecompositionParams {
        DecompositionParams {
            t: self.t,
            epsilon: self.epsilon,
            k: self.k,
        }
    }

    fn bipartite_cut(&self, seed: u64) -> Result<StrategyRun> {
        let s = Strategy::BipartiteCut;
        let Some(b) = densest_bipartite_cut(self.g, 1.25 * self.k as f64) else {
            return Ok(StrategyRun::miss(
                s,
                0,
                0,
                "no bipartite subgraph of average degree 5k/4 found",
            ));
        };
        let out = dfs_long_cycle_rounds(
            b.graph(),
            (self.q, derive_seed(seed, 1)),
            (self.q, derive_seed(seed, 2)),
        )?;
        let mut exposed = EdgeSet::new(false);
        exposed.extend_mapped(out.exposed.sorted_edges(), b.host_ids());
        let cycle = out.cycle.map(|c| b.lift_cycle(&c));
        Ok(StrategyRun {
            report: StrategyReport {
                strategy: s,
                length: cycle.as_ref().map_or(0, Cycle::length),
                clusters: 0,
                rounds_used: 2,
                note: None,
            },
            cycle,
            exposed,
        })
    }

    fn dense_cluster(&self, seed: u64) -> Result<StrategyRun> {
        let s = Strategy::DenseCluster;
        let r1 = sample_subgraph(self.g, self.q, derive_seed(seed, 1))?;
        let dec = greedy_cluster_decomposition(&r1, self.g, self.params())?;
        let chosen = dec
            .clusters
            .iter()
            .filter(|c| c.kind == ClusterKind::DenseInside)
            .max_by_key(|c| {
                (
                    c.subgraph.vertex_count(),
                    std::cmp::Reverse(c.subgraph.sorted_host_ids()),
                )
            });
        let Some(cluster) = chosen else {
            return Ok(StrategyRun::miss(s, 1, dec.clusters.len(), "no dense-inside cluster"));
        };
        let ids = cluster.subgraph.host_ids();
        let g1 = self.g.induced_subgraph(ids)?;
        // rounds 2 and 3 together
        let p_rest = 1.0 - (1.0 - self.q) * (1.0 - self.q);
        let grown = grow_cycle(
            g1.graph(),
            cluster.subgraph.graph(),
            p_rest,
            self.t,
            derive_seed(seed, 2),
            self.target(),
        )?;
        let mut exposed = EdgeSet::new(false);
        exposed.extend_from_graph(&r1);
        exposed.extend_mapped(grown.exposed.sorted_edges(), ids);
        let cycle = grown.cycle.map(|c| g1.lift_cycle(&c));
        Ok(StrategyRun {
            report: StrategyReport {
                strategy: s,
                length: cycle.as_ref().map_or(0, Cycle::length),
                clusters: dec.clusters.len(),
                rounds_used: 3,
                note: None,
            },
            cycle,
            exposed,
        })
    }

    fn boundary_matching(&self, seed: u64) -> Result<StrategyRun> {
        let s = Strategy::BoundaryMatching;
        let n = self.g.vertex_count();
        let r1 = sample_subgraph(self.g, self.q, derive_seed(seed, 1))?;
        let dec = greedy_cluster_decomposition(&r1, self.g, self.params())?;
        let clusters = dec.clusters.len();

        // round 2: greedy matchings on the exposed boundary edges
        let mut round2 = ExposureOracle::new(self.g, self.q, derive_seed(seed, 2))?;
        let min_matching = self.epsilon.powi(3) / 128.0;
        let mut kept: Vec<(&Cluster, Vec<(Vertex, Vertex)>)> = Vec::new();
        for c in dec.clusters.iter().filter(|c| c.kind == ClusterKind::BoundaryMatched) {
            let mut used = std::collections::HashSet::new();
            let mut matching = Vec::new();
            for &(x, y) in &c.boundary {
                if !used.contains(&x) && !used.contains(&y) && round2.query(x, y)? {
                    used.insert(x);
                    used.insert(y);
                    matching.push((x, y));
                }
            }
            if matching.len() as f64 >= min_matching * c.subgraph.vertex_count() as f64 {
                kept.push((c, matching));
            }
        }
        if kept.is_empty() {
            return Ok(StrategyRun::miss(
                s,
                2,
                clusters,
                "no cluster with a large boundary matching",
            ));
        }

        // auxiliary graph: clusters 0..m, then the matched Y vertices
        let m = kept.len();
        let mut y_index: HashMap<Vertex, usize> = HashMap::new();
        let mut aux_edges = Vec::new();
        for (i, (_, matching)) in kept.iter().enumerate() {
            for &(_, y) in matching {
                let next = m + y_index.len();
                let j = *y_index.entry(y).or_insert(next);
                aux_edges.push((i, j));
            }
        }
        let aux = Graph::from_edges(m + y_index.len(), aux_edges, false)?;
        let Some(core) = find_t_connected_subgraph(&aux, self.t) else {
            return Ok(StrategyRun::miss(
                s,
                2,
                clusters,
                "auxiliary graph has no t-connected part",
            ));
        };
        let in_core: std::collections::HashSet<usize> = core.host_ids().iter().copied().collect();

        // H: chosen clusters plus matching edges into chosen Y vertices
        let mut h_edges: Vec<(Vertex, Vertex)> = Vec::new();
        let mut chosen = Vec::new();
        for (i, (c, matching)) in kept.iter().enumerate() {
            if !in_core.contains(&i) {
                continue;
            }
            chosen.push(*c);
            h_edges.extend(c.subgraph.host_edges());
            h_edges.extend(matching.iter().filter(|(_, y)| in_core.contains(&y_index[y])).copied());
        }

        // round 3: one DFS cycle inside each chosen cluster's exclusive part
        let mut exposed = EdgeSet::new(false);
        exposed.extend_from_graph(&r1);
        exposed.extend(round2.exposed_positive());
        let mut cycles = Vec::new();
        for (i, c) in chosen.iter().enumerate() {
            let part = self.g.induced_subgraph(&c.x_part)?;
            let out = dfs_long_cycle_detailed(part.graph(), self.q, derive_seed(derive_seed(seed, 3), i as u64))?;
            exposed.extend_mapped(out.exposed.sorted_edges(), part.host_ids());
            if let Some(cy) = out.cycle {
                cycles.push(part.lift_cycle(&cy));
            }
        }
        if cycles.is_empty() {
            return Ok(StrategyRun::miss(s, 3, clusters, "no cluster cycle found"));
        }
        cycles.sort_by_key(|c| std::cmp::Reverse(c.length()));
        let h = Graph::from_edges(
            n,
            h_edges
                .into_iter()
                .chain(cycles.iter().flat_map(|c| c.edges().collect::<Vec<_>>())),
            false,
        )?;
        let combined = combine_disjoint_cycles(&h, &cycles, self.t)?;
        Ok(StrategyRun {
            report: StrategyReport {
                strategy: s,
                length: combined.cycle.length(),
                clusters,
                rounds_used: 3,
                note: combined.stopped.clone(),
            },
            cycle: Some(combined.cycle),
            exposed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, cycle_graph, prism_graph};

    #[test]
    fn prism_merge() {
        let g = prism_graph();
        let c = Cycle::new(vec![0, 1, 2]).unwrap();
        let c2 = Cycle::new(vec![3, 4, 5]).unwrap();
        let m = merge_two_cycles(&g, &c, &c2, 3).unwrap();
        assert_eq!(m.paths_found, 3);
        assert_eq!(m.cycle.length(), 6);
        assert!((m.bound - 3.5).abs() < 1e-12);
        assert!(m.gap * 3 <= 3);
        m.cycle.validate(&g).unwrap();
    }

    #[test]
    fn merge_rejects_overlap_and_isolation() {
        let g = prism_graph();
        let c = Cycle::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(
            merge_two_cycles(&g, &c, &c, 3),
            Err(Error::CyclesNotDisjoint(_))
        ));
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)], false).unwrap();
        let c2 = Cycle::new(vec![3, 4, 5]).unwrap();
        assert!(matches!(
            merge_two_cycles(&two, &c, &c2, 3),
            Err(Error::TooFewPaths { found: 1, .. })
        ));
    }

    #[test]
    fn combine_single_cycle_is_identity() {
        let g = cycle_graph(5).unwrap();
        let c = Cycle::new(vec![0, 1, 2, 3, 4]).unwrap();
        let out = combine_disjoint_cycles(&g, std::slice::from_ref(&c), 3).unwrap();
        assert_eq!(out.cycle, c);
        assert!(out.steps.is_empty());
    }

    #[test]
    fn combine_three_triangles_in_clique() {
        let g = complete_graph(9).unwrap();
        let cycles: Vec<Cycle> = (0..3)
            .map(|i| Cycle::new(vec![3 * i, 3 * i + 1, 3 * i + 2]).unwrap())
            .collect();
        let out = combine_disjoint_cycles(&g, &cycles, 3).unwrap();
        assert_eq!(out.steps.len(), 2);
        out.cycle.validate(&g).unwrap();
        assert!(out.cycle.length() >= 6);
    }

    #[test]
    fn max_cut_guarantee() {
        let g = complete_graph(7).unwrap();
        let cut = local_search_max_cut(&g, 3, 1);
        assert!(2 * cut.cut >= g.edge_count());
        assert_eq!(cut.cut, 12);
    }

    #[test]
    fn bipartite_cut_examples() {
        let b = complete_bipartite(5, 5).unwrap();
        let sub = densest_bipartite_cut(&b, 5.0).unwrap();
        assert_eq!(sub.graph().edge_count(), 25);
        assert!(densest_bipartite_cut(&complete_graph(4).unwrap(), 3.0).is_none());
        let k4 = densest_bipartite_cut(&complete_graph(4).unwrap(), 2.0).unwrap();
        assert!((k4.graph().average_degree() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn decomposition_of_connected_graph_is_one_cluster() {
        let g = complete_graph(12).unwrap();
        let dec = greedy_cluster_decomposition(
            &g,
            &g,
            DecompositionParams {
                t: 3,
                epsilon: 0.2,
                k: 11,
            },
        )
        .unwrap();
        assert_eq!(dec.clusters.len(), 1);
        assert_eq!(dec.x, (0..12).collect::<Vec<_>>());
        assert!(dec.y.is_empty());
        assert_eq!(dec.clusters[0].kind, ClusterKind::DenseInside);
    }

    #[test]
    fn grow_on_clique() {
        let g = complete_graph(60).unwrap();
        let out = grow_cycle(&g, &g, 0.6, 4, 5, 50).unwrap();
        let c = out.cycle.unwrap();
        c.validate(&g).unwrap();
        assert!(out.round_lengths.windows(2).all(|w| w[0] <= w[1]));
        assert!(c.length() >= 30);
    }
}
