//! Pósa rotation-extension.
//!
//! A path `(v_0, ..., v_l)` whose free end `v_l` is adjacent to `v_i`
//! rotates into `(v_0, ..., v_i, v_l, v_{l-1}, ..., v_{i+1})`: same vertex
//! set and length, new free end `v_{i+1}`. Collecting every end reachable
//! this way gives many candidate endpoints, and a long path gets longer
//! as soon as one of them has a neighbour off the path.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dfs;
use crate::error::{Error, Result};
use crate::exposure::{derive_seed, sample_subgraph, ExposureOracle, SprinkleSchedule};
use crate::graph::{Adjacency, Cycle, EdgeSet, Graph, Path, Vertex};

/// Rotates `path` at `pivot` keeping its first vertex fixed.
pub fn rotate<A: Adjacency + ?Sized>(h: &A, path: &Path, pivot: Vertex) -> Result<Path> {
    let v = path.vertices();
    let Some(&end) = v.last() else {
        return Err(Error::InvalidRotation("empty path".into()));
    };
    let Some(i) = v.iter().position(|&x| x == pivot) else {
        return Err(Error::InvalidRotation(format!("pivot {pivot} is not on the path")));
    };
    let l = v.len() - 1;
    if i + 1 >= l {
        return Err(Error::InvalidRotation(format!(
            "pivot {pivot} is the free end or its predecessor"
        )));
    }
    if !h.has_edge(end, pivot) {
        return Err(Error::InvalidRotation(format!(
            "free end {end} is not adjacent to pivot {pivot}"
        )));
    }
    Ok(Path::new(rotated(v, i)))
}

fn rotated(v: &[Vertex], i: usize) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(v.len());
    out.extend_from_slice(&v[..=i]);
    out.extend(v[i + 1..].iter().rev());
    out
}

/// Endpoints reachable by rotations that keep `fixed_end` in place.
#[derive(Debug, Clone)]
pub struct RotationClosure {
    /// The input path oriented to start at `fixed_end`.
    pub base_path: Path,
    pub fixed_end: Vertex,
    /// Sorted.
    pub endpoints: Vec<Vertex>,
    /// Pivot sequence reproducing a path that ends at each endpoint.
    pub witness: HashMap<Vertex, Vec<Vertex>>,
    /// Cumulative `X_0 ⊆ X_1 ⊆ ...`: endpoints reachable in at most `t`
    /// rotations, each sorted.
    pub layers: Vec<Vec<Vertex>>,
    /// Stopped by the cap or the state limit before reaching a fixpoint.
    pub truncated: bool,
}

impl RotationClosure {
    pub fn contains(&self, v: Vertex) -> bool {
        self.witness.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    /// Replays the witness of `endpoint` from the base path.
    pub fn path_to<A: Adjacency + ?Sized>(&self, h: &A, endpoint: Vertex) -> Option<Path> {
        let pivots = self.witness.get(&endpoint)?;
        let mut path = self.base_path.clone();
        for &pivot in pivots {
            path = rotate(h, &path, pivot).ok()?;
        }
        Some(path)
    }
}

/// Upper bound on stored path vertices during [`endpoint_closure`].
const STATE_BUDGET: usize = 4_000_000;

/// Breadth-first closure over rotation sequences with `fixed_end` held in
/// place. The search runs over whole path states, so it finds every
/// endpoint any rotation sequence reaches, with a shortest witness. It
/// stops at the fixpoint, once `cap` endpoints are known, or when the
/// state space outgrows an internal budget.
pub fn endpoint_closure(h: &Graph, path: &Path, fixed_end: Vertex, cap: Option<usize>) -> Result<RotationClosure> {
    let base = match (path.start(), path.end()) {
        (Some(s), _) if s == fixed_end => path.clone(),
        (_, Some(e)) if e == fixed_end => path.reversed(),
        _ => return Err(Error::InvalidRotation(format!("{fixed_end} is not an end of the path"))),
    };
    let free = base.end().expect("nonempty");
    let mut closure = RotationClosure {
        base_path: base.clone(),
        fixed_end,
        endpoints: vec![free],
        witness: HashMap::from([(free, Vec::new())]),
        layers: vec![vec![free]],
        truncated: false,
    };
    let l = base.vertex_count();
    if l < 3 {
        return Ok(closure);
    }
    let state_limit = (STATE_BUDGET / l).max(1);
    let cap = cap.unwrap_or(usize::MAX);

    // (path, parent state, pivot used)
    let mut states: Vec<(Vec<Vertex>, usize, Vertex)> = vec![(base.into_vertices(), 0, 0)];
    let mut index: HashSet<Vec<Vertex>> = HashSet::from([states[0].0.clone()]);
    let mut frontier = vec![0usize];
    let mut pos: HashMap<Vertex, usize> = HashMap::with_capacity(l);
    'outer: while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut layer = closure.layers.last().cloned().unwrap_or_default();
        for &s in &frontier {
            let current = states[s].0.clone();
            pos.clear();
            pos.extend(current.iter().enumerate().map(|(i, &v)| (v, i)));
            let end = current[l - 1];
            for &x in h.neighbors(end) {
                let Some(&i) = pos.get(&x) else { continue };
                if i + 2 >= l {
                    continue;
                }
                let candidate = rotated(&current, i);
                if index.contains(&candidate) {
                    continue;
                }
                let new_end = candidate[l - 1];
                index.insert(candidate.clone());
                states.push((candidate, s, x));
                let id = states.len() - 1;
                next.push(id);
                if let Entry::Vacant(slot) = closure.witness.entry(new_end) {
                    let mut pivots = Vec::new();
                    let mut cur = id;
                    while cur != 0 {
                        pivots.push(states[cur].2);
                        cur = states[cur].1;
                    }
                    pivots.reverse();
                    slot.insert(pivots);
                    layer.push(new_end);
                    if closure.witness.len() >= cap {
                        closure.truncated = true;
                        layer.sort_unstable();
                        closure.layers.push(layer);
                        break 'outer;
                    }
                }
                if states.len() >= state_limit {
                    closure.truncated = true;
                    layer.sort_unstable();
                    closure.layers.push(layer);
                    break 'outer;
                }
            }
        }
        layer.sort_unstable();
        if layer.len() > closure.layers.last().map_or(0, Vec::len) {
            closure.layers.push(layer);
        }
        frontier = next;
    }
    let mut endpoints: Vec<Vertex> = closure.witness.keys().copied().collect();
    endpoints.sort_unstable();
    closure.endpoints = endpoints;
    Ok(closure)
}

enum Visit {
    Continue,
    Stop,
}

/// Endpoint-level rotation search from `base` (first vertex fixed). Every
/// endpoint is kept with the first path found for it. `visit` sees each
/// new path. Returns the path that stopped the search, if any.
fn posa_bfs(
    h: &Graph,
    base: Vec<Vertex>,
    pos: &mut [usize],
    seen: &mut Vec<Vertex>,
    mark: &mut [bool],
    visit: &mut dyn FnMut(&[Vertex]) -> Visit,
) -> Option<Vec<Vertex>> {
    let l = base.len();
    for &v in seen.iter() {
        mark[v] = false;
    }
    seen.clear();
    let end = *base.last()?;
    mark[end] = true;
    seen.push(end);
    match visit(&base) {
        Visit::Stop => return Some(base),
        Visit::Continue => {}
    }
    let mut queue = VecDeque::from([base]);
    while let Some(current) = queue.pop_front() {
        for (i, &v) in current.iter().enumerate() {
            pos[v] = i;
        }
        let end = current[l - 1];
        for &x in h.neighbors(end) {
            let i = pos[x];
            if i == usize::MAX || current.get(i) != Some(&x) || i + 2 >= l {
                continue;
            }
            let new_end = current[i + 1];
            if mark[new_end] {
                continue;
            }
            mark[new_end] = true;
            seen.push(new_end);
            let candidate = rotated(&current, i);
            match visit(&candidate) {
                Visit::Stop => return Some(candidate),
                Visit::Continue => queue.push_back(candidate),
            }
        }
    }
    None
}

/// Scratch space shared by the rotation searches on one graph.
struct Workspace {
    pos: Vec<usize>,
    seen: Vec<Vertex>,
    mark: Vec<bool>,
}

impl Workspace {
    fn new(n: usize) -> Workspace {
        Workspace {
            pos: vec![usize::MAX; n],
            seen: Vec::new(),
            mark: vec![false; n],
        }
    }

    fn bfs(&mut self, h: &Graph, base: Vec<Vertex>, visit: &mut dyn FnMut(&[Vertex]) -> Visit) -> Option<Vec<Vertex>> {
        posa_bfs(h, base, &mut self.pos, &mut self.seen, &mut self.mark, visit)
    }

    /// Breadth-first search over endpoint pairs: every path found has
    /// either end rotated in turn. `visit` sees one path per unordered
    /// endpoint pair and no pair is expanded twice; returns the path it
    /// stopped at.
    fn pair_search(
        &mut self,
        h: &Graph,
        base: &[Vertex],
        visit: &mut dyn FnMut(&[Vertex]) -> bool,
    ) -> Option<Vec<Vertex>> {
        let l = base.len();
        if l < 3 {
            return visit(base).then(|| base.to_vec());
        }
        let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
        let mut pairs: HashSet<(Vertex, Vertex)> = HashSet::from([key(base[0], base[l - 1])]);
        if visit(base) {
            return Some(base.to_vec());
        }
        let limit = (STATE_BUDGET / l).max(1);
        let mut queue = VecDeque::from([base.to_vec()]);
        while let Some(current) = queue.pop_front() {
            for side in [current.clone(), current.into_iter().rev().collect()] {
                for (i, &v) in side.iter().enumerate() {
                    self.pos[v] = i;
                }
                let end = side[l - 1];
                for &x in h.neighbors(end) {
                    let i = self.pos[x];
                    if side.get(i) != Some(&x) || i + 2 >= l {
                        continue;
                    }
                    if !pairs.insert(key(side[0], side[i + 1])) {
                        continue;
                    }
                    let candidate = rotated(&side, i);
                    if visit(&candidate) {
                        return Some(candidate);
                    }
                    if pairs.len() < limit {
                        queue.push_back(candidate);
                    }
                }
            }
        }
        None
    }
}

fn first_off_path(h: &Graph, v: Vertex, on: &[bool]) -> Option<Vertex> {
    h.neighbors(v).iter().copied().find(|&w| !on[w])
}

/// Appends off-path neighbours at both ends until neither end has one.
fn greedy_extend(h: &Graph, path: &mut Vec<Vertex>, on: &mut [bool]) {
    for _ in 0..2 {
        while let Some(w) = path.last().and_then(|&e| first_off_path(h, e, on)) {
            on[w] = true;
            path.push(w);
        }
        path.reverse();
    }
}

/// Rotation-extension step: finds a path on the same vertex set with an
/// end that has an off-path neighbour and extends it by one vertex.
fn rotate_extend(h: &Graph, ws: &mut Workspace, path: &[Vertex], on: &mut [bool]) -> Option<Vec<Vertex>> {
    if path.len() < 3 {
        return None;
    }
    let has_exit = |p: &[Vertex], on: &[bool]| {
        first_off_path(h, p[p.len() - 1], on).is_some() || first_off_path(h, p[0], on).is_some()
    };
    let snapshot = on.to_vec();
    let mut found = ws.bfs(h, path.to_vec(), &mut |p| {
        if has_exit(p, &snapshot) {
            Visit::Stop
        } else {
            Visit::Continue
        }
    });
    if found.is_none() {
        let reversed: Vec<Vertex> = path.iter().rev().copied().collect();
        found = ws.bfs(h, reversed, &mut |p| {
            if has_exit(p, &snapshot) {
                Visit::Stop
            } else {
                Visit::Continue
            }
        });
    }
    if found.is_none() {
        found = ws.pair_search(h, path, &mut |p| has_exit(p, &snapshot));
    }
    let mut p = found?;
    if first_off_path(h, p[p.len() - 1], on).is_none() {
        p.reverse();
    }
    let w = first_off_path(h, p[p.len() - 1], on)?;
    on[w] = true;
    p.push(w);
    Some(p)
}

fn extend_in_place(
    h: &Graph,
    ws: &mut Workspace,
    path: Vec<Vertex>,
    on: &mut [bool],
    max_rounds: usize,
) -> Vec<Vertex> {
    let mut cur = path;
    if cur.is_empty() {
        return cur;
    }
    greedy_extend(h, &mut cur, on);
    for _ in 0..max_rounds {
        match rotate_extend(h, ws, &cur, on) {
            Some(next) => {
                cur = next;
                greedy_extend(h, &mut cur, on);
            }
            None => break,
        }
    }
    cur
}

/// Extends `path` in `h`, rotating whenever no end can be extended
/// directly. Every round extends by at least one vertex; the search stops
/// when no rotation reachable from either end (or from both ends in turn)
/// leads to an extension, or after `max_rounds` rounds.
pub fn extend_or_rotate(h: &Graph, path: &Path, max_rounds: usize) -> Result<Path> {
    path.validate(h)?;
    let mut on = vec![false; h.vertex_count()];
    for &v in path.vertices() {
        on[v] = true;
    }
    let mut ws = Workspace::new(h.vertex_count());
    Ok(Path::new(extend_in_place(
        h,
        &mut ws,
        path.vertices().to_vec(),
        &mut on,
        max_rounds,
    )))
}

/// Closing pairs: endpoint pairs `{a, b}` such that some path on the same
/// vertex set runs from `a` to `b`.
fn closing_pairs(h: &Graph, ws: &mut Workspace, path: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut out = HashSet::new();
    if path.len() >= 3 {
        ws.pair_search(h, path, &mut |p| {
            let (a, b) = (p[0], p[p.len() - 1]);
            out.insert((a.min(b), a.max(b)));
            false
        });
    }
    let mut out: Vec<_> = out.into_iter().collect();
    out.sort_unstable();
    out
}

fn path_between(h: &Graph, ws: &mut Workspace, path: &[Vertex], pair: (Vertex, Vertex)) -> Option<Vec<Vertex>> {
    ws.pair_search(h, path, &mut |p| {
        let (a, b) = (p[0], p[p.len() - 1]);
        (a.min(b), a.max(b)) == pair
    })
}

/// Opens a cycle into a longer path through an off-cycle neighbour.
fn reopen(h: &Graph, cycle: &[Vertex], on: &mut [bool]) -> Option<Vec<Vertex>> {
    let n = cycle.len();
    for (j, &c) in cycle.iter().enumerate() {
        if let Some(x) = first_off_path(h, c, on) {
            on[x] = true;
            let mut out = Vec::with_capacity(n + 1);
            out.push(x);
            out.extend((0..n).map(|i| cycle[(j + i) % n]));
            return Some(out);
        }
    }
    None
}

/// Round count and per-round probability of the sprinkling schedule for
/// minimum degree `k`: `s = ⌊k / (ln k)^{3/4}⌋` rounds of
/// `(ln k)^{5/4} / k²`. The master seed is 0; see
/// [`SprinkleSchedule::with_seed`].
pub fn sprinkle_defaults(k: f64) -> Result<SprinkleSchedule> {
    if !(k >= 3.0) {
        return Err(Error::InvalidParameter(format!("sprinkling needs k >= 3, got {k}")));
    }
    let ln = k.ln();
    let rounds = (k / ln.powf(0.75)).floor() as usize;
    let p = (ln.powf(1.25) / (k * k)).min(1.0);
    SprinkleSchedule::new(vec![p; rounds], 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub round: usize,
    pub path_length: usize,
    pub closed_cycle: bool,
}

#[derive(Debug, Clone)]
pub struct HamiltonOutcome {
    pub cycle: Option<Cycle>,
    /// Round 0 is the main exposure, then one entry per sprinkle round.
    pub rounds: Vec<RoundTrace>,
    /// Union of every exposed round.
    pub exposed: Graph,
    pub longest_path: Path,
}

impl HamiltonOutcome {
    pub fn write_rounds_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rounds {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Searches for a Hamilton cycle in `G_{p_main}` plus sprinkled rounds.
///
/// The main round gives a DFS path, extended by rotations. Whenever the
/// path is stuck, the endpoint pairs that would close it are collected;
/// each sprinkle round is added to the working graph and a pair that has
/// become an edge closes the path into a cycle, which is reopened through
/// an outside neighbour and extended again. Stops at a Hamilton cycle or
/// after `sprinkle_rounds` rounds of the default schedule for the minimum
/// degree of `g`.
pub fn hamiltonicity_search(g: &Graph, p_main: f64, sprinkle_rounds: usize, seed: u64) -> Result<HamiltonOutcome> {
    let k = g.min_degree() as f64;
    let schedule = if sprinkle_rounds == 0 {
        SprinkleSchedule::new(Vec::new(), 0)?
    } else {
        let d = sprinkle_defaults(k)?;
        let p = d.rounds().first().copied().unwrap_or(0.0);
        SprinkleSchedule::new(vec![p; sprinkle_rounds], derive_seed(seed, 1))?
    };
    hamiltonicity_with_schedule(g, p_main, &schedule, derive_seed(seed, 0))
}

/// [`hamiltonicity_search`] with an explicit sprinkling schedule.
pub fn hamiltonicity_with_schedule(
    g: &Graph,
    p_main: f64,
    schedule: &SprinkleSchedule,
    main_seed: u64,
) -> Result<HamiltonOutcome> {
    let n = g.vertex_count();
    let mut working = sample_subgraph(g, p_main, main_seed)?;
    let mut outcome = HamiltonOutcome {
        cycle: None,
        rounds: Vec::new(),
        exposed: working.clone(),
        longest_path: Path::default(),
    };
    if n == 0 {
        return Ok(outcome);
    }

    // the oracle with the main seed answers exactly like `working`
    let mut oracle = ExposureOracle::new(g, p_main, main_seed)?;
    let sigma: Vec<Vertex> = (0..n).collect();
    let trace = dfs::run(&mut oracle, &sigma, None, false)?;
    let mut path = trace.best_path.into_vertices();
    let mut on = vec![false; n];
    for &v in &path {
        on[v] = true;
    }
    let mut stalled: Option<Vec<Vertex>> = None;
    let mut pairs: Option<Vec<(Vertex, Vertex)>> = None;

    for round in 0..=schedule.len() {
        if round > 0 {
            let extra = sample_subgraph(g, schedule.rounds()[round - 1], schedule.round_seed(round - 1))?;
            if extra.edge_count() > 0 {
                working = working.union(&extra)?;
                // new edges open new rotations
                pairs = None;
            }
        }
        let mut ws = Workspace::new(n);
        let mut closed = false;
        loop {
            if let Some(c) = stalled.take() {
                match reopen(&working, &c, &mut on) {
                    Some(p) => {
                        path = p;
                        pairs = None;
                    }
                    None => {
                        stalled = Some(c);
                        break;
                    }
                }
            }
            let before = path.len();
            path = extend_in_place(&working, &mut ws, path, &mut on, usize::MAX);
            if path.len() != before {
                pairs = None;
            }
            if path.len() < 3 {
                break;
            }
            let candidates = pairs.get_or_insert_with(|| closing_pairs(&working, &mut ws, &path));
            let Some(&pair) = candidates.iter().find(|&&(a, b)| working.has_edge(a, b)) else {
                break;
            };
            let Some(p) = path_between(&working, &mut ws, &path, pair) else {
                break;
            };
            closed = true;
            pairs = None;
            if p.len() == n {
                outcome.cycle = Some(Cycle::new(p.clone())?);
                path = p;
                break;
            }
            stalled = Some(p);
        }
        let length = stalled.as_ref().map_or(path.len(), Vec::len).saturating_sub(1);
        outcome.rounds.push(RoundTrace {
            round,
            path_length: length,
            closed_cycle: closed,
        });
        if outcome.cycle.is_some() {
            break;
        }
    }
    outcome.longest_path = Path::new(stalled.map_or(path, |c| c));
    outcome.exposed = working;
    Ok(outcome)
}

/// Exposed edges of a Hamilton search as an [`EdgeSet`].
pub fn exposed_edges(outcome: &HamiltonOutcome) -> EdgeSet {
    let mut set = EdgeSet::new(outcome.exposed.is_directed());
    set.extend_from_graph(&outcome.exposed);
    set
}
