//! Lazy exposure of random subgraphs `G_p`, and multi-round sprinkling.
//!
//! Every answer is a pure function of `(seed, edge)`: the edge's canonical
//! key is mixed with the seed and compared against `p`. Because of this an
//! [`ExposureOracle`] gives the same subgraph no matter which order the
//! algorithm asks its questions in, and [`sample_subgraph`] with the same
//! seed produces exactly the edges an oracle would answer positively.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph, Vertex};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed; used for trials, rounds and
/// strategies so that any subset can be rerun on its own.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(mix64(master) ^ mix64(index.wrapping_mul(0xD1B5_4A32_D192_ED03)))
}

#[inline]
fn edge_key(u: Vertex, v: Vertex, directed: bool) -> u64 {
    let (a, b) = if directed || u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | (b as u64 & 0xFFFF_FFFF)
}

/// Uniform `[0, 1)` value attached to an edge under a seed.
#[inline]
fn edge_uniform(seed_mixed: u64, key: u64) -> f64 {
    let h = mix64(mix64(seed_mixed ^ key).wrapping_add(seed_mixed));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
fn edge_answer(seed_mixed: u64, key: u64, p: f64) -> bool {
    edge_uniform(seed_mixed, key) < p
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

#[derive(Default)]
struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = mix64(self.0 ^ b as u64);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = mix64(x);
    }
}

type KeyMap = HashMap<u64, bool, BuildHasherDefault<KeyHasher>>;

/// One first-time query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub edge_u: Vertex,
    pub edge_v: Vertex,
    pub answer: bool,
    pub index: usize,
}

/// Memoized Bernoulli(`p`) answers for the edges of a host graph.
///
/// Single owner: one oracle per trial. Re-asking about an edge returns the
/// memoized answer and does not extend the query log.
pub struct ExposureOracle<'g> {
    host: &'g Graph,
    p: f64,
    seed: u64,
    seed_mixed: u64,
    memo: KeyMap,
    log: Vec<QueryRecord>,
    positives: usize,
}

impl<'g> ExposureOracle<'g> {
    pub fn new(host: &'g Graph, p: f64, seed: u64) -> Result<ExposureOracle<'g>> {
        check_probability(p)?;
        Ok(ExposureOracle {
            host,
            p,
            seed,
            seed_mixed: mix64(seed),
            memo: KeyMap::default(),
            log: Vec::new(),
            positives: 0,
        })
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn probability(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Asks whether host edge `{u, v}` survives. Querying a non-edge is an
    /// error: exploration may only look at host edges.
    pub fn query(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if !self.host.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        Ok(self.query_unchecked(u, v))
    }

    /// [`ExposureOracle::query`] without the host membership check, for
    /// callers iterating host adjacency lists.
    #[inline]
    pub(crate) fn query_unchecked(&mut self, u: Vertex, v: Vertex) -> bool {
        let key = edge_key(u, v, self.host.is_directed());
        if let Some(&answer) = self.memo.get(&key) {
            return answer;
        }
        let answer = edge_answer(self.seed_mixed, key, self.p);
        self.memo.insert(key, answer);
        self.log.push(QueryRecord {
            edge_u: u,
            edge_v: v,
            answer,
            index: self.log.len(),
        });
        if answer {
            self.positives += 1;
        }
        answer
    }

    /// Memoized answer, if the edge has been asked about.
    pub fn answer_of(&self, u: Vertex, v: Vertex) -> Option<bool> {
        self.memo.get(&edge_key(u, v, self.host.is_directed())).copied()
    }

    /// Distinct edges queried so far.
    pub fn queries(&self) -> usize {
        self.log.len()
    }

    pub fn positives(&self) -> usize {
        self.positives
    }

    pub fn negatives(&self) -> usize {
        self.log.len() - self.positives
    }

    pub fn query_log(&self) -> &[QueryRecord] {
        &self.log
    }

    /// Positively answered edges so far.
    pub fn exposed_positive(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.log.iter().filter(|r| r.answer).map(|r| (r.edge_u, r.edge_v))
    }

    /// Dumps the query log as CSV with header `edge_u,edge_v,answer,index`.
    pub fn write_query_log_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for record in &self.log {
            w.serialize(record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `G_p`: every host edge kept independently with probability `p`. Agrees
/// edge for edge with an [`ExposureOracle`] built from the same seed.
pub fn sample_subgraph(g: &Graph, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let seed_mixed = mix64(seed);
    let directed = g.is_directed();
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); g.vertex_count()];
    for u in g.vertices() {
        for &v in g.neighbors(u) {
            if (directed || u < v) && edge_answer(seed_mixed, edge_key(u, v, directed), p) {
                adjacency[u].push(v);
                if !directed {
                    adjacency[v].push(u);
                }
            }
        }
    }
    // lists were filled in increasing order of the opposite endpoint
    Ok(Graph::from_unsorted(adjacency, directed))
}

/// Membership view of `G_p` that answers without materializing or
/// logging anything. Agrees with [`sample_subgraph`] for the same seed.
#[derive(Debug, Clone, Copy)]
pub struct SampleView<'g> {
    host: &'g Graph,
    p: f64,
    seed_mixed: u64,
}

impl<'g> SampleView<'g> {
    pub fn new(host: &'g Graph, p: f64, seed: u64) -> Result<SampleView<'g>> {
        check_probability(p)?;
        Ok(SampleView {
            host,
            p,
            seed_mixed: mix64(seed),
        })
    }
}

impl Adjacency for SampleView<'_> {
    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.host.has_edge(u, v) && edge_answer(self.seed_mixed, edge_key(u, v, self.host.is_directed()), self.p)
    }
}

/// `G(n, p)` as a sample of `K_n`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    sample_subgraph(&crate::graph::complete_graph(n.max(1))?, p, seed)
}

/// Independent exposure rounds with probabilities `p_1, ..., p_m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SprinkleSchedule {
    rounds: Vec<f64>,
    master_seed: u64,
}

impl SprinkleSchedule {
    pub fn new(rounds: Vec<f64>, master_seed: u64) -> Result<SprinkleSchedule> {
        for &p in &rounds {
            check_probability(p)?;
        }
        Ok(SprinkleSchedule { rounds, master_seed })
    }

    pub fn with_seed(mut self, master_seed: u64) -> SprinkleSchedule {
        self.master_seed = master_seed;
        self
    }

    pub fn rounds(&self) -> &[f64] {
        &self.rounds
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn round_seed(&self, round: usize) -> u64 {
        derive_seed(self.master_seed, round as u64)
    }

    pub fn total_probability(&self) -> f64 {
        self.rounds.iter().sum()
    }

    /// Per-edge probability of the union of the first `i + 1` rounds,
    /// `1 - prod_{j <= i} (1 - p_j)`.
    pub fn cumulative_marginals(&self) -> Vec<f64> {
        let mut miss = 1.0;
        self.rounds
            .iter()
            .map(|&p| {
                miss *= 1.0 - p;
                1.0 - miss
            })
            .collect()
    }

    pub fn union_marginal(&self) -> f64 {
        self.cumulative_marginals().last().copied().unwrap_or(0.0)
    }
}

/// Per-round probability `q` such that `m` independent rounds at `q` have
/// union marginal exactly `p`, i.e. `1 - (1 - p)^(1/m)`. Close to `p / m`
/// for small `p`, and equal to 1 when `p` is 1.
pub fn split_probability(p: f64, rounds: usize) -> Result<f64> {
    check_probability(p)?;
    if rounds == 0 {
        return Err(Error::InvalidParameter("cannot split into zero rounds".into()));
    }
    if p >= 1.0 {
        return Ok(1.0);
    }
    Ok(-((-p).ln_1p() / rounds as f64).exp_m1())
}

/// One independent sample per round.
pub fn sprinkle(g: &Graph, schedule: &SprinkleSchedule) -> Result<Vec<Graph>> {
    schedule
        .rounds
        .iter()
        .enumerate()
        .map(|(i, &p)| sample_subgraph(g, p, schedule.round_seed(i)))
        .collect()
}

/// Running unions `R_1`, `R_1 ∪ R_2`, ...
pub fn cumulative_unions(rounds: &[Graph]) -> Result<Vec<Graph>> {
    let mut out: Vec<Graph> = Vec::with_capacity(rounds.len());
    for r in rounds {
        let next = match out.last() {
            Some(prev) => prev.union(r)?,
            None => r.clone(),
        };
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    #[test]
    fn extreme_probabilities() {
        let g = complete_graph(20).unwrap();
        let mut one = ExposureOracle::new(&g, 1.0, 3).unwrap();
        let mut zero = ExposureOracle::new(&g, 0.0, 3).unwrap();
        for (u, v) in g.edges() {
            assert!(one.query(u, v).unwrap());
            assert!(!zero.query(u, v).unwrap());
        }
        assert!(ExposureOracle::new(&g, 1.5, 0).is_err());
        assert!(ExposureOracle::new(&g, f64::NAN, 0).is_err());
    }

    #[test]
    fn non_edge_query_is_error() {
        let g = path_graph(4).unwrap();
        let mut o = ExposureOracle::new(&g, 0.5, 1).unwrap();
        assert!(matches!(o.query(0, 2), Err(Error::NotAnEdge(0, 2))));
        assert_eq!(o.queries(), 0);
    }

    #[test]
    fn memoization_does_not_grow_log() {
        let g = complete_graph(10).unwrap();
        let mut o = ExposureOracle::new(&g, 0.4, 9).unwrap();
        let a = o.query(2, 7).unwrap();
        assert_eq!(o.query(7, 2).unwrap(), a);
        assert_eq!(o.query(2, 7).unwrap(), a);
        assert_eq!(o.queries(), 1);
        assert_eq!(o.answer_of(7, 2), Some(a));
        assert_eq!(o.answer_of(0, 1), None);
    }

    #[test]
    fn sample_agrees_with_oracle() {
        let g = complete_graph(30).unwrap();
        let s = sample_subgraph(&g, 0.3, 77).unwrap();
        let mut o = ExposureOracle::new(&g, 0.3, 77).unwrap();
        for (u, v) in g.edges() {
            assert_eq!(o.query(u, v).unwrap(), s.has_edge(u, v));
        }
        s.validate().unwrap();
    }

    #[test]
    fn sample_extremes() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(sample_subgraph(&k4, 1.0, 5).unwrap(), k4);
        let empty = sample_subgraph(&k4, 0.0, 5).unwrap();
        assert_eq!(empty.vertex_count(), 4);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn schedule_with_zero_round_is_empty() {
        let g = complete_graph(12).unwrap();
        let sched = SprinkleSchedule::new(vec![0.0, 0.5], 1).unwrap();
        let rounds = sprinkle(&g, &sched).unwrap();
        assert_eq!(rounds[0].edge_count(), 0);
        assert!(rounds[1].edge_count() > 0);
        assert!(SprinkleSchedule::new(vec![0.2, -0.1], 0).is_err());
    }

    #[test]
    fn cumulative_marginals_closed_form() {
        let p = 0.3;
        let sched = SprinkleSchedule::new(vec![p / 3.0; 3], 0).unwrap();
        let expected = 1.0 - (1.0 - p / 3.0f64).powi(3);
        assert!((sched.union_marginal() - expected).abs() < 1e-15);
        // the union is strictly below the single-round marginal p
        assert!(sched.union_marginal() < p);
        assert!((p - sched.union_marginal() - 0.029).abs() < 1e-12);
    }

    #[test]
    fn split_rounds_recover_marginal() {
        for &p in &[0.0, 0.01, 0.3, 0.9, 1.0] {
            for m in 1..5 {
                let q = split_probability(p, m).unwrap();
                let sched = SprinkleSchedule::new(vec![q; m], 0).unwrap();
                assert!((sched.union_marginal() - p).abs() < 1e-12);
                assert!(q <= p + 1e-15 && q * m as f64 >= p - 1e-12);
            }
        }
        assert!(split_probability(0.5, 0).is_err());
    }

    #[test]
    fn query_log_csv_header() {
        let g = complete_graph(3).unwrap();
        let mut o = ExposureOracle::new(&g, 1.0, 0).unwrap();
        o.query(0, 1).unwrap();
        let mut buf = Vec::new();
        o.write_query_log_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "edge_u,edge_v,answer,index\n0,1,true,0\n");
    }
}
