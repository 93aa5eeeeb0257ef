//! Seeded trial execution and report assembly.

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{bound_dfs_cycle, bound_linear_path, directed_counterexample_probability};
use super::config::{ExperimentConfig, Family, StrategyId};
use crate::assembly::{long_cycle_pipeline, PipelineOptions};
use crate::dfs::{dfs_long_cycle_detailed, dfs_longest_path_detailed, BIPARTITE_BUDGET, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exposure::{derive_seed, sample_subgraph, SampleView};
use crate::graph::{blowup_part, Cycle, Graph, Path, Vertex};
use crate::rotation::{extend_or_rotate, hamiltonicity_search, sprinkle_defaults};

const DEFAULT_EPSILON: f64 = 0.2;

/// A persisted witness for a reported length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum Witness {
    Path(Path),
    Cycle(Cycle),
}

impl Witness {
    pub fn length(&self) -> usize {
        match self {
            Witness::Path(p) => p.length(),
            Witness::Cycle(c) => c.length(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self {
            Witness::Path(p) => p.validate(g),
            Witness::Cycle(c) => c.validate(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub length: usize,
    pub success: bool,
    pub queries: Option<usize>,
    pub witness: Option<Witness>,
    /// Whether the path starts at the configured start vertex.
    pub starts_at_start: Option<bool>,
    /// Whether every block of a directed blow-up kept an arc.
    pub blocks_hit: Option<bool>,
    pub note: Option<String>,
    /// Excluded from JSON so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_seconds: f64,
}

/// Nearest-rank quantiles of the achieved lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub min: usize,
    pub p10: usize,
    pub median: usize,
    pub p90: usize,
    pub max: usize,
    pub mean: f64,
}

impl LengthStats {
    pub fn from_lengths(lengths: &[usize]) -> Option<LengthStats> {
        if lengths.is_empty() {
            return None;
        }
        let mut sorted = lengths.to_vec();
        sorted.sort_unstable();
        let rank = |f: f64| sorted[((f * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1];
        Some(LengthStats {
            min: sorted[0],
            p10: rank(0.1),
            median: rank(0.5),
            p90: rank(0.9),
            max: sorted[sorted.len() - 1],
            mean: sorted.iter().sum::<usize>() as f64 / sorted.len() as f64,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub length: Option<LengthStats>,
    pub mean_queries: Option<f64>,
    pub start_rate: Option<f64>,
    pub blocks_hit_rate: Option<f64>,
}

fn rate(flags: impl Iterator<Item = Option<bool>>) -> Option<f64> {
    let flags: Vec<bool> = flags.flatten().collect();
    (!flags.is_empty()).then(|| flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64)
}

impl Summary {
    pub fn from_trials(trials: &[TrialRecord]) -> Summary {
        let successes = trials.iter().filter(|t| t.success).count();
        let lengths: Vec<usize> = trials.iter().map(|t| t.length).collect();
        let queries: Vec<usize> = trials.iter().filter_map(|t| t.queries).collect();
        Summary {
            trials: trials.len(),
            successes,
            success_rate: if trials.is_empty() {
                0.0
            } else {
                successes as f64 / trials.len() as f64
            },
            length: LengthStats::from_lengths(&lengths),
            mean_queries: (!queries.is_empty()).then(|| queries.iter().sum::<usize>() as f64 / queries.len() as f64),
            start_rate: rate(trials.iter().map(|t| t.starts_at_start)),
            blocks_hit_rate: rate(trials.iter().map(|t| t.blocks_hit)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Minimum (out-)degree of the host.
    pub k: usize,
    pub probability: f64,
    pub bipartite: bool,
    /// Length a trial must reach to count as a success.
    pub bound: Option<f64>,
    /// Probability that every block of a directed blow-up keeps an arc.
    pub closed_form: Option<f64>,
    pub summary: Summary,
    pub trials: Vec<TrialRecord>,
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    index: usize,
    seed: u64,
    length: usize,
    success: bool,
    queries: Option<usize>,
    starts_at_start: Option<bool>,
    blocks_hit: Option<bool>,
    note: Option<&'a str>,
    wall_seconds: f64,
}

/// Files written by [`ExperimentReport::write_outputs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputPaths {
    pub json: PathBuf,
    pub csv: PathBuf,
    pub summary: PathBuf,
}

impl ExperimentReport {
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Per-trial rows including wall time.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for t in &self.trials {
            w.serialize(CsvRow {
                index: t.index,
                seed: t.seed,
                length: t.length,
                success: t.success,
                queries: t.queries,
                starts_at_start: t.starts_at_start,
                blocks_hit: t.blocks_hit,
                note: t.note.as_deref(),
                wall_seconds: t.wall_seconds,
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary_text(&self) -> String {
        let s = &self.summary;
        let mut out = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(out, "{key:<12}{value}");
        };
        if !self.config.name.is_empty() {
            line("experiment", self.config.name.clone());
        }
        line("family", family_label(&self.config.family));
        line("strategy", strategy_label(self.config.strategy));
        line(
            "graph",
            format!("n={} m={} k={}", self.vertex_count, self.edge_count, self.k),
        );
        line("p", format!("{:.6}", self.probability));
        if let Some(b) = self.bound {
            line("bound", format!("{b:.2}"));
        }
        line("trials", s.trials.to_string());
        line("successes", format!("{} ({:.1}%)", s.successes, 100.0 * s.success_rate));
        if let Some(l) = s.length {
            line(
                "length",
                format!(
                    "min {} p10 {} median {} p90 {} max {} mean {:.1}",
                    l.min, l.p10, l.median, l.p90, l.max, l.mean
                ),
            );
        }
        if let Some(q) = s.mean_queries {
            line("queries", format!("mean {q:.1}"));
        }
        if let Some(r) = s.start_rate {
            line("start", format!("{:.1}% start at the given vertex", 100.0 * r));
        }
        if let Some(r) = s.blocks_hit_rate {
            line("blocks", format!("{:.4} all blocks hit", r));
        }
        if let Some(c) = self.closed_form {
            line("closed", format!("{c:.4}"));
        }
        out
    }

    /// Writes `report.json`, `trials.csv` and `summary.txt` into `dir`.
    pub fn write_outputs(&self, dir: &FsPath) -> Result<OutputPaths> {
        std::fs::create_dir_all(dir)?;
        let paths = OutputPaths {
            json: dir.join("report.json"),
            csv: dir.join("trials.csv"),
            summary: dir.join("summary.txt"),
        };
        std::fs::write(&paths.json, self.to_json_string()? + "\n")?;
        self.write_csv(std::fs::File::create(&paths.csv)?)?;
        std::fs::write(&paths.summary, self.summary_text())?;
        Ok(paths)
    }
}

fn strategy_label(s: StrategyId) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn family_label(f: &Family) -> String {
    match f {
        Family::Complete { n } => format!("complete n={n}"),
        Family::CompleteBipartite { a, b } => format!("complete_bipartite a={a} b={b}"),
        Family::TwoCliques { k } => format!("two_cliques k={k}"),
        Family::BlowupCycle { parts, k, directed } => {
            format!(
                "blowup_cycle parts={parts} k={k}{}",
                if *directed { " directed" } else { "" }
            )
        }
        Family::Path { n } => format!("path n={n}"),
        Family::Cycle { n } => format!("cycle n={n}"),
        Family::EdgeList { path, directed } => {
            format!(
                "edge_list {}{}",
                path.display(),
                if *directed { " directed" } else { "" }
            )
        }
    }
}

/// A cycle of `g` (directed cycles follow arc directions), as its vertex
/// sequence. Directed graphs may give a 2-cycle.
pub fn find_any_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    // 0 unseen, 1 on the stack, 2 finished
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in g.vertices() {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let nbrs = g.neighbors(v);
            if *next == nbrs.len() {
                state[v] = 2;
                stack.pop();
                continue;
            }
            let w = nbrs[*next];
            *next += 1;
            match state[w] {
                0 => {
                    state[w] = 1;
                    parent[w] = v;
                    stack.push((w, 0));
                }
                1 if g.is_directed() || parent[v] != w => {
                    let from = stack.iter().position(|&(x, _)| x == w).expect("w is on the stack");
                    return Some(stack[from..].iter().map(|&(x, _)| x).collect());
                }
                _ => {}
            }
        }
    }
    None
}

/// A config bound to its host graph, ready to run trials.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub graph: Graph,
    pub k: usize,
    pub probability: f64,
    pub bipartite: bool,
    pub bound: Option<f64>,
    pub closed_form: Option<f64>,
}

impl Experiment {
    /// Builds the host and derives `p` and the bound. `base` resolves
    /// relative edge-list paths.
    pub fn prepare(config: &ExperimentConfig, base: Option<&FsPath>) -> Result<Experiment> {
        config.check()?;
        let graph = config.family.build(base).map_err(|e| match e {
            Error::Io(_) | Error::Parse { .. } => e,
            other => Error::Config(format!("family: {other}")),
        })?;
        let k = graph.min_degree();
        let probability = config.regime.probability(k)?;
        let bipartite = !graph.is_directed() && graph.is_bipartite();
        if let Some(s) = config.overrides.start {
            if s >= graph.vertex_count() {
                return Err(Error::Config(format!("start vertex {s} out of range")));
            }
        }
        let kf = k as f64;
        let o = &config.overrides;
        let computed = match config.strategy {
            StrategyId::DfsLongestPath | StrategyId::RotationPath => {
                let c = probability * kf;
                Some(bound_linear_path(c, kf, bipartite, o.start.is_some()).map_err(|e| Error::Config(e.to_string()))?)
            }
            StrategyId::DfsLongCycle => Some(bound_dfs_cycle(o.alpha.unwrap_or(1.0), probability * kf, kf, bipartite)),
            StrategyId::HamiltonicitySearch => Some(graph.vertex_count() as f64),
            StrategyId::LongCyclePipeline => Some((1.0 - o.epsilon.unwrap_or(DEFAULT_EPSILON)) * kf),
            StrategyId::AnyCycle => None,
        };
        let closed_form = match config.family {
            Family::BlowupCycle {
                parts,
                k,
                directed: true,
            } => Some(directed_counterexample_probability(parts, k, probability)?),
            _ => None,
        };
        Ok(Experiment {
            config: config.clone(),
            graph,
            k,
            probability,
            bipartite,
            bound: o.bound.or(computed),
            closed_form,
        })
    }

    pub fn trial_seed(&self, index: usize) -> u64 {
        derive_seed(self.config.master_seed, index as u64)
    }

    fn meets(&self, length: usize) -> bool {
        self.bound.map_or(true, |b| length as f64 >= b - 1e-9)
    }

    /// Runs one trial. Every witness is checked against the host and the
    /// edges the strategy exposed.
    pub fn run_trial(&self, index: usize) -> Result<TrialRecord> {
        let started = Instant::now();
        let seed = self.trial_seed(index);
        let g = &self.graph;
        let p = self.probability;
        let o = &self.config.overrides;
        let mut record = TrialRecord {
            index,
            seed,
            length: 0,
            success: false,
            queries: None,
            witness: None,
            starts_at_start: None,
            blocks_hit: None,
            note: None,
            wall_seconds: 0.0,
        };
        let default_budget = if self.bipartite {
            BIPARTITE_BUDGET
        } else {
            DEFAULT_BUDGET
        };
        match self.config.strategy {
            StrategyId::DfsLongestPath | StrategyId::RotationPath => {
                let out = dfs_longest_path_detailed(g, p, seed, o.start, o.budget.unwrap_or(default_budget))?;
                record.queries = Some(out.trace.queries);
                let path = if self.config.strategy == StrategyId::RotationPath {
                    let sample = sample_subgraph(g, p, seed)?;
                    let rounds = o.rotation_rounds.unwrap_or(g.vertex_count());
                    extend_or_rotate(&sample, &out.path, rounds)?
                } else {
                    out.path
                };
                path.validate(&SampleView::new(g, p, seed)?)?;
                record.starts_at_start = o.start.map(|s| path.start() == Some(s));
                record.length = path.length();
                record.success = self.meets(record.length);
                record.witness = Some(Witness::Path(path));
            }
            StrategyId::DfsLongCycle => {
                let out = dfs_long_cycle_detailed(g, p, seed)?;
                record.queries = Some(out.queries);
                if let Some(c) = out.cycle {
                    c.validate(&out.exposed)?;
                    record.length = c.length();
                    record.witness = Some(Witness::Cycle(c));
                }
                record.success = record.witness.is_some() && self.meets(record.length);
            }
            StrategyId::HamiltonicitySearch => {
                let rounds = match o.sprinkle_rounds {
                    Some(r) => r,
                    None => sprinkle_defaults(self.k as f64)?.len(),
                };
                let out = hamiltonicity_search(g, p, rounds, seed)?;
                record.note = Some(format!("{} rounds", out.rounds.len()));
                match out.cycle {
                    Some(c) => {
                        c.validate(&out.exposed)?;
                        record.length = c.length();
                        record.success = c.length() == g.vertex_count();
                        record.witness = Some(Witness::Cycle(c));
                    }
                    None => {
                        out.longest_path.validate(&out.exposed)?;
                        record.length = out.longest_path.length();
                        record.witness = Some(Witness::Path(out.longest_path));
                    }
                }
            }
            StrategyId::LongCyclePipeline => {
                let options = PipelineOptions { t: o.t };
                let out = long_cycle_pipeline(g, p, o.epsilon.unwrap_or(DEFAULT_EPSILON), seed, options)?;
                record.note = Some(match out.winner {
                    Some(w) => format!("t={} winner {w:?}", out.t),
                    None => format!("t={} no cycle", out.t),
                });
                if let Some(c) = out.cycle {
                    c.validate(&out.exposed)?;
                    record.length = c.length();
                    record.witness = Some(Witness::Cycle(c));
                }
                record.success = record.witness.is_some() && self.meets(record.length);
            }
            StrategyId::AnyCycle => {
                let sample = sample_subgraph(g, p, seed)?;
                if let Family::BlowupCycle {
                    parts,
                    k,
                    directed: true,
                } = self.config.family
                {
                    let mut hit = vec![false; parts];
                    for (u, _) in sample.edges() {
                        hit[blowup_part(u, k)] = true;
                    }
                    record.blocks_hit = Some(hit.iter().all(|&h| h));
                }
                if let Some(cycle) = find_any_cycle(&sample) {
                    record.length = cycle.len();
                    record.success = true;
                    if cycle.len() >= 3 {
                        let c = Cycle::new(cycle)?;
                        c.validate(&sample)?;
                        record.witness = Some(Witness::Cycle(c));
                    } else {
                        record.note = Some("2-cycle".into());
                    }
                }
            }
        }
        if let Some(w) = &record.witness {
            w.validate(g)?;
            debug_assert_eq!(w.length(), record.length);
        }
        record.wall_seconds = started.elapsed().as_secs_f64();
        Ok(record)
    }

    /// Runs every trial, in parallel, collecting records in trial order.
    pub fn run(&self) -> Result<ExperimentReport> {
        let trials = self.config.trials;
        let work = || {
            (0..trials)
                .into_par_iter()
                .map(|i| self.run_trial(i))
                .collect::<Result<Vec<_>>>()
        };
        let records = match self.config.workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?
                .install(work)?,
            None => work()?,
        };
        Ok(ExperimentReport {
            config: self.config.clone(),
            vertex_count: self.graph.vertex_count(),
            edge_count: self.graph.edge_count(),
            k: self.k,
            probability: self.probability,
            bipartite: self.bipartite,
            bound: self.bound,
            closed_form: self.closed_form,
            summary: Summary::from_trials(&records),
            trials: records,
        })
    }

    /// Reruns every trial from its persisted seed and checks that the
    /// witness, length and success flag are reproduced and that every
    /// witness is valid in the host.
    pub fn audit(&self, report: &ExperimentReport) -> Result<AuditSummary> {
        let mismatches: Vec<usize> = report
            .trials
            .par_iter()
            .map(|t| -> Result<Option<usize>> {
                let again = self.run_trial(t.index)?;
                let host_ok = t.witness.as_ref().map_or(true, |w| w.validate(&self.graph).is_ok());
                let same = again.seed == t.seed
                    && again.length == t.length
                    && again.success == t.success
                    && again.witness == t.witness;
                Ok((!(host_ok && same)).then_some(t.index))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok(AuditSummary {
            checked: report.trials.len(),
            successes_checked: report.trials.iter().filter(|t| t.success).count(),
            mismatches,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub checked: usize,
    pub successes_checked: usize,
    /// Trial indices that did not reproduce.
    pub mismatches: Vec<usize>,
}

impl AuditSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Prepares and runs `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    Experiment::prepare(config, None)?.run()
}
