//! Experiment configuration, read from JSON.

use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    blowup_cycle, complete_bipartite, complete_graph, cycle_graph, path_graph, read_edge_list,
    two_cliques_shared_vertex, Graph, Vertex,
};

/// Host graph family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    Complete {
        n: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    /// Two copies of `K_{k+1}` sharing one vertex.
    TwoCliques {
        k: usize,
    },
    BlowupCycle {
        parts: usize,
        k: usize,
        #[serde(default)]
        directed: bool,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// Edge-list file; relative paths resolve against the config file.
    EdgeList {
        path: PathBuf,
        #[serde(default)]
        directed: bool,
    },
}

impl Family {
    pub fn build(&self, base: Option<&FsPath>) -> Result<Graph> {
        match self {
            Family::Complete { n } => complete_graph(*n),
            Family::CompleteBipartite { a, b } => complete_bipartite(*a, *b),
            Family::TwoCliques { k } => two_cliques_shared_vertex(*k),
            Family::BlowupCycle { parts, k, directed } => blowup_cycle(*parts, *k, *directed),
            Family::Path { n } => path_graph(*n),
            Family::Cycle { n } => cycle_graph(*n),
            Family::EdgeList { path, directed } => {
                let full = match base {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                let file = std::fs::File::open(&full)?;
                read_edge_list(std::io::BufReader::new(file), *directed)
            }
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(
            self,
            Family::BlowupCycle { directed: true, .. } | Family::EdgeList { directed: true, .. }
        )
    }
}

/// How the edge probability is derived from the minimum degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Regime {
    /// `p = c/k`.
    COverK { c: f64 },
    /// `p = ω/k`.
    OmegaOverK { omega: f64 },
    /// `p = (1 + ε) ln k / k`.
    LogRegime { epsilon: f64 },
    /// `p` given directly.
    Fixed { p: f64 },
}

impl Regime {
    pub fn probability(&self, k: usize) -> Result<f64> {
        let kf = k as f64;
        let needs_k = || -> Result<()> {
            if k == 0 {
                Err(Error::Config("regime needs a positive minimum degree".into()))
            } else {
                Ok(())
            }
        };
        let p = match *self {
            Regime::COverK { c } => {
                needs_k()?;
                c / kf
            }
            Regime::OmegaOverK { omega } => {
                needs_k()?;
                omega / kf
            }
            Regime::LogRegime { epsilon } => {
                needs_k()?;
                (1.0 + epsilon) * kf.ln() / kf
            }
            Regime::Fixed { p } => p,
        };
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(Error::Config(format!("derived probability {p} is not in [0, 1]")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyId {
    DfsLongestPath,
    DfsLongCycle,
    /// DFS path followed by rotation-extension in the same sample.
    RotationPath,
    HamiltonicitySearch,
    LongCyclePipeline,
    /// Any cycle of the sample; on directed blow-ups also records whether
    /// every block kept an arc.
    AnyCycle,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    /// DFS query budget multiplier.
    pub budget: Option<f64>,
    /// Connectivity used by the pipeline.
    pub t: Option<usize>,
    /// DFS start vertex.
    pub start: Option<Vertex>,
    /// Pipeline slack; the target is `(1 - ε)k`.
    pub epsilon: Option<f64>,
    pub sprinkle_rounds: Option<usize>,
    /// Fraction of `k` in the DFS cycle bound.
    pub alpha: Option<f64>,
    /// Replaces the computed bound.
    pub bound: Option<f64>,
    /// Rotation rounds for `rotation_path`.
    pub rotation_rounds: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub family: Family,
    pub regime: Regime,
    pub strategy: StrategyId,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub overrides: Overrides,
    /// Worker threads; all available cores when absent.
    #[serde(default)]
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<ExperimentConfig> {
        let config: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.check()?;
        Ok(config)
    }

    pub fn from_path(path: &FsPath) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Checks everything that does not need the graph.
    pub fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if let Some(e) = self.overrides.epsilon {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::Config(format!("epsilon {e} is not in (0, 1)")));
            }
        }
        if let Some(b) = self.overrides.budget {
            if !(b >= 0.0) {
                return Err(Error::Config(format!("budget multiplier {b} is negative")));
            }
        }
        if self.overrides.t == Some(0) {
            return Err(Error::Config("t must be at least 1".into()));
        }
        if self.family.is_directed() && self.strategy != StrategyId::AnyCycle {
            return Err(Error::Config(
                "directed families only support the any_cycle strategy".into(),
            ));
        }
        Ok(())
    }
}
