//! Seeded Monte Carlo experiments: configuration, closed-form bounds and
//! the trial runner.
//!
//! Trial `i` of a config runs with seed `derive_seed(master_seed, i)`, so
//! any subset of trials can be rerun on its own and identical configs give
//! identical JSON reports.

pub mod bounds;
pub mod config;
pub mod runner;

pub use bounds::{
    bound_combine, bound_dfs_cycle, bound_grow_cycle, bound_linear_path, directed_counterexample_probability,
    CombineBound,
};
pub use config::{ExperimentConfig, Family, Overrides, Regime, StrategyId};
pub use runner::{
    find_any_cycle, run_experiment, AuditSummary, Experiment, ExperimentReport, LengthStats, OutputPaths, Summary,
    TrialRecord, Witness,
};
