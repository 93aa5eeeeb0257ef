//! Long paths and cycles in random subgraphs of graphs with large minimum
//! degree.
//!
//! The crate exposes random subgraphs `G_p` lazily through a seeded
//! per-edge oracle and runs the constructive procedures on top of it:
//! depth-first exploration, Pósa rotation-extension, vertex connectivity
//! and cycle merging. Small exact solvers provide ground truth, and the
//! [`harness`] module runs seeded Monte Carlo experiments.

// `!(x >= 0.0)` style checks also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembly;
pub mod connectivity;
pub mod dfs;
pub mod error;
pub mod exact;
pub mod exposure;
pub mod graph;
pub mod harness;
pub mod rotation;

pub use error::{Error, Result};
pub use exposure::{derive_seed, sample_subgraph, sprinkle, ExposureOracle, SampleView, SprinkleSchedule};
pub use graph::{Cycle, EdgeSet, Graph, Path, Subgraph, Vertex};
