//! Graph-to-text tooling for language-model graph reasoning.
//!
//! This crate is `no_std` (it needs `alloc`). It holds everything that is a
//! pure function of its inputs:
//!
//! * [`graph`], [`pagerank`] and [`oracle`]: the weighted multigraph model and
//!   exact ground-truth computations for every benchmark question.
//! * [`description`]: edge-by-edge text rendering plus the BFS/DFS/shortest-path
//!   orderings and adjacency list/matrix formats.
//! * [`reorganizer`]: PageRank-ranked subgraph decomposition and placement of
//!   the most important blocks in the head and tail of the sequence.
//! * [`ragbase`]: the exact node/edge store built from middle-region blocks,
//!   entity extraction, retrieval and prompt assembly.
//! * [`task`] and [`generate`]: benchmark task kinds, question templates and
//!   seeded graph/task generation.
//! * [`scoring`] and [`wilcoxon`]: answer parsing, metrics and significance.
//! * [`bias`], [`simulator`], [`prompt`], [`method`] and [`agent`]: the
//!   positional-bias model, the deterministic simulated model, prompt wrappers
//!   and the per-task evaluation pipeline.
//!
//! File formats, the remote client and the CLI live in the `graphinsight`
//! crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod agent;
pub mod answer;
pub mod bias;
pub mod description;
pub mod error;
pub mod generate;
pub mod graph;
pub mod method;
pub mod model;
pub mod oracle;
pub mod pagerank;
pub mod prompt;
pub mod ragbase;
pub mod reorganizer;
pub mod scoring;
pub mod simulator;
pub mod task;
pub mod text;
pub mod wilcoxon;

pub use answer::{AnswerType, TypedAnswer};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, NodeId};
