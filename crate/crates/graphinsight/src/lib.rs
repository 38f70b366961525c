//! File formats, the chat-completions client and the evaluation runner
//! around `graphinsight-core`.

pub mod client;
pub mod config;
pub mod eval;
pub mod io;

pub use graphinsight_core as core;
