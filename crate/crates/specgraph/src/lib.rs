//! Standard-library companion to `specgraph-core`: the graph6 wire format,
//! JSON report shapes, and the `specgraph` command-line tool.

pub mod cli;
pub mod graph6;
pub mod report;
