//! Batch verification of quiver Hecke superalgebra and covering-algebra identities: datum
//! files, the suite registry, reports and the `qhsa` command line.

pub use qhsa_core as core;

pub mod config;
pub mod data;
pub mod explain;
pub mod report;
pub mod suites;
