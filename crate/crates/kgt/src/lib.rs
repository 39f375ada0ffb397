//! File formats, report emission and the `kgt` command line.

pub mod build;
pub mod cli;
pub mod documents;
pub mod fock;
pub mod report;
