//! The check registry, the suite runner and random instance generation.

mod random;
mod suite;

pub use random::{names_corruption, perturb_square, random_cocycle, random_kgraph, GenerationError, GraphBounds, SquareCorruption};
pub use suite::*;
