//! Chern-class inequalities for projective n-folds with ample canonical or
//! anticanonical bundle, obtained by pulling back effective Schubert classes
//! along the Gauss map, together with exact-LP bounds on Chern ratios.

pub mod chern;
pub mod cli;
pub mod error;
pub mod inequality;
pub mod notation;
pub mod partitions;
pub mod polytope;
pub mod schubert;
pub mod todd;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::Partition;
