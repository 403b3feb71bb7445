//! Data files compiled into the crate.

pub const QTABLE: &str = include_str!("../data/qtable.tsv");
pub const REGISTRY: &str = include_str!("../data/registry.tsv");
pub const SQUARES: &str = include_str!("../data/squares.tsv");
