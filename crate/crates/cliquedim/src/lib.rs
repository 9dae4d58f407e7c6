//! File formats, corpus and Monte Carlo checks on top of `cliquedim-core`.

pub mod corpus;
pub mod format;
pub mod mc;
pub mod verify;
