//! Clique-theoretic learnability dimensions of finite concept classes.
//!
//! The crate builds the contradiction graph `G_m(H)` of a finite class `H`
//! (vertices are realizable datasets of length `m`, edges join datasets that
//! label some point both ways) and computes on it:
//!
//! * exact clique numbers and the clique dimension,
//! * exact-rational fractional clique numbers with matched primal/dual
//!   certificates, and the fractional clique dimension,
//! * the balanced-example elimination procedure and the conversions between
//!   cliques and shattered mistake trees,
//! * the majority-vote boosting construction driven by a Hedge expert game.
//!
//! Everything here is `no_std` with `alloc`; text formats, statistics and the
//! command-line tool live in the companion `cliquedim` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod boosting;
pub mod clique;
pub mod concept;
pub mod dimension;
mod error;
pub mod fractional;
pub mod graph;
pub mod lp;
pub mod numeric;
pub mod rational;

pub use crate::clique::{BalancedPointReport, Clique, CliqueDecision, MistakeTree};
pub use crate::concept::{ConceptClass, Dataset, Family, HypothesisPattern, LabeledExample, Point};
pub use crate::error::Error;
pub use crate::fractional::{DualityCertificate, FractionalClique, FractionalColoring};
pub use crate::graph::{ContradictionGraph, IndependentSetFamily, Limits};
pub use crate::rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;
