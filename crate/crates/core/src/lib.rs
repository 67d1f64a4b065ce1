//! Minimal Shannon links: the vertex Shannon switching game played as
//! Short (connector) against Cut, with an exact solver, structural
//! reductions, a necessary-condition sieve and an exhaustive search.

pub mod atlas;
pub mod canon;
pub mod enumerate;
pub mod error;
pub mod game;
pub mod graph;
pub mod graph6;
pub mod named;
pub mod search;
pub mod sieve;
pub mod solver;
pub mod structure;
pub mod tables;
pub mod verify;

#[cfg(test)]
mod properties;

pub use canon::CanonicalKey;
pub use error::{Error, Result};
pub use game::{LinkGame, LinkSummary, Move, MoveResult};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use solver::{OutcomeClass, Solver};
