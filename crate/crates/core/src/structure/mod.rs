//! Posets on arcs, Dilworth chain covers, incomparability pruning, curve
//! separators and decomposable subcollections.

mod decompose;
mod poset;
mod prune;
mod separator;

pub use decompose::{decompose, potential_d, DecomposeConfig, DecomposeStats, Decomposition, Part};
pub use poset::{
    chain_cover, dilworth_triple, max_antichain, Arc, ArcPoset, CrossingPairs, DilworthOutcome, OrderKind, Poset,
};
pub use prune::{prune_incomparability, LineSide, PruneResult};
pub use separator::{curve_separator, CurveSet, SeparatorResult};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::topograph::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    /// Transitivity or irreflexivity fails; `(a, b, c)` has `a < b < c` but
    /// not `a < c` (or `a == b == c` for a reflexive pair).
    #[error("relation is not a strict partial order (witness {0:?})")]
    NotAPoset((usize, usize, usize)),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{} edges pairwise cross on the given side: {clique:?}", clique.len())]
    HypothesisViolated { clique: Vec<EdgeId> },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
