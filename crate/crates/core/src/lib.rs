//! Tools for studying k-quasi-planar topological graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`sequences`]: generalized Davenport-Schinzel patterns (`up(l,t)`,
//!   `up-down-up(l)`), regularity and regular-subsequence extraction.
//! - [`bounds`]: inverse Ackermann and log-scale evaluators for the extremal
//!   bounds on sequence lengths and edge counts.
//! - [`geometry`]: exact rational points and polyline curves, crossing
//!   classification.
//! - [`topograph`]: drawings (vertices + curves), validation, crossing graphs
//!   and pairwise-crossing (clique) search.
//! - [`structure`]: posets on arcs, Dilworth chain covers, incomparability
//!   pruning, curve separators and decomposable subcollections.
//! - [`construct`]: the vertex sequences `S1`/`S2` read off a drawing, either
//!   along an edge that crosses everything or along a vertical line.
//! - [`generate`] and [`experiment`]: deterministic instance generators and
//!   the per-instance verification report used by the CLI.
//!
//! With the default `parallel` feature, batch work (pairwise crossing
//! computation, corpus sweeps, separator branches) runs on rayon; without it
//! the same code runs sequentially.

pub mod bounds;
pub mod construct;
pub mod experiment;
pub mod generate;
pub mod geometry;
pub mod par;
pub mod sequences;
pub mod structure;
pub mod topograph;

pub use geometry::{Curve, Point, Rational};
pub use sequences::{PatternKind, PatternWitness, Sequence};
pub use topograph::{CrossingGraph, TopoGraph};
