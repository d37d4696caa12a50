//! A workbench for multi-pass semi-streaming maximum-matching algorithms.
//!
//! Five algorithms share one replayable streaming harness: a one-pass greedy
//! baseline, two triangle-greedy algorithms (two and three passes) that grow
//! bounded components instead of a matching in their first pass, and two
//! wing-augmentation algorithms (triangle-free and general) that extend a
//! greedy matching with 4-vertex augmenting paths. An exact blossom solver
//! provides ground truth, and an auditor re-verifies the full inequality
//! chain behind every approximation guarantee on each run, in exact integer
//! arithmetic.

pub mod audit;
pub mod check;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod greedy;
pub mod rng;
pub mod stream;
pub mod triangle;
pub mod wing;

pub use graph::{Edge, Graph, Matching, Path4, VertexId};
pub use stream::{
    make_order, parse_instance, run_multi_pass, AlgoId, Instance, MemoryMeter, OrderPolicy,
    RunArtifacts, RunResult, StreamOrder,
};
