//! Exact toolkit for the unlabeled quantum marginal problem on graph states.
//!
//! The crate computes weight distributions of graph and hypergraph states,
//! extracts reduced weight distributions from complete decks of unlabeled
//! marginals, refutes illegitimate decks with linear constraints plus an exact
//! LP completion test, and reconstructs a joint graph state from a single
//! `(n-1)`-qubit card.
//!
//! Module map:
//!
//! - [`pauli`]: n-qubit Pauli operators in the binary symplectic picture.
//! - [`graph`]: graphs, hypergraphs, Z-marked graphs, classical decks and Kelly's condition.
//! - [`stabilizer`]: Gray-code stabilizer enumeration and marginal decompositions.
//! - [`enumerator`]: weight-distribution calculus (reductions, Krawtchouk, shadows, cut relations).
//! - [`dense`]: brute-force density-matrix oracle for small `n`.
//! - [`deck`]: quantum cards and decks, deck-derived weights, JSON schema.
//! - [`legitimacy`]: deck verdicts and the exact rational LP ([`lp`]).
//! - [`reconstruct`]: single-card reconstruction of graph states.
//! - [`cli`]: the `qdeck` command-line front door.

pub mod bits;
pub mod cli;
pub mod deck;
pub mod dense;
pub mod enumerator;
pub mod graph;
pub mod legitimacy;
pub mod lp;
pub mod pauli;
pub mod rational;
pub mod reconstruct;
pub mod stabilizer;

pub use dense::DenseState;
pub use enumerator::{ReducedWeightDistribution, WeightDistribution};
pub use graph::{Graph, Hypergraph, MarkedGraph};
pub use legitimacy::{Assumptions, LegitimacyReport, Verdict};
pub use pauli::PauliOperator;
pub use stabilizer::StabilizerSpec;

/// Largest supported qubit / vertex count; masks are single `u32` words.
pub const MAX_QUBITS: usize = 32;
