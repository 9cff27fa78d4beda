//! Random walks on hypergraphs with edge-dependent vertex weights.
//!
//! A hypergraph `H = (V, E, ω, γ)` carries a weight `ω(e)` per edge and a
//! weight `γ_e(v)` per (edge, member) pair. The lazy walk picks an incident
//! edge with probability proportional to `ω`, then a member of it with
//! probability proportional to `γ_e`.
//!
//! ```
//! use hyperwalk_core::{fixtures, stationary::stationary_rho};
//!
//! let pi = stationary_rho(&fixtures::h3()).unwrap().pi;
//! assert!((pi[0] - 7.0 / 17.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod linalg;
pub mod par;
pub mod random;
pub mod rankagg;
pub mod reduction;
pub mod spectral;
pub mod stationary;
pub mod walk;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use hypergraph::{build_hypergraph, Connectivity, Hyperedge, Hypergraph};
pub use io::{EdgeSpec, HypergraphSpec};
pub use par::Exec;
pub use walk::TransitionMatrix;
