//! Rainbow edge and vertex colourings built from pairs of spanning
//! subgraphs, the random graph models they are applied to, and exact and
//! statistical verifiers for the resulting colourings.
//!
//! Modules, bottom-up:
//! - [`graph`]: simple graphs, multigraphs, BFS layers, diameters, Euler
//!   circuits, exact edge expansion, edge-list I/O.
//! - [`random`]: seeded generators (pairing model, regular graphs,
//!   Hamiltonian cycles, matchings, ⊕-unions, gap sequences).
//! - [`edge_rainbow`] and [`vertex_rainbow`]: the layered colourings and the
//!   pipelines that feed them.
//! - [`verify`]: exact rainbow checkers, certificate replay, density audits,
//!   Monte Carlo estimators.
//! - [`experiment`]: seeded batch runs and scaling summaries.

pub mod edge_rainbow;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod random;
pub mod verify;
pub mod vertex_rainbow;

pub use error::{Error, Result};
pub use graph::{Graph, Multigraph, Vertex};
pub use random::Seed;
