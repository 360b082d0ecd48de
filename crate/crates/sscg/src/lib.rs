//! Two self-similar scale-free graph families built by repeated edge
//! replacement, together with exact solvers and decimation recurrences for
//! maximum matchings, maximum independent sets and minimum dominating sets.
//!
//! The `generate` module constructs the graphs, `oracle` solves the three
//! optimization problems exactly on small instances (optionally with boundary
//! constraints), `decimate` evaluates the level-to-level recurrences and
//! closed forms, and `verify` cross-checks the two against each other.

pub mod config;
pub mod decimate;
pub mod error;
pub mod formats;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use generate::{Method, Model};
pub use graph::{EdgeKind, Graph, Role, VertexId, VertexMeta};
