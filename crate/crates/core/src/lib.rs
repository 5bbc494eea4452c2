//! A laboratory for the H-bootstrap percolation process.
//!
//! Starting from a graph `G`, every round adds each non-edge whose insertion
//! creates a new copy of the pattern `H`. The crate runs that process, builds
//! the chain constructions that force long running times, verifies their
//! properness conditions on concrete instances, constructs solution-free sets
//! in `Z_p` that drive the dilation constructions, and computes small-case
//! maximum running times exhaustively.

pub mod additive;
pub mod chains;
pub mod classify;
pub mod engine;
pub mod error;
pub mod graph;
pub mod oracle;

pub use error::{AdditiveError, ChainError, GraphError, ParseError};
pub use graph::{edge, Edge, Graph};
