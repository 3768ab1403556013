//! Exact vertex and edge metric dimension of cactus graphs.
//!
//! The solver reads the answer off the cycle structure: threads, branch-active
//! vertices, the five cycle configurations and critical incidences between
//! cycles sharing a vertex. A brute-force oracle and the zero forcing number
//! are provided alongside for cross-checking.

pub mod cactus;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod report;
pub mod resolving;
pub mod solver;

pub use cactus::Cactus;
pub use error::{Error, Result};
pub use graph::{parse_edge_list, Graph};
pub use resolving::Mode;
pub use solver::{compute_dimensions, DimensionReport};
