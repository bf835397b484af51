//! Path decompositions of 2-degenerate graphs with at most `floor(n/2)`
//! paths, plus the tools to check them: an independent verifier, an exact
//! oracle for small graphs, and seeded instance generators.
//!
//! ```
//! use pathdecomp::{decompose, verify_decomposition, Graph};
//!
//! let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
//! let (d, _trace) = decompose(&c5).unwrap();
//! assert!(d.paths.len() <= 2);
//! assert!(verify_decomposition(&c5, &d).valid);
//! ```

pub mod decompose;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod verify;

pub use decompose::{
    decompose, decompose_connected, DecomposeError, Decomposition, ReductionTrace,
};
pub use error::{GraphError, ParseError};
pub use graph::{Cycle, Edge, EdgeSet, Graph, Path, VertexId};
pub use verify::{minimum_decomposition, odd_degree_lower_bound, verify_decomposition};
