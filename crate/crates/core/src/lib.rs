//! Generic rigidity of periodic bar-joint frameworks on the fixed 2-torus.
//!
//! A periodic framework is described by a finite *periodic orbit graph*: a
//! directed multigraph whose edges carry gains in `Z²`. The crate decides
//! generic minimal rigidity of such graphs in two independent ways:
//!
//! * combinatorially ([`sparsity::periodic_laman_check`]): the graph must be
//!   (2,2)-tight and every (2,2)-tight subgraph must contain a cycle with a
//!   nonzero net gain;
//! * linear-algebraically ([`rigidity::generic_rank`]): the exact rank of the
//!   fixed-torus rigidity matrix at random rational configurations must be
//!   `2|V| - 2`.
//!
//! The [`henneberg`] module builds and decomposes minimally rigid graphs with
//! periodic vertex additions and edge splits.

pub mod error;
pub mod gain;
pub mod graph;
pub mod henneberg;
pub mod lattice;
pub mod rigidity;
pub mod sparsity;
pub mod tgain;
pub mod window;

pub use error::{Error, Result};
pub use gain::GainVector;
pub use graph::{DirectedGainEdge, EdgeId, PeriodicOrbitGraph, VertexId};
pub use henneberg::{HennebergMove, HennebergSequence};
pub use lattice::GainSpace;
pub use rigidity::{Configuration, GenericRankResult, LatticeMatrix, RigidityMatrixReport};
pub use sparsity::{LamanReport, LamanVerdict, SparsityParams};
pub use tgain::SpanningTreeData;
