//! Graph rigidity analysis and unlabeled distance-geometry reconstruction.
//!
//! The crate is organised in four layers:
//!
//! * [`graph`]: ordered graphs, connectivity, circuits, cycle isomorphisms and
//!   Whitney reversals, small-graph canonical forms.
//! * [`linalg`]: exact rational rank/kernel and seeded "generic" sampling.
//! * [`rigidity`]: frameworks, rigidity and stress matrices, and the randomized
//!   generic rigidity tests built on exact rank decisions.
//! * [`unlabeled`]: numerical realization and the brute-force search that
//!   recovers a graph and configuration from an unlabeled multiset of squared
//!   edge lengths.

pub mod error;
pub mod graph;
pub mod linalg;
pub mod rigidity;
pub mod unlabeled;

pub use error::{Error, Result};
pub use graph::{EdgeBijection, OrderedGraph, VertexMap};
pub use linalg::{Configuration, RationalMatrix};
pub use rigidity::{Framework, MeasurementVector, RigidityReport, StressMatrix, StressVector};
pub use unlabeled::{DistanceMultiset, ReconstructionResult, RealizationResult, Solution};
