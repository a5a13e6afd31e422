//! Kakimizu-type flag complexes in the height-function model.
//!
//! Vertices are integer height functions on a finite set of columns; the
//! crate builds the associated flag complex, its projection `π_σ` and order
//! `<_σ`, checks their properties exhaustively, dismantles, computes reduced
//! homology as an independent contractibility oracle, and runs the
//! fixed-point algorithm for finite group actions.

pub mod action;
pub mod cli;
pub mod complex;
pub mod cover;
pub mod dismantle;
pub mod error;
pub mod homology;
pub mod io;
pub mod projection;

pub use action::{FixComplex, GroupAction, InvariantSimplex, TraceStep};
pub use complex::{DistanceMatrix, FlagComplex, VertexSet};
pub use cover::{ColumnPermutation, GenParams, HeightFamily, HeightFunction};
pub use dismantle::DismantlingOrder;
pub use error::{Error, Result};
pub use homology::{HomologyProfile, IntegerMatrix, SmithForm};
pub use projection::{CheckReport, ProjectionStructure};
