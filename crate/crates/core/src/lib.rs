//! Exact computations in walled Brauer algebras `B_{r,s}(δ)`: diagrams,
//! cell modules, blocks, semisimplicity and Weyl group orbit geometry.

pub mod blocks;
pub mod cell;
pub mod combinatorics;
pub mod diagram;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod matching;
pub mod scalar;
pub mod specht;
pub mod verify;

pub use combinatorics::{Bipartition, Partition, StandardTableau, YoungBox};
pub use error::{Error, Result};
pub use scalar::{DeltaValue, Poly, ScalarContext};
