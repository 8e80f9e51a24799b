//! Exact computations in the diagram complexes of the Vassiliev spectral
//! sequence for long knots.

pub mod cli;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod hopf;
pub mod lincomb;
pub mod linalg;
pub mod relations;
pub mod ring;
pub mod verify;

pub use complex::{ComplexBuilder, ComplexVariant, DifferentialMatrix, Limits, SliceBasis};
pub use diagram::{Bigrading, Diagram, OrientingMonomial, Parity, SignedDiagram, Token};
pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use ring::Ring;
