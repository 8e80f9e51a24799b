//! Exact homology of the slice complexes, comparisons and oracles.

pub mod chain;
pub mod chord_space;
pub mod engine;
pub mod group;
pub mod kunneth;
pub mod maps;
pub mod operations;
pub mod table;

pub use chain::{class_generates, homology_representatives, ChainComplex, ChainMap, HomologyValue, InducedMap};
pub use chord_space::{chord_space_dims, ChordRelations};
pub use engine::{HomologyEngine, ZhatStatus};
pub use group::HomologyGroup;
pub use kunneth::{chord_split, kunneth_compare, ChordSplitReport, KunnethReport};
pub use maps::{NamedMap, TensorBasisElement, TensorComplex};
pub use operations::OperationCheck;
pub use table::{HomologyEntry, HomologyTable};
