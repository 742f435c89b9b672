//! Partitioned multibraces and exact checks of homotopy algebra identities.

pub mod algebra;
pub mod braces;
pub mod bv;
pub mod coalgebra;
pub mod hochschild;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod partitions;
pub mod scalar;
pub mod sign;
pub mod space;

pub use maps::{MapKind, MegaMap, PartitionedMap};
pub use partitions::{Partition, SubstitutionPattern};
pub use scalar::Scalar;
pub use sign::BiDegree;
pub use space::{BasisElement, GradedSpace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate basis element `{0}`")]
    DuplicateBasis(String),
    #[error("vector {0} is not contained in the ambient span")]
    NotContained(usize),
    #[error("a partition needs at least one slot")]
    EmptyPartition,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("map {map} is not homogeneous: {detail}")]
    NotHomogeneous { map: String, detail: String },
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
