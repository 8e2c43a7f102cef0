//! Vertex sets, simplicial posets and characteristic data.

mod characteristic;
mod poset;

use thiserror::Error;

pub use characteristic::{CharacteristicData, ValidationReport, Violation};
pub use poset::{mask_indices, mask_of, SimplicialPoset, VertexMask, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("duplicate vertex identifier {0:?}")]
    DuplicateVertex(String),
    #[error("at most 64 vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("ghost vertex {0:?} appears in a simplex")]
    GhostInSimplex(String),
    #[error("malformed poset: {0}")]
    MalformedPoset(String),
    #[error("lower interval of {0} is not boolean")]
    NotBoolean(String),
    #[error("operation requires a simplicial complex")]
    NotAComplex,
    #[error("characteristic matrix has {columns} columns for {vertices} vertices")]
    ChiShape { vertices: usize, columns: usize },
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("rays of cone {0:?} are linearly dependent")]
    DependentCone(Vec<usize>),
    #[error("invalid characteristic data: {0}")]
    Invalid(ValidationReport),
}
