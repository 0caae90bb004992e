//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("malformed simplex {0:?}: vertices within a simplex must be distinct")]
    MalformedSimplex(Vec<i64>),

    #[error("simplex {0:?} is not in the complex")]
    MissingSimplex(Vec<i64>),

    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),

    #[error("operation is undefined on the empty complex")]
    EmptyComplex,

    #[error("complex is not principal: {simplex:?} is not a face of any {dim}-simplex")]
    NotPrincipal { simplex: Vec<i64>, dim: usize },

    #[error("permutation {0:?} is not V-shaped, so it corresponds to no perversity")]
    NotVShaped(Vec<usize>),

    #[error("cannot reduce a permutation of a single point")]
    CannotReduce,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid perversity: {0}")]
    InvalidPerversity(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("{0:?} is not a face of {1:?}")]
    NotAFace(Vec<i64>, Vec<i64>),

    #[error("size limit exceeded: the subdivision would have {count} simplexes (limit {limit})")]
    SizeLimit { count: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, TopologyError>;
