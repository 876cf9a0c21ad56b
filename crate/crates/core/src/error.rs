use thiserror::Error;

use crate::budget::SearchStats;
use crate::vertex_set::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a circulant graph needs at least one vertex")]
    EmptyCirculant,
    #[error("a complete graph needs at least one vertex")]
    EmptyComplete,
    #[error("expansion vector has length {got} but the graph has {expected} vertices")]
    ExpansionLength { expected: usize, got: usize },
    #[error("expansion multiplicity at vertex {0} is zero")]
    ZeroMultiplicity(usize),
    #[error("vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0}-{0} is a loop")]
    Loop(usize),
    #[error("{got} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { got: usize, max: usize },
    #[error("{0:?} is not a face of the complex")]
    NotAFace(VertexSet),
    #[error("complex is not pure")]
    NotPure,
    #[error("search budget exhausted after {} nodes", .0.nodes)]
    Timeout(SearchStats),
    #[error("face enumeration exceeds the cap of {cap} faces")]
    FaceLimit { cap: usize },
    #[error("homology of the void complex is undefined")]
    VoidComplex,
    #[error("torsion coefficient does not fit in 64 bits")]
    TorsionOverflow,
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
