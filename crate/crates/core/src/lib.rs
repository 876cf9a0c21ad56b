//! Exact combinatorics for independence complexes of graphs.
//!
//! The crate builds finite simple graphs (circulants, lexicographical
//! products, expansions), turns them into independence complexes, and decides
//! purity, shellability, vertex decomposability and Cohen–Macaulayness. Every
//! positive answer from a checker carries a certificate that an independent
//! verifier in the same module can replay.

pub mod budget;
pub mod complex;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod homology;
pub mod shelling;
pub mod vertex_set;

pub use budget::{Budget, CheckOutcome, SearchOptions, SearchStats, Verdict};
pub use complex::{alpha, independence_complex, Complex, Face};
pub use decomposition::{vertex_decomposition, verify_shed_tree, ShedTree};
pub use error::{Error, Result};
pub use graph::{CirculantSpec, ExpansionVector, Graph};
pub use homology::{
    boundary_matrices, is_cohen_macaulay, reduced_homology, BoundaryMatrix, HomologyOptions,
    HomologyProfile, DEFAULT_FACE_CAP,
};
pub use shelling::{shelling, verify_shelling, ShellingCertificate};
pub use vertex_set::VertexSet;
