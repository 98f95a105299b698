//! Equivariant cohomology of moment-angle complexes `Z_K` under coordinate
//! subtori `T_I`, computed exactly over the integers from Koszul cochain
//! models, with freeness and formality criteria.

pub mod equivariant;
pub mod error;
pub mod format;
pub mod koszul;
pub mod linalg;
pub mod oracle;
pub mod simplicial;

pub use equivariant::{
    default_truncation, equivariant_cohomology, equivariant_cohomology_in_model, CohomologyClass, CohomologyGroup,
    Engine, EquivariantCohomology, FreenessStatus, FreenessVerdict, ResourceLimits, TorsionWitness,
};
pub use error::{Error, Result};
pub use koszul::{Cochain, KoszulAlgebra, KoszulMonomial, Model, MultiDegree};
pub use linalg::{smith_normal_form, IntMatrix, SmithNormalForm};
pub use simplicial::{GraphClass, JoinDecomposition, SimplicialComplex, VertexSubset, MAX_VERTICES};
