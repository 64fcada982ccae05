//! Generic DA-bimodule calculus over presented GF(2) path algebras.
//!
//! A bimodule is a finite generator set with an operation table. Operation
//! tables may contain parametric families: one arrow pattern with a power
//! slot stands for a whole `k >= k_min` family, which keeps the
//! infinitely-presented operation tables of the strands-type algebras finite.
//! All "for all inputs" verifications are bounded sweeps; per-arrow checks
//! (idempotent chaining, grading preservation) are exact because arrow data
//! is affine in the family parameter.

mod bimodule;
mod boxtensor;
mod homotopy;
mod iso;
pub mod morphism;
mod scalars;
mod structure;


pub use bimodule::{ConcreteArrow, DABimodule, DAGenerator, DeltaArrow, DeltaValue, GenId, ParamElem};
pub use boxtensor::{box_tensor_alg, box_tensor_da, DgBimodule};
pub use homotopy::{reduce, verify_homotopy_equivalence, HomotopyReport, ReduceOutcome, ReduceStep};
pub use iso::{find_isomorphism, IsoResult};
pub use morphism::{
    add, compose, identity_morphism, morphism_differential, verify_homomorphism, zero_morphism,
    DAMorphism, MorphArrow, MorphismReport,
};
pub use scalars::{induct_scalars, restrict_scalars};
pub use structure::{verify_structure, StructureFailure, StructureReport};

use thiserror::Error;

use crate::grading::GradingError;
use crate::pathalg::PathAlgError;

pub type Bimod = std::sync::Arc<DABimodule>;

#[derive(Debug, Error)]
pub enum DaError {
    #[error("invalid bimodule: {0}")]
    BadBimodule(String),
    #[error("invalid morphism: {0}")]
    BadMorphism(String),
    #[error("algebra pair mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("operation needs a concrete table: {0}")]
    NotConcrete(String),
    #[error("depth limit {0} exceeded")]
    DepthLimit(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// Bounds shared by the bounded verifications. Defaults follow the CLI
/// defaults: inputs sequences of length <= 3 over basis paths of length <= 4,
/// parametric families expanded to k <= 4, composition depth 16.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    pub max_inputs: usize,
    pub basis_len: usize,
    pub k_max: i64,
    pub depth_limit: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_inputs: 3, basis_len: 4, k_max: 4, depth_limit: 16 }
    }
}
