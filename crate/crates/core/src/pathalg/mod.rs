//! Presented path algebras over GF(2).
//!
//! A [`PresentedAlgebra`] is a quiver together with oriented rewriting rules
//! that strictly decrease a length-then-lexicographic term order, so normal
//! forms exist and (after a confluence check) give a basis in each bounded
//! degree. Elements are GF(2) combinations of normal-form paths; coefficients
//! are implicit, a path is present or absent.

mod algebra;
mod hom;
mod ideal;
mod parse;
mod quiver;

pub use algebra::{
    Alg, AlgebraElement, ConfluenceFailure, ConfluenceReport, CornerComparison, PresentedAlgebra,
    RewriteRule,
};
pub use hom::AlgebraHom;
pub use ideal::{ideal_membership, ideal_span, kernel_of_hom_bounded, Gf2Span};
pub use parse::{parse_path, parse_rule};
pub use quiver::{Arrow, ArrowId, Path, Quiver, VertexId};

use thiserror::Error;

use crate::grading::GradingError;

#[derive(Debug, Error)]
pub enum PathAlgError {
    #[error("elements belong to different algebras")]
    CrossAlgebra,
    #[error("invalid path: {0}")]
    BadPath(String),
    #[error("invalid rewrite rule: {0}")]
    BadRule(String),
    #[error("invalid presentation: {0}")]
    BadPresentation(String),
    #[error("invalid homomorphism: {0}")]
    BadHom(String),
    #[error("unsupported truncation: {0}")]
    UnsupportedTruncation(String),
    #[error("bounded computation is inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
}
