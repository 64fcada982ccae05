//! Exact symbolic computation for presented quiver path algebras over GF(2)
//! together with a calculus of DA bimodules: structure-equation verification,
//! box tensor products, morphisms with differential and composition,
//! cancellation-based reduction, and restriction/induction of scalars along
//! algebra homomorphisms.
//!
//! The built-in constructions cover a family of zigzag-type quiver algebras,
//! an infinite-dimensional strands-type algebra with central elements `U_i`,
//! the quotient map `phi` between them, and the crossing bimodules on both
//! sides, so that the isomorphism `ker phi = <U_1 + ... + U_m>` and the
//! homotopy equivalences between the two crossing-bimodule families can be
//! verified mechanically. See the `cli` module or the `quiver-da` binary for
//! the runnable checks.

pub mod cli;
pub mod constructions;
pub mod dastruct;
pub mod grading;
pub mod pathalg;
pub mod schema;

pub use grading::{GradingHom, GradingVec};
pub use pathalg::{AlgebraElement, AlgebraHom, Path, PresentedAlgebra, Quiver};
