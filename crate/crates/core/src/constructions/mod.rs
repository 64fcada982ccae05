//! Builders for the named algebras, homomorphisms, bimodules, and morphism
//! witnesses the verification pipelines consume.

mod crossing;
mod crossing_data;
mod ks;
mod osz;
mod reduced;
mod witnesses;

#[cfg(test)]
mod tests;

pub use crossing::{build_crossing, collapsed_crossing, identity_bimodule_cl, Sign};
pub use ks::{build_ks_algebra, build_r, gamma_terms, identity_bimodule_ks, ks_arrow, ks_loop};
pub use osz::{build_osz_algebras, sum_of_u, u_element, OszAlgebras};
pub use reduced::{build_reduced_model, lemma_witnesses, LemmaWitnesses};
pub use witnesses::{build_theorem_witnesses, TheoremWitnesses};
