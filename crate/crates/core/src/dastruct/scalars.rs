//! Restriction and induction of scalars along an algebra homomorphism.
//!
//! Restriction pulls the right (input) action back: inputs now range over the
//! source of the homomorphism. Induction pushes the left (output) action
//! forward: outputs map through the homomorphism and arrows whose images
//! collide cancel over GF(2).

use std::collections::BTreeMap;

use crate::pathalg::{AlgebraHom, Path};

use super::bimodule::{DABimodule, DAGenerator, DeltaArrow, ParamElem};
use super::{Bimod, DaError};

fn inverse_vertex_map(phi: &AlgebraHom) -> Result<Vec<usize>, DaError> {
    let n_src = phi.source.vertex_count();
    let n_tgt = phi.target.vertex_count();
    let mut inv = vec![usize::MAX; n_tgt];
    for (v, &w) in phi.vertex_map.iter().enumerate() {
        if inv[w] != usize::MAX {
            return Err(DaError::Unsupported("vertex map is not injective".into()));
        }
        inv[w] = v;
    }
    if n_src != n_tgt || inv.iter().any(|&v| v == usize::MAX) {
        return Err(DaError::Unsupported("vertex map is not bijective".into()));
    }
    Ok(inv)
}

/// `Rest_phi M`: the input algebra of `M` must be the target of `phi`. The
/// new table has one arrow per tuple of preimage inputs; identity pullback
/// returns the bimodule unchanged.
pub fn restrict_scalars(phi: &AlgebraHom, m: &Bimod) -> Result<Bimod, DaError> {
    if *m.in_alg != *phi.target {
        return Err(DaError::AlgebraMismatch(
            "restriction needs M's input algebra to be the hom target".into(),
        ));
    }
    if phi.is_identity() {
        return Ok(m.clone());
    }
    if !m.is_concrete() {
        return Err(DaError::NotConcrete(format!("restrict_scalars({})", m.name)));
    }
    let inv = inverse_vertex_map(phi)?;
    // Arrow images all have positive length, so any source path longer than
    // the longest target basis path maps to zero.
    for img in &phi.arrow_images {
        if img.terms().any(Path::is_empty) {
            return Err(DaError::Unsupported("arrow image with an idempotent term".into()));
        }
    }
    let target_max = phi
        .target
        .finite_basis_max_len(64)
        .ok_or_else(|| DaError::Unsupported("restriction target is not finite-dimensional".into()))?;
    // preimage table: target basis path -> source basis paths hitting it
    let mut preimages: BTreeMap<Path, Vec<Path>> = BTreeMap::new();
    for c in phi.source.basis(target_max) {
        if c.is_empty() {
            continue;
        }
        let img = phi.apply_path(&c)?;
        for t in img.terms() {
            preimages.entry(t.clone()).or_default().push(c.clone());
        }
    }

    let gens: Vec<DAGenerator> = m
        .generators
        .iter()
        .map(|g| DAGenerator { right_idem: inv[g.right_idem], ..g.clone() })
        .collect();

    let mut arrows = Vec::new();
    for a in &m.arrows {
        let mut tuples: Vec<Vec<Path>> = vec![vec![]];
        for pat in &a.inputs {
            let opts = preimages.get(&pat.base).cloned().unwrap_or_default();
            let mut next = Vec::new();
            for t in &tuples {
                for c in &opts {
                    if t.last().map_or(
                        inv[m.generators[a.source].right_idem] == c.start(),
                        |prev: &Path| prev.end(&phi.source.quiver) == c.start(),
                    ) {
                        let mut t2 = t.clone();
                        t2.push(c.clone());
                        next.push(t2);
                    }
                }
            }
            tuples = next;
        }
        for t in tuples {
            arrows.push(DeltaArrow::concrete(
                a.source,
                a.target,
                a.output.clone(),
                t.into_iter().map(ParamElem::fixed).collect(),
            ));
        }
    }
    let new_in_hom = m.in_hom.compose(&phi.grading_hom)?;
    Ok(std::sync::Arc::new(DABimodule::new(
        format!("Rest[{}]", m.name),
        m.out_alg.clone(),
        phi.source.clone(),
        gens,
        arrows,
        m.out_hom.clone(),
        new_in_hom,
    )?))
}

/// `Induct_phi M`: the output algebra of `M` must be the source of `phi`.
/// Identity pushforward returns the bimodule unchanged. Powered output
/// families concretize: images of high powers die in the finite-dimensional
/// target, and vanishing is monotone in the power.
pub fn induct_scalars(phi: &AlgebraHom, m: &Bimod) -> Result<Bimod, DaError> {
    if *m.out_alg != *phi.source {
        return Err(DaError::AlgebraMismatch(
            "induction needs M's output algebra to be the hom source".into(),
        ));
    }
    if phi.is_identity() {
        return Ok(m.clone());
    }
    if !phi.grading_hom.is_identity() {
        return Err(DaError::Unsupported(
            "induction with a nontrivial grading hom on the algebra map".into(),
        ));
    }
    let target_max = phi
        .target
        .finite_basis_max_len(64)
        .ok_or_else(|| DaError::Unsupported("induction target is not finite-dimensional".into()))?;

    let gens: Vec<DAGenerator> = m
        .generators
        .iter()
        .map(|g| DAGenerator { left_idem: phi.vertex_map[g.left_idem], ..g.clone() })
        .collect();

    let mut arrows = Vec::new();
    for a in &m.arrows {
        if a.output.is_powered() {
            // Expand k while the pushed output survives. Vanishing is
            // monotone in the power (the image of the next power is the
            // image of this one times the loop image), and a surviving image
            // needs power at most the longest target basis path.
            let mut k = a.k_min;
            while k <= a.k_min + target_max as i64 + 2 {
                let Some(out) = a.output.value(&m.out_alg, k) else { break };
                let img = phi.apply_path(&out)?;
                if img.is_zero() {
                    break;
                }
                let inputs: Option<Vec<Path>> =
                    a.inputs.iter().map(|p| p.value(&m.in_alg, k)).collect();
                if let Some(inputs) = inputs {
                    for t in img.terms() {
                        arrows.push(DeltaArrow::concrete(
                            a.source,
                            a.target,
                            ParamElem::fixed(t.clone()),
                            inputs.iter().cloned().map(ParamElem::fixed).collect(),
                        ));
                    }
                }
                k += 1;
            }
        } else {
            let img = phi.apply_path(&a.output.base)?;
            for t in img.terms() {
                arrows.push(DeltaArrow::family(
                    a.source,
                    a.target,
                    ParamElem::fixed(t.clone()),
                    a.inputs.clone(),
                    a.k_min,
                ));
            }
        }
    }
    Ok(std::sync::Arc::new(DABimodule::new(
        format!("Ind[{}]", m.name),
        phi.target.clone(),
        m.in_alg.clone(),
        gens,
        arrows,
        m.out_hom.clone(),
        m.in_hom.clone(),
    )?))
}
