//! JSON interchange for algebras and bimodules.
//!
//! Paths serialize as display words: vertex notation `(0|1|0)` for
//! pipe-named quivers, arrow-name words `R1 L1` otherwise, `(j)` for
//! idempotents. Rewrite rules are `lhs -> rhs` strings with `0` for a
//! vanishing right side. Grading vectors are integer arrays scaled by 4.
//! Parametric arrow labels carry a base word, an optional loop word with an
//! exponent shift, and the index of the powered input slot.

use serde::{Deserialize, Serialize};

use crate::dastruct::{Bimod, DABimodule, DAGenerator, DaError, DeltaArrow, ParamElem};
use crate::grading::{GradingHom, GradingVec};
use crate::pathalg::{
    parse_path, parse_rule, Alg, Arrow, PathAlgError, PresentedAlgebra, Quiver,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowJson {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub grading: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub vertex_count: usize,
    pub grading_dim: usize,
    pub arrows: Vec<ArrowJson>,
    pub rules: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatJson {
    pub base: String,
    #[serde(rename = "loop", skip_serializing_if = "Option::is_none", default)]
    pub loop_word: Option<String>,
    #[serde(skip_serializing_if = "is_zero", default)]
    pub k_shift: i64,
}

fn is_zero(v: &i64) -> bool {
    *v == 0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimodArrowJson {
    pub from: String,
    pub to: String,
    pub out: PatJson,
    #[serde(rename = "in")]
    pub inputs: Vec<PatJson>,
    #[serde(skip_serializing_if = "is_zero", default)]
    pub k_min: i64,
    /// Index of the first powered input slot, when the arrow is a family.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_slot: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenJson {
    pub name: String,
    pub left_idem: usize,
    pub right_idem: usize,
    pub hom_degree: i64,
    pub grading: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleJson {
    pub name: String,
    pub out_algebra: AlgebraJson,
    pub in_algebra: AlgebraJson,
    pub out_hom: GradingHom,
    pub in_hom: GradingHom,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alexander_shift: Option<Vec<i64>>,
    pub generators: Vec<GenJson>,
    pub arrows: Vec<BimodArrowJson>,
}

pub fn algebra_to_json(alg: &Alg) -> AlgebraJson {
    AlgebraJson {
        name: alg.name.clone(),
        vertex_count: alg.vertex_count(),
        grading_dim: alg.grading_dim(),
        arrows: alg
            .quiver
            .arrows
            .iter()
            .map(|a| ArrowJson {
                name: a.name.clone(),
                source: a.source,
                target: a.target,
                grading: a.grading.scaled_coords().to_vec(),
            })
            .collect(),
        rules: alg
            .rules
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    r.lhs.display(&alg.quiver),
                    r.rhs.as_ref().map_or("0".into(), |p| p.display(&alg.quiver))
                )
            })
            .collect(),
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<Alg, PathAlgError> {
    let arrows = j
        .arrows
        .iter()
        .map(|a| Arrow {
            name: a.name.clone(),
            source: a.source,
            target: a.target,
            grading: GradingVec::from_scaled(a.grading.clone()),
        })
        .collect();
    let quiver = Quiver::new(j.vertex_count, arrows, j.grading_dim)?;
    let rules = j
        .rules
        .iter()
        .map(|r| parse_rule(&quiver, r))
        .collect::<Result<Vec<_>, _>>()?;
    PresentedAlgebra::new(j.name.clone(), quiver, rules)
}

fn pat_to_json(alg: &Alg, p: &ParamElem) -> PatJson {
    PatJson {
        base: p.base.display(&alg.quiver),
        loop_word: p.power.as_ref().map(|(lp, _)| lp.display(&alg.quiver)),
        k_shift: p.power.as_ref().map_or(0, |(_, s)| *s),
    }
}

fn pat_from_json(alg: &Alg, j: &PatJson) -> Result<ParamElem, PathAlgError> {
    let base = parse_path(&alg.quiver, &j.base)?;
    match &j.loop_word {
        None => Ok(ParamElem::fixed(base)),
        Some(w) => {
            let lp = parse_path(&alg.quiver, w)?;
            Ok(ParamElem::powered(base, lp, j.k_shift))
        }
    }
}

pub fn bimodule_to_json(m: &DABimodule) -> BimoduleJson {
    BimoduleJson {
        name: m.name.clone(),
        out_algebra: algebra_to_json(&m.out_alg),
        in_algebra: algebra_to_json(&m.in_alg),
        out_hom: m.out_hom.clone(),
        in_hom: m.in_hom.clone(),
        alexander_shift: m.alexander_shift.as_ref().map(|g| g.scaled_coords().to_vec()),
        generators: m
            .generators
            .iter()
            .map(|g| GenJson {
                name: g.name.clone(),
                left_idem: g.left_idem,
                right_idem: g.right_idem,
                hom_degree: g.hom_degree,
                grading: g.grading.scaled_coords().to_vec(),
            })
            .collect(),
        arrows: m
            .arrows
            .iter()
            .map(|a| BimodArrowJson {
                from: m.generators[a.source].name.clone(),
                to: m.generators[a.target].name.clone(),
                out: pat_to_json(&m.out_alg, &a.output),
                inputs: a.inputs.iter().map(|p| pat_to_json(&m.in_alg, p)).collect(),
                k_min: a.k_min,
                k_slot: a.inputs.iter().position(ParamElem::is_powered),
            })
            .collect(),
    }
}

/// Rebuilds a bimodule, re-running every construction-time validator
/// (idempotent chaining, grading preservation, generator references).
pub fn bimodule_from_json(j: &BimoduleJson) -> Result<Bimod, DaError> {
    let out_alg = algebra_from_json(&j.out_algebra)?;
    let in_alg = algebra_from_json(&j.in_algebra)?;
    let generators: Vec<DAGenerator> = j
        .generators
        .iter()
        .map(|g| DAGenerator {
            name: g.name.clone(),
            left_idem: g.left_idem,
            right_idem: g.right_idem,
            hom_degree: g.hom_degree,
            grading: GradingVec::from_scaled(g.grading.clone()),
        })
        .collect();
    let gen_id = |name: &str| -> Result<usize, DaError> {
        generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| DaError::BadBimodule(format!("unknown generator {name}")))
    };
    let mut arrows = Vec::new();
    for (n, a) in j.arrows.iter().enumerate() {
        let build = || -> Result<DeltaArrow, DaError> {
            Ok(DeltaArrow::family(
                gen_id(&a.from)?,
                gen_id(&a.to)?,
                pat_from_json(&out_alg, &a.out)?,
                a.inputs
                    .iter()
                    .map(|p| pat_from_json(&in_alg, p))
                    .collect::<Result<Vec<_>, _>>()?,
                a.k_min,
            ))
        };
        arrows.push(build().map_err(|e| {
            DaError::BadBimodule(format!("arrow #{n} ({} -> {}): {e}", a.from, a.to))
        })?);
    }
    let mut bm = DABimodule::new(
        j.name.clone(),
        out_alg,
        in_alg,
        generators,
        arrows,
        j.out_hom.clone(),
        j.in_hom.clone(),
    )?;
    bm.alexander_shift = j
        .alexander_shift
        .as_ref()
        .map(|v| GradingVec::from_scaled(v.clone()));
    Ok(std::sync::Arc::new(bm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_crossing, build_ks_algebra, build_osz_algebras, build_r, Sign};

    #[test]
    fn algebra_round_trip() {
        for alg in [
            build_ks_algebra(3).unwrap(),
            build_osz_algebras(3).unwrap().cl,
        ] {
            let j = algebra_to_json(&alg);
            let back = algebra_from_json(&j).unwrap();
            assert_eq!(*back, *alg);
            let text = serde_json::to_string(&j).unwrap();
            let j2: AlgebraJson = serde_json::from_str(&text).unwrap();
            assert_eq!(*algebra_from_json(&j2).unwrap(), *alg);
        }
    }

    #[test]
    fn bimodule_round_trip() {
        let a = build_ks_algebra(3).unwrap();
        let r = build_r(&a, 1, Sign::Positive).unwrap();
        let j = bimodule_to_json(&r);
        let back = bimodule_from_json(&j).unwrap();
        assert!(back.table_eq(&r));

        let algs = build_osz_algebras(3).unwrap();
        let p = build_crossing(&algs, 3, 1, Sign::Positive).unwrap();
        let j = bimodule_to_json(&p);
        // parametric families carry their powered slot
        assert!(j.arrows.iter().any(|a| a.k_slot.is_some()));
        let back = bimodule_from_json(&j).unwrap();
        assert!(back.table_eq(&p));
        assert_eq!(back.alexander_shift, p.alexander_shift);
    }

    #[test]
    fn broken_idempotent_chain_is_rejected_naming_the_arrow() {
        let a = build_ks_algebra(3).unwrap();
        let r = build_r(&a, 1, Sign::Positive).unwrap();
        let mut j = bimodule_to_json(&r);
        // retarget an arrow so its output no longer chains
        let bad = j
            .arrows
            .iter()
            .position(|x| x.from != x.to)
            .expect("some arrow");
        j.arrows[bad].to = j
            .generators
            .iter()
            .map(|g| g.name.clone())
            .find(|n| *n != j.arrows[bad].to && *n != j.arrows[bad].from)
            .unwrap();
        let err = bimodule_from_json(&j).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("->") || msg.contains("chain") || msg.contains("grading"), "{msg}");
    }
}
