//! The reduced models of the restricted zigzag-side crossing bimodules, and
//! the inclusion/projection/homotopy data realizing the equivalence.
//!
//! The reduced model keeps the passive row away from the crossing vertex
//! plus three (at the boundary index, two) module-part generators. Beyond
//! the surviving arrows, the one-step cancellation transfers one-input
//! arrows out of the loop-labelled generator and two-input arrows out of the
//! neighbouring passive generators; the tables below list them explicitly.

use std::sync::Arc;

use crate::dastruct::{
    restrict_scalars, Bimod, DABimodule, DAGenerator, DAMorphism, DeltaArrow, ParamElem,
};
use crate::dastruct::morphism::MorphArrow;
use crate::dastruct::DaError;
use crate::grading::{GradingHom, GradingVec};
use crate::pathalg::{Alg, Path};

use super::ks::{build_r, ks_arrow, ks_loop};
use super::osz::OszAlgebras;
use super::Sign;

fn cl_path(cl: &Alg, names: &[String]) -> Path {
    let ids = names
        .iter()
        .map(|n| cl.quiver.arrow_by_name(n).unwrap_or_else(|| panic!("no arrow {n}")))
        .collect();
    Path::from_arrows(&cl.quiver, ids).expect("arrows chain")
}

/// Names of the corner-algebra paths that hit the loop `(i|i-1|i)` under the
/// quotient map: the two strand loops at vertex `i` (one absent at the
/// boundary) and, at the boundary, the loop generator.
fn loop_preimages(m: usize, i: usize) -> Vec<Vec<String>> {
    let mut v = vec![vec![format!("L{i}"), format!("R{i}")]];
    if i + 1 < m {
        v.push(vec![format!("R{}", i + 1), format!("L{}", i + 1)]);
    } else {
        v.push(vec![format!("U{m}")]);
    }
    v
}

fn gen_name_idem(j: usize) -> String {
    format!("<({j})>")
}

fn gen_name_mod(a_alg: &Alg, i: usize, p: &Path) -> String {
    format!("<({i})x{}>", p.display(&a_alg.quiver))
}

/// Builds the reduced model over (zigzag algebra, bottom-graded corner).
pub fn build_reduced_model(
    algs: &OszAlgebras,
    m: usize,
    i: usize,
    sign: Sign,
) -> Result<Bimod, DaError> {
    if i == 0 || i >= m {
        return Err(DaError::BadBimodule(format!("index {i} out of 1..{m}")));
    }
    let a = &algs.a;
    let cl = &algs.cl_bot;
    let quiver = &a.quiver;

    let up = |x: usize| ks_arrow(a, x, x + 1);
    let down = |x: usize| ks_arrow(a, x, x - 1);
    let lp = ks_loop(a, i);
    let w_path = down(i);
    let e_path = (i + 1 < m).then(|| up(i));

    let mut gens = Vec::new();
    for j in 0..m {
        if j != i {
            gens.push(DAGenerator {
                name: gen_name_idem(j),
                left_idem: j,
                right_idem: j,
                hom_degree: 0,
                grading: GradingVec::zero(1),
            });
        }
    }
    let (hom, shift) = match sign {
        Sign::Positive => (1, 0),
        Sign::Negative => (-1, -4),
    };
    let mut module_paths: Vec<Path> = Vec::new();
    match sign {
        Sign::Positive => {
            module_paths.push(w_path.clone());
            if let Some(e) = &e_path {
                module_paths.push(e.clone());
            }
            module_paths.push(lp.clone());
        }
        Sign::Negative => {
            module_paths.push(Path::idempotent(i));
            module_paths.push(w_path.clone());
            if let Some(e) = &e_path {
                module_paths.push(e.clone());
            }
        }
    }
    for p in &module_paths {
        gens.push(DAGenerator {
            name: gen_name_mod(a, i, p),
            left_idem: i,
            right_idem: p.end(quiver),
            hom_degree: hom,
            grading: GradingVec::from_scaled(vec![p.grading(quiver).scaled_coords()[0] + shift]),
        });
    }
    let gid = |name: &str, gens: &[DAGenerator]| -> Option<usize> {
        gens.iter().position(|g| g.name == name)
    };
    let idg = |j: usize, gens: &[DAGenerator]| gid(&gen_name_idem(j), gens);
    let mg = |p: &Path, gens: &[DAGenerator]| gid(&gen_name_mod(a, i, p), gens);

    let mut arrows: Vec<DeltaArrow> = Vec::new();
    let push = |src: Option<usize>, tgt: Option<usize>, out: Path, ins: Vec<Path>,
                    arrows: &mut Vec<DeltaArrow>| {
        if let (Some(s), Some(t)) = (src, tgt) {
            arrows.push(DeltaArrow::concrete(
                s,
                t,
                ParamElem::fixed(out),
                ins.into_iter().map(ParamElem::fixed).collect(),
            ));
        }
    };

    // Passive row: every nonzero image of a corner basis path acts straight
    // through, away from the crossing vertex.
    for strand in 1..m {
        let r1 = vec![format!("R{strand}")];
        let l1 = vec![format!("L{strand}")];
        if strand != i && strand != i + 1 {
            push(
                idg(strand - 1, &gens),
                idg(strand, &gens),
                up(strand - 1),
                vec![cl_path(cl, &r1)],
                &mut arrows,
            );
            push(
                idg(strand, &gens),
                idg(strand - 1, &gens),
                down(strand),
                vec![cl_path(cl, &l1)],
                &mut arrows,
            );
        }
        // loop at the lower vertex of the strand: image (j|j-2-ish) exists
        // only away from vertex 0
        if strand >= 2 && strand - 1 != i {
            push(
                idg(strand - 1, &gens),
                idg(strand - 1, &gens),
                ks_loop(a, strand - 1),
                vec![cl_path(cl, &[format!("R{strand}"), format!("L{strand}")])],
                &mut arrows,
            );
        }
        if strand != i {
            push(
                idg(strand, &gens),
                idg(strand, &gens),
                ks_loop(a, strand),
                vec![cl_path(cl, &[format!("L{strand}"), format!("R{strand}")])],
                &mut arrows,
            );
        }
    }
    if m - 1 != i {
        push(
            idg(m - 1, &gens),
            idg(m - 1, &gens),
            ks_loop(a, m - 1),
            vec![cl_path(cl, &[format!("U{m}")])],
            &mut arrows,
        );
    }

    let r_i = cl_path(cl, &[format!("R{i}")]);
    let l_i = cl_path(cl, &[format!("L{i}")]);
    let rnext = (i + 1 < m).then(|| cl_path(cl, &[format!("R{}", i + 1)]));
    let lnext = (i + 1 < m).then(|| cl_path(cl, &[format!("L{}", i + 1)]));
    let loop_pre: Vec<Path> = loop_preimages(m, i)
        .iter()
        .map(|w| cl_path(cl, w))
        .collect();

    match sign {
        Sign::Positive => {
            let w = mg(&w_path, &gens);
            let e = e_path.as_ref().and_then(|p| mg(p, &gens));
            let n = mg(&lp, &gens);
            // differential part
            push(w, idg(i - 1, &gens), w_path.clone(), vec![], &mut arrows);
            if let Some(ep) = &e_path {
                push(e, idg(i + 1, &gens), ep.clone(), vec![], &mut arrows);
            }
            // module part right action
            push(w, n, Path::idempotent(i), vec![r_i.clone()], &mut arrows);
            if lnext.is_some() {
                push(e, n, Path::idempotent(i), vec![lnext.clone().unwrap()], &mut arrows);
            }
            // transferred one-input arrows out of the loop generator
            push(n, w, lp.clone(), vec![l_i.clone()], &mut arrows);
            if let Some(rn) = &rnext {
                push(n, e, lp.clone(), vec![rn.clone()], &mut arrows);
            }
            for c in &loop_pre {
                push(n, n, lp.clone(), vec![c.clone()], &mut arrows);
            }
            // transferred two-input arrows out of the passive neighbours
            push(idg(i - 1, &gens), w, up(i - 1), vec![r_i.clone(), l_i.clone()], &mut arrows);
            if let Some(rn) = &rnext {
                push(idg(i - 1, &gens), e, up(i - 1), vec![r_i.clone(), rn.clone()], &mut arrows);
            }
            for c in &loop_pre {
                push(idg(i - 1, &gens), n, up(i - 1), vec![r_i.clone(), c.clone()], &mut arrows);
            }
            if let Some(ln) = &lnext {
                push(idg(i + 1, &gens), w, down(i + 1), vec![ln.clone(), l_i.clone()], &mut arrows);
                if let Some(rn) = &rnext {
                    push(idg(i + 1, &gens), e, down(i + 1), vec![ln.clone(), rn.clone()], &mut arrows);
                }
                for c in &loop_pre {
                    push(idg(i + 1, &gens), n, down(i + 1), vec![ln.clone(), c.clone()], &mut arrows);
                }
            }
        }
        Sign::Negative => {
            let nq = mg(&Path::idempotent(i), &gens);
            let w = mg(&w_path, &gens);
            let e = e_path.as_ref().and_then(|p| mg(p, &gens));
            // differential part (into the module row)
            push(idg(i - 1, &gens), w, up(i - 1), vec![], &mut arrows);
            if e.is_some() {
                push(idg(i + 1, &gens), e, down(i + 1), vec![], &mut arrows);
            }
            // module part right action
            push(nq, w, Path::idempotent(i), vec![l_i.clone()], &mut arrows);
            if let Some(rn) = &rnext {
                push(nq, e, Path::idempotent(i), vec![rn.clone()], &mut arrows);
            }
            // transferred one-input arrows into the module corner
            push(w, nq, lp.clone(), vec![r_i.clone()], &mut arrows);
            if let Some(ln) = &lnext {
                push(e, nq, lp.clone(), vec![ln.clone()], &mut arrows);
            }
            for c in &loop_pre {
                push(nq, nq, lp.clone(), vec![c.clone()], &mut arrows);
            }
            // transferred two-input arrows onto the passive row
            push(w, idg(i - 1, &gens), down(i), vec![r_i.clone(), l_i.clone()], &mut arrows);
            if let Some(rn) = &rnext {
                push(w, idg(i + 1, &gens), up(i), vec![r_i.clone(), rn.clone()], &mut arrows);
            }
            if let Some(ln) = &lnext {
                push(e, idg(i - 1, &gens), down(i), vec![ln.clone(), l_i.clone()], &mut arrows);
                if let Some(rn) = &rnext {
                    push(e, idg(i + 1, &gens), up(i), vec![ln.clone(), rn.clone()], &mut arrows);
                }
            }
            for c in &loop_pre {
                push(nq, idg(i - 1, &gens), down(i), vec![c.clone(), l_i.clone()], &mut arrows);
                if let Some(rn) = &rnext {
                    push(nq, idg(i + 1, &gens), up(i), vec![c.clone(), rn.clone()], &mut arrows);
                }
            }
        }
    }

    Ok(Arc::new(DABimodule::new(
        format!(
            "Z{}[{i};m={m}]",
            match sign {
                Sign::Positive => "",
                Sign::Negative => "'",
            }
        ),
        a.clone(),
        cl.clone(),
        gens,
        arrows,
        GradingHom::identity(1),
        GradingHom::identity(1),
    )?))
}

pub struct LemmaWitnesses {
    pub rest: Bimod,
    pub model: Bimod,
    /// inclusion-side, model -> rest
    pub f: DAMorphism,
    /// projection-side, rest -> model
    pub g: DAMorphism,
    /// homotopy on rest
    pub t: DAMorphism,
}

/// The explicit equivalence between the restricted crossing bimodule and its
/// reduced model: inclusion and projection, one of which carries a single
/// correction term, and the one-generator homotopy.
pub fn lemma_witnesses(
    algs: &OszAlgebras,
    m: usize,
    i: usize,
    sign: Sign,
) -> Result<LemmaWitnesses, DaError> {
    let a = &algs.a;
    let r = build_r(a, i, sign)?;
    let rest = restrict_scalars(&algs.phi, &r)?;
    let model = build_reduced_model(algs, m, i, sign)?;

    let lp = ks_loop(a, i);
    let loop_name = gen_name_mod(a, i, &lp);
    let unit_name = gen_name_mod(a, i, &Path::idempotent(i));
    let idem_i = gen_name_idem(i);

    let rest_id = |n: &str| rest.gen_id(n).unwrap_or_else(|| panic!("rest generator {n}"));
    let model_id = |n: &str| model.gen_id(n).unwrap_or_else(|| panic!("model generator {n}"));

    let mut f_arrows = Vec::new();
    for g in &model.generators {
        f_arrows.push(MorphArrow {
            source: model_id(&g.name),
            target: rest_id(&g.name),
            output: ParamElem::fixed(Path::idempotent(g.left_idem)),
            inputs: vec![],
            k_min: 0,
        });
    }
    let mut g_arrows = Vec::new();
    for g in &rest.generators {
        if let Some(src) = model.gen_id(&g.name) {
            let _ = src;
            g_arrows.push(MorphArrow {
                source: rest_id(&g.name),
                target: model_id(&g.name),
                output: ParamElem::fixed(Path::idempotent(g.left_idem)),
                inputs: vec![],
                k_min: 0,
            });
        }
    }
    let t_arrows;
    match sign {
        Sign::Positive => {
            // extra term of the inclusion on the loop generator
            f_arrows.push(MorphArrow {
                source: model_id(&loop_name),
                target: rest_id(&unit_name),
                output: ParamElem::fixed(lp.clone()),
                inputs: vec![],
                k_min: 0,
            });
            t_arrows = vec![MorphArrow {
                source: rest_id(&idem_i),
                target: rest_id(&unit_name),
                output: ParamElem::fixed(Path::idempotent(i)),
                inputs: vec![],
                k_min: 0,
            }];
        }
        Sign::Negative => {
            // extra term of the projection on the loop generator
            g_arrows.push(MorphArrow {
                source: rest_id(&loop_name),
                target: model_id(&unit_name),
                output: ParamElem::fixed(lp.clone()),
                inputs: vec![],
                k_min: 0,
            });
            t_arrows = vec![MorphArrow {
                source: rest_id(&loop_name),
                target: rest_id(&idem_i),
                output: ParamElem::fixed(Path::idempotent(i)),
                inputs: vec![],
                k_min: 0,
            }];
        }
    }
    let f = DAMorphism::new("f", model.clone(), rest.clone(), 0, f_arrows)?;
    let g = DAMorphism::new("g", rest.clone(), model.clone(), 0, g_arrows)?;
    let t = DAMorphism::new("T", rest.clone(), rest.clone(), 1, t_arrows)?;
    Ok(LemmaWitnesses { rest, model, f, g, t })
}
