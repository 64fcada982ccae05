//! The explicit mutually-inverse isomorphisms between the reduced model of
//! the restricted zigzag-side crossing bimodule and the induced strands-side
//! crossing bimodule: the generator-matching maps plus the one-input
//! correction terms on the passive neighbours of the crossing.

use crate::dastruct::morphism::MorphArrow;
use crate::dastruct::{induct_scalars, Bimod, DAMorphism, DaError, ParamElem};
use crate::pathalg::{Alg, Path};

use super::crossing::collapsed_crossing;
use super::ks::{ks_arrow, ks_loop};
use super::osz::OszAlgebras;
use super::reduced::build_reduced_model;
use super::Sign;

pub struct TheoremWitnesses {
    /// Reduced model of the restricted bimodule.
    pub model: Bimod,
    /// Induced strands-side crossing bimodule (bottom gradings).
    pub induced: Bimod,
    /// Generator-matching map, model -> induced.
    pub iota: DAMorphism,
    /// One-input correction, model -> induced.
    pub h: DAMorphism,
    /// Generator-matching map, induced -> model.
    pub iota_prime: DAMorphism,
    /// One-input correction, induced -> model.
    pub h_prime: DAMorphism,
}

fn cl_word(cl: &Alg, names: &[String]) -> Path {
    let ids = names
        .iter()
        .map(|n| cl.quiver.arrow_by_name(n).unwrap_or_else(|| panic!("no arrow {n}")))
        .collect();
    Path::from_arrows(&cl.quiver, ids).expect("arrows chain")
}

/// The generator of the model matched with a crossing generator, by name.
fn matching(model_name: &str, a: &Alg, i: usize, sign: Sign) -> Option<String> {
    let quiver = &a.quiver;
    let disp = |p: &Path| p.display(quiver);
    if let Some(j) = model_name.strip_prefix("<(").and_then(|s| s.strip_suffix(")>")) {
        if j.chars().all(|c| c.is_ascii_digit()) {
            return Some(format!("S{j}"));
        }
    }
    let inner = model_name.strip_prefix(&format!("<({i})x"))?.strip_suffix('>')?;
    let w = disp(&ks_arrow(a, i, i - 1));
    let e = (i + 1 < quiver.vertex_count).then(|| disp(&ks_arrow(a, i, i + 1)));
    let lp = disp(&ks_loop(a, i));
    let unit = disp(&Path::idempotent(i));
    match sign {
        Sign::Positive => {
            if inner == w {
                Some(format!("_{i}W{}", i - 1))
            } else if Some(inner.to_string()) == e {
                Some(format!("_{i}E{}", i + 1))
            } else if inner == lp {
                Some(format!("_{i}N{i}"))
            } else {
                None
            }
        }
        Sign::Negative => {
            if inner == w {
                Some(format!("_{i}W{}", i - 1))
            } else if Some(inner.to_string()) == e {
                Some(format!("_{i}E{}", i + 1))
            } else if inner == unit {
                Some(format!("_{i}N{i}"))
            } else {
                None
            }
        }
    }
}

pub fn build_theorem_witnesses(
    algs: &OszAlgebras,
    m: usize,
    i: usize,
    sign: Sign,
) -> Result<TheoremWitnesses, DaError> {
    let a = &algs.a;
    let model = build_reduced_model(algs, m, i, sign)?;
    let induced = induct_scalars(&algs.phi, &collapsed_crossing(algs, m, i, sign)?)?;

    let mid = |n: &str| model.gen_id(n).unwrap_or_else(|| panic!("model generator {n}"));
    let iid = |n: &str| induced.gen_id(n).unwrap_or_else(|| panic!("induced generator {n}"));

    let mut iota_arrows = Vec::new();
    let mut iota_prime_arrows = Vec::new();
    for g in &model.generators {
        let other = matching(&g.name, a, i, sign)
            .unwrap_or_else(|| panic!("no crossing match for {}", g.name));
        let unit = ParamElem::fixed(Path::idempotent(g.left_idem));
        iota_arrows.push(MorphArrow {
            source: mid(&g.name),
            target: iid(&other),
            output: unit.clone(),
            inputs: vec![],
            k_min: 0,
        });
        iota_prime_arrows.push(MorphArrow {
            source: iid(&other),
            target: mid(&g.name),
            output: unit,
            inputs: vec![],
            k_min: 0,
        });
    }
    let iota = DAMorphism::new("iota", model.clone(), induced.clone(), 0, iota_arrows)?;
    let iota_prime =
        DAMorphism::new("iota'", induced.clone(), model.clone(), 0, iota_prime_arrows)?;

    let cl = &algs.cl_bot;
    let s = |x: usize| format!("S{x}");
    let w_name = format!("_{i}W{}", i - 1);
    let e_name = format!("_{i}E{}", i + 1);
    let n_name = format!("_{i}N{i}");
    let idem = |j: usize| format!("<({j})>");
    let modgen = |p: &Path| format!("<({i})x{}>", p.display(&a.quiver));

    let u_lo = cl_word(cl, &[format!("R{i}"), format!("L{i}")]);
    let ru_lo = cl_word(cl, &[format!("R{i}"), format!("L{i}"), format!("R{i}")]);
    let next = (i + 1 < m).then(|| {
        (
            cl_word(cl, &[format!("L{}", i + 1), format!("R{}", i + 1)]),
            cl_word(cl, &[format!("L{}", i + 1), format!("R{}", i + 1), format!("L{}", i + 1)]),
        )
    });

    let mut h_arrows = Vec::new();
    let mut hp_arrows = Vec::new();
    match sign {
        Sign::Positive => {
            // corrections out of the passive neighbours of the crossing
            h_arrows.push(marrow(
                mid(&idem(i - 1)),
                iid(&w_name),
                ks_arrow(a, i - 1, i),
                vec![u_lo.clone()],
            ));
            h_arrows.push(marrow(
                mid(&idem(i - 1)),
                iid(&n_name),
                ks_arrow(a, i - 1, i),
                vec![ru_lo.clone()],
            ));
            hp_arrows.push(marrow(
                iid(&s(i - 1)),
                mid(&modgen(&ks_arrow(a, i, i - 1))),
                ks_arrow(a, i - 1, i),
                vec![u_lo.clone()],
            ));
            hp_arrows.push(marrow(
                iid(&s(i - 1)),
                mid(&modgen(&ks_loop(a, i))),
                ks_arrow(a, i - 1, i),
                vec![ru_lo.clone()],
            ));
            if let Some((u_hi, lu_hi)) = &next {
                h_arrows.push(marrow(
                    mid(&idem(i + 1)),
                    iid(&e_name),
                    ks_arrow(a, i + 1, i),
                    vec![u_hi.clone()],
                ));
                h_arrows.push(marrow(
                    mid(&idem(i + 1)),
                    iid(&n_name),
                    ks_arrow(a, i + 1, i),
                    vec![lu_hi.clone()],
                ));
                hp_arrows.push(marrow(
                    iid(&s(i + 1)),
                    mid(&modgen(&ks_arrow(a, i, i + 1))),
                    ks_arrow(a, i + 1, i),
                    vec![u_hi.clone()],
                ));
                hp_arrows.push(marrow(
                    iid(&s(i + 1)),
                    mid(&modgen(&ks_loop(a, i))),
                    ks_arrow(a, i + 1, i),
                    vec![lu_hi.clone()],
                ));
            }
        }
        Sign::Negative => {
            // corrections out of the module corner onto the passive row
            let lu_lo = cl_word(cl, &[format!("L{i}"), format!("R{i}"), format!("L{i}")]);
            h_arrows.push(marrow(
                mid(&modgen(&ks_arrow(a, i, i - 1))),
                iid(&s(i - 1)),
                ks_arrow(a, i, i - 1),
                vec![u_lo.clone()],
            ));
            h_arrows.push(marrow(
                mid(&modgen(&Path::idempotent(i))),
                iid(&s(i - 1)),
                ks_arrow(a, i, i - 1),
                vec![lu_lo.clone()],
            ));
            hp_arrows.push(marrow(
                iid(&w_name),
                mid(&idem(i - 1)),
                ks_arrow(a, i, i - 1),
                vec![u_lo.clone()],
            ));
            hp_arrows.push(marrow(
                iid(&n_name),
                mid(&idem(i - 1)),
                ks_arrow(a, i, i - 1),
                vec![lu_lo.clone()],
            ));
            if let Some((u_hi, _)) = &next {
                let ru_hi = cl_word(
                    cl,
                    &[format!("R{}", i + 1), format!("L{}", i + 1), format!("R{}", i + 1)],
                );
                h_arrows.push(marrow(
                    mid(&modgen(&ks_arrow(a, i, i + 1))),
                    iid(&s(i + 1)),
                    ks_arrow(a, i, i + 1),
                    vec![u_hi.clone()],
                ));
                h_arrows.push(marrow(
                    mid(&modgen(&Path::idempotent(i))),
                    iid(&s(i + 1)),
                    ks_arrow(a, i, i + 1),
                    vec![ru_hi.clone()],
                ));
                hp_arrows.push(marrow(
                    iid(&e_name),
                    mid(&idem(i + 1)),
                    ks_arrow(a, i, i + 1),
                    vec![u_hi.clone()],
                ));
                hp_arrows.push(marrow(
                    iid(&n_name),
                    mid(&idem(i + 1)),
                    ks_arrow(a, i, i + 1),
                    vec![ru_hi.clone()],
                ));
            }
        }
    }
    let h = DAMorphism::new("h", model.clone(), induced.clone(), 0, h_arrows)?;
    let h_prime = DAMorphism::new("h'", induced.clone(), model.clone(), 0, hp_arrows)?;
    Ok(TheoremWitnesses { model, induced, iota, h, iota_prime, h_prime })
}

fn marrow(source: usize, target: usize, output: Path, inputs: Vec<Path>) -> MorphArrow {
    MorphArrow {
        source,
        target,
        output: ParamElem::fixed(output),
        inputs: inputs.into_iter().map(ParamElem::fixed).collect(),
        k_min: 0,
    }
}
