//! The zigzag-type quiver algebra on a line of `m` vertices and the two
//! crossing bimodules over it.
//!
//! Arrows are ordered with all leftward (degree-1) arrows before all
//! rightward (degree-0) arrows, so the loop relation orients as
//! `(i|i+1|i) -> (i|i-1|i)` under the length-then-lex term order:
//! left-leaning loops are the normal forms.

use std::sync::Arc;

use crate::dastruct::{Bimod, DABimodule, DAGenerator, DaError, DeltaArrow, ParamElem};
use crate::grading::{GradingHom, GradingVec};
use crate::pathalg::{
    Alg, Arrow, Path, PathAlgError, PresentedAlgebra, Quiver, RewriteRule,
};

use super::Sign;

/// Quotient of the path algebra of `(0) <-> (1) <-> ... <-> (m-1)` by the
/// two-step relations in one direction, the loop relation, and the vanishing
/// loop at vertex 0. Rightward arrows have degree 0, leftward degree 1.
pub fn build_ks_algebra(m: usize) -> Result<Alg, PathAlgError> {
    if m < 2 {
        return Err(PathAlgError::BadPresentation(format!("m = {m} < 2")));
    }
    let mut arrows = Vec::new();
    // leftward (j -> j-1), ids 0..m-2
    for j in 1..m {
        arrows.push(Arrow {
            name: format!("({j}|{})", j - 1),
            source: j,
            target: j - 1,
            grading: GradingVec::from_scaled(vec![4]),
        });
    }
    // rightward (i -> i+1), ids m-1..2m-3
    for i in 0..m - 1 {
        arrows.push(Arrow {
            name: format!("({i}|{})", i + 1),
            source: i,
            target: i + 1,
            grading: GradingVec::from_scaled(vec![0]),
        });
    }
    let quiver = Quiver::new(m, arrows, 1)?;
    let down = |j: usize| j - 1; // arrow j -> j-1
    let up = |i: usize| m - 1 + i; // arrow i -> i+1

    let mut rules = Vec::new();
    for i in 1..m - 1 {
        rules.push(RewriteRule {
            lhs: Path::from_arrows(&quiver, vec![up(i - 1), up(i)])?,
            rhs: None,
        });
        rules.push(RewriteRule {
            lhs: Path::from_arrows(&quiver, vec![down(i + 1), down(i)])?,
            rhs: None,
        });
        rules.push(RewriteRule {
            lhs: Path::from_arrows(&quiver, vec![up(i), down(i + 1)])?,
            rhs: Some(Path::from_arrows(&quiver, vec![down(i), up(i - 1)])?),
        });
    }
    rules.push(RewriteRule {
        lhs: Path::from_arrows(&quiver, vec![up(0), down(1)])?,
        rhs: None,
    });
    PresentedAlgebra::new(format!("A{}", m - 1), quiver, rules)
}

/// The arrow `(a|b)` of the zigzag algebra as a path (|a-b| = 1).
pub fn ks_arrow(alg: &Alg, a: usize, b: usize) -> Path {
    let id = alg
        .quiver
        .arrow_between(a, b)
        .unwrap_or_else(|| panic!("no arrow ({a}|{b})"));
    Path::from_arrows(&alg.quiver, vec![id]).expect("arrow is a path")
}

/// The normal-form loop `(i|i-1|i)` at vertex `i >= 1`.
pub fn ks_loop(alg: &Alg, i: usize) -> Path {
    ks_arrow(alg, i, i - 1)
        .compose(&alg.quiver, &ks_arrow(alg, i - 1, i))
        .expect("loop chains")
}

/// The four terms of the coevaluation-style map at index `i`: pairs
/// `(left factor, right factor)` of a sum of elementary tensors in
/// `P_i (x) _iP {-1}`.
pub fn gamma_terms(alg: &Alg, i: usize) -> Vec<(Path, Path)> {
    let m = alg.vertex_count();
    let mut terms = vec![
        (ks_arrow(alg, i - 1, i), ks_arrow(alg, i, i - 1)),
        (Path::idempotent(i), ks_loop(alg, i)),
        (ks_loop(alg, i), Path::idempotent(i)),
    ];
    if i + 1 < m {
        terms.insert(1, (ks_arrow(alg, i + 1, i), ks_arrow(alg, i, i + 1)));
    }
    terms
}

fn right_module_basis(alg: &Alg, i: usize) -> Vec<Path> {
    // Paths starting at vertex i; the algebra is finite-dimensional.
    let max = alg
        .finite_basis_max_len(8)
        .expect("zigzag algebra is finite-dimensional");
    alg.basis(max).into_iter().filter(|p| p.start() == i).collect()
}

fn gen_name(alg: &Alg, i: usize, p: &Path) -> String {
    format!("<({i})x{}>", p.display(&alg.quiver))
}

fn idem_gen_name(j: usize) -> String {
    format!("<({j})>")
}

/// The crossing bimodule at index `i` over the zigzag algebra: the idempotent
/// row plus one generator per basis element of the right projective at `i`.
/// `Sign::Positive` puts the projective part in homological degree +1 with
/// its inherited internal degree and a differential onto the idempotent row;
/// `Sign::Negative` puts it in homological degree -1 with internal shift -1
/// and the coevaluation-style differential out of the idempotent row.
pub fn build_r(alg: &Alg, i: usize, sign: Sign) -> Result<Bimod, DaError> {
    let m = alg.vertex_count();
    if i == 0 || i >= m {
        return Err(DaError::BadBimodule(format!("index i = {i} out of 1..{m}")));
    }
    let quiver = &alg.quiver;
    let mut gens = Vec::new();
    for j in 0..m {
        gens.push(DAGenerator {
            name: idem_gen_name(j),
            left_idem: j,
            right_idem: j,
            hom_degree: 0,
            grading: GradingVec::zero(1),
        });
    }
    let module_basis = right_module_basis(alg, i);
    for p in &module_basis {
        let (hom_degree, shift) = match sign {
            Sign::Positive => (1, 0),
            Sign::Negative => (-1, -4),
        };
        gens.push(DAGenerator {
            name: gen_name(alg, i, p),
            left_idem: i,
            right_idem: p.end(quiver),
            hom_degree,
            grading: GradingVec::from_scaled(vec![
                p.grading(quiver).scaled_coords()[0] + shift,
            ]),
        });
    }
    let gen_id = |name: &str| gens.iter().position(|g| g.name == name).expect("generator");

    let mut arrows = Vec::new();
    // Straight-through right action on the idempotent row.
    let basis = alg.basis(alg.finite_basis_max_len(8).expect("finite"));
    for b in basis.iter().filter(|b| !b.is_empty()) {
        arrows.push(DeltaArrow::concrete(
            gen_id(&idem_gen_name(b.start())),
            gen_id(&idem_gen_name(b.end(quiver))),
            ParamElem::fixed(b.clone()),
            vec![ParamElem::fixed(b.clone())],
        ));
    }
    // Right multiplication on the projective part.
    for p in &module_basis {
        for b in basis.iter().filter(|b| !b.is_empty() && b.start() == p.end(quiver)) {
            let pb = p.compose(quiver, b).expect("chained");
            if let Some(nf) = alg.normal_form(&pb) {
                arrows.push(DeltaArrow::concrete(
                    gen_id(&gen_name(alg, i, p)),
                    gen_id(&gen_name(alg, i, &nf)),
                    ParamElem::fixed(Path::idempotent(i)),
                    vec![ParamElem::fixed(b.clone())],
                ));
            }
        }
    }
    match sign {
        Sign::Positive => {
            // Differential: evaluation onto the idempotent row.
            for p in &module_basis {
                arrows.push(DeltaArrow::concrete(
                    gen_id(&gen_name(alg, i, p)),
                    gen_id(&idem_gen_name(p.end(quiver))),
                    ParamElem::fixed(p.clone()),
                    vec![],
                ));
            }
        }
        Sign::Negative => {
            // Differential: the four-term coevaluation out of the idempotent
            // row at vertices i-1, i, i+1.
            for (out, right) in gamma_terms(alg, i) {
                arrows.push(DeltaArrow::concrete(
                    gen_id(&idem_gen_name(out.start())),
                    gen_id(&gen_name(alg, i, &right)),
                    ParamElem::fixed(out.clone()),
                    vec![],
                ));
            }
        }
    }

    Ok(Arc::new(DABimodule::new(
        format!(
            "{}[{i};{}]",
            match sign {
                Sign::Positive => "R",
                Sign::Negative => "R'",
            },
            alg.name
        ),
        alg.clone(),
        alg.clone(),
        gens,
        arrows,
        GradingHom::identity(1),
        GradingHom::identity(1),
    )?))
}

/// Identity bimodule of the zigzag algebra: the idempotent row with the
/// straight-through right action.
pub fn identity_bimodule_ks(alg: &Alg) -> Result<Bimod, DaError> {
    let m = alg.vertex_count();
    let quiver = &alg.quiver;
    let gens: Vec<DAGenerator> = (0..m)
        .map(|j| DAGenerator {
            name: idem_gen_name(j),
            left_idem: j,
            right_idem: j,
            hom_degree: 0,
            grading: GradingVec::zero(1),
        })
        .collect();
    let mut arrows = Vec::new();
    let basis = alg.basis(alg.finite_basis_max_len(8).expect("finite"));
    for b in basis.iter().filter(|b| !b.is_empty()) {
        arrows.push(DeltaArrow::concrete(
            b.start(),
            b.end(quiver),
            ParamElem::fixed(b.clone()),
            vec![ParamElem::fixed(b.clone())],
        ));
    }
    Ok(Arc::new(DABimodule::new(
        format!("Id[{}]", alg.name),
        alg.clone(),
        alg.clone(),
        gens,
        arrows,
        GradingHom::identity(1),
        GradingHom::identity(1),
    )?))
}
