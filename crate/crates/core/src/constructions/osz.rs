//! The strands-type algebra on `m+1` vertices with `deg R_i = tau_i/2`,
//! `deg L_i = beta_i/2`, its idempotent truncation with the loop generator,
//! the bottom-graded collapse, and the quotient map onto the zigzag algebra.

use std::collections::BTreeSet;

use crate::grading::{epsilon_hom, tau, beta, GradingHom};
use crate::pathalg::{
    Alg, AlgebraElement, AlgebraHom, Arrow, Path, PathAlgError, PresentedAlgebra, Quiver,
    RewriteRule,
};

use super::ks::{build_ks_algebra, ks_arrow, ks_loop};

pub struct OszAlgebras {
    /// The full algebra on `m+1` vertices.
    pub b: Alg,
    /// The corner on the first `m` vertices, with the loop generator `U_m`.
    pub cl: Alg,
    /// The corner with gradings collapsed to Z.
    pub cl_bot: Alg,
    /// The zigzag algebra the corner maps onto.
    pub a: Alg,
    /// The surjection `cl_bot -> a`.
    pub phi: AlgebraHom,
}

/// Builds `B(m)`, its corner `C_l(m)`, the Z-graded `C_l^{bot}(m)`, the
/// zigzag algebra, and the validated quotient map between them.
pub fn build_osz_algebras(m: usize) -> Result<OszAlgebras, PathAlgError> {
    let b = build_b_algebra(m)?;
    let keep: BTreeSet<usize> = (0..m).collect();
    let corner = b.truncate(&keep)?;
    let cl = PresentedAlgebra::new(format!("Cl({m})"), corner.quiver.clone(), corner.rules.clone())?;
    let cl_bot = cl.collapse_grading(&epsilon_hom(m), true, format!("Clbot({m})"))?;
    let a = build_ks_algebra(m)?;

    let vertex_map = (0..m).collect();
    let quiver = &cl_bot.quiver;
    let mut arrow_images = Vec::new();
    for arrow in &quiver.arrows {
        let img = if let Some(a_idx) = arrow.name.strip_prefix('R') {
            let j: usize = a_idx.parse().expect("arrow index");
            ks_arrow(&a, j - 1, j)
        } else if let Some(a_idx) = arrow.name.strip_prefix('L') {
            let j: usize = a_idx.parse().expect("arrow index");
            ks_arrow(&a, j, j - 1)
        } else {
            // the loop generator maps to the normal-form loop at m-1
            ks_loop(&a, m - 1)
        };
        arrow_images.push(AlgebraElement::from_path(&a, img));
    }
    let phi = AlgebraHom::new(
        "phi",
        cl_bot.clone(),
        a.clone(),
        vertex_map,
        arrow_images,
        GradingHom::identity(1),
    )?;
    Ok(OszAlgebras { b, cl, cl_bot, a, phi })
}

fn build_b_algebra(m: usize) -> Result<Alg, PathAlgError> {
    if m < 2 {
        return Err(PathAlgError::BadPresentation(format!("m = {m} < 2")));
    }
    let mut arrows = Vec::new();
    for a in 1..=m {
        arrows.push(Arrow {
            name: format!("R{a}"),
            source: a - 1,
            target: a,
            grading: tau(m, a, 2),
        });
    }
    for a in 1..=m {
        arrows.push(Arrow {
            name: format!("L{a}"),
            source: a,
            target: a - 1,
            grading: beta(m, a, 2),
        });
    }
    let quiver = Quiver::new(m + 1, arrows, 2 * m)?;
    let r = |a: usize| a - 1;
    let l = |a: usize| m + a - 1;
    let mut rules = Vec::new();
    for a in 1..m {
        rules.push(RewriteRule {
            lhs: Path::from_arrows(&quiver, vec![r(a), r(a + 1)])?,
            rhs: None,
        });
        rules.push(RewriteRule {
            lhs: Path::from_arrows(&quiver, vec![l(a + 1), l(a)])?,
            rhs: None,
        });
    }
    PresentedAlgebra::new(format!("B({m})"), quiver, rules)
}

/// The central element `U_i = R_i L_i + L_i R_i` (1 <= i <= m in the full
/// algebra and the corresponding range in its corners, where the last one is
/// the loop generator).
pub fn u_element(alg: &Alg, i: usize) -> AlgebraElement {
    if let Some(loop_id) = alg.quiver.arrow_by_name(&format!("U{i}")) {
        return AlgebraElement::from_path(
            alg,
            Path::from_arrows(&alg.quiver, vec![loop_id]).expect("loop is a path"),
        );
    }
    let r = alg.quiver.arrow_by_name(&format!("R{i}")).expect("arrow R");
    let l = alg.quiver.arrow_by_name(&format!("L{i}")).expect("arrow L");
    let rl = Path::from_arrows(&alg.quiver, vec![r, l]).expect("loop chains");
    let lr = Path::from_arrows(&alg.quiver, vec![l, r]).expect("loop chains");
    AlgebraElement::from_paths(alg, [rl, lr])
}

/// `U_1 + ... + U_m` in an algebra whose strand count is `m`.
pub fn sum_of_u(alg: &Alg, m: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(alg);
    for i in 1..=m {
        out = out.plus(&u_element(alg, i)).expect("same algebra");
    }
    out
}
