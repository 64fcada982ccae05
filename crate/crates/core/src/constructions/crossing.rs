//! Resolution of the symbolic crossing tables into DA bimodules over the
//! corner algebra, plus the identity bimodule of the corner.

use std::sync::Arc;

use crate::dastruct::{Bimod, DABimodule, DAGenerator, DeltaArrow, ParamElem};
use crate::grading::{beta, epsilon_hom, refined_dim, swap_hom, tau, GradingHom, GradingVec};
use crate::pathalg::{Alg, Path, VertexId};

use super::crossing_data::{positive_crossing_table, reverse_table, CrossArrowSpec, Letter, Pat, G};
use super::osz::OszAlgebras;
use crate::dastruct::DaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "pos",
            Sign::Negative => "neg",
        }
    }
}

struct Resolver<'a> {
    cl: &'a Alg,
    m: usize,
    i: usize,
}

impl Resolver<'_> {
    fn arrow_path(&self, name: &str) -> Option<Path> {
        let id = self.cl.quiver.arrow_by_name(name)?;
        Path::from_arrows(&self.cl.quiver, vec![id]).ok()
    }

    /// The U-loop at strand `a` based at vertex `at`, when it exists.
    fn u_loop(&self, a: usize, at: VertexId) -> Option<Path> {
        if a == self.m {
            return (at == self.m - 1).then(|| self.arrow_path(&format!("U{}", self.m)))?;
        }
        if a == 0 || a > self.m {
            return None;
        }
        let r = self.arrow_path(&format!("R{a}"))?;
        let l = self.arrow_path(&format!("L{a}"))?;
        if at + 1 == a {
            r.compose(&self.cl.quiver, &l)
        } else if at == a {
            l.compose(&self.cl.quiver, &r)
        } else {
            None
        }
    }

    /// Resolves a symbolic label starting at `at`; `None` drops the arrow
    /// (boundary deletion). Returns the label and the vertex after it.
    fn resolve(&self, at: VertexId, pat: &Pat) -> Option<(ParamElem, VertexId)> {
        let (base, after) = match pat.letter {
            None => (Path::idempotent(at), at),
            Some(Letter::R(d)) => {
                let a = (self.i as i64 + d).try_into().ok()?;
                if a == 0 || a >= self.m {
                    return None; // moving letters exist at strands 1..m-1
                }
                if at + 1 != a {
                    return None;
                }
                (self.arrow_path(&format!("R{a}"))?, a)
            }
            Some(Letter::L(d)) => {
                let a: usize = (self.i as i64 + d).try_into().ok()?;
                if a == 0 || a >= self.m {
                    return None;
                }
                if at != a {
                    return None;
                }
                (self.arrow_path(&format!("L{a}"))?, a - 1)
            }
        };
        match pat.power {
            None => Some((ParamElem::fixed(base), after)),
            Some((d, shift)) => {
                let a: usize = (self.i as i64 + d).try_into().ok()?;
                let lp = self.u_loop(a, after)?;
                Some((ParamElem::powered(base, lp, shift), after))
            }
        }
    }

    fn gen_vertex(&self, g: &G) -> Option<(VertexId, VertexId)> {
        match g {
            G::S(d) => {
                let j: usize = (self.i as i64 + d).try_into().ok()?;
                (j < self.m && j != self.i).then_some((j, j))
            }
            G::W => Some((self.i, self.i - 1)),
            G::E => (self.i + 1 < self.m).then_some((self.i, self.i + 1)),
            G::N => Some((self.i, self.i)),
        }
    }

    fn gen_name(&self, g: &G) -> Option<String> {
        let (l, r) = self.gen_vertex(g)?;
        Some(match g {
            G::S(_) => format!("S{r}"),
            G::W => format!("_{l}W{r}"),
            G::E => format!("_{l}E{r}"),
            G::N => format!("_{l}N{r}"),
        })
    }
}

fn crossing_gradings(m: usize, i: usize, sign: Sign) -> [(GradingVec, i64); 4] {
    // order: S, W, E, N
    let zero = GradingVec::zero(refined_dim(m));
    match sign {
        Sign::Positive => [
            (zero, 0),
            (beta(m, i, 2), 1),
            (tau(m, i + 1, 2), 1),
            (beta(m, i, 2).add(&tau(m, i + 1, 2)).expect("same dim"), 1),
        ],
        Sign::Negative => [
            (zero, 0),
            (tau(m, i, 2).neg(), -1),
            (beta(m, i + 1, 2).neg(), -1),
            (tau(m, i, 2).add(&beta(m, i + 1, 2)).expect("same dim").neg(), -1),
        ],
    }
}

/// Builds the crossing bimodule at strand pair (i, i+1) over the refined
/// corner algebra: the four-corner operation table around the crossing, the
/// straight-through action at every other strand, the index-swap input
/// grading hom, and the quarter Alexander shift as metadata. Boundary index
/// `i = m-1` arises by deletion.
pub fn build_crossing(algs: &OszAlgebras, m: usize, i: usize, sign: Sign) -> Result<Bimod, DaError> {
    if i == 0 || i >= m {
        return Err(DaError::BadBimodule(format!("crossing index {i} out of 1..{m}")));
    }
    let cl = &algs.cl;
    let res = Resolver { cl, m, i };

    let [gs, gw, ge, gn] = crossing_gradings(m, i, sign);
    let mut gens: Vec<DAGenerator> = Vec::new();
    let push_gen = |g: &G, grading: &GradingVec, hom: i64, gens: &mut Vec<DAGenerator>| {
        if let (Some(name), Some((l, r))) = (res.gen_name(g), res.gen_vertex(g)) {
            gens.push(DAGenerator {
                name,
                left_idem: l,
                right_idem: r,
                hom_degree: hom,
                grading: grading.clone(),
            });
        }
    };
    for j in 0..m {
        if j != i {
            push_gen(&G::S(j as i64 - i as i64), &gs.0, gs.1, &mut gens);
        }
    }
    push_gen(&G::W, &gw.0, gw.1, &mut gens);
    push_gen(&G::E, &ge.0, ge.1, &mut gens);
    push_gen(&G::N, &gn.0, gn.1, &mut gens);

    let gen_id = |g: &G| -> Option<usize> {
        let name = res.gen_name(g)?;
        gens.iter().position(|x| x.name == name)
    };

    let table = match sign {
        Sign::Positive => positive_crossing_table(),
        Sign::Negative => reverse_table(positive_crossing_table()),
    };
    let mut arrows: Vec<DeltaArrow> = Vec::new();
    for spec in &table {
        if let Some(arrow) = resolve_spec(&res, &gen_id, spec) {
            arrows.push(arrow);
        }
    }
    // Straight-through action at far strands: the moving family in both
    // directions and the two loop families, skipping the crossing strands.
    for a in 1..=m {
        if a == i || a == i + 1 {
            continue;
        }
        arrows.extend(far_strand_arrows(&res, &gen_id, a, i));
    }

    let mut bm = DABimodule::new(
        format!(
            "{}[{i};m={m}]",
            match sign {
                Sign::Positive => "P",
                Sign::Negative => "N",
            }
        ),
        cl.clone(),
        cl.clone(),
        gens,
        arrows,
        GradingHom::identity(refined_dim(m)),
        swap_hom(m, i),
    )?;
    bm.alexander_shift = Some(crate::grading::alexander_shift(
        m,
        i,
        match sign {
            Sign::Positive => -1,
            Sign::Negative => 1,
        },
    ));
    Ok(Arc::new(bm))
}

fn resolve_spec(
    res: &Resolver<'_>,
    gen_id: &impl Fn(&G) -> Option<usize>,
    spec: &CrossArrowSpec,
) -> Option<DeltaArrow> {
    let src = gen_id(&spec.src)?;
    let tgt = gen_id(&spec.tgt)?;
    let (src_l, src_r) = res.gen_vertex(&spec.src)?;
    let (out, _) = res.resolve(src_l, &spec.out)?;
    let mut at = src_r;
    let mut ins = Vec::new();
    for p in &spec.ins {
        let (pe, after) = res.resolve(at, p)?;
        ins.push(pe);
        at = after;
    }
    Some(DeltaArrow::family(src, tgt, out, ins, spec.k_min))
}

fn far_strand_arrows(
    res: &Resolver<'_>,
    gen_id: &impl Fn(&G) -> Option<usize>,
    a: usize,
    i: usize,
) -> Vec<DeltaArrow> {
    let rel = |j: usize| G::S(j as i64 - i as i64);
    let mut out = Vec::new();
    let m = res.m;
    // moving letters exist for strands below m
    if a < m {
        if let (Some(src), Some(tgt)) = (gen_id(&rel(a - 1)), gen_id(&rel(a))) {
            if let Some((pe, _)) = res.resolve(a - 1, &Pat {
                letter: Some(Letter::R(a as i64 - i as i64)),
                power: Some((a as i64 - i as i64, 0)),
            }) {
                out.push(DeltaArrow::family(src, tgt, pe.clone(), vec![pe], 0));
            }
        }
        if let (Some(src), Some(tgt)) = (gen_id(&rel(a)), gen_id(&rel(a - 1))) {
            if let Some((pe, _)) = res.resolve(a, &Pat {
                letter: Some(Letter::L(a as i64 - i as i64)),
                power: Some((a as i64 - i as i64, 0)),
            }) {
                out.push(DeltaArrow::family(src, tgt, pe.clone(), vec![pe], 0));
            }
        }
    }
    // loops at the two vertices the strand touches
    for at in [a - 1, a] {
        if at >= m {
            continue;
        }
        if let Some(src) = gen_id(&rel(at)) {
            if let Some(lp) = res.u_loop(a, at) {
                let pe = ParamElem::powered(Path::idempotent(at), lp, 0);
                out.push(DeltaArrow::family(src, src, pe.clone(), vec![pe], 1));
            }
        }
    }
    out
}

/// The crossing bimodule with gradings collapsed to Z, over the bottom-graded
/// corner algebra on both sides.
pub fn collapsed_crossing(
    algs: &OszAlgebras,
    m: usize,
    i: usize,
    sign: Sign,
) -> Result<Bimod, DaError> {
    let refined = build_crossing(algs, m, i, sign)?;
    let mut bm = refined.transport(
        format!("{}bot", refined.name),
        algs.cl_bot.clone(),
        algs.cl_bot.clone(),
        &epsilon_hom(m),
        GradingHom::identity(1),
        GradingHom::identity(1),
    )?;
    bm.alexander_shift = refined.alexander_shift.clone();
    Ok(Arc::new(bm))
}

/// Identity bimodule of the corner algebra: one generator per vertex and the
/// straight-through action of every basis family.
pub fn identity_bimodule_cl(cl: &Alg, m: usize) -> Result<Bimod, DaError> {
    let dim = cl.grading_dim();
    let gens: Vec<DAGenerator> = (0..cl.vertex_count())
        .map(|j| DAGenerator {
            name: format!("S{j}"),
            left_idem: j,
            right_idem: j,
            hom_degree: 0,
            grading: GradingVec::zero(dim),
        })
        .collect();
    let res = Resolver { cl, m, i: 0 };
    let mut arrows = Vec::new();
    for a in 1..=m {
        if a < m {
            let r = res.arrow_path(&format!("R{a}")).expect("strand arrow");
            let l = res.arrow_path(&format!("L{a}")).expect("strand arrow");
            let rl = r.compose(&cl.quiver, &l).expect("loop");
            let lr = l.compose(&cl.quiver, &r).expect("loop");
            let pe = ParamElem::powered(r, lr, 0);
            arrows.push(DeltaArrow::family(a - 1, a, pe.clone(), vec![pe], 0));
            let pe = ParamElem::powered(l, rl, 0);
            arrows.push(DeltaArrow::family(a, a - 1, pe.clone(), vec![pe], 0));
        }
        for at in [a - 1, a] {
            if at >= cl.vertex_count() {
                continue;
            }
            if let Some(lp) = res.u_loop(a, at) {
                let pe = ParamElem::powered(Path::idempotent(at), lp, 0);
                arrows.push(DeltaArrow::family(at, at, pe.clone(), vec![pe], 1));
            }
        }
    }
    Ok(Arc::new(DABimodule::new(
        format!("Id[{}]", cl.name),
        cl.clone(),
        cl.clone(),
        gens,
        arrows,
        GradingHom::identity(dim),
        GradingHom::identity(dim),
    )?))
}
