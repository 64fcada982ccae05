//! Cancellation-based reduction and the homotopy-equivalence certificate.
//!
//! Reduction cancels one differential arrow with unit output at a time. New
//! operations are the composites of arrows into the cancelled target with
//! arrows out of the cancelled source (alternating through any further
//! source-to-target arrows), exactly the zig-zag transfer patterns. The
//! returned witnesses are differential-level morphism data: `f` includes the
//! complement with a correction through the cancelled source, `g` projects
//! with a correction out of it, and `T` maps the cancelled target back to the
//! cancelled source. Identities are checked at the same differential level,
//! which is the level at which a cancellation certificate is stated.

use std::collections::BTreeMap;

use crate::pathalg::Path;

use super::bimodule::{DABimodule, DAGenerator, DeltaArrow, GenId, ParamElem};

use super::morphism::{add, compose, DAMorphism, MorphArrow};
use super::{Bimod, Bounds, DaError};

/// `(source gen, output path, target gen)` rows of a differential-level map.
type DTable = BTreeMap<(GenId, Path, GenId), ()>;

fn toggle(t: &mut DTable, key: (GenId, Path, GenId)) {
    if t.remove(&key).is_none() {
        t.insert(key, ());
    }
}

/// The `j = 1` part of a morphism as a differential-level table.
fn d_part(f: &DAMorphism) -> DTable {
    let mut t = DTable::new();
    for a in &f.arrows {
        if a.inputs.is_empty() {
            toggle(&mut t, (a.source, a.output.base.clone(), a.target));
        }
    }
    t
}

/// The differential (0-input instance) table of a bimodule.
fn diff_table(m: &DABimodule) -> Vec<(GenId, Path, GenId)> {
    m.arrows
        .iter()
        .filter(|a| a.inputs.is_empty())
        .map(|a| (a.source, a.output.base.clone(), a.target))
        .collect()
}

fn compose_d(
    out_alg: &crate::pathalg::Alg,
    first: &DTable,
    second: &DTable,
) -> DTable {
    let mut t = DTable::new();
    for (x, b, y) in first.keys() {
        for ((y2, c, z), ()) in second.iter() {
            if y2 != y {
                continue;
            }
            if let Some(bc) = b.compose(&out_alg.quiver, c) {
                if let Some(nf) = out_alg.normal_form(&bc) {
                    toggle(&mut t, (*x, nf, *z));
                }
            }
        }
    }
    t
}

#[derive(Clone, Debug)]
pub struct HomotopyReport {
    pub checks: Vec<(String, bool)>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
    pub fn first_failure(&self) -> Option<&str> {
        self.checks.iter().find(|(_, ok)| !*ok).map(|(n, _)| n.as_str())
    }
}

/// Differential-level homotopy-equivalence certificate: `f`, `g` are chain
/// maps, `g∘f = id + dT_src`, `f∘g = id + dT_tgt`, and both homotopies
/// square to zero. Pass zero morphisms for absent homotopies.
pub fn verify_homotopy_equivalence(
    f: &DAMorphism,
    g: &DAMorphism,
    t_src: &DAMorphism,
    t_tgt: &DAMorphism,
) -> Result<HomotopyReport, DaError> {
    if !g.source.table_eq(&f.target) || !g.target.table_eq(&f.source) {
        return Err(DaError::AlgebraMismatch("f and g are not mutually opposed".into()));
    }
    let z = &f.source; // the small side
    let m = &f.target;
    let out_alg = &z.out_alg;
    let mut checks = Vec::new();

    let chain_map = |h: &DAMorphism, x_m: &DABimodule, y_m: &DABimodule| -> bool {
        let ht = d_part(h);
        let dx: DTable = diff_table(x_m).into_iter().map(|k| (k, ())).collect();
        let dy: DTable = diff_table(y_m).into_iter().map(|k| (k, ())).collect();
        let mut lhs = compose_d(out_alg, &ht, &dy);
        for (k, ()) in compose_d(out_alg, &dx, &ht) {
            toggle(&mut lhs, k);
        }
        lhs.is_empty()
    };
    checks.push(("f is a differential-level chain map".into(), chain_map(f, z, m)));
    checks.push(("g is a differential-level chain map".into(), chain_map(g, m, z)));

    let id_of = |b: &DABimodule| -> DTable {
        (0..b.generators.len())
            .map(|x| ((x, Path::idempotent(b.generators[x].left_idem), x), ()))
            .collect()
    };

    // g∘f = id_Z + dT_src
    {
        let mut lhs = compose_d(out_alg, &d_part(f), &d_part(g));
        for (k, ()) in id_of(z) {
            toggle(&mut lhs, k);
        }
        let tt = d_part(t_src);
        let dz: DTable = diff_table(z).into_iter().map(|k| (k, ())).collect();
        for (k, ()) in compose_d(out_alg, &tt, &dz) {
            toggle(&mut lhs, k);
        }
        for (k, ()) in compose_d(out_alg, &dz, &tt) {
            toggle(&mut lhs, k);
        }
        checks.push(("g∘f = id + dT on the small side".into(), lhs.is_empty()));
    }
    // f∘g = id_M + dT_tgt
    {
        let mut lhs = compose_d(out_alg, &d_part(g), &d_part(f));
        for (k, ()) in id_of(m) {
            toggle(&mut lhs, k);
        }
        let tt = d_part(t_tgt);
        let dm: DTable = diff_table(m).into_iter().map(|k| (k, ())).collect();
        for (k, ()) in compose_d(out_alg, &tt, &dm) {
            toggle(&mut lhs, k);
        }
        for (k, ()) in compose_d(out_alg, &dm, &tt) {
            toggle(&mut lhs, k);
        }
        checks.push(("f∘g = id + dT on the big side".into(), lhs.is_empty()));
    }
    for (name, t) in [("T_src", t_src), ("T_tgt", t_tgt)] {
        let tt = d_part(t);
        let sq = compose_d(out_alg, &tt, &tt);
        checks.push((format!("{name}^2 = 0"), sq.is_empty()));
    }
    Ok(HomotopyReport { checks })
}

#[derive(Clone, Debug)]
pub struct ReduceStep {
    pub cancelled_from: String,
    pub cancelled_to: String,
    /// Transferred arrows as `(input count + 1, source name, target name)`.
    pub transferred: Vec<(usize, String, String)>,
}

#[derive(Debug)]
pub struct ReduceOutcome {
    pub reduced: Bimod,
    /// Inclusion-side witness, reduced -> original, degree 0.
    pub f: DAMorphism,
    /// Projection-side witness, original -> reduced, degree 0.
    pub g: DAMorphism,
    /// Homotopy on the original side, degree +1.
    pub t: DAMorphism,
    pub steps: Vec<ReduceStep>,
}

/// Iterated cancellation of unit differential arrows. Deterministic: among
/// candidates, sources of maximal homological degree first, then generator
/// names. Requires a concrete table.
pub fn reduce(m: &Bimod, bounds: &Bounds) -> Result<ReduceOutcome, DaError> {
    if !m.is_concrete() {
        return Err(DaError::NotConcrete(format!("reduce({})", m.name)));
    }
    let mut cur: Bimod = m.clone();
    let mut f_total = super::morphism::identity_morphism(m);
    let mut g_total = super::morphism::identity_morphism(m);
    let mut t_total = super::morphism::zero_morphism(m, m, 1)?;
    let mut steps = Vec::new();

    loop {
        let cand = cur
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, a)| a.inputs.is_empty() && a.output.base.is_empty() && a.source != a.target)
            .min_by_key(|(_, a)| {
                (
                    std::cmp::Reverse(cur.generators[a.source].hom_degree),
                    cur.generators[a.source].name.clone(),
                    cur.generators[a.target].name.clone(),
                )
            });
        let Some((cidx, _)) = cand else { break };
        let (next, f_step, g_step, t_step, step) = cancel_one(&cur, cidx, bounds)?;
        // T_total += f_prev ∘ T_step ∘ g_prev, with the pre-step totals.
        let correction = compose(&compose(&f_total, &t_step)?, &g_total)?;
        t_total = add(&t_total, &correction)?;
        f_total = compose(&f_total, &f_step)?;
        g_total = compose(&g_step, &g_total)?;
        steps.push(step);
        cur = next;
    }
    Ok(ReduceOutcome { reduced: cur, f: f_total, g: g_total, t: t_total, steps })
}

type CancelResult = (Bimod, DAMorphism, DAMorphism, DAMorphism, ReduceStep);

fn cancel_one(m: &Bimod, cancelled_idx: usize, bounds: &Bounds) -> Result<CancelResult, DaError> {
    let cancelled = m.arrows[cancelled_idx].clone();
    let p = cancelled.source;
    let q = cancelled.target;

    // Generator set of the reduced bimodule, with an index map.
    let mut keep_ids = Vec::new();
    let mut new_of_old: BTreeMap<GenId, GenId> = BTreeMap::new();
    let mut generators: Vec<DAGenerator> = Vec::new();
    for (id, g) in m.generators.iter().enumerate() {
        if id != p && id != q {
            new_of_old.insert(id, generators.len());
            keep_ids.push(id);
            generators.push(g.clone());
        }
    }

    // Effective continuations out of p: direct exits, alternating through
    // any further p -> q arrows (other than the cancelled one).
    // Each continuation is (accumulated output, accumulated inputs, exit).
    let mut eff: Vec<(Path, Vec<Path>, GenId)> = Vec::new();
    let mut frontier: Vec<(Path, Vec<Path>)> =
        vec![(Path::idempotent(m.generators[p].left_idem), vec![])];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        depth += 1;
        if depth > bounds.depth_limit {
            return Err(DaError::DepthLimit(bounds.depth_limit));
        }
        let mut next = Vec::new();
        for (acc_out, acc_in) in frontier {
            for (bidx, b) in m.arrows.iter().enumerate() {
                if b.source != p || bidx == cancelled_idx {
                    continue;
                }
                let Some(out) = acc_out.compose(&m.out_alg.quiver, &b.output.base) else {
                    continue;
                };
                let Some(out) = m.out_alg.normal_form(&out) else { continue };
                let mut ins = acc_in.clone();
                ins.extend(b.inputs.iter().map(|pe| pe.base.clone()));
                if b.target == q {
                    next.push((out, ins));
                } else if b.target != p {
                    eff.push((out, ins, b.target));
                }
                // b.target == p (a loop at p) is a dead end: the chain can
                // only continue from q.
            }
        }
        frontier = next;
    }

    let mut arrows: Vec<DeltaArrow> = Vec::new();
    let mut transferred = Vec::new();
    for a in &m.arrows {
        if a.source == p || a.source == q || a.target == p || a.target == q {
            continue;
        }
        arrows.push(DeltaArrow::concrete(
            new_of_old[&a.source],
            new_of_old[&a.target],
            a.output.clone(),
            a.inputs.clone(),
        ));
    }
    for a in &m.arrows {
        if a.target != q || a.source == p || a.source == q {
            continue;
        }
        for (b_out, b_in, y) in &eff {
            let Some(out) = a.output.base.compose(&m.out_alg.quiver, b_out) else { continue };
            let Some(out) = m.out_alg.normal_form(&out) else { continue };
            let mut inputs: Vec<ParamElem> = a.inputs.clone();
            inputs.extend(b_in.iter().cloned().map(ParamElem::fixed));
            transferred.push((
                inputs.len() + 1,
                m.generators[a.source].name.clone(),
                m.generators[*y].name.clone(),
            ));
            arrows.push(DeltaArrow::concrete(
                new_of_old[&a.source],
                new_of_old[y],
                ParamElem::fixed(out),
                inputs,
            ));
        }
    }
    let reduced = std::sync::Arc::new(DABimodule::new(
        format!("{}|red", m.name),
        m.out_alg.clone(),
        m.in_alg.clone(),
        generators,
        arrows,
        m.out_hom.clone(),
        m.in_hom.clone(),
    )?);

    // Differential-level witnesses for this step. States at p reachable by
    // alternating through possible further differential p -> q arrows.
    let mut p_states: Vec<Path> = vec![Path::idempotent(m.generators[p].left_idem)];
    {
        let mut frontier = p_states.clone();
        let mut depth = 0usize;
        while !frontier.is_empty() {
            depth += 1;
            if depth > bounds.depth_limit {
                return Err(DaError::DepthLimit(bounds.depth_limit));
            }
            let mut next = Vec::new();
            for acc in frontier {
                for (bidx, b) in m.arrows.iter().enumerate() {
                    if b.source != p || b.target != q || bidx == cancelled_idx || !b.inputs.is_empty()
                    {
                        continue;
                    }
                    if let Some(out) = acc.compose(&m.out_alg.quiver, &b.output.base) {
                        if let Some(out) = m.out_alg.normal_form(&out) {
                            next.push(out);
                        }
                    }
                }
            }
            p_states.extend(next.iter().cloned());
            frontier = next;
        }
    }
    let mut f_arrows = Vec::new();
    let mut g_arrows = Vec::new();
    for &old in &keep_ids {
        let unit = ParamElem::fixed(Path::idempotent(m.generators[old].left_idem));
        f_arrows.push(MorphArrow {
            source: new_of_old[&old],
            target: old,
            output: unit.clone(),
            inputs: vec![],
            k_min: 0,
        });
        g_arrows.push(MorphArrow {
            source: old,
            target: new_of_old[&old],
            output: unit,
            inputs: vec![],
            k_min: 0,
        });
    }
    // f correction: differential arrows into q land on p instead.
    for a in &m.arrows {
        if a.target == q && a.source != p && a.source != q && a.inputs.is_empty() {
            for s in &p_states {
                let Some(out) = a.output.base.compose(&m.out_alg.quiver, s) else { continue };
                let Some(out) = m.out_alg.normal_form(&out) else { continue };
                f_arrows.push(MorphArrow {
                    source: new_of_old[&a.source],
                    target: p,
                    output: ParamElem::fixed(out),
                    inputs: vec![],
                    k_min: 0,
                });
            }
        }
    }
    // g correction: q maps by the differential continuations out of p.
    for (b_out, b_in, y) in &eff {
        if b_in.is_empty() {
            g_arrows.push(MorphArrow {
                source: q,
                target: new_of_old[y],
                output: ParamElem::fixed(b_out.clone()),
                inputs: vec![],
                k_min: 0,
            });
        }
    }
    let f_step = DAMorphism::new("f", reduced.clone(), m.clone(), 0, f_arrows)?;
    let g_step = DAMorphism::new("g", m.clone(), reduced.clone(), 0, g_arrows)?;
    let t_step = DAMorphism::new(
        "T",
        m.clone(),
        m.clone(),
        1,
        vec![MorphArrow {
            source: q,
            target: p,
            output: ParamElem::fixed(Path::idempotent(m.generators[q].left_idem)),
            inputs: vec![],
            k_min: 0,
        }],
    )?;
    let step = ReduceStep {
        cancelled_from: m.generators[p].name.clone(),
        cancelled_to: m.generators[q].name.clone(),
        transferred,
    };
    Ok((reduced, f_step, g_step, t_step, step))
}
