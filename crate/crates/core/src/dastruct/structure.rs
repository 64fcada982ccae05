//! The DA structure equation, verified by bounded exhaustive sweep.
//!
//! Both algebras are assumed to have zero differential (true of every algebra
//! built here), so the compatibility condition for each generator `x` and
//! each chained input sequence `(a_1, ..., a_n)` reads: the GF(2) sum of
//!
//!   * all two-stage compositions — `delta` on a prefix of the inputs, the
//!     two algebra outputs multiplied, `delta` on the remainder — and
//!   * all single applications with one adjacent input pair multiplied,
//!
//! vanishes. Sequences run over basis paths of the input algebra, so every
//! parametric family is exercised up to the length bound; when families are
//! present a second sweep with the bound extended by one power step checks
//! pattern stability in `k`.

use std::collections::BTreeSet;

use crate::pathalg::Path;

use super::bimodule::{DABimodule, GenId};
use super::Bounds;

#[derive(Clone, Debug)]
pub struct StructureFailure {
    pub generator: String,
    pub inputs: Vec<String>,
    pub residual: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub instances_checked: usize,
    pub sweeps: Vec<usize>,
    pub failure: Option<StructureFailure>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Residual of the structure equation at one instance; empty means the
/// equation holds there.
pub(crate) fn structure_residual(
    m: &DABimodule,
    x: GenId,
    inputs: &[Path],
) -> BTreeSet<(GenId, Path)> {
    let mut residual: BTreeSet<(GenId, Path)> = BTreeSet::new();
    let mut toggle = |g: GenId, p: Path| {
        if !residual.remove(&(g, p.clone())) {
            residual.insert((g, p));
        }
    };
    let n = inputs.len();
    // two-stage compositions over every split of the inputs
    for r in 0..=n {
        for (b, mid) in m.eval_delta_paths(x, &inputs[..r]) {
            for (c, tgt) in m.eval_delta_paths(mid, &inputs[r..]) {
                if let Some(bc) = b.compose(&m.out_alg.quiver, &c) {
                    if let Some(nf) = m.out_alg.normal_form(&bc) {
                        toggle(tgt, nf);
                    }
                }
            }
        }
    }
    // single applications with one adjacent pair multiplied
    for s in 0..n.saturating_sub(1) {
        let Some(prod) = inputs[s].compose(&m.in_alg.quiver, &inputs[s + 1]) else {
            continue;
        };
        let Some(prod) = m.in_alg.normal_form(&prod) else { continue };
        let mut merged: Vec<Path> = Vec::with_capacity(n - 1);
        merged.extend_from_slice(&inputs[..s]);
        merged.push(prod);
        merged.extend_from_slice(&inputs[s + 2..]);
        for (b, tgt) in m.eval_delta_paths(x, &merged) {
            toggle(tgt, b);
        }
    }
    residual
}

fn sweep(m: &DABimodule, max_inputs: usize, basis_len: usize) -> (usize, Option<StructureFailure>) {
    let by_start = m.in_alg.basis_by_start(basis_len);
    let mut checked = 0usize;
    for x in 0..m.generators.len() {
        let mut stack: Vec<Vec<Path>> = vec![vec![]];
        while let Some(inputs) = stack.pop() {
            checked += 1;
            let residual = structure_residual(m, x, &inputs);
            if !residual.is_empty() {
                return (
                    checked,
                    Some(StructureFailure {
                        generator: m.generators[x].name.clone(),
                        inputs: inputs.iter().map(|p| p.display(&m.in_alg.quiver)).collect(),
                        residual: residual
                            .into_iter()
                            .map(|(g, p)| {
                                format!(
                                    "{} (x) {}",
                                    p.display(&m.out_alg.quiver),
                                    m.generators[g].name
                                )
                            })
                            .collect(),
                    }),
                );
            }
            if inputs.len() < max_inputs {
                let at = inputs
                    .last()
                    .map(|p| p.end(&m.in_alg.quiver))
                    .unwrap_or(m.generators[x].right_idem);
                for p in &by_start[at] {
                    if p.is_empty() {
                        continue;
                    }
                    let mut next = inputs.clone();
                    next.push(p.clone());
                    stack.push(next);
                }
            }
        }
    }
    (checked, None)
}

/// Bounded verification of the structure equation, with a stability sweep at
/// an extended length bound when the table is parametric.
pub fn verify_structure(m: &DABimodule, bounds: &Bounds) -> StructureReport {
    let mut sweeps = Vec::new();
    let (n1, fail) = sweep(m, bounds.max_inputs, bounds.basis_len);
    sweeps.push(n1);
    if fail.is_some() {
        return StructureReport { instances_checked: n1, sweeps, failure: fail };
    }
    let mut total = n1;
    if !m.is_concrete() {
        let ext = bounds.basis_len + 2;
        let (n2, fail2) = sweep(m, bounds.max_inputs, ext);
        sweeps.push(n2);
        total += n2;
        if fail2.is_some() {
            return StructureReport { instances_checked: total, sweeps, failure: fail2 };
        }
    }
    StructureReport { instances_checked: total, sweeps, failure: None }
}
