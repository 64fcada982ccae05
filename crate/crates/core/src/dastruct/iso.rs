//! Bimodule isomorphism search by generator relabeling: graded-signature
//! filtering plus backtracking, with an explicit node budget. There is no
//! canonical form for these tables, so a budget overrun is reported as
//! inconclusive rather than as a disproof.

use std::collections::{BTreeMap, BTreeSet};

use super::bimodule::{DABimodule, DeltaArrow, GenId, ParamElem};

#[derive(Clone, Debug)]
pub enum IsoResult {
    Found(Vec<(String, String)>),
    NotFound,
    BudgetExceeded,
}

type ArrowKey = (GenId, GenId, ParamElem, Vec<ParamElem>, i64);

fn arrow_set(m: &DABimodule, map: Option<&[GenId]>) -> BTreeSet<ArrowKey> {
    m.arrows
        .iter()
        .map(|a: &DeltaArrow| {
            let (s, t) = match map {
                None => (a.source, a.target),
                Some(f) => (f[a.source], f[a.target]),
            };
            (s, t, a.output.clone(), a.inputs.clone(), a.k_min)
        })
        .collect()
}

/// Signature invariant of a generator: idempotents, degrees, and the label
/// multisets of its outgoing and incoming arrows.
fn signature(m: &DABimodule, x: GenId) -> String {
    let g = &m.generators[x];
    let mut outs: Vec<String> = m
        .arrows
        .iter()
        .filter(|a| a.source == x)
        .map(|a| format!("{:?}|{:?}|{}", a.output, a.inputs, a.k_min))
        .collect();
    outs.sort();
    let mut ins: Vec<String> = m
        .arrows
        .iter()
        .filter(|a| a.target == x)
        .map(|a| format!("{:?}|{:?}|{}", a.output, a.inputs, a.k_min))
        .collect();
    ins.sort();
    format!(
        "{}/{}/{}/{:?}/out{:?}/in{:?}",
        g.left_idem, g.right_idem, g.hom_degree, g.grading, outs, ins
    )
}

pub fn find_isomorphism(a: &DABimodule, b: &DABimodule, budget: usize) -> IsoResult {
    if a.out_alg != b.out_alg
        || a.in_alg != b.in_alg
        || a.generators.len() != b.generators.len()
        || a.arrows.len() != b.arrows.len()
    {
        return IsoResult::NotFound;
    }
    let mut groups: BTreeMap<String, (Vec<GenId>, Vec<GenId>)> = BTreeMap::new();
    for x in 0..a.generators.len() {
        groups.entry(signature(a, x)).or_default().0.push(x);
    }
    for y in 0..b.generators.len() {
        groups.entry(signature(b, y)).or_default().1.push(y);
    }
    for (l, r) in groups.values() {
        if l.len() != r.len() {
            return IsoResult::NotFound;
        }
    }
    let b_arrows = arrow_set(b, None);
    let groups: Vec<(Vec<GenId>, Vec<GenId>)> = groups.into_values().collect();

    struct Search<'s> {
        a: &'s DABimodule,
        b_arrows: &'s BTreeSet<ArrowKey>,
        groups: &'s [(Vec<GenId>, Vec<GenId>)],
        map: Vec<GenId>,
        nodes: usize,
        budget: usize,
    }
    impl Search<'_> {
        fn go(&mut self, gi: usize, used: &mut Vec<BTreeSet<GenId>>) -> Option<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if gi == self.groups.len() {
                return Some(arrow_set(self.a, Some(&self.map)) == *self.b_arrows);
            }
            let (lefts, rights) = &self.groups[gi];
            self.assign(gi, 0, lefts, rights, used)
        }
        fn assign(
            &mut self,
            gi: usize,
            li: usize,
            lefts: &[GenId],
            rights: &[GenId],
            used: &mut Vec<BTreeSet<GenId>>,
        ) -> Option<bool> {
            if li == lefts.len() {
                return self.go(gi + 1, used);
            }
            for &y in rights {
                if used[gi].contains(&y) {
                    continue;
                }
                self.map[lefts[li]] = y;
                used[gi].insert(y);
                match self.assign(gi, li + 1, lefts, rights, used) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                used[gi].remove(&y);
            }
            Some(false)
        }
    }
    let mut search = Search {
        a,
        b_arrows: &b_arrows,
        groups: &groups,
        map: vec![0; a.generators.len()],
        nodes: 0,
        budget,
    };
    let mut used = vec![BTreeSet::new(); groups.len()];
    match search.go(0, &mut used) {
        None => IsoResult::BudgetExceeded,
        Some(true) => {
            let pairs = (0..a.generators.len())
                .map(|x| {
                    (
                        a.generators[x].name.clone(),
                        b.generators[search.map[x]].name.clone(),
                    )
                })
                .collect();
            IsoResult::Found(pairs)
        }
        Some(false) => IsoResult::NotFound,
    }
}
