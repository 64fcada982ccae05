use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::grading::{GradingHom, GradingVec};

use super::quiver::{ArrowId, Path, Quiver, VertexId};
use super::PathAlgError;

pub type Alg = Arc<PresentedAlgebra>;

/// An oriented rewrite `lhs -> rhs`, with `rhs` a single path of equal
/// endpoints and grading, or zero. `lhs` must be strictly greater in the
/// length-then-lexicographic term order, which makes rewriting terminate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub lhs: Path,
    pub rhs: Option<Path>,
}

/// A quiver modulo rewrite rules. Normal forms of paths are single paths or
/// zero because every rule has a monomial right-hand side, so the algebra has
/// a basis of irreducible paths once the confluence check passes.
#[derive(Debug, Serialize, Deserialize)]
pub struct PresentedAlgebra {
    pub name: String,
    pub quiver: Quiver,
    pub rules: Vec<RewriteRule>,
}

impl PartialEq for PresentedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.quiver == other.quiver && self.rules == other.rules
    }
}
impl Eq for PresentedAlgebra {}

impl PresentedAlgebra {
    pub fn new(
        name: impl Into<String>,
        quiver: Quiver,
        rules: Vec<RewriteRule>,
    ) -> Result<Alg, PathAlgError> {
        let name = name.into();
        for rule in &rules {
            rule.lhs.validate(&quiver)?;
            if rule.lhs.is_empty() {
                return Err(PathAlgError::BadRule("lhs must have positive length".into()));
            }
            if let Some(rhs) = &rule.rhs {
                rhs.validate(&quiver)?;
                if rhs.term_cmp(&rule.lhs) != std::cmp::Ordering::Less {
                    return Err(PathAlgError::BadRule(format!(
                        "rhs {} is not smaller than lhs {}",
                        rhs.display(&quiver),
                        rule.lhs.display(&quiver)
                    )));
                }
                if rhs.start() != rule.lhs.start() || rhs.end(&quiver) != rule.lhs.end(&quiver) {
                    return Err(PathAlgError::BadRule("endpoints differ across the rule".into()));
                }
                if rhs.grading(&quiver) != rule.lhs.grading(&quiver) {
                    return Err(PathAlgError::BadRule("gradings differ across the rule".into()));
                }
            }
        }
        Ok(Arc::new(PresentedAlgebra { name, quiver, rules }))
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn grading_dim(&self) -> usize {
        self.quiver.grading_dim
    }

    fn rule_match_at(&self, path: &Path, pos: usize) -> Option<usize> {
        self.rules.iter().position(|rule| {
            let k = rule.lhs.len();
            pos + k <= path.len() && path.arrows()[pos..pos + k] == *rule.lhs.arrows()
        })
    }

    /// Exhaustive leftmost rewriting. Returns the irreducible path, or `None`
    /// when the path reduces to zero.
    pub fn normal_form(&self, path: &Path) -> Option<Path> {
        let mut cur = path.clone();
        'outer: loop {
            for pos in 0..=cur.len() {
                if pos == cur.len() {
                    break 'outer;
                }
                if let Some(ridx) = self.rule_match_at(&cur, pos) {
                    let rule = &self.rules[ridx];
                    match &rule.rhs {
                        None => return None,
                        Some(rhs) => {
                            let mut arrows = cur.arrows()[..pos].to_vec();
                            arrows.extend_from_slice(rhs.arrows());
                            arrows.extend_from_slice(&cur.arrows()[pos + rule.lhs.len()..]);
                            cur = if arrows.is_empty() {
                                Path::idempotent(cur.start())
                            } else {
                                Path::from_arrows(&self.quiver, arrows)
                                    .expect("rule preserves endpoints")
                            };
                            continue 'outer;
                        }
                    }
                }
            }
        }
        Some(cur)
    }

    pub fn is_irreducible(&self, path: &Path) -> bool {
        (0..path.len()).all(|pos| self.rule_match_at(path, pos).is_none())
    }

    /// All irreducible paths of length <= `max_len`, in a deterministic order
    /// (by length, then start vertex, then arrow ids).
    pub fn basis(&self, max_len: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut level: Vec<Path> = (0..self.vertex_count()).map(Path::idempotent).collect();
        out.extend(level.iter().cloned());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &level {
                let at = p.end(&self.quiver);
                for (id, a) in self.quiver.arrows.iter().enumerate() {
                    if a.source != at {
                        continue;
                    }
                    let q = p.extended(id);
                    // Prefixes are irreducible, so only matches ending at the
                    // new arrow need checking.
                    let reducible = self.rules.iter().any(|rule| {
                        let k = rule.lhs.len();
                        k <= q.len() && q.arrows()[q.len() - k..] == *rule.lhs.arrows()
                    });
                    if !reducible {
                        next.push(q);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            if next.is_empty() {
                break;
            }
            level = next;
        }
        out
    }

    /// Basis elements grouped by start vertex, for input-sequence chaining.
    pub fn basis_by_start(&self, max_len: usize) -> Vec<Vec<Path>> {
        let mut by_start = vec![Vec::new(); self.vertex_count()];
        for p in self.basis(max_len) {
            by_start[p.start()].push(p);
        }
        by_start
    }

    /// Basis grouped by (left idempotent, right idempotent, grading).
    pub fn graded_basis(
        &self,
        max_len: usize,
    ) -> BTreeMap<(VertexId, VertexId, GradingVec), Vec<Path>> {
        let mut map: BTreeMap<_, Vec<Path>> = BTreeMap::new();
        for p in self.basis(max_len) {
            let key = (p.start(), p.end(&self.quiver), p.grading(&self.quiver));
            map.entry(key).or_default().push(p);
        }
        map
    }

    /// Detects finite-dimensionality by looking for an empty length level.
    pub fn finite_basis_max_len(&self, cap: usize) -> Option<usize> {
        let basis = self.basis(cap + 1);
        let max = basis.iter().map(Path::len).max().unwrap_or(0);
        (max <= cap).then_some(max)
    }

    /// Resolves every overlap of rule left-hand sides with combined length
    /// <= `overlap_bound`, reducing both routes to normal form.
    pub fn check_confluence(&self, overlap_bound: usize) -> ConfluenceReport {
        let mut checked = 0usize;
        for (i1, r1) in self.rules.iter().enumerate() {
            for (i2, r2) in self.rules.iter().enumerate() {
                let l1 = r1.lhs.len();
                let l2 = r2.lhs.len();
                // Suffix of lhs1 overlaps a prefix of lhs2.
                for o in 1..l1.min(l2) {
                    if r1.lhs.arrows()[l1 - o..] != r2.lhs.arrows()[..o] {
                        continue;
                    }
                    let total = l1 + l2 - o;
                    if total > overlap_bound {
                        continue;
                    }
                    let mut arrows = r1.lhs.arrows().to_vec();
                    arrows.extend_from_slice(&r2.lhs.arrows()[o..]);
                    let word = Path::from_arrows(&self.quiver, arrows)
                        .expect("overlapping rules chain");
                    checked += 1;
                    if let Some(fail) = self.check_pair(&word, r1, 0, r2, l1 - o, (i1, i2)) {
                        return ConfluenceReport { checked_pairs: checked, failure: Some(fail) };
                    }
                }
                // lhs2 contained inside lhs1.
                if l2 < l1 && l1 <= overlap_bound {
                    for pos in 0..=l1 - l2 {
                        if r1.lhs.arrows()[pos..pos + l2] == *r2.lhs.arrows() {
                            checked += 1;
                            if let Some(fail) =
                                self.check_pair(&r1.lhs.clone(), r1, 0, r2, pos, (i1, i2))
                            {
                                return ConfluenceReport {
                                    checked_pairs: checked,
                                    failure: Some(fail),
                                };
                            }
                        }
                    }
                }
            }
        }
        ConfluenceReport { checked_pairs: checked, failure: None }
    }

    fn apply_rule_at(&self, word: &Path, rule: &RewriteRule, pos: usize) -> Option<Path> {
        match &rule.rhs {
            None => None,
            Some(rhs) => {
                let mut arrows = word.arrows()[..pos].to_vec();
                arrows.extend_from_slice(rhs.arrows());
                arrows.extend_from_slice(&word.arrows()[pos + rule.lhs.len()..]);
                if arrows.is_empty() {
                    Some(Path::idempotent(word.start()))
                } else {
                    Some(Path::from_arrows(&self.quiver, arrows).expect("rule preserves endpoints"))
                }
            }
        }
    }

    fn check_pair(
        &self,
        word: &Path,
        r1: &RewriteRule,
        pos1: usize,
        r2: &RewriteRule,
        pos2: usize,
        ids: (usize, usize),
    ) -> Option<ConfluenceFailure> {
        let via1 = self.apply_rule_at(word, r1, pos1).and_then(|p| self.normal_form(&p));
        let via2 = self.apply_rule_at(word, r2, pos2).and_then(|p| self.normal_form(&p));
        if via1 == via2 {
            None
        } else {
            Some(ConfluenceFailure {
                overlap: word.clone(),
                rule_indices: ids,
                normal_form_a: via1,
                normal_form_b: via2,
            })
        }
    }

    /// Drops the given vertices and re-presents the corner algebra. Supported
    /// cases: the empty drop set (returns the algebra unchanged) and dropping
    /// the single last vertex whose only incident arrows are one in/out pair;
    /// that pair becomes a primitive loop generator with the induced rules.
    /// Agreement with the literal corner is a separate check
    /// ([`CornerComparison`]), not an assumption.
    pub fn truncate(self: &Alg, keep: &BTreeSet<VertexId>) -> Result<Alg, PathAlgError> {
        let all: BTreeSet<VertexId> = (0..self.vertex_count()).collect();
        if keep.is_empty() {
            return Err(PathAlgError::UnsupportedTruncation("empty idempotent subset".into()));
        }
        if *keep == all {
            return Ok(self.clone());
        }
        let dropped: Vec<VertexId> = all.difference(keep).copied().collect();
        let last = self.vertex_count() - 1;
        if dropped != [last] {
            return Err(PathAlgError::UnsupportedTruncation(
                "only dropping the final vertex is supported".into(),
            ));
        }
        let incident: Vec<ArrowId> = (0..self.quiver.arrows.len())
            .filter(|&id| {
                let a = self.quiver.arrow(id);
                a.source == last || a.target == last
            })
            .collect();
        let [into, outof] = match incident[..] {
            [x, y] if self.quiver.arrow(x).target == last && self.quiver.arrow(y).source == last => {
                [x, y]
            }
            [y, x] if self.quiver.arrow(x).target == last && self.quiver.arrow(y).source == last => {
                [x, y]
            }
            _ => {
                return Err(PathAlgError::UnsupportedTruncation(
                    "final vertex must carry exactly one in/out arrow pair".into(),
                ))
            }
        };
        let hub = self.quiver.arrow(into).source;
        if self.quiver.arrow(outof).target != hub {
            return Err(PathAlgError::UnsupportedTruncation(
                "in/out pair at the final vertex must share the other endpoint".into(),
            ));
        }

        let mut arrows = Vec::new();
        let mut old_to_new: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
        for (id, a) in self.quiver.arrows.iter().enumerate() {
            if id == into || id == outof {
                continue;
            }
            old_to_new.insert(id, arrows.len());
            arrows.push(a.clone());
        }
        let loop_id = arrows.len();
        let loop_grading = self
            .quiver
            .arrow(into)
            .grading
            .add(&self.quiver.arrow(outof).grading)?;
        arrows.push(super::quiver::Arrow {
            name: format!("U{last}"),
            source: hub,
            target: hub,
            grading: loop_grading,
        });
        let quiver = Quiver::new(last, arrows, self.grading_dim())?;

        let translate = |p: &Path, quiver: &Quiver| -> Result<Option<Path>, PathAlgError> {
            // Rewrites the arrow word, turning each `into, outof` pair into
            // the loop; any other use of the dropped arrows is unsupported.
            let mut ids = Vec::new();
            let mut it = p.arrows().iter().peekable();
            while let Some(&id) = it.next() {
                if id == into {
                    if it.peek() == Some(&&outof) {
                        it.next();
                        ids.push(loop_id);
                    } else {
                        return Ok(None);
                    }
                } else if id == outof {
                    return Ok(None);
                } else {
                    ids.push(old_to_new[&id]);
                }
            }
            if ids.is_empty() {
                Ok(Some(Path::idempotent(p.start())))
            } else {
                Ok(Some(Path::from_arrows(quiver, ids)?))
            }
        };

        let mut rules = Vec::new();
        for rule in &self.rules {
            let touches =
                rule.lhs.arrows().contains(&into) || rule.lhs.arrows().contains(&outof);
            if !touches {
                let lhs = translate(&rule.lhs, &quiver)?.expect("no dropped arrows present");
                let rhs = match &rule.rhs {
                    None => None,
                    Some(r) => Some(
                        translate(r, &quiver)?
                            .ok_or_else(|| PathAlgError::UnsupportedTruncation(
                                "rule rhs leaves the corner".into(),
                            ))?,
                    ),
                };
                rules.push(RewriteRule { lhs, rhs });
                continue;
            }
            if rule.rhs.is_some() {
                return Err(PathAlgError::UnsupportedTruncation(
                    "non-monomial rule through the dropped vertex".into(),
                ));
            }
            let arrows = rule.lhs.arrows();
            // x . into -> 0 becomes x . loop -> 0; outof . y -> 0 becomes
            // loop . y -> 0.  (into appearing last, or outof first.)
            if arrows.last() == Some(&into) && !arrows[..arrows.len() - 1].contains(&outof) {
                let mut ids: Vec<ArrowId> = arrows[..arrows.len() - 1]
                    .iter()
                    .map(|a| old_to_new[a])
                    .collect();
                ids.push(loop_id);
                rules.push(RewriteRule { lhs: Path::from_arrows(&quiver, ids)?, rhs: None });
            } else if arrows.first() == Some(&outof) && !arrows[1..].contains(&into) {
                let mut ids = vec![loop_id];
                ids.extend(arrows[1..].iter().map(|a| old_to_new[a]));
                rules.push(RewriteRule { lhs: Path::from_arrows(&quiver, ids)?, rhs: None });
            } else {
                return Err(PathAlgError::UnsupportedTruncation(format!(
                    "rule {} mixes dropped arrows unsupportedly",
                    rule.lhs.display(&self.quiver)
                )));
            }
        }

        PresentedAlgebra::new(format!("{}|corner", self.name), quiver, rules)
    }

    /// Literal corner basis: basis paths of `self` with both endpoints kept.
    pub fn corner_basis(&self, keep: &BTreeSet<VertexId>, max_len: usize) -> Vec<Path> {
        self.basis(max_len)
            .into_iter()
            .filter(|p| keep.contains(&p.start()) && keep.contains(&p.end(&self.quiver)))
            .collect()
    }

    /// Compares the literal corner of `self` with a presented `corner`
    /// algebra, bucketing by (endpoints, grading) for all buckets whose total
    /// scaled degree is at most `scaled_degree_bound`. Both sides are
    /// enumerated far enough that those buckets are complete, provided every
    /// arrow on both sides has total scaled degree >= 2 (true for all
    /// built-in algebras).
    pub fn compare_corner(
        &self,
        keep: &BTreeSet<VertexId>,
        corner: &PresentedAlgebra,
        scaled_degree_bound: i64,
    ) -> CornerComparison {
        let len_bound = (scaled_degree_bound / 2).max(0) as usize;
        let bucket = |paths: Vec<Path>, quiver: &Quiver| {
            let mut map: BTreeMap<(VertexId, VertexId, GradingVec), usize> = BTreeMap::new();
            for p in paths {
                let g = p.grading(quiver);
                if g.scaled_total() <= scaled_degree_bound {
                    *map.entry((p.start(), p.end(quiver), g)).or_default() += 1;
                }
            }
            map
        };
        let lit = bucket(self.corner_basis(keep, len_bound), &self.quiver);
        let pres = bucket(corner.basis(len_bound), &corner.quiver);
        let mut mismatches = Vec::new();
        for key in lit.keys().chain(pres.keys()).collect::<BTreeSet<_>>() {
            let a = lit.get(key).copied().unwrap_or(0);
            let b = pres.get(key).copied().unwrap_or(0);
            if a != b {
                mismatches.push((key.clone(), a, b));
            }
        }
        CornerComparison { buckets_checked: lit.len().max(pres.len()), mismatches }
    }

    /// Same underlying algebra with arrow gradings pushed through `hom`.
    /// With `require_integral`, every image must be integral (used for
    /// rank-one collapses onto Z).
    pub fn collapse_grading(
        &self,
        hom: &GradingHom,
        require_integral: bool,
        new_name: impl Into<String>,
    ) -> Result<Alg, PathAlgError> {
        let mut arrows = Vec::new();
        for a in &self.quiver.arrows {
            let g = hom.apply(&a.grading)?;
            if require_integral {
                g.as_int()?;
            }
            arrows.push(super::quiver::Arrow { grading: g, ..a.clone() });
        }
        let quiver = Quiver::new(self.vertex_count(), arrows, hom.target_dim())?;
        let rules = self.rules.clone();
        PresentedAlgebra::new(new_name, quiver, rules)
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub checked_pairs: usize,
    pub failure: Option<ConfluenceFailure>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceFailure {
    pub overlap: Path,
    pub rule_indices: (usize, usize),
    pub normal_form_a: Option<Path>,
    pub normal_form_b: Option<Path>,
}

#[derive(Clone, Debug)]
pub struct CornerComparison {
    pub buckets_checked: usize,
    pub mismatches: Vec<((VertexId, VertexId, GradingVec), usize, usize)>,
}

impl CornerComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A GF(2) combination of normal-form paths in a fixed algebra. Presence of a
/// path means coefficient 1.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: Alg,
    terms: BTreeSet<Path>,
}

impl AlgebraElement {
    pub fn zero(algebra: &Alg) -> Self {
        AlgebraElement { algebra: algebra.clone(), terms: BTreeSet::new() }
    }

    pub fn idempotent(algebra: &Alg, v: VertexId) -> Self {
        Self::from_path(algebra, Path::idempotent(v))
    }

    /// Unit = sum of all vertex idempotents.
    pub fn unit(algebra: &Alg) -> Self {
        let terms = (0..algebra.vertex_count()).map(Path::idempotent).collect();
        AlgebraElement { algebra: algebra.clone(), terms }
    }

    pub fn from_path(algebra: &Alg, path: Path) -> Self {
        let mut terms = BTreeSet::new();
        if let Some(nf) = algebra.normal_form(&path) {
            terms.insert(nf);
        }
        AlgebraElement { algebra: algebra.clone(), terms }
    }

    pub fn from_paths(algebra: &Alg, paths: impl IntoIterator<Item = Path>) -> Self {
        let mut out = Self::zero(algebra);
        for p in paths {
            out = out
                .plus(&Self::from_path(algebra, p))
                .expect("same algebra by construction");
        }
        out
    }

    pub fn algebra(&self) -> &Alg {
        &self.algebra
    }

    pub fn same_algebra(&self, other: &AlgebraElement) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = &Path> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single_path(&self) -> Option<&Path> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// GF(2) sum: symmetric difference of term sets.
    pub fn plus(&self, other: &AlgebraElement) -> Result<AlgebraElement, PathAlgError> {
        if !self.same_algebra(other) {
            return Err(PathAlgError::CrossAlgebra);
        }
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        Ok(AlgebraElement { algebra: self.algebra.clone(), terms })
    }

    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement, PathAlgError> {
        if !self.same_algebra(other) {
            return Err(PathAlgError::CrossAlgebra);
        }
        let quiver = &self.algebra.quiver;
        let mut terms = BTreeSet::new();
        for p in &self.terms {
            for q in &other.terms {
                if let Some(pq) = p.compose(quiver, q) {
                    if let Some(nf) = self.algebra.normal_form(&pq) {
                        // GF(2): toggle
                        if !terms.remove(&nf) {
                            terms.insert(nf);
                        }
                    }
                }
            }
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), terms })
    }

    pub fn pow(&self, n: usize) -> Result<AlgebraElement, PathAlgError> {
        let mut out = AlgebraElement::unit(&self.algebra);
        for _ in 0..n {
            out = out.multiply(self)?;
        }
        Ok(out)
    }

    /// All terms share endpoints and grading.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_data().is_some()
    }

    pub fn homogeneous_data(&self) -> Option<(VertexId, VertexId, GradingVec)> {
        let quiver = &self.algebra.quiver;
        let mut it = self.terms.iter();
        let first = it.next()?;
        let key = (first.start(), first.end(quiver), first.grading(quiver));
        for p in it {
            if (p.start(), p.end(quiver), p.grading(quiver)) != key {
                return None;
            }
        }
        Some(key)
    }

    /// True when every term is a length-zero path.
    pub fn is_idempotent_sum(&self) -> bool {
        self.terms.iter().all(Path::is_empty)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|p| p.display(&self.algebra.quiver))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl std::fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::constructions::{build_ks_algebra, build_osz_algebras, u_element};
    use crate::pathalg::{Arrow, Quiver};
    use crate::grading::{epsilon_hom, eta_hom};
    use crate::pathalg::parse_path;

    /// Independent reduction oracle: applies every applicable rewrite at
    /// every position, in all orders, and demands a unique terminal value.
    fn oracle_normal_form(alg: &Alg, p: &Path) -> Option<Path> {
        fn step(alg: &Alg, p: &Path) -> Vec<Option<Path>> {
            let mut out = Vec::new();
            for pos in 0..p.len() {
                for rule in &alg.rules {
                    let k = rule.lhs.len();
                    if pos + k <= p.len() && p.arrows()[pos..pos + k] == *rule.lhs.arrows() {
                        out.push(alg.apply_rule_at(p, rule, pos));
                    }
                }
            }
            out
        }
        let mut terminals = BTreeSet::new();
        let mut stack = vec![p.clone()];
        let mut seen = BTreeSet::new();
        while let Some(cur) = stack.pop() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            let nexts = step(alg, &cur);
            if nexts.is_empty() {
                terminals.insert(Some(cur));
            }
            for n in nexts {
                match n {
                    None => {
                        terminals.insert(None);
                    }
                    Some(q) => stack.push(q),
                }
            }
        }
        assert_eq!(terminals.len(), 1, "non-confluent reduction of {:?}", p);
        terminals.into_iter().next().unwrap()
    }

    /// Independent basis oracle: enumerate every raw path up to `max_len`
    /// and collect the distinct nonzero oracle normal forms.
    fn oracle_basis(alg: &Alg, max_len: usize) -> BTreeSet<Path> {
        let mut all: Vec<Path> = (0..alg.vertex_count()).map(Path::idempotent).collect();
        let mut level = all.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &level {
                let at = p.end(&alg.quiver);
                for (id, a) in alg.quiver.arrows.iter().enumerate() {
                    if a.source == at {
                        next.push(p.extended(id));
                    }
                }
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all.into_iter().filter_map(|p| oracle_normal_form(alg, &p)).collect()
    }

    #[test]
    fn zigzag_m2_has_dimension_five() {
        let a = build_ks_algebra(2).unwrap();
        let basis = a.basis(8);
        assert_eq!(basis.len(), 5);
        let oracle = oracle_basis(&a, 6);
        assert_eq!(oracle, basis.into_iter().collect::<BTreeSet<_>>());
    }

    #[test]
    fn zigzag_basis_matches_oracle_and_count() {
        for m in 2..=5 {
            let a = build_ks_algebra(m).unwrap();
            let basis = a.basis(8);
            // idempotents + arrows + one loop per positive vertex
            assert_eq!(basis.len(), 4 * m - 3, "m = {m}");
            let oracle = oracle_basis(&a, 6);
            assert_eq!(oracle, basis.into_iter().collect::<BTreeSet<_>>());
        }
    }

    #[test]
    fn corner_basis_matches_oracle() {
        let algs = build_osz_algebras(3).unwrap();
        let basis: BTreeSet<Path> = algs.cl.basis(4).into_iter().collect();
        let oracle = oracle_basis(&algs.cl, 4);
        let oracle: BTreeSet<Path> = oracle.into_iter().filter(|p| p.len() <= 4).collect();
        let basis: BTreeSet<Path> = basis.into_iter().filter(|p| p.len() <= 4).collect();
        assert_eq!(oracle, basis);
        // length <= 2 paths at the last vertex include both strand loops
        let u3 = u_element(&algs.cl, 3);
        let u2 = u_element(&algs.cl, 2);
        assert!(u3.single_path().is_some());
        assert_eq!(u2.term_count(), 2);
    }

    #[test]
    fn basis_len_zero_is_idempotents() {
        let a = build_ks_algebra(4).unwrap();
        assert_eq!(a.basis(0).len(), 4);
    }

    #[test]
    fn confluence_passes_for_builtins() {
        assert!(build_ks_algebra(5).unwrap().check_confluence(6).passed());
        let algs = build_osz_algebras(4).unwrap();
        assert!(algs.b.check_confluence(6).passed());
        assert!(algs.cl.check_confluence(6).passed());
        assert!(algs.cl_bot.check_confluence(6).passed());
    }

    #[test]
    fn misoriented_rule_fails_confluence() {
        use crate::grading::GradingVec;
        // ups first so the left-leaning loop can rewrite to the right-leaning
        // one, then the vanishing loop at vertex 0 breaks local confluence.
        let arrows = vec![
            Arrow { name: "(0|1)".into(), source: 0, target: 1, grading: GradingVec::from_scaled(vec![0]) },
            Arrow { name: "(1|2)".into(), source: 1, target: 2, grading: GradingVec::from_scaled(vec![0]) },
            Arrow { name: "(1|0)".into(), source: 1, target: 0, grading: GradingVec::from_scaled(vec![0]) },
            Arrow { name: "(2|1)".into(), source: 2, target: 1, grading: GradingVec::from_scaled(vec![0]) },
        ];
        let quiver = Quiver::new(3, arrows, 1).unwrap();
        let p = |s: &str| parse_path(&quiver, s).unwrap();
        let alg = PresentedAlgebra::new(
            "bad",
            quiver.clone(),
            vec![
                RewriteRule { lhs: p("(1|0|1)"), rhs: Some(p("(1|2|1)")) },
                RewriteRule { lhs: p("(0|1|0)"), rhs: None },
            ],
        )
        .unwrap();
        let report = alg.check_confluence(6);
        assert!(!report.passed());
        let fail = report.failure.unwrap();
        // the failing overlap passes through vertex 1
        assert!(fail.overlap.len() >= 3);
    }

    #[test]
    fn multiplication_examples() {
        let m = 4;
        let a = build_ks_algebra(m).unwrap();
        let e = |s: &str| AlgebraElement::from_path(&a, parse_path(&a.quiver, s).unwrap());
        // up-down loop rewrites to the left-leaning loop
        for i in 1..m - 1 {
            let lhs = e(&format!("({i}|{})", i + 1)).multiply(&e(&format!("({}|{i})", i + 1))).unwrap();
            let rhs = e(&format!("({i}|{}|{i})", i - 1));
            assert_eq!(lhs, rhs);
        }
        // the loop at vertex 0 vanishes
        assert!(e("(0|1)").multiply(&e("(1|0)")).unwrap().is_zero());
        // idempotents act as units on matching components
        let x = e("(1|2)");
        assert_eq!(AlgebraElement::idempotent(&a, 1).multiply(&x).unwrap(), x);
        assert_eq!(x.multiply(&AlgebraElement::idempotent(&a, 2)).unwrap(), x);
        assert!(AlgebraElement::idempotent(&a, 0).multiply(&x).unwrap().is_zero());
        assert_eq!(AlgebraElement::unit(&a).multiply(&x).unwrap(), x);

        let algs = build_osz_algebras(3).unwrap();
        let b = &algs.b;
        let be = |s: &str| AlgebraElement::from_path(b, parse_path(&b.quiver, s).unwrap());
        assert!(be("R1").multiply(&be("R2")).unwrap().is_zero());
        assert!(be("L2").multiply(&be("L1")).unwrap().is_zero());
        assert!(!be("R1").multiply(&be("L1")).unwrap().is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let m = 4;
        let a = build_ks_algebra(m).unwrap();
        let p = |s: &str| parse_path(&a.quiver, s).unwrap();
        assert_eq!(a.normal_form(&p("(2|3|2)")), Some(p("(2|1|2)")));
        assert_eq!(a.normal_form(&p("(2)")), Some(p("(2)")));
        assert_eq!(a.normal_form(&p("(0|1|0)")), None);
        // oracle agreement on every raw path of bounded length
        for raw in oracle_basis(&a, 5) {
            assert_eq!(a.normal_form(&raw), Some(raw.clone()));
        }
    }

    #[test]
    fn loop_powers_are_irreducible_in_the_corner() {
        let algs = build_osz_algebras(3).unwrap();
        let cl = &algs.cl;
        let lr = parse_path(&cl.quiver, "L2 R2").unwrap();
        let sq = lr.compose(&cl.quiver, &lr).unwrap();
        assert_eq!(cl.normal_form(&sq), Some(sq.clone()));
        assert_eq!(oracle_normal_form(cl, &sq), Some(sq));
        // powers of the central elements stay nonzero
        for i in 1..=3usize {
            let u = u_element(&algs.b, i);
            for n in 1..=5usize {
                let p = u.pow(n).unwrap();
                assert_eq!(p.term_count(), 2, "U_{i}^{n}");
            }
        }
    }

    #[test]
    fn centrality_of_u_in_b() {
        let algs = build_osz_algebras(3).unwrap();
        let b = &algs.b;
        for i in 1..=3usize {
            let u = u_element(b, i);
            for x in b.basis(4) {
                let x = AlgebraElement::from_path(b, x);
                let lhs = u.multiply(&x).unwrap();
                let rhs = x.multiply(&u).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn grading_additivity_on_products() {
        let algs = build_osz_algebras(3).unwrap();
        let b = &algs.b;
        for x in b.basis(3) {
            for y in b.basis(3) {
                let xe = AlgebraElement::from_path(b, x.clone());
                let ye = AlgebraElement::from_path(b, y.clone());
                let prod = xe.multiply(&ye).unwrap();
                if let Some((_, _, g)) = prod.homogeneous_data() {
                    let expect = x
                        .grading(&b.quiver)
                        .add(&y.grading(&b.quiver))
                        .unwrap();
                    assert_eq!(g, expect);
                }
            }
        }
    }

    #[test]
    fn associativity_small_sweep() {
        let algs = build_osz_algebras(3).unwrap();
        for alg in [&algs.a, &algs.cl] {
            let basis = alg.basis(3);
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        let (x, y, z) = (
                            AlgebraElement::from_path(alg, x.clone()),
                            AlgebraElement::from_path(alg, y.clone()),
                            AlgebraElement::from_path(alg, z.clone()),
                        );
                        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
                        let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn truncate_full_subset_is_identity() {
        let a = build_ks_algebra(3).unwrap();
        let keep: BTreeSet<usize> = (0..3).collect();
        let t = a.truncate(&keep).unwrap();
        assert_eq!(*t, *a);
    }

    #[test]
    fn corner_presentation_matches_literal_corner() {
        for m in 2..=4usize {
            let algs = build_osz_algebras(m).unwrap();
            let keep: BTreeSet<usize> = (0..m).collect();
            let cmp = algs.b.compare_corner(&keep, &algs.cl, 16);
            assert!(cmp.passed(), "m = {m}: {:?}", cmp.mismatches);
            assert!(cmp.buckets_checked > 0);
        }
    }

    #[test]
    fn truncate_rejects_unsupported_subsets() {
        let a = build_ks_algebra(4).unwrap();
        let keep: BTreeSet<usize> = [0, 2, 3].into_iter().collect();
        assert!(a.truncate(&keep).is_err());
        assert!(a.truncate(&BTreeSet::new()).is_err());
    }

    #[test]
    fn grading_collapse_on_the_corner() {
        let m = 3;
        let algs = build_osz_algebras(m).unwrap();
        let quiver = &algs.cl_bot.quiver;
        for a in &quiver.arrows {
            let d = a.grading.as_int().unwrap();
            if a.name.starts_with('R') {
                assert_eq!(d, 0);
            } else {
                // all L arrows and the loop generator sit in degree 1
                assert_eq!(d, 1);
            }
        }
        // identity collapse changes nothing
        let same = algs
            .cl
            .collapse_grading(&crate::grading::GradingHom::identity(2 * m), false, "same")
            .unwrap();
        assert_eq!(same.quiver, algs.cl.quiver);
        // the m-dimensional collapse gives the expected strand weights
        let eta = algs.cl.collapse_grading(&eta_hom(m), false, "eta").unwrap();
        for i in 1..m {
            let u = u_element(&eta, i);
            for t in u.terms() {
                assert_eq!(
                    t.grading(&eta.quiver),
                    crate::grading::GradingVec::scaled_basis(m, i - 1, 4)
                );
            }
        }
        // collapse demanding integrality rejects the half gradings
        assert!(algs.cl.collapse_grading(&eta_hom(m), true, "bad").is_err());
        let _ = epsilon_hom(m);
    }
}
