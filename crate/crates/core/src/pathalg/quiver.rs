use serde::{Deserialize, Serialize};

use crate::grading::GradingVec;

use super::PathAlgError;

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub grading: GradingVec,
}

/// A finite quiver with graded arrows. Loops are allowed. The position of an
/// arrow in `arrows` is its [`ArrowId`]; the term order on paths compares
/// these ids lexicographically, so construction order fixes the orientation
/// of same-length rewrite rules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
    pub grading_dim: usize,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>, grading_dim: usize) -> Result<Self, PathAlgError> {
        if vertex_count == 0 {
            return Err(PathAlgError::BadPresentation("quiver needs at least one vertex".into()));
        }
        let mut names = std::collections::BTreeSet::new();
        for a in &arrows {
            if !names.insert(a.name.clone()) {
                return Err(PathAlgError::BadPresentation(format!("duplicate arrow name {}", a.name)));
            }
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(PathAlgError::BadPresentation(format!("arrow {} out of range", a.name)));
            }
            if a.grading.dim() != grading_dim {
                return Err(PathAlgError::BadPresentation(format!(
                    "arrow {} has grading dimension {}, expected {grading_dim}",
                    a.name,
                    a.grading.dim()
                )));
            }
        }
        Ok(Quiver { vertex_count, arrows, grading_dim })
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_between(&self, source: VertexId, target: VertexId) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.source == source && a.target == target)
    }
}

/// A directed path: a start vertex and a composable arrow sequence. The empty
/// sequence is the idempotent at the start vertex. Composition is written
/// left-to-right: `p.compose(q)` traverses `p` first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    start: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn idempotent(v: VertexId) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<ArrowId>) -> Result<Self, PathAlgError> {
        if arrows.is_empty() {
            return Err(PathAlgError::BadPath("empty arrow list has no start vertex".into()));
        }
        let start = quiver.arrow(arrows[0]).source;
        let p = Path { start, arrows };
        p.validate(quiver)?;
        Ok(p)
    }

    pub fn validate(&self, quiver: &Quiver) -> Result<(), PathAlgError> {
        if self.start >= quiver.vertex_count {
            return Err(PathAlgError::BadPath(format!("start vertex {} out of range", self.start)));
        }
        let mut at = self.start;
        for &id in &self.arrows {
            let a = quiver
                .arrows
                .get(id)
                .ok_or_else(|| PathAlgError::BadPath(format!("arrow id {id} out of range")))?;
            if a.source != at {
                return Err(PathAlgError::BadPath(format!(
                    "arrow {} starts at {} but path is at {at}",
                    a.name, a.source
                )));
            }
            at = a.target;
        }
        Ok(())
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self, quiver: &Quiver) -> VertexId {
        self.arrows.last().map_or(self.start, |&id| quiver.arrow(id).target)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn grading(&self, quiver: &Quiver) -> GradingVec {
        let mut g = GradingVec::zero(quiver.grading_dim);
        for &id in &self.arrows {
            g = g.add(&quiver.arrow(id).grading).expect("quiver gradings share a dimension");
        }
        g
    }

    /// Left-to-right concatenation; `None` when endpoints do not chain.
    pub fn compose(&self, quiver: &Quiver, other: &Path) -> Option<Path> {
        if self.end(quiver) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, arrows })
    }

    pub fn extended(&self, arrow: ArrowId) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path { start: self.start, arrows }
    }

    pub fn subpath(&self, quiver: &Quiver, pos: usize, len: usize) -> Path {
        let mut at = self.start;
        for &id in &self.arrows[..pos] {
            at = quiver.arrow(id).target;
        }
        Path { start: at, arrows: self.arrows[pos..pos + len].to_vec() }
    }

    /// Length-then-lexicographic term order used to orient rewrite rules.
    pub fn term_cmp(&self, other: &Path) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.arrows.cmp(&other.arrows))
    }

    /// Renders via arrow names; pipe-style names `(a|b)` merge into the
    /// vertex-sequence notation.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("({})", self.start);
        }
        let all_pipey = self.arrows.iter().all(|&id| {
            let n = &quiver.arrow(id).name;
            n.starts_with('(') && n.contains('|')
        });
        if all_pipey {
            let mut s = format!("({}", self.start);
            for &id in &self.arrows {
                s.push('|');
                s.push_str(&quiver.arrow(id).target.to_string());
            }
            s.push(')');
            s
        } else {
            self.arrows
                .iter()
                .map(|&id| quiver.arrow(id).name.clone())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl std::fmt::Debug for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Path[{} via {:?}]", self.start, self.arrows)
    }
}
