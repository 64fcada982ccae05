//! Parsing of path words and rewrite rules from text.
//!
//! Two syntaxes: vertex notation `(0|1|0)` (idempotent `(3)`), and
//! space-separated arrow names `R1 L1 U2`. A rule is `lhs -> rhs` with `0`
//! for a vanishing right-hand side.

use super::quiver::{Path, Quiver};
use super::{PathAlgError, RewriteRule};

pub fn parse_path(quiver: &Quiver, text: &str) -> Result<Path, PathAlgError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(PathAlgError::Parse("empty path".into()));
    }
    if text.starts_with('(') && text.ends_with(')') && !text.contains(' ') {
        let inner = &text[1..text.len() - 1];
        let verts: Result<Vec<usize>, _> = inner.split('|').map(|s| s.trim().parse::<usize>()).collect();
        let verts = verts.map_err(|e| PathAlgError::Parse(format!("bad vertex in {text}: {e}")))?;
        if verts.is_empty() {
            return Err(PathAlgError::Parse(format!("no vertices in {text}")));
        }
        if verts.len() == 1 {
            if verts[0] >= quiver.vertex_count {
                return Err(PathAlgError::Parse(format!("vertex {} out of range", verts[0])));
            }
            return Ok(Path::idempotent(verts[0]));
        }
        let mut arrows = Vec::new();
        for w in verts.windows(2) {
            let id = quiver.arrow_between(w[0], w[1]).ok_or_else(|| {
                PathAlgError::Parse(format!("no arrow from {} to {}", w[0], w[1]))
            })?;
            arrows.push(id);
        }
        return Path::from_arrows(quiver, arrows);
    }
    let mut arrows = Vec::new();
    for tok in text.split_whitespace() {
        let id = quiver
            .arrow_by_name(tok)
            .ok_or_else(|| PathAlgError::Parse(format!("unknown arrow name {tok}")))?;
        arrows.push(id);
    }
    Path::from_arrows(quiver, arrows)
}

pub fn parse_rule(quiver: &Quiver, text: &str) -> Result<RewriteRule, PathAlgError> {
    let (lhs, rhs) = text
        .split_once("->")
        .ok_or_else(|| PathAlgError::Parse(format!("rule {text} is missing ->")))?;
    let lhs = parse_path(quiver, lhs)?;
    let rhs = rhs.trim();
    let rhs = if rhs == "0" { None } else { Some(parse_path(quiver, rhs)?) };
    Ok(RewriteRule { lhs, rhs })
}
