//! Exact arithmetic for multigradings.
//!
//! Grading vectors live in a free abelian group `Q^d` but every value we ever
//! store is a quarter-integer, so coordinates are kept as integers scaled by 4.
//! The scale covers both the half-integer degrees of algebra generators and
//! the quarter-integer Alexander shifts attached to crossings. Homological
//! degrees are plain integers carried separately.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Fixed denominator for all stored grading coordinates.
pub const SCALE: i64 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-integral value after collapse: {0} (scaled by 4)")]
    NonIntegral(i64),
}

/// An element of a grading group `Q^d`, coordinates scaled by [`SCALE`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradingVec {
    coords: Vec<i64>,
}

impl GradingVec {
    pub fn zero(dim: usize) -> Self {
        GradingVec { coords: vec![0; dim] }
    }

    /// Builds a vector from coordinates already scaled by 4.
    pub fn from_scaled(coords: Vec<i64>) -> Self {
        GradingVec { coords }
    }

    /// `c` times the `idx`-th basis vector, with `c` scaled by 4.
    pub fn scaled_basis(dim: usize, idx: usize, c: i64) -> Self {
        let mut coords = vec![0; dim];
        coords[idx] = c;
        GradingVec { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn scaled_coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GradingVec) -> Result<GradingVec, GradingError> {
        self.check_dim(other.dim())?;
        Ok(GradingVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &GradingVec) -> Result<GradingVec, GradingError> {
        self.check_dim(other.dim())?;
        Ok(GradingVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> GradingVec {
        GradingVec { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Sum of coordinates, scaled by 4. Used for length-style bounds.
    pub fn scaled_total(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// The single coordinate of a rank-one grading, demanding integrality.
    pub fn as_int(&self) -> Result<i64, GradingError> {
        self.check_dim(1)?;
        if self.coords[0] % SCALE != 0 {
            return Err(GradingError::NonIntegral(self.coords[0]));
        }
        Ok(self.coords[0] / SCALE)
    }

    fn check_dim(&self, expected: usize) -> Result<(), GradingError> {
        if self.dim() != expected {
            Err(GradingError::DimensionMismatch { expected, got: self.dim() })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for GradingVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, c) in self.coords.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            if c % SCALE == 0 {
                write!(f, "{}", c / SCALE)?;
            } else if c % 2 == 0 {
                write!(f, "{}/2", c / 2)?;
            } else {
                write!(f, "{c}/4")?;
            }
        }
        write!(f, ")")
    }
}

/// An integer-matrix linear map between grading groups.
///
/// Integer entries preserve the fixed ×4 scaling exactly, and every map in
/// this crate (identity, the two collapse maps, index swaps) is integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingHom {
    pub name: String,
    /// `rows[t][s]` is the coefficient of target coordinate `t` on source
    /// coordinate `s`.
    rows: Vec<Vec<i64>>,
    source_dim: usize,
}

impl GradingHom {
    pub fn new(name: impl Into<String>, rows: Vec<Vec<i64>>, source_dim: usize) -> Self {
        for row in &rows {
            assert_eq!(row.len(), source_dim, "ragged grading-hom matrix");
        }
        GradingHom { name: name.into(), rows, source_dim }
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|t| (0..dim).map(|s| i64::from(s == t)).collect())
            .collect();
        GradingHom::new("id", rows, dim)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn is_identity(&self) -> bool {
        self.rows.len() == self.source_dim
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(t, row)| row.iter().enumerate().all(|(s, &a)| a == i64::from(s == t)))
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, g: &GradingVec) -> Result<GradingVec, GradingError> {
        if g.dim() != self.source_dim {
            return Err(GradingError::DimensionMismatch {
                expected: self.source_dim,
                got: g.dim(),
            });
        }
        Ok(GradingVec {
            coords: self
                .rows
                .iter()
                .map(|row| row.iter().zip(g.scaled_coords()).map(|(a, c)| a * c).sum())
                .collect(),
        })
    }

    /// `self` after `first`, as a single map.
    pub fn compose(&self, first: &GradingHom) -> Result<GradingHom, GradingError> {
        if first.target_dim() != self.source_dim {
            return Err(GradingError::DimensionMismatch {
                expected: self.source_dim,
                got: first.target_dim(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..first.source_dim)
                    .map(|s| {
                        row.iter()
                            .enumerate()
                            .map(|(mid, a)| a * first.rows[mid][s])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(GradingHom::new(
            format!("{}*{}", self.name, first.name),
            rows,
            first.source_dim,
        ))
    }
}

/// Conventions for the refined grading group `Q<tau_1..tau_m, beta_1..beta_m>`:
/// coordinates `0..m` are the tau block, `m..2m` the beta block.
pub fn refined_dim(m: usize) -> usize {
    2 * m
}

/// `tau_i` as a refined grading vector (1-based `i`), scaled by `c`/4.
pub fn tau(m: usize, i: usize, scaled: i64) -> GradingVec {
    assert!((1..=m).contains(&i));
    GradingVec::scaled_basis(refined_dim(m), i - 1, scaled)
}

/// `beta_i` as a refined grading vector (1-based `i`), scaled by `c`/4.
pub fn beta(m: usize, i: usize, scaled: i64) -> GradingVec {
    assert!((1..=m).contains(&i));
    GradingVec::scaled_basis(refined_dim(m), m + i - 1, scaled)
}

/// The collapse `Q^{2m} -> Q^m` sending each `tau_i` and `beta_i` to `e_i`.
pub fn eta_hom(m: usize) -> GradingHom {
    let rows = (0..m)
        .map(|t| {
            (0..2 * m)
                .map(|s| i64::from(s == t || s == m + t))
                .collect()
        })
        .collect();
    GradingHom::new("eta", rows, 2 * m)
}

/// The collapse `(1/2)Z^{2m} -> Z` sending each `beta_i` to 2 and each
/// `tau_i` to 0.
pub fn epsilon_hom(m: usize) -> GradingHom {
    let row = (0..2 * m).map(|s| if s >= m { 2 } else { 0 }).collect();
    GradingHom::new("epsilon", vec![row], 2 * m)
}

/// The swap on `Q^{2m}` exchanging indices `i` and `i+1` in both the tau and
/// beta blocks and fixing everything else (1-based `i`, `i+1 <= m`).
pub fn swap_hom(m: usize, i: usize) -> GradingHom {
    assert!((1..m).contains(&i));
    let perm = |s: usize| -> usize {
        let (block, idx) = (s / m, s % m);
        let idx = if idx == i - 1 {
            i
        } else if idx == i {
            i - 1
        } else {
            idx
        };
        block * m + idx
    };
    let rows = (0..2 * m)
        .map(|t| (0..2 * m).map(|s| i64::from(perm(s) == t)).collect())
        .collect();
    GradingHom::new(format!("swap{i}"), rows, 2 * m)
}

/// The corresponding swap `e_i <-> e_{i+1}` on `Q^m`.
pub fn e_swap_hom(m: usize, i: usize) -> GradingHom {
    assert!((1..m).contains(&i));
    let rows = (0..m)
        .map(|t| {
            (0..m)
                .map(|s| {
                    let s2 = if s == i - 1 {
                        i
                    } else if s == i {
                        i - 1
                    } else {
                        s
                    };
                    i64::from(s2 == t)
                })
                .collect()
        })
        .collect();
    GradingHom::new(format!("eswap{i}"), rows, m)
}

/// Applies `eta` to a refined vector.
pub fn eta(m: usize, g: &GradingVec) -> Result<GradingVec, GradingError> {
    eta_hom(m).apply(g)
}

/// Applies `epsilon`, demanding an integral result.
pub fn epsilon(m: usize, g: &GradingVec) -> Result<i64, GradingError> {
    epsilon_hom(m).apply(g)?.as_int()
}

/// Alexander shift `sign * (e_i + e_{i+1}) / 4` in `Q^m`; `sign = -1` for a
/// positive crossing, `+1` for a negative one.
pub fn alexander_shift(m: usize, i: usize, sign: i64) -> GradingVec {
    let mut coords = vec![0; m];
    coords[i - 1] = sign;
    coords[i] = sign;
    GradingVec::from_scaled(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_on_generator_degrees() {
        let m = 4;
        // deg R_1 = tau_1/2 maps to e_1/2
        let g = tau(m, 1, 2);
        let img = eta(m, &g).unwrap();
        assert_eq!(img, GradingVec::scaled_basis(m, 0, 2));
        // zero maps to zero
        assert!(eta(m, &GradingVec::zero(2 * m)).unwrap().is_zero());
        // deg U_i = (tau_i + beta_i)/2 maps to e_i
        let u2 = tau(m, 2, 2).add(&beta(m, 2, 2)).unwrap();
        assert_eq!(eta(m, &u2).unwrap(), GradingVec::scaled_basis(m, 1, 4));
    }

    #[test]
    fn epsilon_on_generator_degrees() {
        let m = 3;
        assert_eq!(epsilon(m, &beta(m, 2, 2)).unwrap(), 1);
        assert_eq!(epsilon(m, &tau(m, 2, 2)).unwrap(), 0);
        let u = tau(m, 3, 2).add(&beta(m, 3, 2)).unwrap();
        assert_eq!(epsilon(m, &u).unwrap(), 1);
    }

    #[test]
    fn epsilon_rejects_non_integral() {
        let m = 2;
        // beta_1/4 collapses to 1/2, which is not an integer
        let g = beta(m, 1, 1);
        assert!(matches!(epsilon(m, &g), Err(GradingError::NonIntegral(_))));
    }

    #[test]
    fn swap_moves_named_basis_vectors() {
        let m = 4;
        let s = swap_hom(m, 2);
        assert_eq!(s.apply(&tau(m, 2, 4)).unwrap(), tau(m, 3, 4));
        assert_eq!(s.apply(&tau(m, 3, 4)).unwrap(), tau(m, 2, 4));
        assert_eq!(s.apply(&tau(m, 1, 4)).unwrap(), tau(m, 1, 4));
        assert_eq!(s.apply(&beta(m, 4, 4)).unwrap(), beta(m, 4, 4));
        let id = GradingHom::identity(2 * m);
        let g = tau(m, 2, 3).add(&beta(m, 1, 1)).unwrap();
        assert_eq!(id.apply(&g).unwrap(), g);
    }

    #[test]
    fn eta_commutes_with_swaps_on_all_basis_vectors() {
        for m in 2..=5 {
            for i in 1..m {
                let lhs = eta_hom(m).compose(&swap_hom(m, i)).unwrap();
                let rhs = e_swap_hom(m, i).compose(&eta_hom(m)).unwrap();
                for s in 0..2 * m {
                    let v = GradingVec::scaled_basis(2 * m, s, 4);
                    assert_eq!(lhs.apply(&v).unwrap(), rhs.apply(&v).unwrap());
                }
            }
        }
    }

    #[test]
    fn composite_application_matches_composition() {
        let m = 3;
        let f = swap_hom(m, 1);
        let g = eta_hom(m);
        let comp = g.compose(&f).unwrap();
        let v = tau(m, 1, 2).add(&beta(m, 3, 6)).unwrap();
        assert_eq!(
            comp.apply(&v).unwrap(),
            g.apply(&f.apply(&v).unwrap()).unwrap()
        );
    }
}
