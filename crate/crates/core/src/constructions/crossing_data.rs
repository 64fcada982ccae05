//! Operation and grading tables for the strands-side crossing bimodules.
//!
//! All table data for the positive crossing at strand pair (i, i+1) is
//! collected in this one module, in a symbolic form: labels name a moving
//! letter (`R`/`L` at a strand) and an optional `U`-power at a strand, and
//! the idempotent component of each `U`-loop is resolved later from the
//! ambient vertex. The negative table is the formal reverse: arrows flipped,
//! `R` and `L` letters exchanged, two-input arrows with their inputs in the
//! opposite order. Boundary indices are handled by deletion: labels or
//! generators that do not exist at a given (m, i) drop out, taking their
//! arrows with them.
//!
//! Generator grading table (scaled by 4; `t` = tau block, `b` = beta block):
//!
//!   positive:  S = 0,  W = b_i/2,  E = t_{i+1}/2,  N = (b_i + t_{i+1})/2
//!              modified homological degree: S = 0, W = E = N = 1
//!   negative:  S = 0,  W = -t_i/2, E = -b_{i+1}/2, N = -(t_i + b_{i+1})/2
//!              modified homological degree: S = 0, W = E = N = -1
//!
//! Applying the Z-collapse gives 0/1/0/1 (positive) and 0/0/-1/-1
//! (negative); applying the `Q^m`-collapse and the quarter Alexander shift
//! gives the four corner values `(±e_i ± e_{i+1})/4`.

/// Symbolic generator label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G {
    /// Passive generator at a vertex offset from the crossing: `S(d)` with
    /// the vertex given absolutely (0-based).
    S(i64),
    W,
    E,
    N,
}

/// Symbolic moving letter at a strand (1-based). Strand indices are relative
/// offsets from `i` here: `R(0)` means `R_i`, `R(1)` means `R_{i+1}`, and so
/// on; resolution adds `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    R(i64),
    L(i64),
}

/// Symbolic algebra label: optional letter, optional U-power at a strand
/// (relative offset again), with an exponent offset against the family
/// parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pat {
    pub letter: Option<Letter>,
    pub power: Option<(i64, i64)>,
}

impl Pat {
    pub const fn letter(l: Letter) -> Self {
        Pat { letter: Some(l), power: None }
    }
    pub const fn upow(strand: i64) -> Self {
        Pat { letter: None, power: Some((strand, 0)) }
    }
    pub const fn upow_shift(strand: i64, shift: i64) -> Self {
        Pat { letter: None, power: Some((strand, shift)) }
    }
    pub const fn letter_upow(l: Letter, strand: i64) -> Self {
        Pat { letter: Some(l), power: Some((strand, 0)) }
    }
    pub const fn letter_upow_shift(l: Letter, strand: i64, shift: i64) -> Self {
        Pat { letter: Some(l), power: Some((strand, shift)) }
    }

    pub fn swap_letters(self) -> Self {
        Pat {
            letter: self.letter.map(|l| match l {
                Letter::R(a) => Letter::L(a),
                Letter::L(a) => Letter::R(a),
            }),
            power: self.power,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CrossArrowSpec {
    pub src: G,
    pub tgt: G,
    pub out: Pat,
    pub ins: Vec<Pat>,
    pub k_min: i64,
}

fn a(src: G, tgt: G, out: Pat, ins: Vec<Pat>, k_min: i64) -> CrossArrowSpec {
    CrossArrowSpec { src, tgt, out, ins, k_min }
}

/// The positive-crossing operation table at the crossing strands, in
/// relative indexing (`0` = strand i, `1` = strand i+1; `S(-1)`/`S(1)` are
/// placeholders replaced by absolute vertices during resolution).
///
/// Differential part: the half-crossed generators map onto the passive row.
/// One-input part: U-powers pass through the crossing with the two strand
/// indices exchanged; the moving strand enters at `W`/`E` and finishes at
/// `N`. Two-input part: from the passive row the moving strand crosses in
/// two steps.
pub fn positive_crossing_table() -> Vec<CrossArrowSpec> {
    use Letter::{L, R};
    vec![
        // differential
        a(G::W, G::S(-1), Pat::letter(L(0)), vec![], 0),
        a(G::E, G::S(1), Pat::letter(R(1)), vec![], 0),
        // one algebra input
        a(G::W, G::W, Pat::upow(1), vec![Pat::upow(0)], 1),
        a(G::W, G::N, Pat::upow(1), vec![Pat::letter_upow(R(0), 0)], 0),
        a(G::E, G::E, Pat::upow(0), vec![Pat::upow(1)], 1),
        a(G::E, G::N, Pat::upow(0), vec![Pat::letter_upow(L(1), 1)], 0),
        a(G::N, G::N, Pat::upow(1), vec![Pat::upow(0)], 1),
        a(G::N, G::N, Pat::upow(0), vec![Pat::upow(1)], 1),
        a(G::N, G::W, Pat::upow_shift(1, 1), vec![Pat::letter_upow(L(0), 0)], 0),
        a(G::N, G::E, Pat::upow_shift(0, 1), vec![Pat::letter_upow(R(1), 1)], 0),
        // two algebra inputs
        a(
            G::S(-1),
            G::E,
            Pat::letter_upow(R(0), 0),
            vec![Pat::letter(R(0)), Pat::letter_upow(R(1), 1)],
            0,
        ),
        a(
            G::S(-1),
            G::N,
            Pat::letter_upow_shift(R(0), 0, -1),
            vec![Pat::letter(R(0)), Pat::upow(1)],
            1,
        ),
        a(
            G::S(1),
            G::W,
            Pat::letter_upow(L(1), 1),
            vec![Pat::letter(L(1)), Pat::letter_upow(L(0), 0)],
            0,
        ),
        a(
            G::S(1),
            G::N,
            Pat::letter_upow_shift(L(1), 1, -1),
            vec![Pat::letter(L(1)), Pat::upow(0)],
            1,
        ),
    ]
}

/// Formal reverse of a table: arrows flipped, letters swapped, two-input
/// rows with inputs in the opposite order.
pub fn reverse_table(table: Vec<CrossArrowSpec>) -> Vec<CrossArrowSpec> {
    table
        .into_iter()
        .map(|mut spec| {
            std::mem::swap(&mut spec.src, &mut spec.tgt);
            spec.out = spec.out.swap_letters();
            let mut ins: Vec<Pat> = spec.ins.into_iter().map(Pat::swap_letters).collect();
            ins.reverse();
            spec.ins = ins;
            spec
        })
        .collect()
}
