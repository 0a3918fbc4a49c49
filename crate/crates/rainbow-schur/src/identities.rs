//! Independent algebraic cross-checks over Z_n and the hypercube.
//!
//! The counting machinery elsewhere in the crate is combinatorial; this
//! module carries two closed-form identities over the cyclic group and one
//! hypercube objective, each provable in three lines and therefore usable
//! as an external consistency oracle for the counters.
//!
//! Over Z_n, count ordered pairs (x, y) — degenerate ones included — and
//! classify the triple (x, y, x + y) by the colors it sees.  Writing f for
//! the indicator of one class of a 2-coloring {R, B} and expanding
//! (1-f)(1-f)(1-f) over all n^2 pairs:
//!
//! ```text
//!   mono = n^2 - 3n|R| + 3|R|^2,   hence   mono * n = |R|^3 + |B|^3
//! ```
//!
//! — the *cube-sum identity*.  For any coloring, counting the pairs with
//! c(x) = c(y), c(x) = c(x+y), c(y) = c(x+y) each gives sum |C_i|^2
//! (translates of a class cover Z_n evenly), while monochromatic triples
//! carry three equalities, bichromatic exactly one, rainbow none:
//!
//! ```text
//!   3 * mono + bi = 3 * sum |C_i|^2,   so   2 * mono = 3 * sum |C_i|^2 - n^2 + rainbow
//! ```
//!
//! — the *class-squares identity*.  Both hold for every n and every
//! coloring, with no error term, so a single failing instance indicts the
//! counter, not the instance.
//!
//! On the hypercube {0,1}^n, [`distinct_mono_objective`] is the classical
//! minimization objective for 2-colorings of [n]: monochromatic Schur
//! triples with distinct summands, counted once per unordered pair.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A coloring of the residues of Z_n with colors 1..=num_colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicColoring {
    num_colors: u8,
    colors: Vec<u8>,
}

impl CyclicColoring {
    /// `colors[x]` colors the residue x; values must lie in 1..=num_colors,
    /// with 2 or 3 colors available.
    pub fn new(colors: Vec<u8>, num_colors: u8) -> Result<Self> {
        if colors.is_empty() {
            return Err(Error::InvalidArgument("Z_0 has no residues to color".into()));
        }
        if !(2..=3).contains(&num_colors) {
            return Err(Error::InvalidArgument(format!(
                "cyclic colorings use 2 or 3 colors, got {num_colors}"
            )));
        }
        for (position, &value) in colors.iter().enumerate() {
            if value == 0 || value > num_colors {
                return Err(Error::InvalidColor { position, value, max: num_colors });
            }
        }
        Ok(Self { num_colors, colors })
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn num_colors(&self) -> u8 {
        self.num_colors
    }

    /// Color of residue x (0-based, x < n).
    pub fn color(&self, x: usize) -> u8 {
        self.colors[x]
    }

    /// Class sizes indexed by color - 1; unused colors report 0.
    pub fn class_sizes(&self) -> [u64; 3] {
        let mut sizes = [0u64; 3];
        for &c in &self.colors {
            sizes[(c - 1) as usize] += 1;
        }
        sizes
    }
}

/// Census of the n^2 ordered pairs (x, y) of Z_n by the colors of
/// (x, y, x + y).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZnCounts {
    pub total: u64,
    pub mono: u64,
    pub rainbow: u64,
}

/// Exact (mono, rainbow) census over Z_n, degenerate pairs included.
pub fn count_zn_triples(coloring: &CyclicColoring) -> ZnCounts {
    let n = coloring.n();
    let mut mono = 0;
    let mut rainbow = 0;
    for x in 0..n {
        let a = coloring.color(x);
        for y in 0..n {
            let b = coloring.color(y);
            let c = coloring.color((x + y) % n);
            mono += u64::from(a == b && b == c);
            rainbow += u64::from(a != b && b != c && a != c);
        }
    }
    ZnCounts { total: (n * n) as u64, mono, rainbow }
}

/// One identity instance: both sides evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
    pub counts: ZnCounts,
}

fn report(lhs: u128, rhs: u128, counts: ZnCounts) -> IdentityCheck {
    IdentityCheck { lhs, rhs, holds: lhs == rhs, counts }
}

/// Cube-sum identity for 2-colorings of Z_n: mono * n = |R|^3 + |B|^3.
pub fn check_cube_sum(coloring: &CyclicColoring) -> Result<IdentityCheck> {
    if coloring.num_colors() != 2 {
        return Err(Error::InvalidArgument(format!(
            "the cube-sum identity is stated for 2-colorings, got {} colors",
            coloring.num_colors()
        )));
    }
    let counts = count_zn_triples(coloring);
    let lhs = u128::from(counts.mono) * coloring.n() as u128;
    let rhs: u128 = coloring
        .class_sizes()
        .iter()
        .map(|&s| u128::from(s).pow(3))
        .sum();
    Ok(report(lhs, rhs, counts))
}

/// Class-squares identity, any coloring of Z_n:
/// 2 * mono = 3 * sum |C_i|^2 - n^2 + rainbow.
pub fn check_class_squares(coloring: &CyclicColoring) -> IdentityCheck {
    let counts = count_zn_triples(coloring);
    let lhs = 2 * u128::from(counts.mono);
    let squares: u128 = coloring
        .class_sizes()
        .iter()
        .map(|&s| u128::from(s) * u128::from(s))
        .sum();
    let n2 = (coloring.n() as u128).pow(2);
    let rhs = 3 * squares - n2 + u128::from(counts.rainbow);
    report(lhs, rhs, counts)
}

/// Monochromatic Schur triples of [n] with distinct summands, one count
/// per unordered pair: #{(i, j) : i < j, i + j <= n, x_i = x_j = x_{i+j}}.
///
/// `x[i - 1]` is the (two-valued) color of i.
pub fn distinct_mono_objective(x: &[bool]) -> u64 {
    let n = x.len();
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let z = i + j;
            if z > n {
                break;
            }
            count += u64::from(x[i - 1] == x[j - 1] && x[j - 1] == x[z - 1]);
        }
    }
    count
}
