//! Colorings of [n] and exact classification of ordered Schur triples.
//!
//! A Schur triple is an ordered triple (x, y, z) with x + y = z.  Grouping by
//! the largest element z, the slice S^(z) = { (x, z-x, z) : 1 <= x <= z-1 }
//! has exactly z - 1 members, so the total count is sum_z (z-1) = C(n,2).
//! Writing r(z) for the number of rainbow triples in S^(z) and nr(z) for the
//! rest, r(z) + nr(z) = z - 1 identically; these per-z profiles drive both
//! the triangle correspondence (graphmap) and the proof cuts (bounds).
//!
//! Everything here is exact integer arithmetic.  [`classify`] streams over z
//! without materializing triples and runs the z-slices in parallel, so the
//! O(n^2) pass stays practical up to n = 10^6.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A 3-coloring of [n]: position i (1-based) carries a color in {1, 2, 3}.
///
/// The representation is a dense byte vector; all public indexing is 1-based
/// to match the arithmetic (position = the integer it colors).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Result<Self> {
        for (idx, &c) in colors.iter().enumerate() {
            if !(1..=3).contains(&c) {
                return Err(Error::InvalidColor { position: idx + 1, value: c, max: 3 });
            }
        }
        Ok(Self { colors })
    }

    /// Builds from a 1-based color rule, e.g. `Coloring::from_fn(n, |i| ...)`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> u8) -> Result<Self> {
        Self::new((1..=n).map(f).collect())
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Color of the integer i, 1 <= i <= n.
    pub fn color(&self, i: usize) -> u8 {
        self.colors[i - 1]
    }

    /// Raw colors, entry i-1 holding c(i).
    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    pub fn set_color(&mut self, i: usize, color: u8) -> Result<()> {
        if !(1..=3).contains(&color) {
            return Err(Error::InvalidColor { position: i, value: color, max: 3 });
        }
        self.colors[i - 1] = color;
        Ok(())
    }

    /// Compact form used in checkpoint files and reports: "1323…".
    pub fn to_digit_string(&self) -> String {
        self.colors.iter().map(|&c| char::from(b'0' + c)).collect()
    }

    pub fn from_digit_string(s: &str) -> Result<Self> {
        let colors = s
            .bytes()
            .enumerate()
            .map(|(idx, b)| match b {
                b'1'..=b'3' => Ok(b - b'0'),
                _ => Err(Error::InvalidColor { position: idx + 1, value: b.wrapping_sub(b'0'), max: 3 }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { colors })
    }

    /// Sizes of the three color classes, indexed by color - 1.
    pub fn class_sizes(&self) -> [usize; 3] {
        let mut sizes = [0usize; 3];
        for &c in &self.colors {
            sizes[usize::from(c) - 1] += 1;
        }
        sizes
    }
}

impl std::fmt::Debug for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coloring({})", self.to_digit_string())
    }
}

/// Ordered triple (x, y, z) with x + y = z; (x, y, z) != (y, x, z) when x != y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchurTriple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl SchurTriple {
    pub fn new(x: usize, y: usize, z: usize) -> Result<Self> {
        if x == 0 || y == 0 || x + y != z {
            return Err(Error::InvalidArgument(format!(
                "({x}, {y}, {z}) is not a Schur triple: need x, y >= 1 and x + y = z"
            )));
        }
        Ok(Self { x, y, z })
    }
}

/// Number of ordered Schur triples in [n]: C(n,2).
pub fn count_total_triples(n: usize) -> u64 {
    let n = n as u64;
    n * (n - 1) / 2
}

/// The z - 1 triples of S^(z) in increasing x: (1, z-1, z), (2, z-2, z), …
pub fn triples_with_max(n: usize, z: usize) -> Result<impl Iterator<Item = SchurTriple>> {
    if z == 0 || z > n {
        return Err(Error::InvalidArgument(format!("z = {z} outside [1, {n}]")));
    }
    Ok((1..z).map(move |x| SchurTriple { x, y: z - x, z }))
}

/// Exact color census of all C(n,2) ordered Schur triples.
///
/// Profiles are 1-based in spirit: `r_profile[z - 1]` is r(z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleStats {
    pub n: usize,
    pub total: u64,
    pub rainbow: u64,
    pub mono: u64,
    pub bichromatic: u64,
    pub r_profile: Vec<u64>,
    pub nr_profile: Vec<u64>,
}

impl TripleStats {
    /// r(z) — rainbow triples with largest element z.
    pub fn r(&self, z: usize) -> u64 {
        self.r_profile[z - 1]
    }

    /// nr(z) = (z - 1) - r(z).
    pub fn nr(&self, z: usize) -> u64 {
        self.nr_profile[z - 1]
    }
}

/// Rainbow/mono counts for one z-slice.
///
/// With k = c(z) and colors in {1,2,3}, the pair (a, b) = (c(x), c(z-x))
/// completes a rainbow triple iff a != b and a + b = 6 - k: two distinct
/// colors other than k must be exactly the complementary pair.  The backward
/// partner sequence c(z-1), c(z-2), … is read from a pre-reversed copy so
/// both operands stream forward (keeps the byte loop vectorizable).
fn scan_slice(colors: &[u8], reversed: &[u8], z: usize) -> (u64, u64) {
    let n = colors.len();
    let k = colors[z - 1];
    let want = 6 - k;
    let heads = &colors[..z - 1];
    let tails = &reversed[n + 1 - z..n];
    let mut rainbow = 0u64;
    let mut mono = 0u64;
    for (&a, &b) in heads.iter().zip(tails) {
        rainbow += u64::from(a != b && a + b == want);
        mono += u64::from(a == k && b == k);
    }
    (rainbow, mono)
}

/// Classifies every ordered Schur triple of the coloring, exactly.
///
/// Streaming: O(n^2) time over the z-slices, O(n) memory beyond the output
/// profiles, parallel over z.  No triple list is ever materialized.
pub fn classify(coloring: &Coloring) -> TripleStats {
    let n = coloring.n();
    let colors = coloring.as_slice();
    let reversed: Vec<u8> = colors.iter().rev().copied().collect();

    let per_z: Vec<(u64, u64)> = (1..=n)
        .into_par_iter()
        .map(|z| if z == 1 { (0, 0) } else { scan_slice(colors, &reversed, z) })
        .collect();

    let mut r_profile = Vec::with_capacity(n);
    let mut nr_profile = Vec::with_capacity(n);
    let (mut rainbow, mut mono) = (0u64, 0u64);
    for (idx, &(r, m)) in per_z.iter().enumerate() {
        let slice_size = idx as u64; // |S^(z)| = z - 1 at z = idx + 1
        r_profile.push(r);
        nr_profile.push(slice_size - r);
        rainbow += r;
        mono += m;
    }
    let total = count_total_triples(n.max(1));
    TripleStats {
        n,
        total,
        rainbow,
        mono,
        bichromatic: total - rainbow - mono,
        r_profile,
        nr_profile,
    }
}

fn is_rainbow(a: u8, b: u8, c: u8) -> bool {
    a != b && b != c && a != c
}

/// Exact change in the rainbow count if position p is recolored.
///
/// Visits only the O(n) triples containing p: as largest element (x, p-x, p),
/// as first summand (p, y, p+y), and as second summand (x, p, p+x).  The
/// degenerate triple (p, p, 2p) holds p twice and is never rainbow, so both
/// summand loops skip it rather than double-count.
pub fn rainbow_delta(coloring: &Coloring, p: usize, new_color: u8) -> i64 {
    let old = coloring.color(p);
    if old == new_color {
        return 0;
    }
    let n = coloring.n();
    let c = |i: usize| coloring.color(i);
    let mut delta = 0i64;
    let gain = |a: u8, b: u8| -> i64 {
        i64::from(is_rainbow(a, b, new_color)) - i64::from(is_rainbow(a, b, old))
    };
    // p = z: partners (x, p - x).
    for x in 1..p {
        delta += gain(c(x), c(p - x));
    }
    // p = x: partners (y, p + y); y = p is the degenerate triple.
    for y in 1..=n.saturating_sub(p) {
        if y != p {
            delta += gain(c(y), c(p + y));
        }
    }
    // p = y: partners (x, x + p); x = p already skipped above.
    for x in 1..=n.saturating_sub(p) {
        if x != p {
            delta += gain(c(x), c(x + p));
        }
    }
    delta
}
