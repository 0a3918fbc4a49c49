//! Schur triples as fibers of a triangle map on edge-colored K_{n+1}.
//!
//! Color the edges of the complete graph on vertices {1, …, n+1} by the rule
//! c'({u, v}) = c(|u - v|): a difference-invariant coloring induced by the
//! base coloring of [n].  The map
//!
//! ```text
//! f(v1, v2, v3) = (v2 - v1, v3 - v2, v3 - v1)        for v1 < v2 < v3
//! ```
//!
//! sends every triangle to a Schur triple, is surjective, and has fibers of
//! size exactly n + 1 - z (one triangle per translate).  A triangle is
//! rainbow under c' iff its image triple is rainbow under c, which yields the
//! exact identity
//!
//! ```text
//! |T_R| = sum_z r(z) · (n + 1 - z),
//! ```
//!
//! the bridge between triple profiles and triangle counts.  The known
//! asymptotic maximum for rainbow triangles in 3-edge-colorings is 0.4 of all
//! triangles; [`balogh_gap`] reports how far a base coloring sits from that
//! ceiling (a consistency probe — the ceiling is consumed as an external
//! fact, not re-proved).

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::schur::{classify, Coloring, SchurTriple, TripleStats};
use crate::{Error, Result};

/// Difference-invariant edge coloring of K_{n+1} induced by a base coloring.
pub struct InducedEdgeColoring<'a> {
    base: &'a Coloring,
}

impl<'a> InducedEdgeColoring<'a> {
    pub fn new(base: &'a Coloring) -> Self {
        Self { base }
    }

    pub fn n_vertices(&self) -> usize {
        self.base.n() + 1
    }

    /// c'({u, v}) = c(|u - v|); u and v must be distinct vertices.
    pub fn edge_color(&self, u: usize, v: usize) -> u8 {
        debug_assert!(u != v && u >= 1 && v >= 1);
        debug_assert!(u <= self.n_vertices() && v <= self.n_vertices());
        self.base.color(u.abs_diff(v))
    }
}

/// Exact triangle census of the induced coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleStats {
    pub total_triangles: u64,
    pub rainbow_triangles: u64,
}

fn binom3(v: u64) -> u64 {
    if v < 3 {
        0
    } else {
        v * (v - 1) * (v - 2) / 6
    }
}

/// The consecutive-difference map f on ordered triangles.
pub fn map_triangle(v1: usize, v2: usize, v3: usize) -> Result<SchurTriple> {
    if !(v1 < v2 && v2 < v3) {
        return Err(Error::InvalidArgument(format!(
            "triangle vertices must satisfy v1 < v2 < v3, got ({v1}, {v2}, {v3})"
        )));
    }
    SchurTriple::new(v2 - v1, v3 - v2, v3 - v1)
}

/// |f^{-1}(s)| = n + 1 - z: the number of triangles of K_{n+1} mapping to s.
pub fn fiber_size(n: usize, triple: &SchurTriple) -> u64 {
    debug_assert!(triple.z <= n);
    (n + 1 - triple.z) as u64
}

/// Rainbow triangle count via the fiber identity sum_z r(z)(n + 1 - z).
///
/// Never materializes a triangle; O(n^2) through [`classify`].
pub fn count_rainbow_triangles(base: &Coloring) -> TriangleStats {
    count_rainbow_triangles_from_stats(&classify(base))
}

/// Same identity when the triple profile is already available.
pub fn count_rainbow_triangles_from_stats(stats: &TripleStats) -> TriangleStats {
    let n = stats.n as u64;
    let rainbow = stats
        .r_profile
        .iter()
        .enumerate()
        .map(|(idx, &r)| r * (n - idx as u64)) // n + 1 - z at z = idx + 1
        .sum();
    TriangleStats { total_triangles: binom3(n + 1), rainbow_triangles: rainbow }
}

/// Reference O(n^3) scan over all triangles of K_{n+1}.
///
/// Partitioned over v1; the per-worker sums are exact integers, so the total
/// is identical for every worker count.
pub fn count_rainbow_triangles_direct(base: &Coloring) -> TriangleStats {
    let n = base.n();
    let colors = base.as_slice();
    let rainbow: u64 = (1..=n.saturating_sub(1))
        .into_par_iter()
        .map(|v1| {
            let mut local = 0u64;
            for v2 in v1 + 1..=n {
                let a = colors[v2 - v1 - 1];
                for v3 in v2 + 1..=n + 1 {
                    let b = colors[v3 - v2 - 1];
                    let c = colors[v3 - v1 - 1];
                    local += u64::from(a != b && b != c && a != c);
                }
            }
            local
        })
        .sum();
    TriangleStats { total_triangles: binom3(n as u64 + 1), rainbow_triangles: rainbow }
}

/// Rainbow share of all triangles, exact; compare against the 2/5 ceiling.
pub fn balogh_gap(base: &Coloring) -> Ratio<u64> {
    let stats = count_rainbow_triangles(base);
    if stats.total_triangles == 0 {
        return Ratio::new(0, 1);
    }
    Ratio::new(stats.rainbow_triangles, stats.total_triangles)
}
