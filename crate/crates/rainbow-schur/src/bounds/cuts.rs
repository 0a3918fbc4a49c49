//! Extraction of the proof thresholds (z0, k0, Z) from concrete colorings.
//!
//! Write L = sum_z r(z)·(n+1-z) — by the fiber identity this is the rainbow
//! triangle count of the induced K_{n+1} coloring, so L is also bounded by
//! the known 2/5 triangle ceiling.  The *simple cut* picks the maximal z0
//! with
//!
//! ```text
//! L <= sum_{z >= z0} (z-1)(n+1-z),
//! ```
//!
//! and the reweighing lemma then converts the weighted comparison into the
//! unweighted bound  rainbow <= sum_{z >= z0} (z-1).
//!
//! The *nuanced cut* additionally fixes a floor k0 >= 1 and singles out
//! Z = { z >= z0 : nr(z) >= k0 }, the slices already carrying k0 non-rainbow
//! triples.  Majorizing r by f0(z) = (z-1) - k0·[z in Z] sharpens both sides:
//! z0 becomes the maximal value with
//!
//! ```text
//! L <= sum_{z >= z0} f0(z)·(n+1-z),
//! ```
//!
//! and the conclusion tightens to  rainbow <= sum_{z >= z0}(z-1) - k0·|Z|.
//! Note that membership of z in Z is a property of z alone (nr(z) >= k0);
//! z0 only moves the summation range, so one backward suffix scan finds the
//! maximal z0 exactly — no fixed-point iteration.
//!
//! Witness bookkeeping for the covering argument: below z0 the colors
//! partition [z0-1] into sets C'_i; at or above z0 the non-Z elements split
//! into C_1, C_2, C_3 by color.  If C_i is nonempty with largest element
//! z_i, every other member w of C_i or C'_i pairs with z_i in the non-rainbow
//! triple (w, z_i - w, z_i) — two entries share color i — and distinct w give
//! distinct triples, so nr(z_i) >= |C_i| + |C'_i| - 1.  Since z_i lies
//! outside Z this forces |C_i| + |C'_i| <= k0.  (Empty C_i carries no such
//! certificate: max over the empty set is the -inf sentinel and the
//! inequality is simply not asserted.)  Counting [n] along the partition
//! yields the integer covering disjunction
//!
//! ```text
//! n <= z0 + |Z| + 2·k0    or    n <= |Z| + 3·k0,
//! ```
//!
//! — the first when some C_i is empty, the second when all three are
//! occupied.  Scaled by n this is the (alpha, beta, gamma) disjunction the
//! continuous solver consumes, here with no o(1) slack at all.

use serde::{Deserialize, Serialize};

use crate::schur::{Coloring, TripleStats};
use crate::{Error, Result};

/// Per-color covering witnesses of a nuanced cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutColorWitness {
    /// C'_i: elements z < z0 of color i.
    pub below: Vec<usize>,
    /// C_i: elements z >= z0, z not in Z, of color i.
    pub above: Vec<usize>,
    /// z_i = max C_i; `None` is the max-of-empty-set sentinel (-inf).
    pub z_i: Option<usize>,
    /// |C'_i| + |C_i| <= k0, asserted only when C_i is nonempty.
    pub occupancy_bounded: bool,
}

/// Thresholds extracted from one coloring, with exact integer bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofCut {
    pub n: usize,
    /// Maximal threshold satisfying the defining weighted inequality.
    pub z0: usize,
    /// Non-rainbow floor; 0 in the simple cut.
    pub k0: u64,
    /// Z = { z >= z0 : nr(z) >= k0 }, increasing; empty in the simple cut.
    pub z_set: Vec<usize>,
    /// alpha = z0/n, beta = |Z|/n, gamma = k0/n.
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// L = sum_z r(z)(n+1-z).
    pub weighted_lhs: u128,
    /// sum_{z >= z0} f0(z)(n+1-z) at the chosen z0 (>= L by construction).
    pub weighted_rhs: u128,
    /// The unweighted conclusion: sum_{z >= z0}(z-1) - k0·|Z|.
    pub rainbow_bound: u128,
    /// Covering witnesses; `None` for the simple cut (no colors involved).
    pub witnesses: Option<[CutColorWitness; 3]>,
}

impl ProofCut {
    /// The integer covering disjunction (first branch, second branch).
    /// At least one must hold for every nuanced cut.
    pub fn cover_disjunction_exact(&self) -> (bool, bool) {
        let n = self.n as u64;
        let first = n <= self.z0 as u64 + self.z_set.len() as u64 + 2 * self.k0;
        let second = n <= self.z_set.len() as u64 + 3 * self.k0;
        (first, second)
    }

    /// The scaled disjunction with an explicit finite-n slack delta:
    /// alpha + beta >= 1 - 2 gamma - delta  or  beta >= 1 - 3 gamma - delta.
    pub fn cover_disjunction_scaled(&self, delta: f64) -> (bool, bool) {
        (
            self.alpha + self.beta >= 1.0 - 2.0 * self.gamma - delta,
            self.beta >= 1.0 - 3.0 * self.gamma - delta,
        )
    }
}

/// L = sum_z r(z)·(n+1-z), the weighted rainbow mass.
fn weighted_rainbow(stats: &TripleStats) -> u128 {
    let n = stats.n as u128;
    stats
        .r_profile
        .iter()
        .enumerate()
        .map(|(idx, &r)| u128::from(r) * (n - idx as u128)) // n+1-z at z = idx+1
        .sum()
}

/// Simple cut: maximal z0 with L <= sum_{z >= z0}(z-1)(n+1-z); k0 = 0, Z empty.
///
/// z0 = 1 always qualifies (r(z) <= z-1 termwise), so the scan cannot fail.
pub fn extract_cut_simple(stats: &TripleStats) -> ProofCut {
    let n = stats.n;
    assert!(n >= 1, "cut extraction needs a nonempty universe");
    let lhs = weighted_rainbow(stats);

    let mut suffix: u128 = 0;
    let mut z0 = 1;
    let mut rhs_at_z0 = 0;
    for z in (1..=n).rev() {
        suffix += (z as u128 - 1) * (n as u128 + 1 - z as u128);
        if lhs <= suffix {
            z0 = z;
            rhs_at_z0 = suffix;
            break;
        }
    }
    let rainbow_bound: u128 = (z0..=n).map(|z| z as u128 - 1).sum();
    ProofCut {
        n,
        z0,
        k0: 0,
        z_set: Vec::new(),
        alpha: z0 as f64 / n as f64,
        beta: 0.0,
        gamma: 0.0,
        weighted_lhs: lhs,
        weighted_rhs: rhs_at_z0,
        rainbow_bound,
        witnesses: None,
    }
}

/// Nuanced cut for a given floor k0 (1 <= k0 <= n): maximal z0 with
/// L <= sum_{z >= z0} f0(z)(n+1-z), f0(z) = (z-1) - k0·[nr(z) >= k0],
/// plus the covering witnesses C'_i, C_i, z_i.
///
/// The coloring must be the one `stats` was computed from; witnesses need
/// the colors themselves, which the profile does not carry.
pub fn extract_cut_nuanced(
    coloring: &Coloring,
    stats: &TripleStats,
    k0: u64,
) -> Result<ProofCut> {
    let n = stats.n;
    if coloring.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: coloring.n() });
    }
    if k0 == 0 || k0 as usize > n {
        return Err(Error::InvalidArgument(format!("k0 = {k0} outside [1, n = {n}]")));
    }
    let lhs = weighted_rainbow(stats);
    let overfull = |z: usize| stats.nr(z) >= k0;

    // f0-terms are nonnegative: z in Z forces z-1 >= nr(z) >= k0.
    let mut suffix: u128 = 0;
    let mut z0 = 1;
    let mut rhs_at_z0 = 0;
    for z in (1..=n).rev() {
        let f0 = (z as u128 - 1) - if overfull(z) { u128::from(k0) } else { 0 };
        suffix += f0 * (n as u128 + 1 - z as u128);
        if lhs <= suffix {
            z0 = z;
            rhs_at_z0 = suffix;
            break;
        }
    }

    let z_set: Vec<usize> = (z0..=n).filter(|&z| overfull(z)).collect();
    let rainbow_bound: u128 =
        (z0..=n).map(|z| z as u128 - 1).sum::<u128>() - u128::from(k0) * z_set.len() as u128;

    let witnesses = std::array::from_fn(|color_idx| {
        let color = color_idx as u8 + 1;
        let below: Vec<usize> = (1..z0).filter(|&z| coloring.color(z) == color).collect();
        let above: Vec<usize> = (z0..=n)
            .filter(|&z| !overfull(z) && coloring.color(z) == color)
            .collect();
        let z_i = above.last().copied();
        // nr(z_i) <= k0 - 1 pins the joint occupancy whenever C_i is occupied.
        let occupancy_bounded = match z_i {
            Some(_) => (below.len() + above.len()) as u64 <= k0,
            None => true,
        };
        CutColorWitness { below, above, z_i, occupancy_bounded }
    });

    Ok(ProofCut {
        n,
        z0,
        k0,
        alpha: z0 as f64 / n as f64,
        beta: z_set.len() as f64 / n as f64,
        gamma: k0 as f64 / n as f64,
        z_set,
        weighted_lhs: lhs,
        weighted_rhs: rhs_at_z0,
        rainbow_bound,
        witnesses: Some(witnesses),
    })
}
