//! Rainbow k-term arithmetic progressions in k-colorings of [n].
//!
//! A k-AP is the unordered tuple (x, x+d, …, x+(k-1)d) with common difference
//! d >= 1.  For fixed d there are n - (k-1)d of them, so the exact total is
//! sum_d (n - (k-1)d) over 1 <= d <= (n-1)/(k-1), which is (1/(2k-2))n^2 up
//! to lower-order terms.  Under a k-coloring an AP is rainbow when its k
//! entries get k distinct colors.
//!
//! Two bounds are made executable:
//!
//! * Lower: the modular coloring i -> (i mod k) + 1 makes an AP rainbow
//!   exactly when gcd(d, k) = 1, so its rainbow fraction tends to phi(k)/k
//!   ([`totient_fraction`], [`modular_rainbow_prediction`]).
//! * Upper: a rainbow AP is determined by its endpoint pair, and both
//!   endpoints share a residue mod k-1 while carrying distinct colors.
//!   Counting such pairs per residue class gives the Cauchy–Schwarz-style
//!   estimate of [`cs_upper_estimate`], an exact upper bound for every
//!   coloring, at most n^2/(2k) + O(k) when the classes are balanced.
//!
//! [`equinumerous_ap3_max`] additionally maximizes rainbow 3-APs over
//! colorings with three equal classes, for comparison against the quoted
//! closed form floor(3m^2/2) on [3m].

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::schur::Coloring;
use crate::{Error, Result};

/// A k-coloring of [n]: entry i-1 holds the color of i, in {1..k}.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KColoring {
    k: u8,
    colors: Vec<u8>,
}

impl KColoring {
    pub fn new(k: u8, colors: Vec<u8>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument("k-colorings need k >= 2".into()));
        }
        for (idx, &c) in colors.iter().enumerate() {
            if c == 0 || c > k {
                return Err(Error::InvalidColor { position: idx + 1, value: c, max: k });
            }
        }
        Ok(Self { k, colors })
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Color of the integer i, 1-based.
    pub fn color(&self, i: usize) -> u8 {
        self.colors[i - 1]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    /// Reinterprets as a 3-coloring when every entry lies in {1,2,3}.
    pub fn into_three_coloring(self) -> Result<Coloring> {
        Coloring::new(self.colors)
    }
}

impl std::fmt::Debug for KColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KColoring(k={}, ", self.k)?;
        for &c in &self.colors {
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Exact AP census of a k-coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApStats {
    pub n: usize,
    pub k: u8,
    pub total_aps: u64,
    pub rainbow_aps: u64,
    /// d -> (APs with difference d, rainbow among them); keys cover every
    /// feasible difference.
    pub per_difference: BTreeMap<usize, (u64, u64)>,
    /// Output of [`cs_upper_estimate`] on the same coloring.
    pub cs_estimate: u64,
}

/// Number of k-APs in [n]: sum over d >= 1 of n - (k-1)d.
pub fn count_aps(n: usize, k: u8) -> u64 {
    let span = usize::from(k) - 1;
    if n == 0 || span == 0 {
        return 0;
    }
    let d_max = (n - 1) / span;
    (1..=d_max).map(|d| (n - span * d) as u64).sum()
}

/// Exact rainbow census over all k-APs; O(n^2 / (k-1)) AP visits, parallel
/// over the common difference.
pub fn classify_aps(coloring: &KColoring) -> ApStats {
    let n = coloring.n();
    let k = coloring.k();
    let span = usize::from(k) - 1;
    let d_max = if n == 0 { 0 } else { (n - 1) / span };

    let rows: Vec<(usize, u64, u64)> = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            let count = (n - span * d) as u64;
            let mut rainbow = 0u64;
            for x in 1..=n - span * d {
                // Distinct colors <=> the color bitmask gathers k bits.
                let mut mask = 0u32;
                let mut ok = true;
                for j in 0..=span {
                    let bit = 1u32 << coloring.color(x + j * d);
                    if mask & bit != 0 {
                        ok = false;
                        break;
                    }
                    mask |= bit;
                }
                rainbow += u64::from(ok);
            }
            (d, count, rainbow)
        })
        .collect();

    let mut per_difference = BTreeMap::new();
    let (mut total, mut rainbow) = (0u64, 0u64);
    for (d, count, rb) in rows {
        total += count;
        rainbow += rb;
        per_difference.insert(d, (count, rb));
    }
    ApStats {
        n,
        k,
        total_aps: total,
        rainbow_aps: rainbow,
        per_difference,
        cs_estimate: cs_upper_estimate(coloring),
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rainbow count of the modular coloring, predicted by coprimality alone:
/// an AP is rainbow under i -> (i mod k) + 1 iff gcd(d, k) = 1, since the
/// residues x, x+d, …, x+(k-1)d exhaust Z_k exactly when d is invertible.
pub fn modular_rainbow_prediction(n: usize, k: u8) -> u64 {
    let span = usize::from(k) - 1;
    if n == 0 {
        return 0;
    }
    (1..=(n - 1) / span.max(1))
        .filter(|&d| gcd(d, usize::from(k)) == 1)
        .map(|d| (n - span * d) as u64)
        .sum()
}

/// phi(k)/k as an exact rational: the asymptotic rainbow fraction of the
/// modular coloring (fraction of differences coprime to k).
pub fn totient_fraction(k: u8) -> Ratio<u64> {
    assert!(k >= 2);
    let k = u64::from(k);
    let mut phi = k;
    let mut rest = k;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            phi = phi / p * (p - 1);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        phi = phi / rest * (rest - 1);
    }
    Ratio::new(phi, k)
}

/// Endpoint-pair upper estimate for rainbow APs.
///
/// Both endpoints of a k-AP are congruent mod k-1, and in a rainbow AP they
/// carry distinct colors; the AP is recoverable from the endpoint pair.  So
/// rainbow_aps <= sum over residues r of the number of bichromatic pairs
/// inside the class { x : x = r (mod k-1) }, which is what this returns.
pub fn cs_upper_estimate(coloring: &KColoring) -> u64 {
    let k = usize::from(coloring.k());
    let modulus = k - 1;
    // sizes[r][i]: elements with residue r and color i+1.
    let mut sizes = vec![vec![0u64; k]; modulus];
    for i in 1..=coloring.n() {
        sizes[i % modulus][usize::from(coloring.color(i)) - 1] += 1;
    }
    sizes
        .iter()
        .map(|class| {
            let sum: u64 = class.iter().sum();
            let squares: u64 = class.iter().map(|&c| c * c).sum();
            (sum * sum - squares) / 2
        })
        .sum()
}

/// The balanced-class ceiling n^2/(2k) that the estimate approaches.
pub fn cs_analytic_ceiling(n: usize, k: u8) -> f64 {
    (n as f64) * (n as f64) / (2.0 * f64::from(k))
}

/// Result of the exhaustive equinumerous 3-AP maximization on [3m].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquinumerousMax {
    pub m: usize,
    pub n: usize,
    pub max_count: u64,
    /// Canonical optimal colorings (first-occurrence labels), class sizes all m.
    pub optima: Vec<Coloring>,
    /// The quoted closed form floor(3m^2/2).
    pub formula: u64,
    pub matches_formula: bool,
}

/// Maximizes rainbow 3-APs over all colorings of [3m] with three classes of
/// size exactly m, by canonical DFS with an optimistic bound.
///
/// Enumeration is canonical under label permutation (position colors never
/// exceed max-used + 1), so reported optima are distinct representatives.
/// The optimistic bound adds floor((w-1)/2) — every AP ending at w — for all
/// uncolored w, which is admissible; branches are pruned only when strictly
/// below the incumbent so ties survive into `optima`.
pub fn equinumerous_ap3_max(m: usize) -> Result<EquinumerousMax> {
    if m == 0 {
        return Err(Error::InvalidArgument("class size m must be positive".into()));
    }
    if m > 6 {
        // 3m = 21 already means ~10^8 canonical leaves before pruning.
        return Err(Error::BudgetExceeded { budget: 6 });
    }
    let n = 3 * m;
    // suffix_potential[t]: APs whose last element exceeds t.
    let mut suffix_potential = vec![0u64; n + 1];
    for t in (0..n).rev() {
        suffix_potential[t] = suffix_potential[t + 1] + ((t + 1 - 1) / 2) as u64;
    }

    struct Dfs {
        m: usize,
        n: usize,
        suffix_potential: Vec<u64>,
        colors: Vec<u8>,
        counts: [usize; 3],
        best: u64,
        optima: Vec<Coloring>,
    }

    impl Dfs {
        /// Rainbow 3-APs (t-2d, t-d, t) completed by coloring position t.
        fn gain(&self, t: usize, c: u8) -> u64 {
            let mut g = 0u64;
            for d in 1..=(t - 1) / 2 {
                let a = self.colors[t - 2 * d - 1];
                let b = self.colors[t - d - 1];
                g += u64::from(a != b && a != c && b != c);
            }
            g
        }

        fn walk(&mut self, t: usize, score: u64, max_used: u8) {
            if t > self.n {
                if score > self.best {
                    self.best = score;
                    self.optima.clear();
                }
                if score == self.best {
                    self.optima.push(
                        Coloring::new(self.colors.clone()).expect("colors in {1,2,3}"),
                    );
                }
                return;
            }
            if score + self.suffix_potential[t - 1] < self.best {
                return;
            }
            let limit = max_used.min(2) + 1;
            for c in 1..=limit {
                if self.counts[usize::from(c) - 1] == self.m {
                    continue;
                }
                let gain = self.gain(t, c);
                self.colors[t - 1] = c;
                self.counts[usize::from(c) - 1] += 1;
                self.walk(t + 1, score + gain, max_used.max(c));
                self.counts[usize::from(c) - 1] -= 1;
            }
            self.colors[t - 1] = 0;
        }
    }

    let mut dfs = Dfs {
        m,
        n,
        suffix_potential,
        colors: vec![0; n],
        counts: [0; 3],
        best: 0,
        optima: Vec::new(),
    };
    dfs.walk(1, 0, 0);

    let formula = (3 * (m as u64) * (m as u64)) / 2;
    Ok(EquinumerousMax {
        m,
        n,
        max_count: dfs.best,
        matches_formula: dfs.best == formula,
        formula,
        optima: dfs.optima,
    })
}
