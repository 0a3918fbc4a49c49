//! The reweighing lemma as a checkable object.
//!
//! Let S be a finite set, f, g : S -> R_{>=0}, S0 a subset of S, and
//! f0 : S0 -> R.  If
//!
//! (i)   g > 0 on S \ S0,
//! (ii)  max_{S0} g <= min_{S \ S0} g,
//! (iii) f <= f0 on S0, and
//! (iv)  sum_{S0} f0·g >= sum_S f·g,
//!
//! then sum_S f <= sum_{S0} f0.  Intuition: the complement of S0 carries the
//! heaviest weights, so if the weighted mass of f is already covered by f0 on
//! S0 alone, dropping the weights can only help the f0 side.  Empty S \ S0
//! makes (i)-(ii) vacuous (max/min over the empty set are the usual -inf/+inf
//! sentinels) and the conclusion follows from (iii) directly.
//!
//! [`check_reweigh`] evaluates the four hypotheses and the conclusion on any
//! finite instance over any ordered semiring-like scalar; the property suite
//! feeds it thousands of integer instances whose hypotheses hold by
//! construction, with the conclusion as the oracle.  [`cut_instance`] builds
//! the instance that the rainbow bound actually uses: f = r(z),
//! g(z) = n+1-z, f0(z) = z-1 (minus k0 on the overfull set Z), S0 a suffix.

use num_traits::Zero;

use crate::bounds::cuts::ProofCut;
use crate::schur::TripleStats;
use crate::{Error, Result};

/// A finite instance of the lemma; element s is in S0 iff `in_s0[s]`.
///
/// `f0` entries outside S0 are ignored (keep them zero by convention).
#[derive(Clone, Debug)]
pub struct ReweighInstance<T> {
    pub f: Vec<T>,
    pub g: Vec<T>,
    pub f0: Vec<T>,
    pub in_s0: Vec<bool>,
}

impl<T> ReweighInstance<T> {
    pub fn new(f: Vec<T>, g: Vec<T>, f0: Vec<T>, in_s0: Vec<bool>) -> Result<Self> {
        let len = f.len();
        if g.len() != len || f0.len() != len || in_s0.len() != len {
            return Err(Error::InvalidArgument(format!(
                "instance vectors disagree in length: f {}, g {}, f0 {}, S0 {}",
                len,
                g.len(),
                f0.len(),
                in_s0.len()
            )));
        }
        Ok(Self { f, g, f0, in_s0 })
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}

/// Hypotheses (i)-(iv) and the conclusion, evaluated exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReweighReport<T> {
    /// (i) g positive off S0, (ii) weight split, (iii) majorization, (iv) weighted cover.
    pub hypotheses: [bool; 4],
    pub conclusion_holds: bool,
    /// sum_S f.
    pub lhs: T,
    /// sum_{S0} f0.
    pub rhs: T,
}

impl<T> ReweighReport<T> {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|&h| h)
    }
}

/// Evaluates the lemma on one instance.  Exact over integers; over floats the
/// comparisons inherit float semantics.
pub fn check_reweigh<T>(instance: &ReweighInstance<T>) -> ReweighReport<T>
where
    T: Copy + PartialOrd + Zero + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    let mut g_positive_outside = true;
    let mut max_g_inside: Option<T> = None;
    let mut min_g_outside: Option<T> = None;
    let mut majorized = true;
    let (mut weighted_f, mut weighted_f0) = (T::zero(), T::zero());
    let (mut lhs, mut rhs) = (T::zero(), T::zero());

    for s in 0..instance.len() {
        let (f, g, f0) = (instance.f[s], instance.g[s], instance.f0[s]);
        lhs = lhs + f;
        weighted_f = weighted_f + f * g;
        if instance.in_s0[s] {
            rhs = rhs + f0;
            weighted_f0 = weighted_f0 + f0 * g;
            majorized &= f <= f0;
            max_g_inside = Some(match max_g_inside {
                Some(m) if m >= g => m,
                _ => g,
            });
        } else {
            g_positive_outside &= g > T::zero();
            min_g_outside = Some(match min_g_outside {
                Some(m) if m <= g => m,
                _ => g,
            });
        }
    }

    // Empty sides leave (ii) vacuously true.
    let split = match (max_g_inside, min_g_outside) {
        (Some(hi), Some(lo)) => hi <= lo,
        _ => true,
    };
    ReweighReport {
        hypotheses: [g_positive_outside, split, majorized, weighted_f0 >= weighted_f],
        conclusion_holds: lhs <= rhs,
        lhs,
        rhs,
    }
}

/// The instance behind the rainbow bound: elements are z = 1..n with
/// f = r(z), g(z) = n+1-z, S0 = {z >= z0}, and
/// f0(z) = (z-1) - k0·[z in Z].
///
/// Every hypothesis holds by construction: g decreases from n to 1 so the
/// suffix carries the smallest weights; r(z) <= z-1 always, and on Z the
/// slice already holds nr(z) >= k0 non-rainbow triples so r(z) <= z-1-k0;
/// (iv) is the defining inequality of z0.  The conclusion is exactly
/// rainbow <= sum_{z >= z0}(z-1) - k0·|Z|.
pub fn cut_instance(stats: &TripleStats, cut: &ProofCut) -> ReweighInstance<i128> {
    let n = stats.n;
    let in_z: std::collections::HashSet<usize> = cut.z_set.iter().copied().collect();
    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut f0 = Vec::with_capacity(n);
    let mut in_s0 = Vec::with_capacity(n);
    for z in 1..=n {
        let inside = z >= cut.z0;
        f.push(stats.r(z) as i128);
        g.push((n + 1 - z) as i128);
        f0.push(if inside {
            (z as i128 - 1) - if in_z.contains(&z) { cut.k0 as i128 } else { 0 }
        } else {
            0
        });
        in_s0.push(inside);
    }
    ReweighInstance { f, g, f0, in_s0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    #[test]
    fn identity_instance_is_tight() {
        let f = vec![3i64, 1, 4, 1, 5];
        let inst =
            ReweighInstance::new(f.clone(), vec![2; 5], f.clone(), vec![true; 5]).unwrap();
        let report = check_reweigh(&inst);
        assert!(report.hypotheses_hold());
        assert!(report.conclusion_holds);
        assert_eq!(report.lhs, report.rhs);
    }

    #[test]
    fn empty_complement_sentinels() {
        // S0 = S leaves min over S \ S0 undefined; (i) and (ii) must still pass.
        let inst = ReweighInstance::new(vec![1i64, 2], vec![0, 0], vec![2, 2], vec![true; 2])
            .unwrap();
        let report = check_reweigh(&inst);
        assert!(report.hypotheses_hold());
        assert!(report.conclusion_holds);
    }

    #[test]
    fn violated_majorization_is_reported() {
        let inst =
            ReweighInstance::new(vec![5i64, 0], vec![1, 2], vec![4, 0], vec![true, false])
                .unwrap();
        let report = check_reweigh(&inst);
        assert!(!report.hypotheses[2]);
    }

    /// Instances with hypotheses enforced by construction; the conclusion is
    /// the lemma's claim and must never fail.
    fn random_instance(rng: &mut impl Rng) -> ReweighInstance<i128> {
        let len = rng.gen_range(1..=40);
        let split = rng.gen_range(0..=len); // elements below `split` form S0
        // (ii) by construction: sorted weights, small ones into S0.
        let mut weights: Vec<i128> = (0..len).map(|_| rng.gen_range(1..=100)).collect();
        weights.sort_unstable();
        let f: Vec<i128> = (0..len).map(|_| rng.gen_range(0..=50)).collect();
        // (iii): majorize f pointwise on S0.
        let mut f0: Vec<i128> = (0..len)
            .map(|i| if i < split { f[i] + rng.gen_range(0..=20) } else { 0 })
            .collect();
        let in_s0: Vec<bool> = (0..len).map(|i| i < split).collect();
        // (iv): bump one S0 element until the weighted cover holds.
        let covered: i128 = (0..split).map(|i| f0[i] * weights[i]).sum();
        let demanded: i128 = (0..len).map(|i| f[i] * weights[i]).sum();
        if covered < demanded {
            if split == 0 {
                // S0 empty: (iv) forces f·g to vanish, so blank out f.
                return ReweighInstance::new(vec![0; len], weights, f0, in_s0).unwrap();
            }
            let deficit = demanded - covered;
            f0[0] += deficit / weights[0] + 1;
        }
        ReweighInstance::new(f, weights, f0, in_s0).unwrap()
    }

    #[test]
    fn conclusion_follows_from_hypotheses() {
        let mut rng = StdRng::seed_from_u64(0xC0FFEE);
        let mut checked = 0u32;
        for _ in 0..10_000 {
            let inst = random_instance(&mut rng);
            let report = check_reweigh(&inst);
            assert!(report.hypotheses_hold(), "construction must satisfy hypotheses");
            assert!(
                report.conclusion_holds,
                "lemma violated: lhs {} rhs {} on {:?}",
                report.lhs, report.rhs, inst
            );
            checked += 1;
        }
        assert_eq!(checked, 10_000);
    }
}
