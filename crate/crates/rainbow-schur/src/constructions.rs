//! Named colorings: the 0.4 lower-bound coloring c0 and parametric families.
//!
//! The coloring c0 mixes an interval rule with a parity rule:
//!
//! ```text
//! c0(i) = 1  if i odd and 5i <= 2n,
//!         2  if i odd and 5i >  2n,
//!         3  if i even.
//! ```
//!
//! Color 3 takes the even numbers, and the odd numbers split at 2n/5.  A
//! rainbow triple then needs one entry from each class; the interval split is
//! tuned so the rainbow fraction tends to 2/5.  The threshold is evaluated as
//! the integer inequality 5i <= 2n — no floating-point boundary cases.
//!
//! Modular colorings i -> (i mod k) + 1 serve the AP module (every k-AP whose
//! difference is coprime to k is rainbow under them); interval and constant
//! colorings round out the test vocabulary.

use num_rational::Ratio;

use crate::ap::KColoring;
use crate::schur::{classify, count_total_triples, Coloring};
use crate::{Error, Result};

/// A named coloring family, addressable from the command line
/// (`c0`, `mod:k`, `const:c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionId {
    C0,
    Modular { k: u8 },
    /// Breakpoints b_1 < … < b_m split [n] into [1, b_1], (b_1, b_2], …, (b_m, n];
    /// `colors[j]` paints the j-th interval.
    Interval { breakpoints: Vec<usize>, colors: Vec<u8> },
    Constant { color: u8 },
}

impl ConstructionId {
    /// Realizes the construction as a 3-coloring of [n].
    pub fn build(&self, n: usize) -> Result<Coloring> {
        match self {
            Self::C0 => Ok(build_c0(n)),
            Self::Modular { k } => {
                if *k > 3 {
                    return Err(Error::InvalidArgument(format!(
                        "mod:{k} uses {k} colors; a 3-coloring context allows k <= 3"
                    )));
                }
                build_modular(n, *k)?.into_three_coloring()
            }
            Self::Interval { breakpoints, colors } => build_interval(n, breakpoints, colors),
            Self::Constant { color } => Coloring::new(vec![*color; n]),
        }
    }

    /// Realizes the construction as a k-coloring (for the AP module).
    pub fn build_k(&self, n: usize) -> Result<KColoring> {
        match self {
            Self::Modular { k } => build_modular(n, *k),
            _ => {
                let col = self.build(n)?;
                KColoring::new(3, col.as_slice().to_vec())
            }
        }
    }
}

impl std::str::FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "c0" {
            return Ok(Self::C0);
        }
        if let Some(arg) = s.strip_prefix("mod:") {
            let k: u8 = arg
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad modulus in '{s}'")))?;
            if k < 2 {
                return Err(Error::InvalidArgument("modular coloring needs k >= 2".into()));
            }
            return Ok(Self::Modular { k });
        }
        if let Some(arg) = s.strip_prefix("const:") {
            let color: u8 = arg
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad color in '{s}'")))?;
            return Ok(Self::Constant { color });
        }
        Err(Error::InvalidArgument(format!(
            "unknown construction '{s}' (expected c0, mod:k, or const:c)"
        )))
    }
}

/// The lower-bound coloring: odd i up to 2n/5 get color 1, the remaining odd
/// i color 2, all even i color 3.  Threshold rule: 5i <= 2n, exact.
pub fn build_c0(n: usize) -> Coloring {
    Coloring::from_fn(n, |i| {
        if i % 2 == 0 {
            3
        } else if 5 * i <= 2 * n {
            1
        } else {
            2
        }
    })
    .expect("colors drawn from {1,2,3}")
}

/// Exact rainbow fraction of c0: classify(c0).rainbow / C(n,2).
pub fn c0_rainbow_fraction(n: usize) -> Ratio<u64> {
    assert!(n >= 2, "fraction undefined below n = 2");
    Ratio::new(classify(&build_c0(n)).rainbow, count_total_triples(n))
}

/// Residue coloring i -> (i mod k) + 1 with labels 1..k.
///
/// Any other residue-to-label bijection differs only by a label permutation,
/// which leaves every rainbow/monochromatic count invariant; this one is
/// fixed so outputs are reproducible byte for byte.
pub fn build_modular(n: usize, k: u8) -> Result<KColoring> {
    if k < 2 {
        return Err(Error::InvalidArgument("modular coloring needs k >= 2".into()));
    }
    KColoring::new(k, (1..=n).map(|i| (i % usize::from(k)) as u8 + 1).collect())
}

/// Interval coloring over breakpoints b_1 < … < b_m (strictly increasing,
/// within [n]); interval j gets colors[j].
pub fn build_interval(n: usize, breakpoints: &[usize], colors: &[u8]) -> Result<Coloring> {
    if colors.len() != breakpoints.len() + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} breakpoints need {} colors, got {}",
            breakpoints.len(),
            breakpoints.len() + 1,
            colors.len()
        )));
    }
    if breakpoints.windows(2).any(|w| w[0] >= w[1]) || breakpoints.iter().any(|&b| b > n) {
        return Err(Error::InvalidArgument(
            "breakpoints must be strictly increasing and lie within [n]".into(),
        ));
    }
    Coloring::from_fn(n, |i| {
        let j = breakpoints.partition_point(|&b| b < i);
        colors[j]
    })
}
