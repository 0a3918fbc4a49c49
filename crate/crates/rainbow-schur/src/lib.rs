//! Workbench for rainbow Schur triples and rainbow arithmetic progressions.
//!
//! A *Schur triple* in [n] is an ordered triple (x, y, z) with x + y = z, so
//! there are exactly C(n,2) of them: for every pair x < z the partner
//! y = z - x is unique, and (x, y, z), (y, x, z) are counted separately when
//! x != y.  Under a 3-coloring c of [n] a triple is *rainbow* when its three
//! entries receive three distinct colors.  The largest rainbow fraction
//! achievable asymptotically is known to lie between 0.4 (attained by an
//! explicit interval/parity hybrid, [`constructions::build_c0`]) and 0.66656
//! (via a weighted counting argument made executable in [`bounds`]).
//!
//! The crate keeps every combinatorial quantity exact: counts are integers,
//! fractions are rationals, and the only floating point lives in the
//! continuous (alpha, beta, gamma) optimizer and in the arbitrary-precision
//! constant evaluations that back it.
//!
//! Module map:
//! * [`schur`] — colorings of [n], exact triple classification, O(n) recolor deltas.
//! * [`constructions`] — named colorings: the 0.4 lower-bound coloring, modular and
//!   interval families.
//! * [`graphmap`] — the correspondence with edge-colored K_{n+1}: Schur triples are
//!   fibers of the consecutive-difference map on triangles.
//! * [`bounds`] — the reweighing lemma, proof cuts (z0, k0, Z) on concrete colorings,
//!   and the min-max solver for the 0.66656-type upper bound.
//! * [`search`] — exhaustive maximum-rainbow search with symmetry reduction and
//!   pruning; seeded simulated annealing for larger n.
//! * [`ap`] — rainbow k-term arithmetic progressions in k-colorings: exact counts,
//!   the totient construction, the Cauchy–Schwarz estimate.
//! * [`identities`] — independent algebraic cross-checks over Z_n and the hypercube.

pub mod ap;
pub mod bounds;
pub mod constructions;
pub mod graphmap;
pub mod identities;
pub mod schur;
pub mod search;

pub use schur::{classify, count_total_triples, Coloring, SchurTriple, TripleStats};

/// Errors for argument validation at module boundaries.
///
/// Counting and search operations are total once their inputs are
/// constructed; errors arise only when building inputs (bad color values,
/// out-of-range indices) or resuming from on-disk state.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("color {value} at position {position} outside {{1..{max}}}")]
    InvalidColor { position: usize, value: u8, max: u8 },
    #[error("coloring length {got} does not match n = {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("request exceeds the configured budget ({budget})")]
    BudgetExceeded { budget: u64 },
    #[error("checkpoint state is corrupt: {0}")]
    CorruptCheckpoint(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
