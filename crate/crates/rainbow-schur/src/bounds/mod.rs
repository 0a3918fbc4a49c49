//! Executable upper-bound machinery for the rainbow fraction.
//!
//! The argument that caps the rainbow fraction runs in three executable
//! stages, each checkable against concrete colorings:
//!
//! 1. **Reweighing** ([`reweigh`]): an elementary lemma transfers a weighted
//!    inequality sum f·g <= sum_{S0} f0·g into the unweighted conclusion
//!    sum f <= sum_{S0} f0, provided g is positive off S0, never larger on S0
//!    than off it, and f0 majorizes f on S0.
//! 2. **Proof cuts** ([`cuts`]): on a concrete coloring the lemma is fed with
//!    f = r(z), g(z) = n+1-z (the fiber weights), and a suffix S0 = {z >= z0}.
//!    The threshold z0 — plus, in the nuanced variant, a floor k0 and the set
//!    Z of z whose slice already holds k0 non-rainbow triples — is extracted
//!    by exact integer scans, producing the bound
//!    rainbow <= sum_{z >= z0} (z-1) - k0·|Z|.
//! 3. **Continuous optimization** ([`solver`], [`precision`]): scaling
//!    alpha = z0/n, beta = |Z|/n, gamma = k0/n turns the bound into
//!    (1 - alpha^2)/2 - beta·gamma fractions of n^2/2, constrained by a
//!    covering disjunction (alpha + beta >= 1 - 2 gamma or beta >= 1 - 3 gamma)
//!    and by a discriminant band on beta derived from the triangle identity.
//!    Minimizing the constrained maximum over gamma yields the headline
//!    0.66656-type constant; the simple cut alone (beta = gamma = 0) gives
//!    the weaker 1 - alpha^2 = 0.67844-type constant, with alpha the root of
//!    alpha^3/3 - alpha^2/2 + 1/10.
//!
//! Stages 1–2 are exact integer arithmetic end to end.  Stage 3 is the only
//! floating-point citizen, and its two checkable constants are recomputed in
//! arbitrary precision ([`precision`]) by independent routes.

pub mod cuts;
pub mod precision;
pub mod reweigh;
pub mod solver;

pub use cuts::{extract_cut_nuanced, extract_cut_simple, ProofCut};
pub use precision::{reference_point, simple_alpha_root, ReferencePoint, SimpleRoot};
pub use reweigh::{check_reweigh, cut_instance, ReweighInstance, ReweighReport};
pub use solver::{
    beta_curves, region_rows, solve_fixed_gamma, solve_fixed_gamma_relaxed, solve_minmax,
    BetaCurves, BoundSolution, MinmaxResult, RegionRow, Resolution,
};
