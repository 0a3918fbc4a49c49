//! `rschur verify`: randomized and exhaustive invariant suites.
//!
//! Each family checks an exact identity or inequality over many instances.
//! Instances are visited in order of increasing size, so the first failure —
//! serialized as the witness — is minimal in n among everything tried.
//! Exit code 1 signals a failed identity; the suites pass on correct code,
//! so a failure is evidence of a real defect, not noise.

use clap::{Args, ValueEnum};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde_json::{json, Value};

use rainbow_schur::ap::{classify_aps, count_aps, cs_upper_estimate, KColoring};
use rainbow_schur::bounds::{
    check_reweigh, cut_instance, extract_cut_nuanced, extract_cut_simple, ReweighInstance,
};
use rainbow_schur::graphmap::{
    count_rainbow_triangles_direct, count_rainbow_triangles_from_stats,
};
use rainbow_schur::identities::{
    check_class_squares, check_cube_sum, distinct_mono_objective, CyclicColoring,
};
use rainbow_schur::{classify, Coloring};

use crate::report::{push_kv, CmdOutput};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Fiber-weighted profile sum = direct triangle census.
    Trcard,
    /// The reweighing lemma on instances satisfying its hypotheses.
    Reweigh,
    /// mono * n = |R|^3 + |B|^3 for 2-colorings of Z_n.
    CubeSum,
    /// 2 mono = 3 sum |C_i|^2 - n^2 + rainbow on Z_n.
    ClassSquares,
    /// Distinct-summand monochromatic objective vs a sum-indexed oracle.
    MonoObjective,
    /// Rainbow count vs the simple and nuanced cut bounds.
    Cuts,
    /// Rainbow APs vs the endpoint-pair estimate.
    ApCs,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Self::Trcard => "trcard",
            Self::Reweigh => "reweigh",
            Self::CubeSum => "cube-sum",
            Self::ClassSquares => "class-squares",
            Self::MonoObjective => "mono-objective",
            Self::Cuts => "cuts",
            Self::ApCs => "ap-cs",
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Randomized instances to draw (split across sizes, smallest first).
    #[arg(long, value_name = "T", default_value_t = 1000)]
    pub trials: u64,
    /// Largest instance size.
    #[arg(long, value_name = "N", default_value_t = 60)]
    pub max_n: usize,
    #[arg(long, value_name = "S", default_value_t = 0)]
    pub seed: u64,
    /// Check every instance up to --max-n instead of sampling
    /// (cube-sum, class-squares, and mono-objective only).
    #[arg(long)]
    pub exhaustive: bool,
}

/// Outcome of one suite: instances checked and the first (minimal) failure.
struct Suite {
    checked: u64,
    failure: Option<Value>,
}

impl Suite {
    fn pass() -> Self {
        Suite { checked: 0, failure: None }
    }

    /// Records an instance; returns false once a failure is latched.
    fn note(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
        self.failure.is_none()
    }
}

fn random_coloring(rng: &mut impl Rng, n: usize) -> Coloring {
    Coloring::new((0..n).map(|_| rng.gen_range(1..=3)).collect()).unwrap()
}

/// Sizes 2..=max_n visited smallest-first, with ~trials instances total.
fn size_schedule(trials: u64, max_n: usize) -> Vec<(usize, u64)> {
    let sizes = max_n.saturating_sub(1).max(1) as u64;
    let per = (trials / sizes).max(1);
    (2..=max_n.max(2)).map(|n| (n, per)).collect()
}

fn run_trcard(rng: &mut StdRng, trials: u64, max_n: usize) -> Suite {
    let mut suite = Suite::pass();
    'outer: for (n, per) in size_schedule(trials, max_n) {
        for _ in 0..per {
            let coloring = random_coloring(rng, n);
            let stats = classify(&coloring);
            let via_profile = count_rainbow_triangles_from_stats(&stats);
            let direct = count_rainbow_triangles_direct(&coloring);
            let ok = via_profile == direct;
            if !suite.note(ok, || {
                json!({
                    "n": n,
                    "coloring": coloring.to_digit_string(),
                    "via_profile": via_profile.rainbow_triangles,
                    "direct": direct.rainbow_triangles,
                })
            }) {
                break 'outer;
            }
        }
    }
    suite
}

fn run_reweigh(rng: &mut StdRng, trials: u64) -> Suite {
    let mut suite = Suite::pass();
    for trial in 0..trials {
        // Sizes grow with the trial index, keeping early failures small.
        let len = (trial % 48) as usize;
        let mut f: Vec<i128> = (0..len).map(|_| rng.gen_range(0..50)).collect();
        let mut g: Vec<i128> = vec![0; len];
        let mut f0: Vec<i128> = vec![0; len];
        let in_s0: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.6)).collect();
        let threshold = rng.gen_range(0..20i128);
        for s in 0..len {
            if in_s0[s] {
                g[s] = rng.gen_range(0..=threshold.max(1));
                f0[s] = f[s] + rng.gen_range(0..10);
            } else {
                g[s] = rng.gen_range(threshold.max(1)..threshold.max(1) + 20);
            }
        }
        let weighted_f: i128 = (0..len).map(|s| f[s] * g[s]).sum();
        let weighted_f0: i128 = (0..len).filter(|&s| in_s0[s]).map(|s| f0[s] * g[s]).sum();
        if weighted_f0 < weighted_f {
            match (0..len).filter(|&s| in_s0[s] && g[s] > 0).max_by_key(|&s| g[s]) {
                Some(j) => f0[j] += (weighted_f - weighted_f0) / g[j] + 1,
                None => (0..len).filter(|&s| !in_s0[s]).for_each(|s| f[s] = 0),
            }
        }
        let instance = ReweighInstance::new(f, g, f0, in_s0).unwrap();
        let report = check_reweigh(&instance);
        let ok = report.hypotheses_hold() && report.conclusion_holds;
        if !suite.note(ok, || {
            json!({
                "f": instance.f,
                "g": instance.g,
                "f0": instance.f0,
                "in_s0": instance.in_s0,
                "hypotheses": report.hypotheses,
                "lhs": report.lhs,
                "rhs": report.rhs,
            })
        }) {
            break;
        }
    }
    suite
}

fn run_cube_sum(rng: &mut StdRng, args: &VerifyArgs) -> anyhow::Result<Suite> {
    let mut suite = Suite::pass();
    let witness = |n: usize, colors: &[u8], check: &rainbow_schur::identities::IdentityCheck| {
        json!({
            "n": n,
            "colors": colors.to_vec(),
            "lhs": check.lhs.to_string(),
            "rhs": check.rhs.to_string(),
        })
    };
    if args.exhaustive {
        anyhow::ensure!(
            args.max_n <= 18,
            "exhaustive cube-sum caps --max-n at 18 (2^n cases per n)"
        );
        'outer: for n in 1..=args.max_n {
            for mask in 0u64..1 << n {
                let colors: Vec<u8> = (0..n).map(|x| 1 + ((mask >> x) & 1) as u8).collect();
                let check = check_cube_sum(&CyclicColoring::new(colors.clone(), 2)?)?;
                if !suite.note(check.holds, || witness(n, &colors, &check)) {
                    break 'outer;
                }
            }
        }
    } else {
        'outer: for (n, per) in size_schedule(args.trials, args.max_n) {
            for _ in 0..per {
                let colors: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
                let check = check_cube_sum(&CyclicColoring::new(colors.clone(), 2)?)?;
                if !suite.note(check.holds, || witness(n, &colors, &check)) {
                    break 'outer;
                }
            }
        }
    }
    Ok(suite)
}

fn run_class_squares(rng: &mut StdRng, args: &VerifyArgs) -> anyhow::Result<Suite> {
    let mut suite = Suite::pass();
    let witness = |n: usize, colors: &[u8], check: &rainbow_schur::identities::IdentityCheck| {
        json!({
            "n": n,
            "colors": colors.to_vec(),
            "lhs": check.lhs.to_string(),
            "rhs": check.rhs.to_string(),
        })
    };
    if args.exhaustive {
        anyhow::ensure!(
            args.max_n <= 13,
            "exhaustive class-squares caps --max-n at 13 (3^n cases per n)"
        );
        'outer: for n in 1..=args.max_n {
            for code in 0u64..3u64.pow(n as u32) {
                let mut c = code;
                let colors: Vec<u8> = (0..n)
                    .map(|_| {
                        let d = (c % 3) as u8 + 1;
                        c /= 3;
                        d
                    })
                    .collect();
                let check = check_class_squares(&CyclicColoring::new(colors.clone(), 3)?);
                if !suite.note(check.holds, || witness(n, &colors, &check)) {
                    break 'outer;
                }
            }
        }
    } else {
        'outer: for (n, per) in size_schedule(args.trials, args.max_n) {
            for _ in 0..per {
                let colors: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
                let check = check_class_squares(&CyclicColoring::new(colors.clone(), 3)?);
                if !suite.note(check.holds, || witness(n, &colors, &check)) {
                    break 'outer;
                }
            }
        }
    }
    Ok(suite)
}

/// Sum-indexed reference: walk each sum z and its split points.
fn mono_objective_by_sums(x: &[bool]) -> u64 {
    let n = x.len();
    let mut count = 0;
    for z in 3..=n {
        for i in 1..z.div_ceil(2) {
            count += u64::from(x[i - 1] == x[z - i - 1] && x[z - i - 1] == x[z - 1]);
        }
    }
    count
}

fn run_mono_objective(rng: &mut StdRng, args: &VerifyArgs) -> anyhow::Result<Suite> {
    let mut suite = Suite::pass();
    let witness = |x: &[bool], lhs: u64, rhs: u64| {
        json!({
            "n": x.len(),
            "x": x.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            "objective": lhs,
            "oracle": rhs,
        })
    };
    if args.exhaustive {
        anyhow::ensure!(
            args.max_n <= 18,
            "exhaustive mono-objective caps --max-n at 18 (2^n cases per n)"
        );
        'outer: for n in 0..=args.max_n {
            for mask in 0u64..1 << n {
                let x: Vec<bool> = (0..n).map(|i| (mask >> i) & 1 == 1).collect();
                let (lhs, rhs) = (distinct_mono_objective(&x), mono_objective_by_sums(&x));
                if !suite.note(lhs == rhs, || witness(&x, lhs, rhs)) {
                    break 'outer;
                }
            }
        }
    } else {
        'outer: for (n, per) in size_schedule(args.trials, args.max_n) {
            for _ in 0..per {
                let x: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                let (lhs, rhs) = (distinct_mono_objective(&x), mono_objective_by_sums(&x));
                if !suite.note(lhs == rhs, || witness(&x, lhs, rhs)) {
                    break 'outer;
                }
            }
        }
    }
    Ok(suite)
}

fn run_cuts(rng: &mut StdRng, trials: u64, max_n: usize) -> anyhow::Result<Suite> {
    let mut suite = Suite::pass();
    'outer: for (n, per) in size_schedule(trials, max_n) {
        for _ in 0..per {
            let coloring = random_coloring(rng, n);
            let stats = classify(&coloring);
            let rainbow = u128::from(stats.rainbow);

            let simple = extract_cut_simple(&stats);
            let k0 = rng.gen_range(1..=(n as u64 / 3).max(1));
            let nuanced = extract_cut_nuanced(&coloring, &stats, k0)?;
            let (first, second) = nuanced.cover_disjunction_exact();
            let occupancy_ok = nuanced
                .witnesses
                .as_ref()
                .is_some_and(|w| w.iter().all(|c| c.occupancy_bounded));
            let lemma = check_reweigh(&cut_instance(&stats, &nuanced));

            let ok = rainbow <= simple.rainbow_bound
                && rainbow <= nuanced.rainbow_bound
                && (first || second)
                && occupancy_ok
                && lemma.hypotheses_hold()
                && lemma.conclusion_holds;
            if !suite.note(ok, || {
                json!({
                    "n": n,
                    "coloring": coloring.to_digit_string(),
                    "rainbow": stats.rainbow,
                    "k0": k0,
                    "simple_bound": simple.rainbow_bound.to_string(),
                    "nuanced_bound": nuanced.rainbow_bound.to_string(),
                    "cover_first": first,
                    "cover_second": second,
                    "occupancy_ok": occupancy_ok,
                })
            }) {
                break 'outer;
            }
        }
    }
    Ok(suite)
}

fn run_ap_cs(rng: &mut StdRng, trials: u64, max_n: usize) -> anyhow::Result<Suite> {
    let mut suite = Suite::pass();
    for _ in 0..trials {
        let k: u8 = rng.gen_range(3..=6);
        let lo = usize::from(k) * 3;
        let n = rng.gen_range(lo..=max_n.max(lo + 1));
        let colors: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=k)).collect();
        let coloring = KColoring::new(k, colors.clone())?;
        let stats = classify_aps(&coloring);
        let estimate = cs_upper_estimate(&coloring);
        let total = count_aps(n, k);
        let ceiling =
            (f64::from(k) - 1.0) / f64::from(k) + 2.0 * f64::from(k) / n as f64;
        let fraction_ok =
            total == 0 || (stats.rainbow_aps as f64 / total as f64) <= ceiling;

        let ok = stats.rainbow_aps <= estimate && stats.total_aps == total && fraction_ok;
        if !suite.note(ok, || {
            json!({
                "n": n,
                "k": k,
                "colors": colors,
                "rainbow_aps": stats.rainbow_aps,
                "estimate": estimate,
                "total_aps": stats.total_aps,
            })
        }) {
            break;
        }
    }
    Ok(suite)
}

pub fn run(args: &VerifyArgs) -> anyhow::Result<CmdOutput> {
    let mut rng = StdRng::seed_from_u64(args.seed);
    let suite = match args.family {
        Family::Trcard => {
            no_exhaustive(args)?;
            run_trcard(&mut rng, args.trials, args.max_n)
        }
        Family::Reweigh => {
            no_exhaustive(args)?;
            run_reweigh(&mut rng, args.trials)
        }
        Family::CubeSum => run_cube_sum(&mut rng, args)?,
        Family::ClassSquares => run_class_squares(&mut rng, args)?,
        Family::MonoObjective => run_mono_objective(&mut rng, args)?,
        Family::Cuts => {
            no_exhaustive(args)?;
            run_cuts(&mut rng, args.trials, args.max_n)?
        }
        Family::ApCs => {
            no_exhaustive(args)?;
            run_ap_cs(&mut rng, args.trials, args.max_n)?
        }
    };

    let passed = suite.failure.is_none();
    let mode = if args.exhaustive { "exhaustive" } else { "randomized" };
    let mut human = format!("verify {}\n", args.family.name());
    push_kv(&mut human, "mode", mode);
    push_kv(&mut human, "instances checked", suite.checked);
    push_kv(&mut human, "result", if passed { "PASS" } else { "FAIL" });
    if let Some(witness) = &suite.failure {
        push_kv(&mut human, "witness", serde_json::to_string(witness)?);
    }

    let payload = json!({
        "family": args.family.name(),
        "mode": mode,
        "instances_checked": suite.checked,
        "passed": passed,
        "failure": suite.failure,
    });
    let input_desc = format!(
        "verify family={} trials={} max-n={} seed={} exhaustive={}",
        args.family.name(),
        args.trials,
        args.max_n,
        args.seed,
        args.exhaustive
    );
    let mut out = CmdOutput::new(payload, human, input_desc);
    out.identity_failure = !passed;
    Ok(out)
}

fn no_exhaustive(args: &VerifyArgs) -> anyhow::Result<()> {
    anyhow::ensure!(
        !args.exhaustive,
        "--exhaustive applies only to cube-sum, class-squares, and mono-objective"
    );
    Ok(())
}
