//! `rschur ap`: rainbow arithmetic progressions in k-colorings.

use std::path::PathBuf;

use anyhow::Context;
use clap::{ArgGroup, Args};
use serde::Serialize;
use serde_json::Value;

use rainbow_schur::ap::{
    classify_aps, equinumerous_ap3_max, modular_rainbow_prediction, totient_fraction, ApStats,
    KColoring,
};
use rainbow_schur::constructions::{build_modular, ConstructionId};

use crate::files::read_coloring_file;
use crate::report::{fraction_display, fraction_parts, push_kv, sha256_hex, CmdOutput};

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args([
    "construction",
    "coloring",
    "equinumerous_max",
    "totient",
])))]
pub struct ApArgs {
    /// Named construction; "mod" uses --k as the modulus.
    #[arg(long, value_name = "NAME", requires = "n")]
    pub construction: Option<String>,
    /// Coloring file with colors in 1..=k (requires --k).
    #[arg(long, value_name = "FILE", requires = "k")]
    pub coloring: Option<PathBuf>,
    /// Exhaustive rainbow-3-AP maximum over colorings of [3m] with three
    /// classes of size m.
    #[arg(long, value_name = "M")]
    pub equinumerous_max: Option<usize>,
    /// Print phi(k)/k, the asymptotic rainbow fraction of the modular
    /// coloring (requires --k).
    #[arg(long)]
    pub totient: bool,
    /// AP length and number of colors.
    #[arg(long, value_name = "K")]
    pub k: Option<u8>,
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Include the per-difference table in the JSON payload.
    #[arg(long)]
    pub per_difference: bool,
}

#[derive(Serialize)]
struct ApPayload {
    n: usize,
    k: u8,
    total_aps: u64,
    rainbow_aps: u64,
    fraction: String,
    fraction_decimal: f64,
    cs_estimate: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    prediction: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matches_prediction: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_difference: Option<Value>,
}

fn need_k(args: &ApArgs, why: &str) -> anyhow::Result<u8> {
    let k = args.k.with_context(|| format!("--k is required {why}"))?;
    anyhow::ensure!(k >= 2, "--k must be at least 2, got {k}");
    Ok(k)
}

fn census_output(
    args: &ApArgs,
    stats: &ApStats,
    source: &str,
    prediction: Option<u64>,
    input_desc: String,
) -> anyhow::Result<CmdOutput> {
    let (fraction, fraction_decimal) = fraction_parts(stats.rainbow_aps, stats.total_aps);
    let mut human = String::from("rainbow AP census\n");
    push_kv(&mut human, "source", source);
    push_kv(&mut human, "n", stats.n);
    push_kv(&mut human, "k", stats.k);
    push_kv(&mut human, "total APs", stats.total_aps);
    push_kv(&mut human, "rainbow APs", stats.rainbow_aps);
    push_kv(&mut human, "fraction", fraction_display(stats.rainbow_aps, stats.total_aps));
    push_kv(&mut human, "endpoint-pair estimate", stats.cs_estimate);
    if let Some(p) = prediction {
        push_kv(&mut human, "coprimality prediction", p);
        push_kv(&mut human, "matches prediction", stats.rainbow_aps == p);
    }

    let payload = ApPayload {
        n: stats.n,
        k: stats.k,
        total_aps: stats.total_aps,
        rainbow_aps: stats.rainbow_aps,
        fraction,
        fraction_decimal,
        cs_estimate: stats.cs_estimate,
        prediction,
        matches_prediction: prediction.map(|p| stats.rainbow_aps == p),
        per_difference: args
            .per_difference
            .then(|| serde_json::to_value(&stats.per_difference))
            .transpose()?,
    };
    Ok(CmdOutput::new(serde_json::to_value(payload)?, human, input_desc))
}

pub fn run(args: &ApArgs) -> anyhow::Result<CmdOutput> {
    if args.totient {
        let k = need_k(args, "with --totient")?;
        let fraction = totient_fraction(k);
        let decimal = *fraction.numer() as f64 / *fraction.denom() as f64;
        let mut human = String::from("modular rainbow fraction\n");
        push_kv(&mut human, "k", k);
        push_kv(
            &mut human,
            "phi(k)/k",
            format!("{}/{} = {decimal:.6}", fraction.numer(), fraction.denom()),
        );
        let payload = serde_json::json!({
            "k": k,
            "fraction": format!("{}/{}", fraction.numer(), fraction.denom()),
            "fraction_decimal": decimal,
        });
        return Ok(CmdOutput::new(payload, human, format!("ap mode=totient k={k}")));
    }

    if let Some(m) = args.equinumerous_max {
        let result = equinumerous_ap3_max(m)?;
        let optima: Vec<String> =
            result.optima.iter().map(|c| c.to_digit_string()).collect();
        let mut human = String::from("equinumerous rainbow 3-AP maximum\n");
        push_kv(&mut human, "m (class size)", result.m);
        push_kv(&mut human, "n", result.n);
        push_kv(&mut human, "maximum", result.max_count);
        push_kv(&mut human, "closed form", result.formula);
        push_kv(&mut human, "matches closed form", result.matches_formula);
        push_kv(&mut human, "optima", optima.len());
        for witness in optima.iter().take(10) {
            human.push_str(&format!("    {witness}\n"));
        }
        if optima.len() > 10 {
            human.push_str(&format!("    … and {} more\n", optima.len() - 10));
        }
        let payload = serde_json::json!({
            "m": result.m,
            "n": result.n,
            "max_count": result.max_count,
            "formula": result.formula,
            "matches_formula": result.matches_formula,
            "optima": optima,
        });
        return Ok(CmdOutput::new(payload, human, format!("ap mode=equinumerous m={m}")));
    }

    if let Some(path) = &args.coloring {
        let k = need_k(args, "with --coloring")?;
        let colors = read_coloring_file(path, k)?;
        if let Some(n) = args.n {
            anyhow::ensure!(
                n == colors.len(),
                "{}: file holds n = {}, but --n {n} was given",
                path.display(),
                colors.len()
            );
        }
        let digest = sha256_hex(&std::fs::read(path)?);
        let stats = classify_aps(&KColoring::new(k, colors)?);
        let source = format!("file {}", path.display());
        return census_output(
            args,
            &stats,
            &source,
            None,
            format!("ap mode=coloring k={k} coloring=sha256:{digest}"),
        );
    }

    let name = args.construction.as_ref().expect("clap group guarantees a mode");
    let n = args.n.expect("clap enforces --n with --construction");
    let (coloring, prediction) = if name == "mod" {
        let k = need_k(args, "with --construction mod")?;
        (build_modular(n, k)?, Some(modular_rainbow_prediction(n, k)))
    } else {
        let id: ConstructionId = name.parse().context("bad --construction")?;
        let coloring = id.build_k(n)?;
        let prediction = match id {
            ConstructionId::Modular { k } => Some(modular_rainbow_prediction(n, k)),
            _ => None,
        };
        (coloring, prediction)
    };
    if let Some(k) = args.k {
        anyhow::ensure!(
            k == coloring.k(),
            "--k {k} disagrees with the construction's {} colors",
            coloring.k()
        );
    }
    let stats = classify_aps(&coloring);
    let source = format!("construction {name}");
    census_output(
        args,
        &stats,
        &source,
        prediction,
        format!("ap mode=construction name={name} k={} n={n}", coloring.k()),
    )
}
