//! `rschur count`: exact triple census of one coloring.

use std::path::PathBuf;

use anyhow::Context;
use clap::{ArgGroup, Args};
use serde::Serialize;

use rainbow_schur::constructions::ConstructionId;
use rainbow_schur::graphmap::count_rainbow_triangles_from_stats;
use rainbow_schur::{classify, Coloring};

use crate::files::{read_coloring_file, write_coloring_file};
use crate::report::{fraction_display, fraction_parts, push_kv, sha256_hex, CmdOutput};

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["coloring", "construction"])))]
pub struct CountArgs {
    /// Coloring file (line 1: n, line 2: colors in 1..=3).
    #[arg(long, value_name = "FILE")]
    pub coloring: Option<PathBuf>,
    /// Named construction: c0, mod:k, or const:c.
    #[arg(long, value_name = "NAME", requires = "n")]
    pub construction: Option<String>,
    /// Ground-set size; with --coloring it cross-checks the file.
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Also count rainbow triangles of the induced edge coloring.
    #[arg(long)]
    pub triangles: bool,
    /// Include the per-z rainbow / non-rainbow profiles in the payload.
    #[arg(long)]
    pub profiles: bool,
    /// Write the counted coloring back out in the file format.
    #[arg(long, value_name = "FILE")]
    pub emit_coloring: Option<PathBuf>,
}

#[derive(Serialize)]
struct TrianglePayload {
    total_triangles: u64,
    rainbow_triangles: u64,
    fraction: String,
    fraction_decimal: f64,
}

#[derive(Serialize)]
struct CountPayload {
    n: usize,
    total: u64,
    rainbow: u64,
    mono: u64,
    bichromatic: u64,
    fraction: String,
    fraction_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    r_profile: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nr_profile: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    triangles: Option<TrianglePayload>,
}

pub fn run(args: &CountArgs) -> anyhow::Result<CmdOutput> {
    let (coloring, source, input_part) = match (&args.coloring, &args.construction) {
        (Some(path), None) => {
            let colors = read_coloring_file(path, 3)?;
            if let Some(n) = args.n {
                if n != colors.len() {
                    anyhow::bail!(
                        "{}: file holds n = {}, but --n {} was given",
                        path.display(),
                        colors.len(),
                        n
                    );
                }
            }
            let bytes = std::fs::read(path)?;
            (
                Coloring::new(colors)?,
                format!("file {}", path.display()),
                format!("coloring=sha256:{}", sha256_hex(&bytes)),
            )
        }
        (None, Some(name)) => {
            let id: ConstructionId = name.parse().context("bad --construction")?;
            let n = args.n.expect("clap enforces --n with --construction");
            (id.build(n)?, format!("construction {name}"), format!("construction={name} n={n}"))
        }
        _ => unreachable!("clap group guarantees exactly one input"),
    };

    let stats = classify(&coloring);
    let (fraction, fraction_decimal) = fraction_parts(stats.rainbow, stats.total);
    let triangles = args.triangles.then(|| {
        let t = count_rainbow_triangles_from_stats(&stats);
        let (f, fd) = fraction_parts(t.rainbow_triangles, t.total_triangles);
        TrianglePayload {
            total_triangles: t.total_triangles,
            rainbow_triangles: t.rainbow_triangles,
            fraction: f,
            fraction_decimal: fd,
        }
    });

    if let Some(path) = &args.emit_coloring {
        write_coloring_file(path, coloring.as_slice(), &source)?;
    }

    let mut human = String::from("triple census\n");
    push_kv(&mut human, "source", &source);
    push_kv(&mut human, "n", stats.n);
    push_kv(&mut human, "total", stats.total);
    push_kv(&mut human, "rainbow", stats.rainbow);
    push_kv(&mut human, "mono", stats.mono);
    push_kv(&mut human, "bichromatic", stats.bichromatic);
    push_kv(&mut human, "fraction", fraction_display(stats.rainbow, stats.total));
    if let Some(t) = &triangles {
        push_kv(&mut human, "triangles", t.total_triangles);
        push_kv(&mut human, "rainbow triangles", t.rainbow_triangles);
        push_kv(
            &mut human,
            "triangle fraction",
            format!("{} = {:.6}", t.fraction, t.fraction_decimal),
        );
    }
    if args.profiles {
        push_kv(&mut human, "r profile", format!("{:?}", stats.r_profile));
        push_kv(&mut human, "nr profile", format!("{:?}", stats.nr_profile));
    }

    let payload = CountPayload {
        n: stats.n,
        total: stats.total,
        rainbow: stats.rainbow,
        mono: stats.mono,
        bichromatic: stats.bichromatic,
        fraction,
        fraction_decimal,
        r_profile: args.profiles.then(|| stats.r_profile.clone()),
        nr_profile: args.profiles.then(|| stats.nr_profile.clone()),
        triangles,
    };
    let input_desc = format!(
        "count {input_part} triangles={} profiles={}",
        args.triangles, args.profiles
    );
    Ok(CmdOutput::new(serde_json::to_value(payload)?, human, input_desc))
}
