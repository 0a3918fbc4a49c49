//! `rschur bounds`: the continuous upper-bound machinery.

use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args};
use serde::Serialize;

use rainbow_schur::bounds::{
    reference_point, region_rows, simple_alpha_root, solve_fixed_gamma, solve_minmax,
    BoundSolution, Resolution,
};

use crate::report::{push_kv, CmdOutput};

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args([
    "gamma",
    "optimize",
    "reference_point",
    "simple",
])))]
pub struct BoundsArgs {
    /// Maximize the objective at this fixed gamma (0 < gamma < 1/3).
    #[arg(long, value_name = "G")]
    pub gamma: Option<f64>,
    /// Minimize the fixed-gamma maximum over a gamma window.
    #[arg(long)]
    pub optimize: bool,
    /// Evaluate the quoted closed-form point at 384-bit precision and
    /// report how it sits against the solver's own feasible region.
    #[arg(long)]
    pub reference_point: bool,
    /// Constants of the single-threshold bound (cubic root and coefficient).
    #[arg(long)]
    pub simple: bool,
    /// Gamma window for --optimize.
    #[arg(long, value_name = "G", default_value_t = 0.02)]
    pub gamma_lo: f64,
    #[arg(long, value_name = "G", default_value_t = 0.15)]
    pub gamma_hi: f64,
    /// Gamma grid points for --optimize.
    #[arg(long, value_name = "K", default_value_t = 40)]
    pub grid_steps: usize,
    /// Gamma bracket width at which --optimize stops refining.
    #[arg(long, value_name = "EPS", default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the feasible-region CSV at the run's gamma.
    #[arg(long, value_name = "FILE", conflicts_with = "simple")]
    pub export_region: Option<PathBuf>,
    /// Alpha samples in the region export.
    #[arg(long, value_name = "K", default_value_t = 400)]
    pub alpha_steps: usize,
}

/// Plain `{}` float formatting: shortest round-trip form, '.' separator,
/// locale-free.  NaN becomes an empty field.
fn csv_field(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x}")
    }
}

fn write_region_csv(path: &Path, gamma: f64, alpha_steps: usize) -> anyhow::Result<()> {
    let mut text = String::from("gamma,alpha,beta1,beta2_lower,beta2_upper,feasible_flag,objective\n");
    for row in region_rows(gamma, alpha_steps) {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(row.gamma),
            csv_field(row.alpha),
            csv_field(row.beta1),
            csv_field(row.beta2_lower),
            csv_field(row.beta2_upper),
            u8::from(row.feasible),
            csv_field(row.objective),
        ));
    }
    std::fs::write(path, text)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))
}

fn describe_solution(human: &mut String, sol: &BoundSolution) {
    push_kv(human, "gamma", sol.gamma);
    push_kv(human, "feasible", sol.feasible);
    if sol.feasible {
        push_kv(human, "alpha", sol.alpha_star);
        push_kv(human, "beta", sol.beta_star);
        push_kv(human, "objective", sol.objective);
        push_kv(human, "fraction bound", format!("{:.10}", sol.fraction));
        let mut binding = Vec::new();
        if sol.binding.cover_first {
            binding.push("cover-first");
        }
        if sol.binding.cover_second {
            binding.push("cover-second");
        }
        if sol.binding.band_lower {
            binding.push("band-lower");
        }
        push_kv(
            human,
            "binding constraints",
            if binding.is_empty() { "none".to_string() } else { binding.join(", ") },
        );
    }
}

#[derive(Serialize)]
struct SimplePayload {
    alpha: f64,
    alpha_digits: String,
    fraction_bound: f64,
    coefficient: f64,
    coefficient_digits: String,
    /// |closed form - Newton| on the root, at working precision.
    agreement: f64,
    /// |p(root)| for the defining cubic.
    residual: f64,
}

pub fn run(args: &BoundsArgs) -> anyhow::Result<CmdOutput> {
    let resolution = Resolution::default();

    let mut human: String;
    let payload: serde_json::Value;
    let export_gamma: Option<f64>;
    let input_desc: String;
    if args.simple {
        let root = simple_alpha_root();
        human = String::from("single-threshold bound constants\n");
        push_kv(&mut human, "alpha (cubic root)", format!("{:.12}", root.value));
        push_kv(&mut human, "alpha digits", &root.closed_digits);
        push_kv(&mut human, "coefficient", format!("{:.12}", root.coefficient));
        push_kv(&mut human, "fraction bound", format!("{:.12}", root.fraction_limit));
        push_kv(&mut human, "closed vs Newton", format!("{:.2e}", root.agreement));
        push_kv(&mut human, "cubic residual", format!("{:.2e}", root.residual));
        payload = serde_json::to_value(SimplePayload {
            alpha: root.value,
            alpha_digits: root.closed_digits.clone(),
            fraction_bound: root.fraction_limit,
            coefficient: root.coefficient,
            coefficient_digits: root.coefficient_digits.clone(),
            agreement: root.agreement,
            residual: root.residual,
        })?;
        export_gamma = None;
        input_desc = "bounds mode=simple".to_string();
    } else if args.reference_point {
        let point = reference_point();
        human = String::from("closed-form reference point\n");
        push_kv(&mut human, "gamma", point.gamma);
        push_kv(&mut human, "alpha*", format!("{:.12}", point.alpha_star));
        push_kv(&mut human, "beta*", format!("{:.12}", point.beta_star));
        push_kv(&mut human, "objective", format!("{:.12}", point.objective));
        push_kv(&mut human, "fraction", format!("{:.10}", point.fraction));
        push_kv(&mut human, "band floor at alpha*", format!("{:.10}", point.beta2_lower_at_alpha));
        push_kv(&mut human, "inside solver band", point.within_band);
        if !point.within_band {
            human.push_str(
                "  note: the quoted point sits below the band floor; the solver's own\n  \
                 maximum at this gamma is reported by --gamma, and the two disagree.\n",
            );
        }
        export_gamma = Some(point.gamma);
        payload = serde_json::to_value(&point)?;
        input_desc = "bounds mode=reference-point".to_string();
    } else if args.optimize {
        anyhow::ensure!(
            0.0 < args.gamma_lo && args.gamma_lo < args.gamma_hi && args.gamma_hi < 1.0 / 3.0,
            "--optimize needs 0 < gamma-lo < gamma-hi < 1/3, got [{}, {}]",
            args.gamma_lo,
            args.gamma_hi
        );
        let result =
            solve_minmax(args.gamma_lo, args.gamma_hi, args.grid_steps, args.tol, &resolution);
        human = String::from("min-max over gamma\n");
        push_kv(&mut human, "window", format!("[{}, {}]", args.gamma_lo, args.gamma_hi));
        push_kv(&mut human, "grid steps", args.grid_steps);
        push_kv(&mut human, "gamma tolerance", args.tol);
        describe_solution(&mut human, &result.best);
        export_gamma = Some(result.best.gamma);
        payload = serde_json::to_value(&result)?;
        input_desc = format!(
            "bounds mode=optimize lo={} hi={} grid-steps={} tol={}",
            args.gamma_lo, args.gamma_hi, args.grid_steps, args.tol
        );
    } else {
        let gamma = args.gamma.expect("clap group guarantees a mode");
        anyhow::ensure!(
            0.0 < gamma && gamma < 1.0 / 3.0,
            "--gamma must lie strictly between 0 and 1/3, got {gamma}"
        );
        let solution = solve_fixed_gamma(gamma, &resolution);
        human = String::from("fixed-gamma maximum\n");
        describe_solution(&mut human, &solution);
        export_gamma = Some(gamma);
        payload = serde_json::to_value(solution)?;
        input_desc = format!("bounds mode=gamma gamma={gamma}");
    }

    if let Some(path) = &args.export_region {
        let gamma = export_gamma.expect("clap forbids --export-region with --simple");
        write_region_csv(path, gamma, args.alpha_steps)?;
        push_kv(&mut human, "region csv", path.display());
    }

    Ok(CmdOutput::new(payload, human, input_desc))
}
