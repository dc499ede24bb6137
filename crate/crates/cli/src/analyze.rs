use std::fs;

use anyhow::{Context, Result};
use cutcell::{
    admissible_eta_interval, check_monotonicity, ghost_penalty_feasibility, AdvectionConfig64,
    CutCellMesh64,
};
use serde_json::json;

use crate::args::{AnalyzeArgs, ResolvedScheme};
use crate::solve::assemble;

pub fn run(args: &AnalyzeArgs) -> Result<u8> {
    let g = &args.geometry;
    let mesh = CutCellMesh64::new(g.n, g.alpha, g.split_left)?;
    let config = AdvectionConfig64::new(g.beta, g.lambda)?;
    let scheme = args.scheme.resolve(g.alpha, g.lambda)?;
    let matrices = assemble(&mesh, &config, scheme)?;

    let report = check_monotonicity(&matrices, None);
    let interval = admissible_eta_interval(g.alpha, g.lambda);
    let certificate = match scheme {
        ResolvedScheme::GhostPenalty { .. } => Some(ghost_penalty_feasibility(g.alpha, g.lambda)),
        _ => None,
    };

    println!("scheme: {}", describe(scheme));
    println!("monotone: {}", report.monotone);
    println!("min entry: {:.16e}", report.min_entry);
    println!(
        "admissible eta interval: [{:.16e}, {:.16e}]",
        interval.lower, interval.upper
    );
    if interval.empty {
        println!("note: alpha > lambda, monotone without any stabilization");
    }
    if let Some(cert) = &certificate {
        println!("ghost penalty feasible: {}", cert.feasible);
    }

    let doc = json!({
        "monotonicity": report,
        "eta_interval": interval,
        "gp_feasibility": certificate,
    });
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    match &args.report {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn describe(scheme: ResolvedScheme) -> String {
    match scheme {
        ResolvedScheme::Unstabilized => "none".into(),
        ResolvedScheme::GhostPenalty { eta1, eta2 } => format!("gp (eta1={eta1}, eta2={eta2})"),
        ResolvedScheme::Dod { eta, forced: false } => format!("dod (eta={eta})"),
        ResolvedScheme::Dod { eta, forced: true } => format!("dod (eta={eta}, forced)"),
    }
}
