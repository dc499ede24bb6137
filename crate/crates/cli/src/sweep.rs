use std::fs;

use anyhow::{Context, Result};
use cutcell::{
    admissible_eta_interval, assemble_dod_forced, check_monotonicity, resolve_eta,
    AdvectionConfig64, CutCellMesh64,
};

use crate::args::{parse_range, EtaRuleKind, SweepArgs};

/// One CSV row per (alpha, lambda, eta) grid point, in that nesting order.
/// Eta values outside [0, 1] are deliberately allowed so the sweep can map
/// out where monotonicity is lost.
pub fn run(args: &SweepArgs) -> Result<u8> {
    let g = &args.geometry;
    let alphas = match &args.alpha_range {
        Some(s) => parse_range(s)?,
        None => vec![g.alpha],
    };
    let lambdas = match &args.lambda_range {
        Some(s) => parse_range(s)?,
        None => vec![g.lambda],
    };
    let fixed_etas = args.eta_range.as_deref().map(parse_range).transpose()?;
    let rule = args.eta_rule.unwrap_or(EtaRuleKind::Half).to_rule();

    let mut csv = String::from("alpha,lambda,eta,monotone,min_entry,eta_lower\n");
    for &alpha in &alphas {
        let mesh = CutCellMesh64::new(g.n, alpha, g.split_left)?;
        for &lambda in &lambdas {
            let config = AdvectionConfig64::new(g.beta, lambda)?;
            let etas = match &fixed_etas {
                Some(v) => v.clone(),
                None => vec![resolve_eta(&rule, alpha, lambda)],
            };
            let lower = admissible_eta_interval(alpha, lambda).lower;
            for &eta in &etas {
                let report = check_monotonicity(&assemble_dod_forced(&mesh, &config, eta), None);
                csv.push_str(&format!(
                    "{alpha:.16e},{lambda:.16e},{eta:.16e},{},{:.16e},{lower:.16e}\n",
                    u8::from(report.monotone),
                    report.min_entry
                ));
            }
        }
    }

    match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(0)
}
