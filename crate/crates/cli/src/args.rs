use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cutcell::EtaRule;

#[derive(Parser, Debug)]
#[command(
    name = "cutcell",
    version,
    about = "Cut-cell advection solver and scheme analysis toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the explicit upwind solver and write CSV solution snapshots.
    Solve(SolveArgs),
    /// Assemble one scheme and report monotonicity and penalty feasibility.
    Analyze(AnalyzeArgs),
    /// Tabulate monotonicity over a grid of (alpha, lambda, eta).
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct GeometryArgs {
    /// Number of equidistant background cells.
    #[arg(long, default_value_t = 10)]
    pub n: usize,

    /// Cut fraction: the split cell has lengths alpha*h and (1-alpha)*h.
    #[arg(long, default_value_t = 1e-3)]
    pub alpha: f64,

    /// Left edge of the background cell to split (must lie on the grid).
    #[arg(long, default_value_t = 0.5)]
    pub split_left: f64,

    /// CFL number beta*dt/h.
    #[arg(long, default_value_t = 0.4)]
    pub lambda: f64,

    /// Advection velocity (positive).
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
}

#[derive(Args, Clone, Debug)]
pub struct SchemeArgs {
    /// Stabilization variant [default: dod].
    #[arg(long, value_enum)]
    pub stab: Option<StabKind>,

    /// Fixed penalty strength for the dod scheme.
    #[arg(long, conflicts_with = "eta_rule")]
    pub eta: Option<f64>,

    /// Named penalty choice for the dod scheme [default: half].
    #[arg(long, value_enum)]
    pub eta_rule: Option<EtaRuleKind>,

    /// Ghost-penalty strength on the face entering the small cell.
    #[arg(long)]
    pub eta1: Option<f64>,

    /// Ghost-penalty strength on the face leaving the small cell.
    #[arg(long)]
    pub eta2: Option<f64>,

    /// Permit --eta outside [0, 1] (for probing non-monotone schemes).
    #[arg(long, requires = "eta")]
    pub force_eta: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StabKind {
    /// Plain upwind scheme, unstable on small cells.
    None,
    /// Jump penalties on the two faces next to the small cell.
    Gp,
    /// Route part of the small cell's inflow directly to its neighbour.
    Dod,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EtaRuleKind {
    /// eta = 1 - alpha/lambda: the update equals exact advection.
    Paper,
    /// eta = 1 - alpha/(2*lambda): halfway to the full bypass.
    Half,
    /// eta = 1: skip the small cell entirely.
    One,
}

impl EtaRuleKind {
    pub fn to_rule(self) -> EtaRule<f64> {
        match self {
            EtaRuleKind::Paper => EtaRule::OneMinusAlphaOverLambda,
            EtaRuleKind::Half => EtaRule::OneMinusAlphaOverHalfLambda,
            EtaRuleKind::One => EtaRule::One,
        }
    }
}

/// Scheme selection after defaults and flag-compatibility rules are applied.
#[derive(Copy, Clone, Debug)]
pub enum ResolvedScheme {
    Unstabilized,
    GhostPenalty { eta1: f64, eta2: f64 },
    Dod { eta: f64, forced: bool },
}

impl SchemeArgs {
    /// Applies defaults (dod, eta-rule half) and rejects flag combinations
    /// that have no meaning for the chosen variant.
    pub fn resolve(&self, alpha: f64, lambda: f64) -> anyhow::Result<ResolvedScheme> {
        let stab = self.stab.unwrap_or(StabKind::Dod);
        if stab != StabKind::Dod && (self.eta.is_some() || self.eta_rule.is_some()) {
            bail!("--eta/--eta-rule apply only to --stab dod");
        }
        if stab != StabKind::Gp && (self.eta1.is_some() || self.eta2.is_some()) {
            bail!("--eta1/--eta2 apply only to --stab gp");
        }
        Ok(match stab {
            StabKind::None => ResolvedScheme::Unstabilized,
            StabKind::Gp => ResolvedScheme::GhostPenalty {
                eta1: self.eta1.unwrap_or(1.0),
                eta2: self.eta2.unwrap_or(1.0),
            },
            StabKind::Dod => match self.eta {
                Some(eta) => ResolvedScheme::Dod {
                    eta,
                    forced: self.force_eta,
                },
                None => {
                    let rule = self.eta_rule.unwrap_or(EtaRuleKind::Half).to_rule();
                    ResolvedScheme::Dod {
                        eta: cutcell::resolve_eta(&rule, alpha, lambda),
                        forced: false,
                    }
                }
            },
        })
    }

    pub fn any_flag_given(&self) -> bool {
        self.stab.is_some()
            || self.eta.is_some()
            || self.eta_rule.is_some()
            || self.eta1.is_some()
            || self.eta2.is_some()
            || self.force_eta
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,

    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Initial data: step:a:b, constant:c, sine, or random[:lo:hi].
    #[arg(long, default_value = "step:0.1:0.5", value_parser = parse_init)]
    pub init: InitSpec,

    /// Number of explicit Euler steps.
    #[arg(long, default_value_t = 1)]
    pub steps: usize,

    /// Snapshot destination; every-k mode appends .stepNNNNNN to the stem.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Which steps to snapshot: "final", or "every-<k>".
    #[arg(long, default_value = "final", value_parser = parse_snapshots)]
    pub snapshots: SnapshotPolicy,

    /// Advance with exact advection plus cell averaging instead of a scheme.
    #[arg(long)]
    pub oracle: bool,

    /// Verify mass conservation, initial bounds and L1 decay every step;
    /// exit 2 on the first violation.
    #[arg(long)]
    pub check: bool,

    /// Seed for random initial data.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,

    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Where to write the JSON report; printed to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,

    /// Alpha grid: "a:b:steps", a single value, or comma-separated values.
    /// Defaults to the fixed --alpha.
    #[arg(long)]
    pub alpha_range: Option<String>,

    /// Lambda grid, same grammar. Defaults to the fixed --lambda.
    #[arg(long)]
    pub lambda_range: Option<String>,

    /// Eta grid, same grammar. Defaults to --eta-rule per grid point.
    #[arg(long)]
    pub eta_range: Option<String>,

    /// Penalty rule used when --eta-range is omitted [default: half].
    #[arg(long, value_enum, conflicts_with = "eta_range")]
    pub eta_rule: Option<EtaRuleKind>,

    /// CSV destination; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    Step { lower: f64, upper: f64 },
    Constant(f64),
    Sine,
    Random { lo: f64, hi: f64 },
}

fn parse_init(s: &str) -> Result<InitSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| -> Result<f64, String> {
        t.parse::<f64>()
            .map_err(|_| format!("invalid number {t:?} in --init {s:?}"))
    };
    match parts.as_slice() {
        ["step", a, b] => Ok(InitSpec::Step {
            lower: num(a)?,
            upper: num(b)?,
        }),
        ["constant", c] => Ok(InitSpec::Constant(num(c)?)),
        ["sine"] => Ok(InitSpec::Sine),
        ["random"] => Ok(InitSpec::Random { lo: -1.0, hi: 1.0 }),
        ["random", lo, hi] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo >= hi {
                return Err(format!("--init random needs lo < hi, got {lo}..{hi}"));
            }
            Ok(InitSpec::Random { lo, hi })
        }
        _ => Err(format!(
            "expected step:a:b, constant:c, sine, or random[:lo:hi], got {s:?}"
        )),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SnapshotPolicy {
    Final,
    Every(usize),
}

impl SnapshotPolicy {
    pub fn emits(&self, step: usize, last: usize) -> bool {
        match self {
            SnapshotPolicy::Final => step == last,
            SnapshotPolicy::Every(k) => step.is_multiple_of(*k) || step == last,
        }
    }
}

fn parse_snapshots(s: &str) -> Result<SnapshotPolicy, String> {
    if s == "final" {
        return Ok(SnapshotPolicy::Final);
    }
    if let Some(k) = s.strip_prefix("every-") {
        let k: usize = k
            .parse()
            .map_err(|_| format!("invalid snapshot interval {k:?}"))?;
        if k == 0 {
            return Err("snapshot interval must be at least 1".into());
        }
        return Ok(SnapshotPolicy::Every(k));
    }
    Err(format!("expected \"final\" or \"every-<k>\", got {s:?}"))
}

/// Grid grammar shared by the sweep range flags: "a:b:steps" for an
/// inclusive equidistant grid, a bare number for a single point, or a
/// comma-separated list for arbitrary points.
pub fn parse_range(s: &str) -> anyhow::Result<Vec<f64>> {
    let parse_one = |t: &str| -> anyhow::Result<f64> {
        let v: f64 = t
            .trim()
            .parse()
            .map_err(|_| anyhow::anyhow!("invalid number {t:?} in range {s:?}"))?;
        if !v.is_finite() {
            bail!("non-finite value in range {s:?}");
        }
        Ok(v)
    };
    if s.contains(',') {
        return s.split(',').map(parse_one).collect();
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            bail!("expected a:b:steps, got {s:?}");
        }
        let a = parse_one(parts[0])?;
        let b = parse_one(parts[1])?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| anyhow::anyhow!("invalid step count {:?} in {s:?}", parts[2]))?;
        if steps == 0 {
            bail!("range {s:?} needs at least one step");
        }
        if steps == 1 {
            return Ok(vec![a]);
        }
        let d = (b - a) / (steps - 1) as f64;
        return Ok((0..steps).map(|i| a + d * i as f64).collect());
    }
    Ok(vec![parse_one(s)?])
}
