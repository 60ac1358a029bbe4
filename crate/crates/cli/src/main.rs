//! `bargain`: command-line front end for the ultimatum and dictator solvers,
//! the Nash-set verifier and the finite-mixture estimator.
//!
//! Primary output goes to standard output, or to `<dir>/<command>.<ext>`
//! when an output directory is set. Exit codes: 0 success, 2 invalid input,
//! 3 numeric failure.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bargain_core::io::{load_choices, load_estimates, load_games, predict_all, FitReport, RunConfig};
use bargain_core::mixture::{bootstrap_se, em_fit, icl, nec, BinaryGame, ChoiceData};
use bargain_core::nash::nash_set;
use bargain_core::oracle::equivalence_check;
use bargain_core::preferences::dg_transfer;
use bargain_core::solver::linspace;
use bargain_core::{Endowment, Error, PreferenceParams};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::{opt, Output, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "bargain", version, about = "Ultimatum and dictator game solvers for inequity-averse, universalizing agents")]
struct Cli {
    /// Run configuration (TOML). Built-in defaults when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Writes `<command>.<format>` into this directory instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal ultimatum strategy, region and threshold objects for one (α, κ).
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        kappa: f64,
    },
    /// Dictator transfer at the estimation endowment and curve.
    Dg {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        kappa: f64,
    },
    /// Region of the optimal strategy on the configured (α, κ) grid.
    RegionMap,
    /// Optimal strategy along the configured κ grid, with region switches.
    Statics {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Symmetric Nash segment and asymmetric stub for one (κ, α).
    Nash {
        #[arg(long)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Dictator transfers and rejection thresholds for individual estimates.
    Predict {
        /// CSV with header `id,alpha,beta,kappa`.
        #[arg(long)]
        estimates: PathBuf,
        /// Sets κ to 0 before predicting.
        #[arg(long)]
        no_kappa: bool,
    },
    /// Finite-mixture fit of binary choice data.
    Estimate {
        /// CSV with header `subject_id,game_id,role,action`.
        #[arg(long)]
        choices: PathBuf,
        /// Number of types; the configured value when absent.
        #[arg(long)]
        k: Option<usize>,
    },
    /// ICL and NEC from a reported log-likelihood and entropy.
    Metrics {
        #[arg(long, allow_hyphen_values = true)]
        lnl: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        en: f64,
        /// One-type log-likelihood, needed for NEC.
        #[arg(long, allow_hyphen_values = true)]
        lnl_one: Option<f64>,
    },
    /// Compares the solver with an exhaustive grid on random (α, κ) draws.
    OracleCheck {
        /// The configured number of draws when absent.
        #[arg(long)]
        draws: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Dg { .. } => "dg",
            Command::RegionMap => "region-map",
            Command::Statics { .. } => "statics",
            Command::Nash { .. } => "nash",
            Command::Predict { .. } => "predict",
            Command::Estimate { .. } => "estimate",
            Command::Metrics { .. } => "metrics",
            Command::OracleCheck { .. } => "oracle-check",
        }
    }
}

fn social(alpha: f64, beta: f64, kappa: f64) -> bargain_core::Result<PreferenceParams> {
    PreferenceParams::social(alpha, beta, kappa)
}

fn run(cmd: &Command, cfg: &RunConfig) -> bargain_core::Result<Output> {
    let out = match cmd {
        Command::Solve { alpha, kappa } => {
            let s = cfg.setting()?.solve(&social(*alpha, 0.0, *kappa)?)?;
            let mut body = serde_json::to_value(s.clone())?;
            body["alpha"] = json!(alpha);
            body["kappa"] = json!(kappa);
            let table = Table::new(
                &[
                    "alpha",
                    "kappa",
                    "region",
                    "x1_star",
                    "x2_star",
                    "x_s",
                    "x_tilde1",
                    "x_lower2",
                    "x_hat",
                    "alpha_bar",
                    "alpha_tilde",
                    "kappa_tilde",
                ],
                vec![vec![
                    alpha.to_string(),
                    kappa.to_string(),
                    s.region.as_str().to_string(),
                    s.optimal.x1.to_string(),
                    s.optimal.x2.to_string(),
                    s.x_s.to_string(),
                    s.x_tilde1.to_string(),
                    opt(s.x_lower2),
                    opt(s.x_hat),
                    opt(s.alpha_bar),
                    opt(s.alpha_tilde_of_kappa),
                    opt(s.kappa_tilde_of_alpha.map(|k| k.value)),
                ]],
            );
            Output::new(body, table)
        }
        Command::Dg { alpha, beta, kappa } => {
            let w = Endowment::new(cfg.estimation.endowment)?;
            let p = social(*alpha, *beta, *kappa)?;
            let x = dg_transfer(&p, cfg.estimation.curve, w);
            let body = json!({
                "alpha": alpha, "beta": beta, "kappa": kappa,
                "endowment": w.value(), "curve": cfg.estimation.curve,
                "dg_transfer": x, "share": x / w.value(),
            });
            let table = Table::new(
                &["alpha", "beta", "kappa", "endowment", "dg_transfer", "share"],
                vec![vec![
                    alpha.to_string(),
                    beta.to_string(),
                    kappa.to_string(),
                    w.value().to_string(),
                    x.to_string(),
                    (x / w.value()).to_string(),
                ]],
            );
            Output::new(body, table)
        }
        Command::RegionMap => {
            let map = cfg.setting()?.region_map(&cfg.region_map)?;
            let [r1, r2, r3] = map.counts();
            let mut body = serde_json::to_value(&map)?;
            body["counts"] = json!({ "R1": r1, "R2": r2, "R3": r3 });
            let rows = map
                .cells
                .iter()
                .map(|c| {
                    vec![
                        c.alpha.to_string(),
                        c.kappa.to_string(),
                        c.region.as_str().to_string(),
                        c.x1_star.to_string(),
                        c.x2_star.to_string(),
                    ]
                })
                .collect();
            Output::new(body, Table::new(&["alpha", "kappa", "region", "x1_star", "x2_star"], rows))
        }
        Command::Statics { alpha } => {
            let s = &cfg.statics;
            let st = cfg.setting()?.comparative_statics(*alpha, &linspace(s.kappa_min, s.kappa_max, s.points))?;
            let rows = st
                .points
                .iter()
                .map(|p| vec![p.kappa.to_string(), p.region.as_str().to_string(), p.x1_star.to_string(), p.x2_star.to_string()])
                .collect();
            Output::new(serde_json::to_value(&st)?, Table::new(&["kappa", "region", "x1_star", "x2_star"], rows))
        }
        Command::Nash { kappa, alpha } => {
            let set = nash_set(*kappa, *alpha, cfg.curve, cfg.endowment()?, &cfg.nash_grid()?)?;
            let (lo, hi) = set.segment.unzip();
            let stub = set.asymmetric_stub;
            let table = Table::new(
                &["kappa", "alpha", "tau", "x2_lower", "x1_upper", "rho", "segment_lo", "segment_hi", "stub_offer", "stub_direction"],
                vec![vec![
                    kappa.to_string(),
                    alpha.to_string(),
                    set.tau.to_string(),
                    set.x2_lower.to_string(),
                    set.x1_upper.to_string(),
                    opt(set.rho),
                    opt(lo),
                    opt(hi),
                    opt(stub.map(|s| s.offer)),
                    stub.map(|s| serde_json::to_value(s.direction).unwrap().as_str().unwrap_or_default().to_string()).unwrap_or_default(),
                ]],
            );
            let mut body = serde_json::to_value(&set)?;
            body["kappa"] = json!(kappa);
            body["alpha"] = json!(alpha);
            Output::new(body, table)
        }
        Command::Predict { estimates, no_kappa } => {
            let loaded = load_estimates(estimates)?;
            let w = Endowment::new(cfg.estimation.endowment)?;
            let set = predict_all(&loaded.records, w, cfg.estimation.curve, *no_kappa)?;
            let rows = set
                .subjects
                .iter()
                .map(|s| {
                    vec![
                        s.id.clone(),
                        s.alpha.to_string(),
                        s.beta.to_string(),
                        s.kappa.to_string(),
                        s.dg_transfer.to_string(),
                        opt(s.ug_threshold),
                    ]
                })
                .collect();
            let mut body = serde_json::to_value(&set)?;
            body["filter"] = serde_json::to_value(&loaded.report)?;
            body["estimate_summary"] = serde_json::to_value(loaded.summary)?;
            Output::new(body, Table::new(&["id", "alpha", "beta", "kappa", "dg_transfer", "ug_threshold"], rows))
        }
        Command::Estimate { choices, k } => {
            let est = &cfg.estimation;
            let records = load_choices(choices)?;
            let games = match &est.games {
                Some(path) => load_games(path)?,
                None => BinaryGame::mini_ultimatum_set(),
            };
            let data = ChoiceData::new(games, &records)?;
            let mut em = est.em_config(cfg.seed);
            if let Some(k) = k {
                em.k = *k;
            }
            em.validate()?;
            let fit = em_fit(&data, est.curve, &em)?;
            let lnl_one = match em.k {
                1 => None,
                _ => Some(em_fit(&data, est.curve, &bargain_core::mixture::EmConfig { k: 1, ..em })?.log_likelihood),
            };
            let bootstrap = match est.bootstrap_replicates {
                0 => None,
                b => Some(bootstrap_se(&data, est.curve, &em, &fit, b, cfg.seed)?),
            };
            let report = FitReport::new(fit, lnl_one, Endowment::new(est.endowment)?, est.curve, bootstrap)?;
            Output::raw(report.to_json(), report.to_csv())
        }
        Command::Metrics { lnl, k, n, en, lnl_one } => {
            if *k == 0 || *n == 0 || !lnl.is_finite() || !en.is_finite() || *en < 0.0 {
                return Err(Error::Domain("metrics need k >= 1, n >= 1, a finite lnL and EN >= 0".into()));
            }
            let value = icl(*lnl, *k, *n, *en);
            let nec = match lnl_one {
                Some(l1) if *k > 1 => Some(nec(*en, *lnl, *l1)?),
                _ => None,
            };
            let body = json!({ "log_likelihood": lnl, "k": k, "n": n, "entropy": en, "icl": value, "nec": nec });
            let table = Table::new(
                &["k", "n", "log_likelihood", "entropy", "icl", "nec"],
                vec![vec![k.to_string(), n.to_string(), lnl.to_string(), en.to_string(), value.to_string(), opt(nec)]],
            );
            Output::new(body, table)
        }
        Command::OracleCheck { draws } => {
            let o = &cfg.oracle;
            let draws = draws.unwrap_or(o.draws);
            let report = equivalence_check(&cfg.setting()?, draws, cfg.oracle_step(), (o.alpha_min, o.alpha_max), o.kappa_max, cfg.seed)?;
            let rows = report
                .draws
                .iter()
                .map(|d| {
                    vec![
                        d.alpha.to_string(),
                        d.kappa.to_string(),
                        d.solver.x1.to_string(),
                        d.solver.x2.to_string(),
                        d.solver_utility.to_string(),
                        d.grid.x1.to_string(),
                        d.grid.x2.to_string(),
                        d.grid_utility.to_string(),
                    ]
                })
                .collect();
            let table =
                Table::new(&["alpha", "kappa", "solver_x1", "solver_x2", "solver_utility", "grid_x1", "grid_x2", "grid_utility"], rows);
            let out = Output::new(serde_json::to_value(&report)?, table);
            if !report.passed {
                return Err(Error::Numeric(format!("grid beats the solver by {:e}", report.max_shortfall)));
            }
            out
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let mut cfg = match &cli.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = cli.seed {
            cfg.seed = seed;
        }
        let out = run(&cli.command, &cfg)?;
        let dir = cli.out.as_ref().or(cfg.output_dir.as_ref());
        out.emit(cli.command.name(), cli.format, dir)
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numeric() { 3 } else { 2 })
        }
    }
}
