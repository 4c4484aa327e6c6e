use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::ModelConfig;
use super::CliError;
use crate::bsde::TimeGrid;
use crate::lq::{
    contracts_cooperative, contracts_nash, contracts_pareto, drift, figure1_data, lambda_improvement_set,
    nash_pareto_candidate, nash_pareto_check, nash_pareto_residuals, principal_value_analytic, solve, Figure1Table,
    LqParams, Mode, ParetoWeight,
};
use crate::mc::{certify_nash, certify_pareto, estimate, mc_agent_utility, mc_principal_utility, simulate_paths, McEstimate};
use crate::moop::{check_bmo_condition, check_growth_conditions, lemma_b1_constant, GeneralModel, SamplingDomain};
use crate::numfmt::format_significant;
use crate::Error;

/// Standard errors allowed between an estimate of the Principal's value and
/// its closed form.
pub const PRINCIPAL_SE: f64 = 3.0;
/// Standard errors allowed for agent utilities and mean outputs.
pub const AGENT_SE: f64 = 4.0;

fn mode_error(e: Error) -> CliError {
    CliError::Mode(e.to_string())
}

pub fn parse_mode(mode: &str, lambda: Option<f64>) -> Result<Mode, CliError> {
    match mode {
        "cooperative" => Ok(Mode::Cooperative),
        "nash" => Ok(Mode::Nash),
        "pareto" => {
            let l = lambda.ok_or_else(|| CliError::Mode("mode pareto needs --lambda".into()))?;
            if l == 0.5 {
                return Err(CliError::Mode("lambda = 0.5 is the cooperative case; use --mode cooperative".into()));
            }
            Ok(Mode::Pareto(ParetoWeight::new(l).map_err(mode_error)?))
        }
        other => Err(CliError::Mode(format!(
            "unknown mode '{other}' (expected pareto, cooperative or nash)"
        ))),
    }
}

pub fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn require_risk_averse(p: &LqParams) -> Result<(), CliError> {
    if p.r_p() == 0.0 {
        Err(CliError::Mode("r_p = 0: the exponential value of the Principal is undefined".into()))
    } else {
        Ok(())
    }
}

pub fn cmd_solve(cfg: &ModelConfig, mode: Mode, out: &mut dyn Write) -> Result<(), CliError> {
    let p = cfg.params()?;
    require_risk_averse(&p)?;
    let report = solve(mode, &p).map_err(mode_error)?;
    write_json(out, &report)
}

/// Long-format CSV: header `series,x,y`, 12 significant digits, LF endings.
pub fn figure1_csv(table: &Figure1Table) -> String {
    let mut s = String::from("series,x,y\n");
    for row in &table.rows {
        s.push_str(&row.series);
        s.push(',');
        s.push_str(&format_significant(row.x, 12));
        s.push(',');
        s.push_str(&format_significant(row.y, 12));
        s.push('\n');
    }
    s
}

pub fn cmd_figure1(cfg: &ModelConfig, out_path: Option<&std::path::Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let p = cfg.params()?;
    let table = figure1_data(&p, &cfg.r_list, cfg.grid_size).map_err(|e| CliError::Config(e.to_string()))?;
    let csv = figure1_csv(&table);
    match out_path {
        Some(path) => std::fs::write(path, csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(csv.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

pub fn cmd_lambda_set(cfg: &ModelConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let p = cfg.params()?;
    require_risk_averse(&p)?;
    let set = lambda_improvement_set(&p, cfg.lambda_tol).map_err(mode_error)?;
    let intervals: Vec<[f64; 2]> = set.intervals.iter().map(|i| [i.lower, i.upper]).collect();
    write_json(out, &json!({ "intervals": intervals, "g_na_value": set.g_na_value, "unimodal": set.unimodal }))
}

pub fn cmd_nash_pareto(cfg: &ModelConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let p = cfg.params()?;
    let candidate = nash_pareto_candidate(&p);
    let residuals = ParetoWeight::new(candidate).ok().map(|w| nash_pareto_residuals(&p, w));
    let lambda_star = nash_pareto_check(&p, cfg.nash_pareto_tol).map_err(mode_error)?;
    write_json(
        out,
        &json!({
            "candidate_lambda": candidate,
            "residuals": residuals,
            "tolerance": cfg.nash_pareto_tol,
            "lambda_star": lambda_star,
            "nash_is_pareto": lambda_star.is_some(),
        }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(flatten)]
    pub detail: Value,
}

fn mc_check(name: String, est: McEstimate, target: f64, n_se: f64) -> Check {
    Check {
        name,
        status: Status::of(est.within(target, n_se)),
        detail: json!({
            "estimate": est.mean,
            "std_error": est.std_error,
            "target": target,
            "z_score": est.z_score(target),
            "tolerance_se": n_se,
            "n_paths": est.n_paths,
        }),
    }
}

fn err_check(name: String, e: Error) -> Check {
    Check { name, status: Status::Fail, detail: json!({ "error": e.to_string() }) }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Cooperative => "cooperative",
        Mode::Nash => "nash",
        Mode::Pareto(_) => "pareto",
    }
}

/// Runs every Monte Carlo and certificate check and returns them in a
/// fixed order.
pub fn verification_checks(cfg: &ModelConfig) -> Result<Vec<Check>, CliError> {
    let p = cfg.params()?;
    let grid = TimeGrid::new(p.horizon(), cfg.steps).map_err(|e| CliError::Config(e.to_string()))?;
    let mut checks = Vec::new();

    for mode in [Mode::Cooperative, Mode::Nash] {
        let name = mode_name(mode);
        let report = solve(mode, &p).map_err(mode_error)?;
        let ens = simulate_paths(report.a_star, &p, grid, cfg.paths, cfg.seed).map_err(|e| CliError::Config(e.to_string()))?;
        let b = drift(&report.a_star);
        for j in 0..2 {
            let xs: Vec<f64> = ens.terminal().iter().map(|x| x[j]).collect();
            checks.push(mc_check(format!("{name}/mean_output_{}", j + 1), estimate(&xs), p.horizon() * b[j], AGENT_SE));
        }
        for agent in 0..2 {
            let check_name = format!("{name}/agent_{}_utility", agent + 1);
            checks.push(match mc_agent_utility(&ens, &report.contracts[agent], agent, &report.a_star, &p) {
                Ok(est) => mc_check(check_name, est, p.r0()[agent], AGENT_SE),
                Err(e) => err_check(check_name, e),
            });
        }
        if p.r_p() > 0.0 {
            let check_name = format!("{name}/principal_utility");
            let target = principal_value_analytic(mode, &p).map_err(mode_error)?;
            checks.push(match mc_principal_utility(&ens, &report.contracts, &p) {
                Ok(est) => mc_check(check_name, est, target, PRINCIPAL_SE),
                Err(e) => err_check(check_name, e),
            });
        }
    }

    for &lambda in &cfg.verify_lambdas {
        let name = format!("certify_pareto/lambda={}", format_significant(lambda, 12));
        let w = ParetoWeight::new(lambda).map_err(|e| CliError::Config(format!("verify_lambdas: {e}")))?;
        let report = solve(if w.is_cooperative() { Mode::Cooperative } else { Mode::Pareto(w) }, &p).map_err(mode_error)?;
        let contracts = contracts_pareto(w, &p).map_err(mode_error)?;
        checks.push(match certify_pareto(&report.a_star, &contracts, &p, cfg.grid_resolution) {
            Ok(cert) => Check { name, status: Status::of(cert.passed), detail: json!(cert) },
            Err(e) => err_check(name, e),
        });
    }

    let nash = solve(Mode::Nash, &p).map_err(mode_error)?;
    let name = "certify_nash".to_string();
    checks.push(match certify_nash(&nash.a_star, &contracts_nash(&p), &p, cfg.grid_resolution) {
        Ok(cert) => Check { name, status: Status::of(cert.passed), detail: json!(cert) },
        Err(e) => err_check(name, e),
    });
    // Cooperative optimum under the canonical loadings.
    let coop = contracts_cooperative(&p, None).map_err(mode_error)?;
    let coop_action = solve(Mode::Cooperative, &p).map_err(mode_error)?.a_star;
    let name = "certify_pareto/cooperative".to_string();
    checks.push(match certify_pareto(&coop_action, &coop, &p, cfg.grid_resolution) {
        Ok(cert) => Check { name, status: Status::of(cert.passed), detail: json!(cert) },
        Err(e) => err_check(name, e),
    });
    Ok(checks)
}

pub fn cmd_verify(cfg: &ModelConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let checks = verification_checks(cfg)?;
    let failed: Vec<&str> = checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.as_str()).collect();
    write_json(
        out,
        &json!({
            "seed": cfg.seed,
            "paths": cfg.paths,
            "steps": cfg.steps,
            "grid_resolution": cfg.grid_resolution,
            "all_pass": failed.is_empty(),
            "checks": checks,
        }),
    )?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}

pub fn cmd_check_assumptions(cfg: &ModelConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let gc = cfg
        .growth
        .ok_or_else(|| CliError::Config("check-assumptions needs a `growth` block in the config".into()))?;
    let p = cfg.params()?;
    let gm = GeneralModel::linear_quadratic(&p);
    let domain = SamplingDomain { samples: cfg.assumption_samples, seed: cfg.seed, t_max: p.horizon(), ..Default::default() };
    let growth = match check_growth_conditions(&gc, &gm, &domain) {
        Ok(r) => json!(r),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let (c_f, bmo) = match lemma_b1_constant(&gc, gm.n_agents()) {
        Ok(c_f) => (json!(c_f), json!({ "holds": check_bmo_condition(&gc, c_f), "product": gc.k_bmo * c_f * gc.c_p_prime })),
        Err(e) => (json!({ "error": e.to_string() }), Value::Null),
    };
    write_json(out, &json!({ "growth_constants": gc, "growth_conditions": growth, "c_f": c_f, "bmo_condition": bmo }))
}
