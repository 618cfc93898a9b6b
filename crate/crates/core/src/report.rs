//! Component sweeps and dominance reports.
//!
//! A sweep enumerates the components for a range of n, runs the full
//! pipeline (instantiate, lift, relation checks, Burnside certificate,
//! trace-Jacobian ranks) for a fixed number of seeded trials each, and
//! aggregates a deterministic report: identical (config, seed) produce
//! byte-identical JSON and CSV on any platform and at any thread count.
//!
//! The trial grid is data parallel.  With the `parallel` feature (default)
//! the work runs on rayon; `ExecMode::Sequential` forces the single-thread
//! path, which is also the only path when the feature is disabled.

use serde::Serialize;

use crate::braidrep::{
    burnside_dimension, jacobian_rank, lift, verify_relations, WordMode, DEFAULT_WORD_CAP,
};
use crate::dimvectors::{enumerate_components, n_sigma, SigmaVector};
use crate::parametrize::{instantiate, plan_component, ComponentPlan};
use crate::rng::derive_seed;
use crate::scalars::{make_prime_field, PrimeField, ScalarError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Parallel,
    Sequential,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Order-preserving map over a work list, parallel when requested and
/// compiled in.
pub fn par_map<I, O>(mode: ExecMode, items: Vec<I>, f: impl Fn(I) -> O + Sync + Send) -> Vec<O>
where
    I: Send,
    O: Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = mode;
    items.into_iter().map(f).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    /// Draws until an invertible matrix appeared (resampling statistic).
    pub draws: u32,
    pub det_ok: bool,
    pub braid: bool,
    pub central: bool,
    pub burnside: usize,
    pub burnside_full: bool,
    pub rank_c2c3: Option<usize>,
    pub rank_b3: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub sigma: String,
    pub n: usize,
    pub n_sigma: usize,
    /// "pass", "fail" or "unsupported".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<usize>,
    pub corrections: Vec<String>,
    pub trials: Vec<TrialReport>,
    /// Generic ranks: the maximum over trials.
    pub rank_c2c3: Option<usize>,
    pub rank_b3: Option<usize>,
}

fn run_trial(plan: &ComponentPlan, field: &PrimeField, seed: u64, word_cap: usize) -> TrialReport {
    let expected_burnside = plan.sigma.n() * plan.sigma.n();
    let (b, assignment) = match instantiate(plan, field, seed) {
        Ok(v) => v,
        Err(e) => {
            return TrialReport {
                seed,
                draws: 5,
                det_ok: false,
                braid: false,
                central: false,
                burnside: 0,
                burnside_full: false,
                rank_c2c3: None,
                rank_b3: None,
                error: Some(e.to_string()),
            }
        }
    };
    let mu = *assignment.value(plan.mu_param);
    let rep = match lift(&b, &mu, &plan.sigma) {
        Ok(r) => r,
        Err(e) => {
            return TrialReport {
                seed,
                draws: assignment.draws,
                det_ok: true,
                braid: false,
                central: false,
                burnside: 0,
                burnside_full: false,
                rank_c2c3: None,
                rank_b3: None,
                error: Some(e.to_string()),
            }
        }
    };
    let relations = verify_relations(&rep);
    let burnside = burnside_dimension(&rep);
    let mut error = None;
    let rank_c2c3 = match jacobian_rank(plan, field, seed, WordMode::C2C3, word_cap) {
        Ok(r) => Some(r),
        Err(e) => {
            error = Some(e.to_string());
            None
        }
    };
    let rank_b3 = match jacobian_rank(plan, field, seed, WordMode::B3, word_cap) {
        Ok(r) => Some(r),
        Err(e) => {
            error.get_or_insert_with(|| e.to_string());
            None
        }
    };
    TrialReport {
        seed,
        draws: assignment.draws,
        det_ok: true,
        braid: relations.braid,
        central: relations.central,
        burnside,
        burnside_full: burnside == expected_burnside,
        rank_c2c3,
        rank_b3,
        error,
    }
}

fn unsupported_component(sigma: &SigmaVector, reason: String) -> ComponentReport {
    ComponentReport {
        sigma: sigma.to_string(),
        n: sigma.n(),
        n_sigma: n_sigma(sigma),
        status: "unsupported".to_string(),
        reason: Some(reason),
        tau: None,
        case: None,
        params: None,
        corrections: Vec::new(),
        trials: Vec::new(),
        rank_c2c3: None,
        rank_b3: None,
    }
}

fn plan_failure_reason(e: &crate::parametrize::ParamError) -> String {
    match e {
        crate::parametrize::ParamError::Dim(
            crate::dimvectors::DimError::UnsupportedComponent { reason, .. },
        ) => reason.clone(),
        other => other.to_string(),
    }
}

fn component_from_trials(
    sigma: &SigmaVector,
    plan: &ComponentPlan,
    trial_reports: Vec<TrialReport>,
) -> ComponentReport {
    let dim = n_sigma(sigma);
    let rank_c2c3 = trial_reports.iter().filter_map(|t| t.rank_c2c3).max();
    let rank_b3 = trial_reports.iter().filter_map(|t| t.rank_b3).max();
    let all_ok = !trial_reports.is_empty()
        && trial_reports
            .iter()
            .all(|t| t.det_ok && t.braid && t.central && t.burnside_full && t.error.is_none());
    let pass = all_ok && rank_c2c3 == Some(dim);
    ComponentReport {
        sigma: sigma.to_string(),
        n: sigma.n(),
        n_sigma: dim,
        status: if pass { "pass" } else { "fail" }.to_string(),
        reason: None,
        tau: Some(plan.tau.to_string()),
        case: Some(plan.case.label().to_string()),
        params: Some(plan.count_parameters()),
        corrections: plan.corrections.clone(),
        trials: trial_reports,
        rank_c2c3,
        rank_b3,
    }
}

/// Full per-component verdict: trials of the whole pipeline plus the
/// generic rank summary.  Unsupported components are reported, not errors.
pub fn dominance_report(
    sigma: &SigmaVector,
    field: &PrimeField,
    trials: u32,
    master_seed: u64,
    word_cap: usize,
    mode: ExecMode,
) -> ComponentReport {
    let plan = match plan_component(sigma) {
        Ok(p) => p,
        Err(e) => return unsupported_component(sigma, plan_failure_reason(&e)),
    };
    let label = sigma.to_string();
    let seeds: Vec<u64> = (0..trials)
        .map(|t| derive_seed(master_seed, &label, t as u64))
        .collect();
    let trial_reports = par_map(mode, seeds, |seed| run_trial(&plan, field, seed, word_cap));
    component_from_trials(sigma, &plan, trial_reports)
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub prime: u64,
    pub trials: u32,
    pub seed: u64,
    pub word_cap: usize,
    pub mode: ExecMode,
}

impl SweepConfig {
    pub fn new(n_min: usize, n_max: usize, prime: u64, trials: u32, seed: u64) -> Self {
        SweepConfig {
            n_min,
            n_max,
            prime,
            trials,
            seed,
            word_cap: DEFAULT_WORD_CAP,
            mode: ExecMode::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub components: usize,
    pub supported: usize,
    pub unsupported: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub n_min: usize,
    pub n_max: usize,
    pub field: String,
    pub trials: u32,
    pub seed: u64,
    pub word_cap: usize,
    pub components: Vec<ComponentReport>,
    pub summary: SweepSummary,
    pub all_pass: bool,
}

/// Runs the pipeline over every component with n_min ≤ n ≤ n_max.
///
/// The work queue is the flat grid of (component, trial) pairs; workers are
/// pure and the report is assembled in enumeration order afterwards, so the
/// output does not depend on completion order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, ScalarError> {
    let field = make_prime_field(config.prime)?;
    let sigmas: Vec<SigmaVector> = (config.n_min..=config.n_max)
        .flat_map(enumerate_components)
        .collect();
    let plans: Vec<(SigmaVector, Result<ComponentPlan, String>)> = sigmas
        .into_iter()
        .map(|s| {
            let plan = plan_component(&s).map_err(|e| plan_failure_reason(&e));
            (s, plan)
        })
        .collect();
    let work: Vec<(usize, u64)> = plans
        .iter()
        .enumerate()
        .filter(|(_, (_, plan))| plan.is_ok())
        .flat_map(|(i, (sigma, _))| {
            let label = sigma.to_string();
            (0..config.trials).map(move |t| (i, derive_seed(config.seed, &label, t as u64)))
        })
        .collect();
    let results: Vec<(usize, TrialReport)> = par_map(config.mode, work, |(i, seed)| {
        let plan = plans[i].1.as_ref().expect("only supported items queued");
        (i, run_trial(plan, &field, seed, config.word_cap))
    });
    let mut per_component: Vec<Vec<TrialReport>> = vec![Vec::new(); plans.len()];
    for (i, trial) in results {
        per_component[i].push(trial);
    }
    let components: Vec<ComponentReport> = plans
        .iter()
        .zip(per_component)
        .map(|((sigma, plan), trials)| match plan {
            Ok(plan) => component_from_trials(sigma, plan, trials),
            Err(reason) => unsupported_component(sigma, reason.clone()),
        })
        .collect();
    let supported = components.iter().filter(|c| c.status != "unsupported").count();
    let passed = components.iter().filter(|c| c.status == "pass").count();
    let summary = SweepSummary {
        components: components.len(),
        supported,
        unsupported: components.len() - supported,
        passed,
        failed: supported - passed,
    };
    let all_pass = summary.failed == 0;
    Ok(SweepReport {
        n_min: config.n_min,
        n_max: config.n_max,
        field: format!("fp:{}", config.prime),
        trials: config.trials,
        seed: config.seed,
        word_cap: config.word_cap,
        components,
        summary,
        all_pass,
    })
}

fn csv_bool(components_ok: bool) -> &'static str {
    if components_ok {
        "true"
    } else {
        "false"
    }
}

/// Frozen CSV columns:
/// sigma,n,n_sigma,case,params,detB_ok,braid,central,burnside,rank_c2c3,rank_b3,status
/// with empty cells for unsupported components.
pub fn sweep_to_csv(report: &SweepReport) -> String {
    let mut out = String::from(
        "sigma,n,n_sigma,case,params,detB_ok,braid,central,burnside,rank_c2c3,rank_b3,status\n",
    );
    for c in &report.components {
        let (case, params, det, braid, central, burn, r1, r2) = if c.status == "unsupported" {
            (String::new(), String::new(), "", "", "", "", String::new(), String::new())
        } else {
            (
                c.case.clone().unwrap_or_default(),
                c.params.map(|p| p.to_string()).unwrap_or_default(),
                csv_bool(c.trials.iter().all(|t| t.det_ok)),
                csv_bool(c.trials.iter().all(|t| t.braid)),
                csv_bool(c.trials.iter().all(|t| t.central)),
                csv_bool(c.trials.iter().all(|t| t.burnside_full)),
                c.rank_c2c3.map(|r| r.to_string()).unwrap_or_default(),
                c.rank_b3.map(|r| r.to_string()).unwrap_or_default(),
            )
        };
        out.push_str(&format!(
            "\"{}\",{},{},{},{},{},{},{},{},{},{},{}\n",
            c.sigma, c.n, c.n_sigma, case, params, det, braid, central, burn, r1, r2, c.status
        ));
    }
    out
}

/// Human-readable sweep rendering.
pub fn sweep_to_pretty(report: &SweepReport) -> String {
    let mut out = format!(
        "sweep n={}..={} over {} ({} trials, seed {})\n",
        report.n_min, report.n_max, report.field, report.trials, report.seed
    );
    for c in &report.components {
        match c.status.as_str() {
            "unsupported" => out.push_str(&format!(
                "  {:<14} n={:<2} n_sigma={:<3} unsupported ({})\n",
                c.sigma,
                c.n,
                c.n_sigma,
                c.reason.as_deref().unwrap_or("")
            )),
            status => out.push_str(&format!(
                "  {:<14} n={:<2} n_sigma={:<3} case={:<10} params={:<3} rank_c2c3={:<3} rank_b3={:<3} {}\n",
                c.sigma,
                c.n,
                c.n_sigma,
                c.case.as_deref().unwrap_or(""),
                c.params.map(|p| p.to_string()).unwrap_or_default(),
                c.rank_c2c3.map(|r| r.to_string()).unwrap_or_default(),
                c.rank_b3.map(|r| r.to_string()).unwrap_or_default(),
                status
            )),
        }
    }
    out.push_str(&format!(
        "summary: {} components, {} supported, {} unsupported, {} passed, {} failed\n",
        report.summary.components,
        report.summary.supported,
        report.summary.unsupported,
        report.summary.passed,
        report.summary.failed
    ));
    out
}
