//! Command-line driver: component enumeration, plan/build/verify pipelines,
//! rank experiments and sweeps with deterministic seeding.
//!
//! Exit codes: 0 when all checks pass, 2 when a supported component fails a
//! check, 3 on invalid configuration or payloads.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use b3rep::braidrep::{
    burnside_dimension, jacobian_rank, lift, verify_relations, BraidRep, WordMode,
    DEFAULT_WORD_CAP,
};
use b3rep::dimvectors::{enumerate_components, n_sigma, tau_for, SigmaVector};
use b3rep::linalg::{matrix_from_json, matrix_to_json, MatrixJson};
use b3rep::parametrize::{instantiate, plan_component};
use b3rep::quiver::{
    canonical_form, is_canonical, meataxe_is_simple, rep_from_json, sys_from_json, sys_to_json,
    LinearSystemJson, QuiverRepJson,
};
use b3rep::report::{run_sweep, sweep_to_csv, sweep_to_pretty, ExecMode, SweepConfig};
use b3rep::rng::derive_seed;
use b3rep::scalars::{make_prime_field, EisensteinField, Field, FieldSpec, DEFAULT_PRIME};

#[derive(Parser)]
#[command(name = "b3rep", version, about = "exact parametrizations of braid group representation varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputOpts {
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List the components for one total dimension.
    Components {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Show the symbolic layout report for one component.
    Plan {
        #[arg(long)]
        sigma: String,
        /// Include the full block dump in the report.
        #[arg(long)]
        layout: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Instantiate a component at a seeded point and lift it.
    Build {
        #[arg(long)]
        sigma: String,
        /// Field spec: fp:P or qrho.  Defaults to fp with the default prime
        /// (override with BRAID_DEFAULT_PRIME).
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check the relations and the Burnside certificate of a built file.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Trace-Jacobian rank experiment for one component.
    Rank {
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value = "c2c3")]
        mode: String,
        #[arg(long, default_value = "2")]
        trials: u32,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        max_syllables: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the full pipeline over every component in a range of n.
    Sweep {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value = "3")]
        trials: u32,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        max_syllables: usize,
        /// Force the single-threaded path.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Quiver representation utilities.
    Quiver {
        #[command(subcommand)]
        command: QuiverCommand,
    },
    /// Linear system utilities.
    Sys {
        #[command(subcommand)]
        command: SysCommand,
    },
}

#[derive(Subcommand)]
enum QuiverCommand {
    /// Certified simplicity of a quiver representation payload.
    Simple {
        file: PathBuf,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum SysCommand {
    /// Companion canonical form of a linear system payload.
    Canon {
        file: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
}

/// Result-side error: the payload/config is invalid (exit 3).
struct ConfigError(String);

impl<T: std::fmt::Display> From<T> for ConfigError {
    fn from(e: T) -> Self {
        ConfigError(e.to_string())
    }
}

fn default_field_spec() -> Result<FieldSpec, ConfigError> {
    match std::env::var("BRAID_DEFAULT_PRIME") {
        Ok(v) => {
            let p: u64 = v
                .parse()
                .map_err(|_| ConfigError(format!("BRAID_DEFAULT_PRIME={v:?} is not an integer")))?;
            Ok(FieldSpec::Fp(p))
        }
        Err(_) => Ok(FieldSpec::Fp(DEFAULT_PRIME)),
    }
}

fn resolve_field(flag: &Option<String>) -> Result<FieldSpec, ConfigError> {
    let spec = match flag {
        Some(s) => FieldSpec::parse(s)?,
        None => default_field_spec()?,
    };
    if let FieldSpec::Fp(p) = spec {
        make_prime_field(p)?;
    }
    Ok(spec)
}

fn emit(output: &OutputOpts, text: &str) -> Result<(), ConfigError> {
    match &output.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ComponentLine {
    sigma: String,
    n: usize,
    n_sigma: usize,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn cmd_components(n: usize, output: &OutputOpts) -> Result<ExitCode, ConfigError> {
    if n < 2 {
        return Err(ConfigError("components requires --n >= 2".into()));
    }
    let lines: Vec<ComponentLine> = enumerate_components(n)
        .iter()
        .map(|sigma| match tau_for(sigma) {
            Ok((tau, case)) => ComponentLine {
                sigma: sigma.to_string(),
                n: sigma.n(),
                n_sigma: n_sigma(sigma),
                status: "supported".into(),
                tau: Some(tau.to_string()),
                case: Some(case.to_string()),
                reason: None,
            },
            Err(e) => ComponentLine {
                sigma: sigma.to_string(),
                n: sigma.n(),
                n_sigma: n_sigma(sigma),
                status: "unsupported".into(),
                tau: None,
                case: None,
                reason: Some(match e {
                    b3rep::dimvectors::DimError::UnsupportedComponent { reason, .. } => reason,
                    other => other.to_string(),
                }),
            },
        })
        .collect();
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&lines)?,
        _ => {
            let mut s = String::new();
            for l in &lines {
                match &l.reason {
                    None => s.push_str(&format!(
                        "{:<14} n_sigma={:<3} tau={:<24} {}\n",
                        l.sigma,
                        l.n_sigma,
                        l.tau.as_deref().unwrap_or(""),
                        l.case.as_deref().unwrap_or("")
                    )),
                    Some(r) => s.push_str(&format!(
                        "{:<14} n_sigma={:<3} unsupported ({r})\n",
                        l.sigma, l.n_sigma
                    )),
                }
            }
            s
        }
    };
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_plan(sigma: &str, layout: bool, output: &OutputOpts) -> Result<ExitCode, ConfigError> {
    let sigma = SigmaVector::parse(sigma)?;
    match plan_component(&sigma) {
        Ok(plan) => {
            let report = plan.report(layout);
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&report)?,
                _ => format!(
                    "sigma {}  n={} n_sigma={}\ntau {}\ncase {}\nrow groups {:?}\ncol groups {:?}\nparameters ({}): {}\ncorrections: {:?}\n",
                    report.sigma,
                    report.n,
                    report.n_sigma,
                    report.tau,
                    report.case,
                    report.row_groups,
                    report.col_groups,
                    report.parameters.len(),
                    report.parameters.join(", "),
                    report.corrections
                ),
            };
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(b3rep::parametrize::ParamError::Dim(
            b3rep::dimvectors::DimError::UnsupportedComponent { sigma, reason },
        )) => {
            let text = match output.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "sigma": sigma,
                    "status": "unsupported",
                    "reason": reason,
                }))?,
                _ => format!("{sigma}: unsupported ({reason})\n"),
            };
            emit(output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(e.into()),
    }
}

/// File payload of a built representation.
#[derive(Serialize, Deserialize)]
struct BraidRepFile {
    sigma: String,
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    mu: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<MatrixJson>,
    sigma1: MatrixJson,
    sigma2: MatrixJson,
}

fn build_in<F: Field>(
    field: &F,
    sigma: &SigmaVector,
    seed: u64,
) -> Result<BraidRepFile, ConfigError> {
    let plan = plan_component(sigma)?;
    let (b, assignment) = instantiate(&plan, field, seed)?;
    let mu = assignment.value(plan.mu_param).clone();
    let rep = lift(&b, &mu, sigma)?;
    Ok(BraidRepFile {
        sigma: sigma.to_string(),
        field: field.spec_str(),
        seed: Some(seed),
        mu: field.encode(&mu),
        b: Some(matrix_to_json(&b)),
        sigma1: matrix_to_json(&rep.sigma1),
        sigma2: matrix_to_json(&rep.sigma2),
    })
}

fn cmd_build(
    sigma: &str,
    field: &Option<String>,
    seed: u64,
    output: &OutputOpts,
) -> Result<ExitCode, ConfigError> {
    let sigma = SigmaVector::parse(sigma)?;
    let spec = resolve_field(field)?;
    let file = match spec {
        FieldSpec::Fp(p) => build_in(&make_prime_field(p)?, &sigma, seed)?,
        FieldSpec::QRho => build_in(&EisensteinField, &sigma, seed)?,
    };
    emit(output, &serde_json::to_string_pretty(&file)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyReport {
    sigma: String,
    field: String,
    n: usize,
    braid: bool,
    central: bool,
    burnside: usize,
    burnside_full: bool,
    pass: bool,
}

fn verify_in<F: Field>(field: &F, file: &BraidRepFile) -> Result<VerifyReport, ConfigError> {
    let sigma = SigmaVector::parse(&file.sigma)?;
    let rep = BraidRep::from_parts(
        matrix_from_json(field.clone(), &file.sigma1)?,
        matrix_from_json(field.clone(), &file.sigma2)?,
        field.decode(&file.mu)?,
        sigma,
    )?;
    let relations = verify_relations(&rep);
    let burnside = burnside_dimension(&rep);
    let n = sigma.n();
    Ok(VerifyReport {
        sigma: file.sigma.clone(),
        field: field.spec_str(),
        n,
        braid: relations.braid,
        central: relations.central,
        burnside,
        burnside_full: burnside == n * n,
        pass: relations.braid && relations.central && burnside == n * n,
    })
}

fn cmd_verify(file: &PathBuf, output: &OutputOpts) -> Result<ExitCode, ConfigError> {
    let payload: BraidRepFile = serde_json::from_str(&std::fs::read_to_string(file)?)?;
    let report = match FieldSpec::parse(&payload.field)? {
        FieldSpec::Fp(p) => verify_in(&make_prime_field(p)?, &payload)?,
        FieldSpec::QRho => verify_in(&EisensteinField, &payload)?,
    };
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        _ => format!(
            "sigma {} over {}: braid={} central={} burnside={}/{} -> {}\n",
            report.sigma,
            report.field,
            report.braid,
            report.central,
            report.burnside,
            report.n * report.n,
            if report.pass { "pass" } else { "fail" }
        ),
    };
    emit(output, &text)?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

#[derive(Serialize)]
struct RankReport {
    sigma: String,
    n: usize,
    n_sigma: usize,
    mode: String,
    field: String,
    params: usize,
    trials: Vec<RankTrial>,
    generic_rank: Option<usize>,
    pass: bool,
}

#[derive(Serialize)]
struct RankTrial {
    seed: u64,
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_rank(
    sigma: &str,
    mode: &str,
    trials: u32,
    field: &Option<String>,
    seed: u64,
    cap: usize,
    output: &OutputOpts,
) -> Result<ExitCode, ConfigError> {
    let sigma = SigmaVector::parse(sigma)?;
    let word_mode = match mode {
        "c2c3" => WordMode::C2C3,
        "b3" => WordMode::B3,
        other => return Err(ConfigError(format!("unknown mode {other:?} (c2c3|b3)"))),
    };
    let FieldSpec::Fp(p) = resolve_field(field)? else {
        return Err(ConfigError("rank experiments require a prime field".into()));
    };
    let field = make_prime_field(p)?;
    let plan = plan_component(&sigma)?;
    let label = sigma.to_string();
    let mut trial_reports = Vec::new();
    for t in 0..trials {
        let s = derive_seed(seed, &label, t as u64);
        match jacobian_rank(&plan, &field, s, word_mode, cap) {
            Ok(rank) => trial_reports.push(RankTrial {
                seed: s,
                rank: Some(rank),
                error: None,
            }),
            Err(e) => trial_reports.push(RankTrial {
                seed: s,
                rank: None,
                error: Some(e.to_string()),
            }),
        }
    }
    let generic = trial_reports.iter().filter_map(|t| t.rank).max();
    // only the quotient-mode rank carries an asserted target
    let pass = match word_mode {
        WordMode::C2C3 => generic == Some(n_sigma(&sigma)),
        WordMode::B3 => trial_reports.iter().all(|t| t.error.is_none()),
    };
    let report = RankReport {
        sigma: label,
        n: sigma.n(),
        n_sigma: n_sigma(&sigma),
        mode: mode.to_string(),
        field: field.spec_str(),
        params: plan.count_parameters(),
        trials: trial_reports,
        generic_rank: generic,
        pass,
    };
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        _ => format!(
            "sigma {} mode {} over {}: params={} generic rank {:?} (target n_sigma={}) -> {}\n",
            report.sigma,
            report.mode,
            report.field,
            report.params,
            report.generic_rank,
            report.n_sigma,
            if report.pass { "pass" } else { "fail" }
        ),
    };
    emit(output, &text)?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    from: usize,
    to: usize,
    field: &Option<String>,
    trials: u32,
    seed: u64,
    cap: usize,
    sequential: bool,
    output: &OutputOpts,
) -> Result<ExitCode, ConfigError> {
    if from < 2 || from > to {
        return Err(ConfigError("sweep requires 2 <= from <= to".into()));
    }
    let FieldSpec::Fp(p) = resolve_field(field)? else {
        return Err(ConfigError("sweeps require a prime field".into()));
    };
    let mut config = SweepConfig::new(from, to, p, trials, seed);
    config.word_cap = cap;
    if sequential {
        config.mode = ExecMode::Sequential;
    }
    let report = run_sweep(&config)?;
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&report)?,
        Format::Csv => sweep_to_csv(&report),
        Format::Pretty => sweep_to_pretty(&report),
    };
    emit(output, &text)?;
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_quiver_simple(file: &PathBuf, seed: u64, output: &OutputOpts) -> Result<ExitCode, ConfigError> {
    let payload: QuiverRepJson = serde_json::from_str(&std::fs::read_to_string(file)?)?;
    let field_tag = payload
        .arrows
        .first()
        .map(|a| a.matrix.field.clone())
        .ok_or_else(|| ConfigError("representation has no arrows; specify at least one".into()))?;
    let FieldSpec::Fp(p) = FieldSpec::parse(&field_tag)? else {
        return Err(ConfigError(
            "certified simplicity testing requires a prime-field payload".into(),
        ));
    };
    let field = make_prime_field(p)?;
    let rep = rep_from_json(field, &payload)?;
    let simple = meataxe_is_simple(&field, &rep, seed);
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "field": field.spec_str(),
            "total_dim": rep.total_dim(),
            "simple": simple,
        }))?,
        _ => format!("simple: {simple}\n"),
    };
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sys_canon(file: &PathBuf, output: &OutputOpts) -> Result<ExitCode, ConfigError> {
    let payload: LinearSystemJson = serde_json::from_str(&std::fs::read_to_string(file)?)?;
    let spec = FieldSpec::parse(&payload.a.field)?;
    let result: Result<(String, bool), ConfigError> = match spec {
        FieldSpec::Fp(p) => {
            let field = make_prime_field(p)?;
            let sys = sys_from_json(field, &payload)?;
            match canonical_form(&sys) {
                Ok(canon) => Ok((
                    serde_json::to_string_pretty(&sys_to_json(&canon))?,
                    is_canonical(&canon),
                )),
                Err(e) => {
                    emit(output, &format!("{e}\n"))?;
                    return Ok(ExitCode::from(2));
                }
            }
        }
        FieldSpec::QRho => {
            let sys = sys_from_json(EisensteinField, &payload)?;
            match canonical_form(&sys) {
                Ok(canon) => Ok((
                    serde_json::to_string_pretty(&sys_to_json(&canon))?,
                    is_canonical(&canon),
                )),
                Err(e) => {
                    emit(output, &format!("{e}\n"))?;
                    return Ok(ExitCode::from(2));
                }
            }
        }
    };
    let (text, _canonical) = result?;
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, ConfigError> {
    match &cli.command {
        Command::Components { n, output } => cmd_components(*n, output),
        Command::Plan { sigma, layout, output } => cmd_plan(sigma, *layout, output),
        Command::Build { sigma, field, seed, output } => cmd_build(sigma, field, *seed, output),
        Command::Verify { file, output } => cmd_verify(file, output),
        Command::Rank {
            sigma,
            mode,
            trials,
            field,
            seed,
            max_syllables,
            output,
        } => cmd_rank(sigma, mode, *trials, field, *seed, *max_syllables, output),
        Command::Sweep {
            from,
            to,
            field,
            trials,
            seed,
            max_syllables,
            sequential,
            output,
        } => cmd_sweep(*from, *to, field, *trials, *seed, *max_syllables, *sequential, output),
        Command::Quiver { command } => match command {
            QuiverCommand::Simple { file, seed, output } => cmd_quiver_simple(file, *seed, output),
        },
        Command::Sys { command } => match command {
            SysCommand::Canon { file, output } => cmd_sys_canon(file, output),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version output is not an error
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(3);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
