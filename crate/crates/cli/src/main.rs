//! Command-line front end.
//!
//! Inputs are either a finite group Cayley table (CSV), an abstract
//! simplicial complex (one facet per line), or the built-in Čech nerve of
//! the minimal simplicial circle. Each subcommand runs one family of
//! verifiers over the resulting simplicial space and emits a JSON report.
//!
//! Exit codes: 0 when every verification passes, 2 when a verification
//! fails, 1 on malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use suspsplit_core::calculus::{delta_filtration_check, triangularity_check};
use suspsplit_core::constructions::{
    cech_nerve, commuting_nerve, discrete_space, order_complex, parse_group_csv,
    parse_simplicial_complex, rep_nerve, simplicial_circle, FiniteGroup,
};
use suspsplit_core::filtration::{filtration_stage, stage_quotient, wedge_decomposition};
use suspsplit_core::homology::chains::normalized_chains;
use suspsplit_core::homology::{homology, HomologyGroups};
use suspsplit_core::simplicial::FiniteSimplicialSet;
use suspsplit_core::space::SimplicialSpace;
use suspsplit_core::splitting::{
    reliable_total_degree, segal_e1, total_complex, verify_corollary_shift,
    verify_realization_quotients, verify_theorem_splitting,
};

#[derive(Parser)]
#[command(
    name = "suspsplit",
    about = "Degeneracy filtrations and stable splitting verification for finite simplicial spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize)]
struct RunConfig {
    /// Cayley table CSV (header `order,m`, then m rows of m entries)
    #[arg(long, value_name = "CSV")]
    group: Option<PathBuf>,

    /// Simplicial complex file (one facet per line, `#` comments)
    #[arg(long, value_name = "SC")]
    complex: Option<PathBuf>,

    /// Use the Čech nerve of the minimal simplicial circle
    #[arg(long, default_value_t = false)]
    cech_circle: bool,

    /// With --group: use the conjugation quotient of the commuting nerve
    #[arg(long, default_value_t = false)]
    rep: bool,

    /// Horizontal truncation (largest level verified)
    #[arg(long, default_value_t = 4)]
    max_level: usize,

    /// Vertical truncation of the levels
    #[arg(long, default_value_t = 4)]
    max_dim: usize,

    /// Also write the JSON report to this path
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Seed echoed into the report (reports are deterministic per seed)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the simplicial identities on the input and its levels
    Validate(RunConfig),
    /// Exact integer homology of the input
    Homology(RunConfig),
    /// Degeneracy filtration stages, quotients, and wedge decompositions
    Filtration(RunConfig),
    /// Certify the block splitting map in reduced homology per level
    VerifySplitting(RunConfig),
    /// Check the realization filtration quotients against level quotients
    VerifyRealization(RunConfig),
    /// Check the degree-shifted stage/filtration identities
    VerifyCorollary(RunConfig),
    /// First page of the realization spectral sequence
    SegalE1(RunConfig),
    /// Composite-operator triangularity and filtration restriction checks
    Triangularity(RunConfig),
}

#[derive(Serialize)]
struct InputSummary {
    kind: String,
    path: Option<String>,
    levels: Vec<usize>,
    discrete: bool,
    max_level: usize,
    max_dim: usize,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: String,
    seed: u64,
    input: InputSummary,
    payload: T,
    all_passed: bool,
}

enum Input {
    Group { group: FiniteGroup, rep: bool, path: PathBuf },
    Complex { set: FiniteSimplicialSet, path: PathBuf },
    CechCircle,
}

fn load_input(cfg: &RunConfig) -> anyhow::Result<Input> {
    let picked = usize::from(cfg.group.is_some())
        + usize::from(cfg.complex.is_some())
        + usize::from(cfg.cech_circle);
    if picked != 1 {
        anyhow::bail!("choose exactly one input: --group, --complex, or --cech-circle");
    }
    if let Some(path) = &cfg.group {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read group table {}", path.display()))?;
        let group = parse_group_csv(&text)?;
        return Ok(Input::Group {
            group,
            rep: cfg.rep,
            path: path.clone(),
        });
    }
    if cfg.rep {
        anyhow::bail!("--rep applies only with --group");
    }
    if let Some(path) = &cfg.complex {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read complex {}", path.display()))?;
        let complex = parse_simplicial_complex(&text)?;
        let truncation = (complex.dim() + 1).max(cfg.max_level).max(cfg.max_dim);
        let set = order_complex(&complex, truncation);
        return Ok(Input::Complex {
            set,
            path: path.clone(),
        });
    }
    Ok(Input::CechCircle)
}

fn build_space(input: &Input, cfg: &RunConfig) -> anyhow::Result<SimplicialSpace> {
    let space = match input {
        Input::Group { group, rep, .. } => {
            if *rep {
                rep_nerve(group, cfg.max_level, cfg.max_dim)?
            } else {
                commuting_nerve(group, cfg.max_level, cfg.max_dim)?
            }
        }
        Input::Complex { set, .. } => discrete_space(set, cfg.max_level, cfg.max_dim)?,
        Input::CechCircle => cech_nerve(&simplicial_circle(cfg.max_dim), cfg.max_level)?,
    };
    Ok(space)
}

fn input_summary(input: &Input, space: &SimplicialSpace, cfg: &RunConfig) -> InputSummary {
    let (kind, path) = match input {
        Input::Group { rep, path, .. } => (
            if *rep { "rep-nerve" } else { "commuting-nerve" }.to_string(),
            Some(path.display().to_string()),
        ),
        Input::Complex { path, .. } => ("order-complex".to_string(), Some(path.display().to_string())),
        Input::CechCircle => ("cech-circle".to_string(), None),
    };
    InputSummary {
        kind,
        path,
        levels: (0..=space.horizontal_truncation())
            .map(|n| space.level(n).gen_counts().iter().sum())
            .collect(),
        discrete: space.is_discrete(),
        max_level: cfg.max_level,
        max_dim: cfg.max_dim,
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, report: &Report<T>) -> anyhow::Result<ExitCode> {
    let text = serde_json::to_string_pretty(report)?;
    println!("{text}");
    if let Some(path) = &cfg.json {
        fs::write(path, format!("{text}\n"))
            .with_context(|| format!("cannot write report to {}", path.display()))?;
    }
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

#[derive(Serialize)]
struct ValidatePayload {
    level_reports: Vec<LevelValidation>,
    horizontal_identities_hold: bool,
}

#[derive(Serialize)]
struct LevelValidation {
    level: usize,
    generator_counts: Vec<usize>,
    face_violations: usize,
    degeneracy_violations: usize,
}

fn run_validate(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    // constructing the space already verifies the horizontal identities
    let space = build_space(&input, cfg)?;
    let mut all = true;
    let mut level_reports = Vec::new();
    for n in 0..=space.horizontal_truncation() {
        let report = space.level(n).validate_identities();
        all &= report.is_valid();
        level_reports.push(LevelValidation {
            level: n,
            generator_counts: space.level(n).gen_counts(),
            face_violations: report.face_violations.len(),
            degeneracy_violations: report.degeneracy_violations.len(),
        });
    }
    if let Input::Complex { set, .. } = &input {
        let report = set.validate_identities();
        all &= report.is_valid();
    }
    let report = Report {
        command: "validate".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: ValidatePayload {
            level_reports,
            horizontal_identities_hold: true,
        },
        all_passed: all,
    };
    emit(cfg, &report)
}

#[derive(Serialize)]
struct HomologyPayload {
    /// For order complexes: homology of the complex itself.
    complex_reduced: Option<HomologyGroups>,
    complex_unreduced: Option<HomologyGroups>,
    complex_groups: Option<Vec<String>>,
    /// Reduced homology of the realization (total complex), reliable range
    /// flagged.
    realization_reduced: HomologyGroups,
    realization_groups: Vec<String>,
}

fn run_homology(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let (complex_reduced, complex_unreduced) = match &input {
        Input::Complex { set, .. } => {
            let reliable = Some(set.truncation().saturating_sub(1));
            let reduced = homology(&normalized_chains(set, true).complex, reliable);
            let unreduced = homology(&normalized_chains(set, false).complex, reliable);
            (Some(reduced), Some(unreduced))
        }
        _ => (None, None),
    };
    let tot = total_complex(&space, true);
    let realization_reduced = homology(&tot.complex, Some(reliable_total_degree(&space)));
    let report = Report {
        command: "homology".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: HomologyPayload {
            complex_groups: complex_unreduced.as_ref().map(|h| {
                h.degrees.iter().map(|d| format!("H_{} = {}", d.degree, d.group_string())).collect()
            }),
            complex_reduced,
            complex_unreduced,
            realization_groups: realization_reduced
                .degrees
                .iter()
                .map(|d| format!("H~_{} = {}{}", d.degree, d.group_string(),
                    if d.reliable { "" } else { " (unreliable: truncation)" }))
                .collect(),
            realization_reduced,
        },
        all_passed: true,
    };
    emit(cfg, &report)
}

#[derive(Serialize)]
struct FiltrationPayload {
    levels: Vec<FiltrationLevel>,
    all_wedges_pass: bool,
}

#[derive(Serialize)]
struct FiltrationLevel {
    level: usize,
    /// Generator counts of `S^t`, indexed by `t`, then by vertical dim.
    stage_counts: Vec<Vec<usize>>,
    /// Non-basepoint class counts of `S^t/S^{t+1}`, indexed by `t`.
    quotient_class_counts: Vec<Vec<usize>>,
    wedges: Vec<suspsplit_core::filtration::WedgeWitness>,
}

fn run_filtration(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let mut levels = Vec::new();
    let mut all = true;
    for n in 0..=space.horizontal_truncation() {
        let stage_counts = (0..=n + 1)
            .map(|t| filtration_stage(&space, n, t).expect("in range").gen_counts())
            .collect();
        let quotient_class_counts = (0..=n)
            .map(|t| stage_quotient(&space, n, t).expect("in range").class_counts())
            .collect();
        let wedges: Vec<_> = (0..=n)
            .map(|r| wedge_decomposition(&space, n, r).expect("in range"))
            .collect();
        all &= wedges.iter().all(|w| w.passed());
        levels.push(FiltrationLevel {
            level: n,
            stage_counts,
            quotient_class_counts,
            wedges,
        });
    }
    let report = Report {
        command: "filtration".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: FiltrationPayload {
            levels,
            all_wedges_pass: all,
        },
        all_passed: all,
    };
    emit(cfg, &report)
}

fn run_verify_splitting(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let reports: Vec<_> = (0..=space.horizontal_truncation())
        .into_par_iter()
        .map(|n| verify_theorem_splitting(&space, n))
        .collect();
    let all = reports.iter().all(|r| r.passed);
    let report = Report {
        command: "verify-splitting".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: reports,
        all_passed: all,
    };
    emit(cfg, &report)
}

fn run_verify_realization(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let reports: Vec<_> = (0..=space.horizontal_truncation())
        .map(|j| verify_realization_quotients(&space, j))
        .collect();
    let all = reports.iter().all(|r| r.passed);
    let report = Report {
        command: "verify-realization".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: reports,
        all_passed: all,
    };
    emit(cfg, &report)
}

fn run_verify_corollary(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let pairs: Vec<(usize, usize)> = (0..=space.horizontal_truncation())
        .flat_map(|n| (0..=n).map(move |t| (n, t)))
        .collect();
    let reports: Vec<_> = pairs
        .into_par_iter()
        .map(|(n, t)| verify_corollary_shift(&space, n, t))
        .collect();
    let all = reports.iter().all(|r| r.passed);
    let report = Report {
        command: "verify-corollary".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: reports,
        all_passed: all,
    };
    emit(cfg, &report)
}

fn run_segal(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let page = segal_e1(&space);
    let all = page.d1_chain_square_zero
        && page.d1_homology_square_zero
        && page.tot_match.unwrap_or(true);
    let report = Report {
        command: "segal-e1".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: page,
        all_passed: all,
    };
    emit(cfg, &report)
}

#[derive(Serialize)]
struct TriangularityPayload {
    triangularity: Vec<suspsplit_core::calculus::TriangularityReport>,
    delta_restriction: Vec<suspsplit_core::calculus::DeltaFiltrationReport>,
}

fn run_triangularity(cfg: &RunConfig) -> anyhow::Result<ExitCode> {
    let input = load_input(cfg)?;
    let space = build_space(&input, cfg)?;
    let pairs: Vec<(usize, usize)> = (0..=space.horizontal_truncation())
        .flat_map(|n| (0..=n).map(move |r| (n, r)))
        .collect();
    let triangularity: Vec<_> = pairs
        .par_iter()
        .map(|&(n, r)| triangularity_check(&space, n, r).expect("in range"))
        .collect();
    let delta_restriction: Vec<_> = pairs
        .par_iter()
        .map(|&(n, r)| delta_filtration_check(&space, n, r).expect("in range"))
        .collect();
    let all = triangularity.iter().all(|r| r.passed())
        && delta_restriction.iter().all(|r| r.passed());
    let report = Report {
        command: "triangularity".to_string(),
        seed: cfg.seed,
        input: input_summary(&input, &space, cfg),
        payload: TriangularityPayload {
            triangularity,
            delta_restriction,
        },
        all_passed: all,
    };
    emit(cfg, &report)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SUSPSPLIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(cfg) => run_validate(cfg),
        Command::Homology(cfg) => run_homology(cfg),
        Command::Filtration(cfg) => run_filtration(cfg),
        Command::VerifySplitting(cfg) => run_verify_splitting(cfg),
        Command::VerifyRealization(cfg) => run_verify_realization(cfg),
        Command::VerifyCorollary(cfg) => run_verify_corollary(cfg),
        Command::SegalE1(cfg) => run_segal(cfg),
        Command::Triangularity(cfg) => run_triangularity(cfg),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
