use clap::ValueEnum;
use fsg_core::{build_components, FsError, FsInstance, FsmmInstance};
use gadget_forge::{build_gadget, derive_params, desk_search, validate_gadget_with, GadgetError, GadgetParams, Overrides};
use graph_core::{GraphSpec, MultiplicityGraph, SimpleGraph};
use orientation_lab::{coprime_forest_connected, predict_cycle_components, predict_path_components, OrientError};
use random_lab::{run_sweep, write_csv, ExperimentConfig, RandomError};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use theorem_oracles::{predict_multgraph_vs_star, predict_star_vs_multgraph, verify_family, FamilySpec, OracleError};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VariantArg {
    Fs,
    Fsm,
    Fsmm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremArg {
    Thm14,
    Thm16,
    Cor511,
    PathCount,
    CycleCount,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetJob {
    pub rho: u8,
    pub m: usize,
    pub ell: Option<usize>,
    pub g: Option<usize>,
    pub s2: Option<usize>,
    pub s1: Option<usize>,
    pub desk: bool,
    pub validate: bool,
    pub dump: bool,
    pub samples: usize,
    /// Seed for the sampled induced-subgraph checks.
    pub seed: u64,
}

/// A subcommand with every input resolved; this is the config echoed in the
/// run manifest and enough to rerun it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Job {
    Components { x: GraphSpec, y: GraphSpec, variant: VariantArg, budget: u64, ids: bool },
    Predict { theorem: TheoremArg, x: GraphSpec, y: Option<GraphSpec>, check: bool, budget: u64 },
    Verify { family: FamilySpec },
    Sweep { config: ExperimentConfig },
    Gadget(GadgetJob),
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Components { .. } => "components",
            Job::Predict { .. } => "predict",
            Job::Verify { .. } => "verify",
            Job::Sweep { .. } => "sweep",
            Job::Gadget(_) => "gadget",
        }
    }
}

/// Result of running a job: primary output, extra named outputs, exit code
/// and messages for stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub artifacts: Vec<(String, Vec<u8>)>,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(stdout: Vec<u8>) -> Self {
        Outcome { stdout, ..Default::default() }
    }

    fn from_error(e: CliError) -> Self {
        Outcome { code: e.code(), diagnostics: vec![e.to_string()], ..Default::default() }
    }
}

impl From<FsError> for CliError {
    fn from(e: FsError) -> Self {
        match e {
            FsError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<OrientError> for CliError {
    fn from(e: OrientError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GadgetError> for CliError {
    fn from(e: GadgetError) -> Self {
        match e {
            GadgetError::Infeasible(_) | GadgetError::PlacementConflict(_) => CliError::Infeasible(e.to_string()),
            GadgetError::Budget(_) => CliError::Budget(e.to_string()),
            GadgetError::Fs(f) => f.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RandomError> for CliError {
    fn from(e: RandomError) -> Self {
        match e {
            RandomError::NodeBudget(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn json_line(v: &impl Serialize) -> Vec<u8> {
    let mut out = serde_json::to_vec(v).expect("serializable");
    out.push(b'\n');
    out
}

fn simple(spec: &GraphSpec, what: &str) -> Result<SimpleGraph, CliError> {
    let m = multi(spec, what)?;
    if !m.all_unit() {
        return Err(CliError::Input(format!("{what} must have all multiplicities 1 for this variant")));
    }
    Ok(m.base().clone())
}

fn multi(spec: &GraphSpec, what: &str) -> Result<MultiplicityGraph, CliError> {
    spec.to_multiplicity().map_err(|e| CliError::Input(format!("{what}: {e}")))
}

/// Runs a job. Never panics on bad input; errors become exit codes.
pub fn run(job: &Job) -> Outcome {
    let res = match job {
        Job::Components { x, y, variant, budget, ids } => components(x, y, *variant, *budget, *ids),
        Job::Predict { theorem, x, y, check, budget } => predict(*theorem, x, y.as_ref(), *check, *budget),
        Job::Verify { family } => verify(family),
        Job::Sweep { config } => sweep(config),
        Job::Gadget(g) => gadget(g),
    };
    res.unwrap_or_else(Outcome::from_error)
}

fn components(x: &GraphSpec, y: &GraphSpec, variant: VariantArg, budget: u64, ids: bool) -> Result<Outcome, CliError> {
    let report = match variant {
        VariantArg::Fs => build_components(&FsInstance::bijective(simple(x, "x")?, simple(y, "y")?)?, budget)?,
        VariantArg::Fsm => build_components(&FsInstance::new(simple(x, "x")?, multi(y, "y")?)?, budget)?,
        VariantArg::Fsmm => build_components(&FsmmInstance::new(multi(y, "y")?, multi(x, "x")?)?, budget)?,
    };
    Ok(Outcome::ok(json_line(&report.summary(ids))))
}

fn predict(theorem: TheoremArg, x: &GraphSpec, y: Option<&GraphSpec>, check: bool, budget: u64) -> Result<Outcome, CliError> {
    let xm = multi(x, "x")?;
    let (name, predicted, hosts): (&str, Value, (SimpleGraph, MultiplicityGraph)) = match theorem {
        TheoremArg::Thm14 => {
            let p = predict_star_vs_multgraph(&xm)?;
            ("thm14", p.into(), (SimpleGraph::star(xm.total()), xm.clone()))
        }
        TheoremArg::Thm16 => {
            let star = multi(y.ok_or_else(|| CliError::Input("thm16 needs --y (the star)".into()))?, "y")?;
            let xs = simple(x, "x")?;
            let p = predict_multgraph_vs_star(&xs, &star)?;
            ("thm16", p.into(), (xs, star))
        }
        TheoremArg::Cor511 => {
            ("cor511", coprime_forest_connected(&xm).into(), (SimpleGraph::cycle(xm.total()), xm.clone()))
        }
        TheoremArg::PathCount => {
            ("path-count", predict_path_components(&xm)?.into(), (SimpleGraph::path(xm.total()), xm.clone()))
        }
        TheoremArg::CycleCount => {
            ("cycle-count", predict_cycle_components(&xm)?.into(), (SimpleGraph::cycle(xm.total()), xm.clone()))
        }
    };
    if !check {
        return Ok(Outcome::ok(json_line(&json!({ "theorem": name, "predicted": predicted }))));
    }
    let (pos, labels) = hosts;
    let report = build_components(&FsInstance::new(pos, labels)?, budget)?;
    let oracle: Value = match theorem {
        TheoremArg::PathCount | TheoremArg::CycleCount => report.component_count.into(),
        _ => report.is_connected().into(),
    };
    let agree = oracle == predicted;
    let mut out = Outcome::ok(json_line(
        &json!({ "theorem": name, "predicted": predicted, "oracle": oracle, "agree": agree }),
    ));
    if !agree {
        out.code = CliError::DISAGREEMENT;
        out.diagnostics.push(format!("{name}: predictor {predicted} but oracle {oracle}"));
    }
    Ok(out)
}

fn verify(family: &FamilySpec) -> Result<Outcome, CliError> {
    let verdicts = verify_family(family)?;
    let mut out = Outcome::default();
    for v in &verdicts {
        out.stdout.extend(json_line(v));
        if v.is_failure() {
            out.code = CliError::DISAGREEMENT;
            out.diagnostics.push(format!("counterexample: {}", serde_json::to_string(&v.instance).expect("json")));
        }
    }
    Ok(out)
}

fn sweep(config: &ExperimentConfig) -> Result<Outcome, CliError> {
    let rows = run_sweep(config)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).map_err(|e| CliError::Input(e.to_string()))?;
    let censored: usize = rows.iter().map(|r| r.censored).sum();
    let mut out = Outcome::ok(buf);
    if censored > 0 {
        out.diagnostics.push(format!("{censored} trial results censored by the budget"));
    }
    Ok(out)
}

fn gadget(job: &GadgetJob) -> Result<Outcome, CliError> {
    let given = Overrides { s2: job.s2, s1: job.s1 };
    let (params, overrides): (GadgetParams, Overrides) = match (job.ell, job.g) {
        (Some(ell), Some(g)) => (GadgetParams::custom(job.rho, job.m, ell, g)?, given),
        (None, None) if job.desk => desk_search(job.rho, job.m)?,
        (None, None) => (derive_params(job.rho, job.m)?, given),
        _ => return Err(CliError::Input("--ell and --g go together".into())),
    };
    let pair = build_gadget(&params, Some(&overrides))?;
    let mut out = Outcome::default();
    let mut report = json!({
        "params": params,
        "overrides": overrides,
        "vertices": pair.n(),
        "g_edges": pair.g.edge_count(),
        "h_edges": pair.h.edge_count(),
        "warnings": pair.layout.as_ref().map(|l| l.warnings.clone()).unwrap_or_default(),
    });
    if job.validate {
        let v = validate_gadget_with(&pair, &params, job.samples, job.seed);
        if !v.all_passed() {
            out.code = CliError::DISAGREEMENT;
            for c in v.checks.iter().filter(|c| !c.passed) {
                out.diagnostics.push(format!("check {} failed", c.name));
            }
        }
        report["validation"] = serde_json::to_value(&v).expect("json");
    }
    out.stdout = json_line(&report);
    if job.dump {
        let mut d = serde_json::to_vec_pretty(&pair.dump()).expect("json");
        d.push(b'\n');
        out.artifacts.push(("dump".into(), d));
    }
    Ok(out)
}
