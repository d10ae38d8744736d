//! The `fsg` command line: component counts, predictions, family
//! verification, random sweeps and gadget builds, each with a run manifest.

mod job;
mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fsg_core::DEFAULT_BUDGET;
use graph_core::{GraphSpec, MultiplicityGraph, SimpleGraph};
use serde_json::Value;
use theorem_oracles::FamilySpec;

pub use job::{run, GadgetJob, Job, Outcome, TheoremArg, VariantArg};
pub use manifest::{output_digest, RunManifest};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Disagreement(String),
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const DISAGREEMENT: i32 = 4;
    pub const INFEASIBLE: i32 = 5;

    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => Self::INPUT,
            CliError::Budget(_) => Self::BUDGET,
            CliError::Disagreement(_) => Self::DISAGREEMENT,
            CliError::Infeasible(_) => Self::INFEASIBLE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fsg", version, about = "Friends-and-strangers graph toolkit")]
pub struct Cli {
    /// Seed for all randomness; a random seed is drawn and printed when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Manifest path (default: `<out>.manifest.json`, or stderr without --out).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Component sizes of FS(x, y), FSm(x, y) or FSmm(x, y).
    Components(ComponentsArgs),
    /// Run a connectivity or component-count predictor.
    Predict(PredictArgs),
    /// Compare a predictor with the oracle over a graph family (JSONL).
    Verify(VerifyArgs),
    /// Random-graph sweep (CSV).
    Sweep(SweepArgs),
    /// Build and optionally validate a gadget pair.
    Gadget(GadgetArgs),
    /// Rerun a manifest and compare the output digest.
    Replay(ReplayArgs),
}

/// Graphs are JSON files (`{"n":3,"edges":[[0,1],[1,2]],"mult":[1,1,1]}`) or
/// generators `path:N`, `cycle:N`, `star:N`, `complete:N`.
#[derive(Debug, Args)]
pub struct ComponentsArgs {
    /// Position graph.
    #[arg(long)]
    pub x: String,
    /// Label graph.
    #[arg(long)]
    pub y: String,
    #[arg(long, value_enum, default_value = "fs")]
    pub variant: VariantArg,
    /// Largest number of arrangements to materialize.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Also print the component id of every arrangement.
    #[arg(long)]
    pub ids: bool,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    /// Multiplicity graph (the host x for thm16).
    #[arg(long)]
    pub x: String,
    /// Star with multiplicities, center 0 (thm16 only).
    #[arg(long)]
    pub y: Option<String>,
    /// Also run the brute-force oracle and compare.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Bundled family name, e.g. thm16-small.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub family: Option<String>,
    /// Family spec JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Experiment config JSON; a missing base_seed is filled from --seed.
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct GadgetArgs {
    #[arg(long)]
    pub rho: u8,
    #[arg(long)]
    pub m: usize,
    /// Explicit ell (with --g) instead of the formulas.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub g: Option<usize>,
    /// Cycle position of s_2.
    #[arg(long)]
    pub s2: Option<usize>,
    /// Cycle position of s_1.
    #[arg(long)]
    pub s1: Option<usize>,
    /// Search small overrides instead of using the formulas.
    #[arg(long)]
    pub desk: bool,
    #[arg(long)]
    pub validate: bool,
    /// Write the labeled vertex and edge dump here.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Random induced subgraphs for the sampled checks.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest_file: PathBuf,
}

fn generator(src: &str) -> Result<Option<SimpleGraph>, CliError> {
    let Some((kind, n)) = src.split_once(':') else {
        return Ok(None);
    };
    let build: fn(usize) -> SimpleGraph = match kind {
        "path" => SimpleGraph::path,
        "cycle" => SimpleGraph::cycle,
        "star" => SimpleGraph::star,
        "complete" => SimpleGraph::complete,
        _ => return Ok(None),
    };
    let n: usize = n.parse().map_err(|_| CliError::Input(format!("bad generator size in {src:?}")))?;
    if kind == "cycle" && n < 3 {
        return Err(CliError::Input("cycle needs at least 3 vertices".into()));
    }
    Ok(Some(build(n)))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Loads a graph from a generator spec or a JSON file and checks it.
pub fn load_graph(src: &str) -> Result<GraphSpec, CliError> {
    if let Some(g) = generator(src)? {
        return Ok(GraphSpec::from(&g));
    }
    let spec: GraphSpec = read_json(Path::new(src))?;
    let _: MultiplicityGraph = spec.to_multiplicity().map_err(|e| CliError::Input(format!("{src}: {e}")))?;
    Ok(spec)
}

fn resolve(cmd: &Command, seed: u64, seed_given: bool, dump: bool) -> Result<Job, CliError> {
    Ok(match cmd {
        Command::Components(a) => Job::Components {
            x: load_graph(&a.x)?,
            y: load_graph(&a.y)?,
            variant: a.variant,
            budget: a.budget,
            ids: a.ids,
        },
        Command::Predict(a) => Job::Predict {
            theorem: a.theorem,
            x: load_graph(&a.x)?,
            y: a.y.as_deref().map(load_graph).transpose()?,
            check: a.check,
            budget: a.budget,
        },
        Command::Verify(a) => {
            let mut family = match (&a.family, &a.spec) {
                (Some(name), _) => FamilySpec::bundled(name).map_err(|e| CliError::Input(e.to_string()))?,
                (None, Some(path)) => read_json(path)?,
                (None, None) => return Err(CliError::Input("need --family or --spec".into())),
            };
            if a.budget.is_some() {
                family.budget = a.budget;
            }
            Job::Verify { family }
        }
        Command::Sweep(a) => {
            let mut raw: Value = read_json(&a.config)?;
            let obj = raw.as_object_mut().ok_or_else(|| CliError::Input("config must be a JSON object".into()))?;
            if seed_given || !obj.contains_key("base_seed") {
                obj.insert("base_seed".into(), seed.into());
            }
            let config = serde_json::from_value(raw).map_err(|e| CliError::Input(format!("config: {e}")))?;
            Job::Sweep { config }
        }
        Command::Gadget(a) => Job::Gadget(GadgetJob {
            rho: a.rho,
            m: a.m,
            ell: a.ell,
            g: a.g,
            s2: a.s2,
            s1: a.s1,
            desk: a.desk,
            validate: a.validate,
            dump,
            samples: a.samples,
            seed,
        }),
        Command::Replay(_) => unreachable!("replay is handled separately"),
    })
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| CliError::Input(e.to_string())),
    }
}

fn replay(path: &Path, out: Option<&Path>) -> i32 {
    let result = (|| -> Result<(i32, Vec<u8>), CliError> {
        let manifest: RunManifest = read_json(path)?;
        let job: Job = serde_json::from_value(manifest.config.clone())
            .map_err(|e| CliError::Input(format!("manifest config is not replayable: {e}")))?;
        let outcome = run(&job);
        let digest = output_digest(&outcome);
        let same = digest == manifest.output_digest && outcome.code == manifest.exit_code;
        let report = serde_json::json!({
            "subcommand": manifest.subcommand,
            "reproduced": same,
            "expected_digest": manifest.output_digest,
            "actual_digest": digest,
            "expected_exit": manifest.exit_code,
            "actual_exit": outcome.code,
        });
        let mut bytes = serde_json::to_vec(&report).expect("json");
        bytes.push(b'\n');
        Ok((if same { CliError::OK } else { CliError::DISAGREEMENT }, bytes))
    })();
    match result.and_then(|(code, bytes)| write_output(out, &bytes).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Command::Replay(r) = &cli.command {
        return replay(&r.manifest_file, cli.out.as_deref());
    }
    let started = std::time::Instant::now();
    let seed = cli.seed.unwrap_or_else(rand::random);
    if cli.seed.is_none() {
        eprintln!("seed: {seed}");
    }
    let dump_path = match &cli.command {
        Command::Gadget(a) => a.dump.clone(),
        _ => None,
    };
    let (config, outcome) = match resolve(&cli.command, seed, cli.seed.is_some(), dump_path.is_some()) {
        Ok(job) => {
            let outcome = run(&job);
            (serde_json::to_value(&job).expect("json"), outcome)
        }
        Err(e) => {
            let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
            (serde_json::json!({ "argv": argv }), Outcome { code: e.code(), diagnostics: vec![e.to_string()], ..Default::default() })
        }
    };
    let mut code = outcome.code;
    if let Err(e) = write_output(cli.out.as_deref(), &outcome.stdout) {
        eprintln!("error: {e}");
        code = e.code();
    }
    for (name, bytes) in &outcome.artifacts {
        if name == "dump" {
            if let Some(p) = &dump_path {
                if let Err(e) = write_output(Some(p), bytes) {
                    eprintln!("error: {e}");
                    code = e.code();
                }
            }
        }
    }
    for d in &outcome.diagnostics {
        eprintln!("{d}");
    }
    let subcommand = config.get("subcommand").and_then(Value::as_str).unwrap_or("invalid").to_string();
    let manifest = RunManifest::new(subcommand, config, seed, started.elapsed(), &outcome);
    let manifest_path = cli.manifest.clone().or_else(|| {
        cli.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    });
    let text = serde_json::to_string_pretty(&manifest).expect("json");
    match manifest_path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text + "\n") {
                eprintln!("error: {}: {e}", p.display());
                code = code.max(CliError::INPUT);
            }
        }
        None => eprintln!("manifest: {}", serde_json::to_string(&manifest).expect("json")),
    }
    code
}
