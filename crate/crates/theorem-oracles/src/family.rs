use fsg_core::{build_components, FsGraph, FsInstance, DEFAULT_BUDGET};
use graph_core::family::{compositions, connected_graphs_up_to_iso, graphs_up_to_iso, multiplicity_lists};
use graph_core::{GraphSpec, MultiplicityGraph, SimpleGraph};
use orientation_lab::{
    coprime_forest_connected, lift_order, predict_cycle_components, predict_path_components, AcycSpace, Relation,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::predict::{
    conjecture62_probe, cut_vertex_bound, predict_multgraph_vs_star, predict_star_vs_multgraph,
};
use crate::OracleError;

/// Which predictor a family exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Connectivity of FSm(S_n, x).
    #[serde(rename = "thm14")]
    StarVsMultgraph,
    /// Connectivity of FSm(x, S_m).
    #[serde(rename = "thm16")]
    MultgraphVsStar,
    /// Component count of FSm(P_n, x).
    #[serde(rename = "path-count")]
    PathCount,
    /// Component count of FSm(Cycle_n, x).
    #[serde(rename = "cycle-count")]
    CycleCount,
    /// Per-arrangement component membership on cycles.
    #[serde(rename = "thm52")]
    CycleClasses,
    /// Connectivity of FSm(Cycle_n, x) via the coprime-forest rule.
    #[serde(rename = "cor511")]
    CoprimeForest,
    /// Cut-vertex lower bound on the component count.
    #[serde(rename = "prop24")]
    CutVertexBound,
    /// Double-multiplicity star conjecture (recorded, not asserted).
    #[serde(rename = "conj62")]
    Conjecture62,
}

/// A family to sweep, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub theorem: Theorem,
    /// Largest number of base vertices.
    #[serde(default)]
    pub max_n: Option<usize>,
    /// Largest total multiplicity.
    #[serde(default)]
    pub max_total: Option<usize>,
    /// Star orders m (thm16, conj62).
    #[serde(default)]
    pub star_sizes: Option<Vec<usize>>,
    /// Center multiplicities k (thm16, conj62).
    #[serde(default)]
    pub centers: Option<Vec<usize>>,
    #[serde(default)]
    pub budget: Option<u64>,
}

impl FamilySpec {
    pub fn new(theorem: Theorem) -> Self {
        FamilySpec { theorem, max_n: None, max_total: None, star_sizes: None, centers: None, budget: None }
    }

    /// Named families shipped with the tool.
    pub fn bundled(name: &str) -> Result<Self, OracleError> {
        let theorem = match name {
            "thm14-small" => Theorem::StarVsMultgraph,
            "thm16-small" => Theorem::MultgraphVsStar,
            "thm51-small" => Theorem::PathCount,
            "thm52-small" => Theorem::CycleClasses,
            "thm55-small" => Theorem::CycleCount,
            "cor511-small" => Theorem::CoprimeForest,
            "prop24-small" => Theorem::CutVertexBound,
            "conj62-small" => Theorem::Conjecture62,
            _ => return Err(OracleError::UnknownFamily(name.into())),
        };
        Ok(FamilySpec::new(theorem))
    }

    pub const BUNDLED: [&'static str; 8] = [
        "thm14-small",
        "thm16-small",
        "thm51-small",
        "thm52-small",
        "thm55-small",
        "cor511-small",
        "prop24-small",
        "conj62-small",
    ];

    fn max_n(&self) -> usize {
        self.max_n.unwrap_or(match self.theorem {
            Theorem::MultgraphVsStar | Theorem::CutVertexBound => 6,
            _ => 4,
        })
    }

    fn max_total(&self) -> usize {
        self.max_total.unwrap_or(6)
    }

    fn star_sizes(&self) -> Vec<usize> {
        self.star_sizes.clone().unwrap_or_else(|| vec![3, 4])
    }

    fn centers(&self) -> Vec<usize> {
        self.centers.clone().unwrap_or_else(|| vec![2, 3])
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }
}

/// The pair `(x, y)` of an `FS(x, y)`-type graph, plus optional details.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub x: GraphSpec,
    pub y: GraphSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Instance {
    pub fn pair(x: impl Into<GraphSpec>, y: impl Into<GraphSpec>) -> Self {
        Instance { x: x.into(), y: y.into(), detail: None }
    }
}

/// Predictor output versus oracle output on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub theorem: String,
    pub instance: Instance,
    pub predicted: Value,
    pub oracle: Value,
    pub agree: bool,
    /// False for conjectures, whose disagreements are data rather than failures.
    pub asserted: bool,
}

impl Verdict {
    pub fn new(theorem: &str, instance: Instance, predicted: Value, oracle: Value, asserted: bool) -> Self {
        let agree = predicted == oracle;
        Verdict { theorem: theorem.into(), instance, predicted, oracle, agree, asserted }
    }

    pub fn is_failure(&self) -> bool {
        self.asserted && !self.agree
    }
}

fn multiplicity_family(graphs: &[SimpleGraph], max_total: usize) -> Vec<MultiplicityGraph> {
    let mut out = Vec::new();
    for g in graphs {
        for m in multiplicity_lists(g.n(), max_total) {
            out.push(MultiplicityGraph::new(g.clone(), m).expect("valid multiplicities"));
        }
    }
    out
}

fn graphs_in(range: std::ops::RangeInclusive<usize>, connected: bool) -> Vec<SimpleGraph> {
    range.flat_map(|n| if connected { connected_graphs_up_to_iso(n) } else { graphs_up_to_iso(n) }).collect()
}

fn stars(total: usize, sizes: &[usize], centers: &[usize]) -> Vec<MultiplicityGraph> {
    let mut out = Vec::new();
    for &m in sizes {
        for &k in centers {
            if m < 2 || total < k + m - 1 {
                continue;
            }
            for leaves in compositions(m - 1, total - k) {
                out.push(MultiplicityGraph::star(k, &leaves).expect("valid star"));
            }
        }
    }
    out
}

// Component ids renumbered by first appearance.
fn canonical_labels(ids: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    ids.into_iter()
        .map(|c| {
            let next = seen.len();
            *seen.entry(c).or_insert(next)
        })
        .collect()
}

enum Job {
    Single(MultiplicityGraph),
    StarPair(SimpleGraph, MultiplicityGraph),
    MultPair(MultiplicityGraph, MultiplicityGraph),
    CutPair(MultiplicityGraph, SimpleGraph),
}

fn jobs(spec: &FamilySpec) -> Vec<Job> {
    let (max_n, max_total) = (spec.max_n(), spec.max_total());
    match spec.theorem {
        Theorem::StarVsMultgraph => {
            multiplicity_family(&graphs_in(1..=max_n, true), max_total).into_iter().map(Job::Single).collect()
        }
        Theorem::PathCount | Theorem::CycleCount | Theorem::CycleClasses | Theorem::CoprimeForest => {
            multiplicity_family(&graphs_in(1..=max_n, false), max_total).into_iter().map(Job::Single).collect()
        }
        Theorem::MultgraphVsStar => {
            let mut out = Vec::new();
            for x in graphs_in(1..=max_n, true) {
                for s in stars(x.n(), &spec.star_sizes(), &spec.centers()) {
                    out.push(Job::StarPair(x.clone(), s));
                }
            }
            out
        }
        Theorem::Conjecture62 => {
            let mut out = Vec::new();
            for x in multiplicity_family(&graphs_in(1..=max_n, true), max_total) {
                for s in stars(x.total(), &spec.star_sizes(), &spec.centers()) {
                    out.push(Job::MultPair(x.clone(), s));
                }
            }
            out
        }
        Theorem::CutVertexBound => {
            let mut out = Vec::new();
            let ys: Vec<SimpleGraph> = graphs_in(1..=max_total, false)
                .into_iter()
                .filter(|y| !y.articulation_analysis().cut_vertices.is_empty())
                .collect();
            for x in multiplicity_family(&graphs_in(3..=max_n, true), max_total) {
                let cuts = x.base().articulation_analysis().cut_vertices;
                if !cuts.iter().any(|&v| x.mult()[v] == 1) {
                    continue;
                }
                for y in ys.iter().filter(|y| y.n() == x.total()) {
                    out.push(Job::CutPair(x.clone(), y.clone()));
                }
            }
            out
        }
    }
}

fn run_job(theorem: Theorem, job: &Job, budget: u64) -> Result<Verdict, OracleError> {
    let components = |pos: SimpleGraph, labels: &MultiplicityGraph| -> Result<_, OracleError> {
        let inst = FsInstance::new(pos, labels.clone())?;
        let report = build_components(&inst, budget)?;
        Ok((inst, report))
    };
    match (theorem, job) {
        (Theorem::StarVsMultgraph, Job::Single(x)) => {
            let pos = SimpleGraph::star(x.total());
            let predicted = predict_star_vs_multgraph(x)?;
            let (_, r) = components(pos.clone(), x)?;
            Ok(Verdict::new("thm14", Instance::pair(&pos, x), predicted.into(), r.is_connected().into(), true))
        }
        (Theorem::PathCount, Job::Single(x)) => {
            let pos = SimpleGraph::path(x.total());
            let predicted = predict_path_components(x)?;
            let (_, r) = components(pos.clone(), x)?;
            Ok(Verdict::new("path-count", Instance::pair(&pos, x), predicted.into(), r.component_count.into(), true))
        }
        (Theorem::CycleCount, Job::Single(x)) => {
            let pos = SimpleGraph::cycle(x.total());
            let predicted = predict_cycle_components(x)?;
            let (_, r) = components(pos.clone(), x)?;
            Ok(Verdict::new("cycle-count", Instance::pair(&pos, x), predicted.into(), r.component_count.into(), true))
        }
        (Theorem::CoprimeForest, Job::Single(x)) => {
            let pos = SimpleGraph::cycle(x.total());
            let predicted = coprime_forest_connected(x);
            let (_, r) = components(pos.clone(), x)?;
            Ok(Verdict::new("cor511", Instance::pair(&pos, x), predicted.into(), r.is_connected().into(), true))
        }
        (Theorem::CycleClasses, Job::Single(x)) => {
            let pos = SimpleGraph::cycle(x.total());
            let (inst, r) = components(pos.clone(), x)?;
            let space = AcycSpace::for_lift(x)?;
            let part = space.partition_by(Relation::DoubleFlipPermutation);
            let mut classes = Vec::new();
            let mut failure = None;
            inst.for_each_arrangement(&mut |_, a| {
                let class = lift_order(space.cliques(), a)
                    .and_then(|ord| space.induced(&ord))
                    .map(|o| part.class_of_orientation(o).expect("acyclic"));
                match class {
                    Ok(c) => classes.push(c),
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
            let predicted = canonical_labels(classes);
            let oracle = canonical_labels(r.component_id.iter().map(|&c| c as usize));
            Ok(Verdict::new("thm52", Instance::pair(&pos, x), predicted.into(), oracle.into(), true))
        }
        (Theorem::MultgraphVsStar, Job::StarPair(x, s)) => {
            let predicted = predict_multgraph_vs_star(x, s)?;
            let r = build_components(&FsInstance::new(x.clone(), s.clone())?, budget)?;
            Ok(Verdict::new("thm16", Instance::pair(x, s), predicted.into(), r.is_connected().into(), true))
        }
        (Theorem::Conjecture62, Job::MultPair(x, s)) => conjecture62_probe(x, s, budget),
        (Theorem::CutVertexBound, Job::CutPair(x, y)) => {
            let x_cuts: Vec<usize> =
                x.base().articulation_analysis().cut_vertices.into_iter().filter(|&v| x.mult()[v] == 1).collect();
            let y_cuts = y.articulation_analysis().cut_vertices;
            let mut bound = 0u128;
            for &x0 in &x_cuts {
                for &y0 in &y_cuts {
                    bound = bound.max(cut_vertex_bound(x, x0, y, y0)?);
                }
            }
            let (_, r) = components(y.clone(), x)?;
            let mut inst = Instance::pair(y, x);
            inst.detail = Some(serde_json::json!({ "bound": bound as u64, "components": r.component_count }));
            let holds = r.component_count as u128 >= bound;
            Ok(Verdict::new("prop24", inst, true.into(), holds.into(), true))
        }
        _ => unreachable!("job kind matches theorem"),
    }
}

/// Runs the predictor and the oracle on every instance of the family.
/// Verdicts come back sorted by instance encoding.
pub fn verify_family(spec: &FamilySpec) -> Result<Vec<Verdict>, OracleError> {
    let budget = spec.budget();
    let work = jobs(spec);
    let mut out: Vec<Verdict> =
        work.par_iter().map(|job| run_job(spec.theorem, job, budget)).collect::<Result<_, _>>()?;
    out.sort_by_cached_key(|v| serde_json::to_string(&v.instance).expect("serializable"));
    Ok(out)
}
