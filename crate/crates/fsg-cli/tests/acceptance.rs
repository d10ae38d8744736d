//! The twelve acceptance criteria. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use fsg_core::{build_components, parity_audit, quotient_audit, FsInstance, DEFAULT_BUDGET};
use gadget_forge::{build_gadget, desk_search, validate_gadget};
use graph_core::family::{all_labeled_graphs, graphs_up_to_iso, multiplicity_lists};
use graph_core::{MultiplicityGraph, SimpleGraph};
use orientation_lab::{lift_order, AcycSpace, ClassPartition, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use random_lab::{find_packing, run_sweep, run_trials, ExperimentConfig, Model, Statistic};
use theorem_oracles::{verify_family, FamilySpec, Verdict};

type Check = Result<String, String>;

fn mg(base: SimpleGraph, mult: &[usize]) -> MultiplicityGraph {
    MultiplicityGraph::new(base, mult.to_vec()).expect("valid multiplicities")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn family(name: &str) -> Result<Vec<Verdict>, String> {
    let spec = FamilySpec::bundled(name).map_err(|e| e.to_string())?;
    verify_family(&spec).map_err(|e| e.to_string())
}

fn no_failures(verdicts: &[Verdict]) -> Result<(), String> {
    match verdicts.iter().find(|v| v.is_failure()) {
        Some(v) => Err(format!(
            "{} disagreements, first: {}",
            verdicts.iter().filter(|v| v.is_failure()).count(),
            serde_json::to_string(v).expect("json")
        )),
        None => Ok(()),
    }
}

fn c1() -> Check {
    let x = SimpleGraph::path(3);
    let y = mg(SimpleGraph::path(2), &[1, 2]);
    let r = build_components(&FsInstance::new(x.clone(), y.clone()).map_err(|e| e.to_string())?, DEFAULT_BUDGET)
        .map_err(|e| e.to_string())?;
    ensure(r.component_sizes == vec![3], format!("FSm components {:?}", r.component_sizes))?;
    let lifted = FsInstance::bijective(x.clone(), SimpleGraph::complete(3)).map_err(|e| e.to_string())?;
    let lr = build_components(&lifted, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(lr.vertex_count == 6, format!("FS(P_3, K_3) has {} vertices", lr.vertex_count))?;
    let q = quotient_audit(&x, &y, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(q.holds && q.lifted_vertices == 6 && q.quotient_vertices == 3, format!("{q:?}"))?;
    Ok("1 component of size 3; 6 lifted vertices; quotient audit holds".into())
}

fn c2() -> Check {
    let x = mg(SimpleGraph::path(3), &[2, 2, 4]);
    let space = AcycSpace::for_lift(&x).map_err(|e| e.to_string())?;
    let sigma = [0, 2, 1, 2, 0, 2, 1, 2];
    let tau = [2, 0, 1, 2, 0, 2, 1, 2];
    let ls = lift_order(space.cliques(), &sigma).map_err(|e| e.to_string())?;
    let lt = lift_order(space.cliques(), &tau).map_err(|e| e.to_string())?;
    let (ps, pt) = (space.period_of_arrangement(&ls), space.period_of_arrangement(&lt));
    let alpha = space.induced(&ls).map_err(|e| e.to_string())?;
    let pa = space.period_of_orientation(alpha);
    ensure((ps, pt, pa) == (4, 8, 4), format!("periods sigma {ps}, tau {pt}, alpha {pa}"))?;
    Ok(format!("pi_sigma = {ps}, pi_tau = {pt}, pi_alpha = {pa}"))
}

fn sweep_families(names: &[&str]) -> Check {
    let mut total = 0;
    for name in names {
        let v = family(name)?;
        no_failures(&v).map_err(|e| format!("{name}: {e}"))?;
        total += v.len();
    }
    Ok(format!("{total} instances, 0 disagreements ({})", names.join(", ")))
}

fn c3() -> Check {
    sweep_families(&["thm51-small"])
}

fn c4() -> Check {
    sweep_families(&["thm52-small", "thm55-small", "cor511-small"])
}

fn c5() -> Check {
    sweep_families(&["thm14-small"])
}

fn c6() -> Check {
    let v = family("thm16-small")?;
    no_failures(&v)?;
    let cycles = v
        .iter()
        .filter(|v| v.instance.x.to_simple().map(|g| g.is_cycle_graph()).unwrap_or(false))
        .count();
    ensure(cycles > 0, "no cycle hosts in the family")?;
    Ok(format!("{} instances ({cycles} cycle hosts), 0 disagreements", v.len()))
}

fn c7() -> Check {
    let v = family("prop24-small")?;
    no_failures(&v)?;
    ensure(!v.is_empty(), "empty family")?;
    Ok(format!("{} (x, y) pairs, bound never exceeds the component count", v.len()))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.5)).collect();
    SimpleGraph::new(n, &edges).expect("valid graph")
}

fn parity_holds(x: &SimpleGraph, y: &SimpleGraph) -> Result<bool, String> {
    let inst = FsInstance::bijective(x.clone(), y.clone()).map_err(|e| e.to_string())?;
    let r = build_components(&inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    parity_audit(&inst, &r).map_err(|e| e.to_string())
}

fn c8() -> Check {
    let mut pairs = 0;
    for n in 1..=4 {
        let bip: Vec<SimpleGraph> = all_labeled_graphs(n).filter(|g| g.is_bipartite()).collect();
        for x in &bip {
            for y in &bip {
                ensure(parity_holds(x, y)?, format!("violation at {x:?} {y:?}"))?;
                pairs += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let mut random = 0;
    while random < 50 {
        let x = random_graph(&mut rng, 5);
        let y = random_graph(&mut rng, 5);
        if !(x.is_bipartite() && y.is_bipartite()) {
            continue;
        }
        ensure(parity_holds(&x, &y)?, format!("violation at {x:?} {y:?}"))?;
        random += 1;
    }
    Ok(format!("{pairs} labeled pairs with n <= 4 and {random} random pairs at n = 5, 0 violations"))
}

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut with_packing = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let x = random_graph(&mut rng, n);
        let y = random_graph(&mut rng, n);
        let packing = find_packing(&x, &y, 1_000_000).map_err(|e| e.to_string())?;
        let inst = FsInstance::bijective(x.clone(), y.clone()).map_err(|e| e.to_string())?;
        let r = build_components(&inst, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(packing.is_some() == r.has_singleton(), format!("mismatch at {x:?} {y:?}"))?;
        with_packing += packing.is_some() as usize;
    }
    Ok(format!("500 sampled pairs agree ({with_packing} with a packing)"))
}

fn c10() -> Check {
    let grid: Vec<f64> = (0..=20).map(|k| k as f64 * 0.05).collect();
    let cfg = ExperimentConfig {
        model: Model::Gnp,
        n: 20,
        p_grid: grid,
        trials: 40,
        base_seed: 17,
        statistic: Statistic::IsolatedVertex,
        budget: None,
    };
    let mut censored = 0;
    for t in run_trials(&cfg).map_err(|e| e.to_string())? {
        censored += t.results.iter().filter(|r| r.is_none()).count();
        let seen: Vec<bool> = t.results.iter().flatten().copied().collect();
        ensure(seen.windows(2).all(|w| w[0] >= w[1]), format!("trial {} not monotone", t.trial))?;
    }
    let bip = ExperimentConfig {
        model: Model::Bipartite,
        n: 4,
        p_grid: vec![1.0],
        trials: 20,
        base_seed: 5,
        statistic: Statistic::ComponentCount,
        budget: None,
    };
    let rows = run_sweep(&bip).map_err(|e| e.to_string())?;
    ensure(rows[0].successes == rows[0].trials && rows[0].censored == 0, format!("{:?}", rows[0]))?;
    Ok(format!("40 coupled trials monotone ({censored} censored points); 20/20 bipartite trials have 2 components"))
}

fn c11() -> Check {
    let mut failures = Vec::new();
    let mut passes = 0;
    for rho in 1..=4u8 {
        for m in [16, 24, 32] {
            let (params, ov) = match desk_search(rho, m) {
                Ok(found) => found,
                Err(e) => {
                    failures.push(format!("rho {rho} m {m}: {e}"));
                    continue;
                }
            };
            let pair = match build_gadget(&params, Some(&ov)) {
                Ok(p) => p,
                Err(e) => {
                    failures.push(format!("rho {rho} m {m}: {e}"));
                    continue;
                }
            };
            let report = validate_gadget(&pair, &params);
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                passes += 1;
            } else {
                failures.push(format!("rho {rho} m {m}: failed {}", failed.join(", ")));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{passes} of 12 (rho, m) cases pass every check"))
    } else {
        Err(format!("{} of 12 cases fail; {}", failures.len(), failures.join(" | ")))
    }
}

fn c12() -> Check {
    let mut hosts = 0;
    let mut extensions = 0u64;
    for k in 1..=6 {
        for g in graphs_up_to_iso(k) {
            for mult in multiplicity_lists(k, 6) {
                let x = mg(g.clone(), &mult);
                let space = AcycSpace::for_lift(&x).map_err(|e| e.to_string())?;
                let parts: HashMap<Relation, ClassPartition> =
                    Relation::ALL.iter().map(|&r| (r, space.partition_by(r))).collect();
                let refines = |a: Relation, b: Relation| parts[&a].refines(&parts[&b]);
                use Relation::*;
                let lattice = [
                    (DoubleFlip, Flip),
                    (Flip, FlipPermutation),
                    (DoubleFlip, DoubleFlipPermutation),
                    (DoubleFlipPermutation, FlipPermutation),
                    (Permutation, FlipPermutation),
                    (Permutation, DoubleFlipPermutation),
                ];
                for (a, b) in lattice {
                    ensure(refines(a, b), format!("{a:?} does not refine {b:?} for {x:?}"))?;
                }
                let part = &parts[&FlipPermutation];
                let mut class_period = vec![None; part.class_count()];
                for (i, &o) in part.orientations.iter().enumerate() {
                    let p = space.period_of_orientation(o);
                    let c = part.class_of[i];
                    ensure(*class_period[c].get_or_insert(p) == p, format!("period not class-invariant for {x:?}"))?;
                    for ext in space.linear_extensions(o) {
                        extensions += 1;
                        let ps = space.period_of_arrangement(&ext);
                        ensure(ps % p == 0, format!("pi_alpha = {p} does not divide pi_sigma = {ps} for {x:?}"))?;
                    }
                }
                hosts += 1;
            }
        }
    }
    Ok(format!("{hosts} lift complements, {extensions} arrangements, 0 violations"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 12] = [
        ("fig3 quotient golden", Duration::from_secs(1), c1),
        ("period golden example", Duration::from_secs(1), c2),
        ("path component counts", Duration::from_secs(600), c3),
        ("cycle classes, counts, coprime forests", Duration::from_secs(900), c4),
        ("star positions", Duration::from_secs(600), c5),
        ("star labels incl. cycles", Duration::from_secs(1200), c6),
        ("cut-vertex bound", Duration::from_secs(300), c7),
        ("parity audit", Duration::from_secs(300), c8),
        ("packing iff singleton", Duration::from_secs(300), c9),
        ("random-lab trends", Duration::from_secs(120), c10),
        ("gadget structural suite", Duration::from_secs(300), c11),
        ("period divisibility and relation lattice", Duration::from_secs(600), c12),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let verdict = match result {
            Ok(detail) if took <= *limit => Ok(detail),
            Ok(detail) => Err(format!("took {took:.2?}, limit {limit:?}; {detail}")),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS [{took:.2?}] {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{took:.2?}] {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
