use std::collections::{BTreeSet, VecDeque};

use graph_core::SimpleGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{GadgetPair, GadgetParams};

/// Work limit for the short-cycle enumeration.
const CYCLE_STEP_LIMIT: u64 = 50_000_000;
/// Cycles kept before the enumeration stops.
const CYCLE_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub rho: u8,
    pub m: usize,
    pub ell: usize,
    pub g: usize,
    pub checks: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.check(name).is_some_and(|c| c.passed)
    }
}

/// Biconnected on at least three vertices, not a cycle, not θ0. For
/// bipartite graphs this is the condition under which `FS(G, star)` has
/// exactly the two parity classes as components.
pub fn is_parity_wilsonian(g: &SimpleGraph) -> bool {
    g.n() >= 3 && g.is_biconnected() && !g.is_cycle_graph() && !g.is_theta0()
}

/// All cycles with fewer than `below` edges, each as its vertex sequence
/// starting at its smallest vertex. The flag is true when enumeration stopped
/// early (too many cycles or too much work).
pub fn short_cycles(g: &SimpleGraph, below: usize) -> (Vec<Vec<usize>>, bool) {
    struct Walk<'a> {
        g: &'a SimpleGraph,
        start: usize,
        below: usize,
        dist: Vec<usize>,
        on_path: Vec<bool>,
        path: Vec<usize>,
        out: Vec<Vec<usize>>,
        steps: u64,
        stopped: bool,
    }
    impl Walk<'_> {
        fn go(&mut self, v: usize) {
            if self.stopped {
                return;
            }
            let depth = self.path.len() - 1;
            for idx in 0..self.g.neighbors(v).len() {
                let w = self.g.neighbors(v)[idx];
                self.steps += 1;
                if self.steps > CYCLE_STEP_LIMIT || self.out.len() >= CYCLE_CAP {
                    self.stopped = true;
                    return;
                }
                if w == self.start {
                    if depth >= 2 && self.path[1] < v {
                        self.out.push(self.path.clone());
                    }
                } else if w > self.start && !self.on_path[w] && depth + 1 + self.dist[w] < self.below {
                    self.on_path[w] = true;
                    self.path.push(w);
                    self.go(w);
                    self.path.pop();
                    self.on_path[w] = false;
                }
            }
        }
    }
    let n = g.n();
    let mut out = Vec::new();
    let mut stopped = false;
    for start in 0..n {
        // Distances inside the vertices >= start bound how far a path may go.
        let mut dist = vec![usize::MAX / 2; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for &b in g.neighbors(a) {
                if b > start && dist[b] == usize::MAX / 2 {
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut walk = Walk {
            g,
            start,
            below,
            dist,
            on_path,
            path: vec![start],
            out: Vec::new(),
            steps: 0,
            stopped: false,
        };
        walk.go(start);
        out.extend(walk.out);
        if walk.stopped || out.len() >= CYCLE_CAP {
            stopped = true;
            break;
        }
    }
    (out, stopped)
}

fn sides_check(g: &SimpleGraph, a: &[usize], b: &[usize], u: usize, v: usize) -> CheckOutcome {
    let n = g.n();
    let mut side = vec![None; n];
    let mut overlap = false;
    for (list, s) in [(a, 0u8), (b, 1u8)] {
        for &x in list {
            if x >= n || side[x].is_some() {
                overlap = true;
            } else {
                side[x] = Some(s);
            }
        }
    }
    let covered = side.iter().all(|s| s.is_some());
    let bad: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(p, q)| side[p].is_some() && side[p] == side[q]).collect();
    let u_ok = side.get(u).copied().flatten() == Some(0);
    let v_ok = side.get(v).copied().flatten() == Some(1);
    CheckOutcome {
        name: String::new(),
        passed: !overlap && covered && bad.is_empty() && u_ok && v_ok,
        detail: json!({
            "partition": !overlap && covered,
            "edges_within_a_side": bad.len(),
            "first_bad_edge": bad.first(),
            "u_in_a": u_ok,
            "v_in_b": v_ok,
        }),
    }
}

fn c_rho_check(pair: &GadgetPair, rho: u8) -> CheckOutcome {
    let set = |s: &[usize]| -> BTreeSet<usize> { s.iter().copied().collect() };
    let (ag, bg, ah, bh) = (set(&pair.a_g), set(&pair.b_g), set(&pair.a_h), set(&pair.b_h));
    let ngu = set(pair.g.neighbors(pair.u));
    let ngv = set(pair.g.neighbors(pair.v));
    let nhu = set(pair.h.neighbors(pair.u));
    let nhv = set(pair.h.neighbors(pair.v));
    let within = |s: &BTreeSet<usize>, side: &BTreeSet<usize>| s.is_subset(side);
    let rows: Vec<(&str, bool)> = match rho {
        1 => vec![
            ("N_G(u) in B_H", within(&ngu, &bh)),
            ("N_G(v) in B_H", within(&ngv, &bh)),
            ("N_H(u) in A_G", within(&nhu, &ag)),
            ("N_H(v) in A_G", within(&nhv, &ag)),
        ],
        2 => vec![
            ("N_G(u) in B_H", within(&ngu, &bh)),
            ("N_G(v) in B_H", within(&ngv, &bh)),
            ("N_H(u) in A_G", within(&nhu, &ag)),
            ("N_H(v) in B_G", within(&nhv, &bg)),
        ],
        3 => vec![
            ("N_G(u) in A_H", within(&ngu, &ah)),
            ("N_G(v) in B_H", within(&ngv, &bh)),
            ("N_H(u) in A_G", within(&nhu, &ag)),
            ("N_H(v) in B_G", within(&nhv, &bg)),
        ],
        _ => vec![
            ("N_G(u) in A_H", within(&ngu, &ah)),
            ("N_G(v) in B_H", within(&ngv, &bh)),
            ("N_H(u) in B_G", within(&nhu, &bg)),
            ("N_H(v) in A_G", within(&nhv, &ag)),
        ],
    };
    let sets = [&ngu, &ngv, &nhu, &nhv];
    let disjoint = (0..4).all(|i| (i + 1..4).all(|j| sets[i].is_disjoint(sets[j])));
    let failed: Vec<&str> = rows.iter().filter(|r| !r.1).map(|r| r.0).collect();
    CheckOutcome {
        name: "c_rho".into(),
        passed: failed.is_empty() && disjoint,
        detail: json!({ "rho": rho, "failed_inclusions": failed, "neighborhoods_disjoint": disjoint }),
    }
}

fn p1_check(core: &SimpleGraph, p: &GadgetParams) -> CheckOutcome {
    let (cycles, truncated) = short_cycles(core, p.g);
    let mut lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
    lengths.sort_unstable();
    let expected = p.short_cycle_len();
    CheckOutcome {
        name: "p1_short_cycle".into(),
        passed: !truncated && lengths == [expected],
        detail: json!({
            "g": p.g,
            "expected_length": expected,
            "short_cycles": lengths.len(),
            "truncated": truncated,
            "lengths": lengths.iter().take(50).collect::<Vec<_>>(),
        }),
    }
}

fn p2_check(core: &SimpleGraph, pair: &GadgetPair, p: &GadgetParams) -> CheckOutcome {
    let s = &pair.sets;
    let special: Vec<usize> = s.x.iter().chain(&s.y).chain(&s.z).chain(&s.s).chain(&s.r).copied().collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, &a) in special.iter().enumerate() {
        let dist = core.distances_from(a);
        for &b in &special[i + 1..] {
            if best.is_none_or(|(d, _, _)| dist[b] < d) {
                best = Some((dist[b], a, b));
            }
        }
    }
    let need = p.ell_prime;
    let (d, a, b) = best.unwrap_or((usize::MAX, 0, 0));
    CheckOutcome {
        name: "p2_distance".into(),
        passed: d >= need,
        detail: json!({
            "required": need,
            "min_distance": d,
            "closest_pair": [pair.roles.get(a), pair.roles.get(b)],
        }),
    }
}

fn p3_check(pair: &GadgetPair, samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pset = &pair.sets.p;
    let mut failures = 0usize;
    let mut strict = 0usize;
    let mut first: Option<Vec<String>> = None;
    for i in 0..samples {
        let removed: Vec<usize> = match i {
            0 => Vec::new(),
            1 => pset.clone(),
            _ => pset.iter().copied().filter(|_| rng.gen_bool(0.5)).collect(),
        };
        let (rest, _) = pair.g.remove_vertices(&removed);
        if rest.is_wilsonian() {
            strict += 1;
        }
        if !is_parity_wilsonian(&rest) {
            failures += 1;
            if first.is_none() {
                first = Some(removed.iter().map(|&x| pair.roles[x].clone()).collect());
            }
        }
    }
    CheckOutcome {
        name: "p3_wilsonian".into(),
        passed: failures == 0,
        detail: json!({
            "samples": samples,
            "p_size": pset.len(),
            "failures": failures,
            "first_failure_removed": first,
            "strictly_wilsonian": strict,
        }),
    }
}

fn p4_check(pair: &GadgetPair, p: &GadgetParams, samples: usize, seed: u64) -> CheckOutcome {
    let g = &pair.g;
    let bound = 5 * p.ell;
    let excess = g.edge_count() as i64 - g.n() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut spot_violations = 0usize;
    for _ in 0..samples {
        let keep: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(0.5)).collect();
        let sub = g.induced(&keep);
        if sub.edge_count() > keep.len() + bound {
            spot_violations += 1;
        }
    }
    CheckOutcome {
        name: "p4_edges".into(),
        passed: excess <= bound as i64 && spot_violations == 0,
        detail: json!({
            "vertices": g.n(),
            "edges": g.edge_count(),
            "excess": excess,
            "bound": bound,
            "spot_checks": samples,
            "spot_violations": spot_violations,
        }),
    }
}

/// Validates a built pair with 200 samples for the sampled checks.
pub fn validate_gadget(pair: &GadgetPair, params: &GadgetParams) -> ValidationReport {
    validate_gadget_with(pair, params, 200, 0)
}

/// Runs every structural check concurrently. Failures are report entries.
pub fn validate_gadget_with(pair: &GadgetPair, params: &GadgetParams, samples: usize, seed: u64) -> ValidationReport {
    // u and v carry the two largest ids, so G|[m] keeps every other id.
    let keep: Vec<usize> = (0..pair.n()).filter(|&x| x != pair.u && x != pair.v).collect();
    let core = pair.g.induced(&keep);
    let checks = std::thread::scope(|sc| {
        let bg = sc.spawn(|| CheckOutcome {
            name: "bipartite_g".into(),
            ..sides_check(&pair.g, &pair.a_g, &pair.b_g, pair.u, pair.v)
        });
        let bh = sc.spawn(|| CheckOutcome {
            name: "bipartite_h".into(),
            ..sides_check(&pair.h, &pair.a_h, &pair.b_h, pair.u, pair.v)
        });
        let cr = sc.spawn(|| c_rho_check(pair, params.rho));
        let p1 = sc.spawn(|| p1_check(&core, params));
        let p2 = sc.spawn(|| p2_check(&core, pair, params));
        let p3 = sc.spawn(|| p3_check(pair, samples, seed));
        let p4 = sc.spawn(|| p4_check(pair, params, samples, seed));
        [bg, bh, cr, p1, p2, p3, p4].map(|h| h.join().expect("check thread"))
    });
    ValidationReport {
        rho: params.rho,
        m: params.m,
        ell: params.ell,
        g: params.g,
        checks: checks.into(),
        warnings: pair.layout.as_ref().map(|l| l.warnings.clone()).unwrap_or_default(),
    }
}
