use gadget_forge::*;
use graph_core::SimpleGraph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FORMULA_M: usize = 976;

fn desk(rho: u8, m: usize) -> (GadgetParams, GadgetPair) {
    let (p, ov) = desk_search(rho, m).expect("feasible desk override");
    let pair = build_gadget(&p, Some(&ov)).expect("build");
    (p, pair)
}

#[test]
fn small_m_is_infeasible_from_formulas() {
    for rho in 1..=4 {
        assert!(matches!(derive_params(rho, 8), Err(GadgetError::Infeasible(_))));
        assert!(matches!(derive_params(rho, 16), Err(GadgetError::Infeasible(_))));
    }
    assert!(matches!(derive_params(1, 12), Err(GadgetError::InvalidParams(_))));
}

#[test]
fn formula_params_satisfy_invariants() {
    let p1 = derive_params(1, FORMULA_M).unwrap();
    assert_eq!(p1.k, 2 * p1.ell);
    assert_eq!(p1.ell_prime, p1.ell - 1);
    assert_eq!(p1.k_prime, p1.k - 2);
    assert_eq!(p1.ell % 8, 0);
    assert_eq!(p1.g % 4, 0);
    assert_eq!(p1.s, FORMULA_M - 7 - p1.ell * (p1.k + 2));
    let p3 = derive_params(3, FORMULA_M).unwrap();
    assert_eq!(p3.m_rho, FORMULA_M + 3);
    // Three extra vertices in [m] offset part of the 3k new z~ names.
    assert_eq!(p1.s - p3.s, 3 * p3.k - 3);
    // The smallest base size where the formulas place everything.
    assert!(derive_params(1, FORMULA_M - 8).is_err());
}

#[test]
fn h_edge_count_matches_edge_lists() {
    for rho in 1..=4u8 {
        let p = derive_params(rho, FORMULA_M).unwrap();
        let pair = build_gadget(&p, None).unwrap();
        let extra = if rho >= 3 { 3 * p.k } else { 0 };
        assert_eq!(pair.h.edge_count(), 2 * p.ell + p.ell * p.k + pair.b_h.len() + extra);
        assert_eq!(pair.n(), p.m_rho + 2);
        let mut roles = pair.roles.clone();
        roles.sort();
        roles.dedup();
        assert_eq!(roles.len(), pair.n(), "roles are unique");
    }
}

#[test]
fn construction_is_deterministic() {
    let p = derive_params(4, FORMULA_M).unwrap();
    assert_eq!(build_gadget(&p, None).unwrap(), build_gadget(&p, None).unwrap());
    let (p, ov) = desk_search(2, 48).unwrap();
    assert_eq!(build_gadget(&p, Some(&ov)).unwrap(), build_gadget(&p, Some(&ov)).unwrap());
}

#[test]
fn bipartite_and_neighbor_conditions_hold() {
    for rho in 1..=4u8 {
        let p = derive_params(rho, FORMULA_M).unwrap();
        let pair = build_gadget(&p, None).unwrap();
        let rep = validate_gadget_with(&pair, &p, 20, 1);
        for name in ["bipartite_g", "bipartite_h", "c_rho"] {
            assert!(rep.passed(name), "rho {rho}: {name} {:?}", rep.check(name));
        }
        assert!(pair.g.is_bipartite() && pair.h.is_bipartite());
        let (_, pair) = desk(rho, 64);
        let rep = validate_gadget_with(&pair, &p, 20, 1);
        for name in ["bipartite_g", "bipartite_h", "c_rho"] {
            assert!(rep.passed(name), "rho {rho} desk: {name}");
        }
    }
}

#[test]
fn edge_excess_matches_construction_count() {
    // Big cycle, 6 edges at u and v, 2 per y, the s_1 q edge, 2 chords per
    // vertex of S_0 (3 ell + 6 of them), and 6 z~ edges in cases 3 and 4.
    for rho in 1..=4u8 {
        let (p, pair) = desk(rho, 64);
        let ell = p.ell;
        let cycle = p.cycle_len;
        let expected = cycle + 6 + 2 * ell + 1 + 2 * (3 * ell + 6) + if rho >= 3 { 6 } else { 0 };
        assert_eq!(pair.g.edge_count(), expected);
        let excess = expected - pair.n();
        assert_eq!(excess, 7 * ell + 17 + if rho >= 3 { 3 } else { 0 });
        let rep = validate_gadget_with(&pair, &p, 10, 0);
        assert!(!rep.passed("p4_edges"), "excess {excess} exceeds 5 ell");
    }
}

#[test]
fn removing_two_r_vertices_leaves_v_pendant() {
    let (_, pair) = desk(1, 48);
    let r2 = pair.role_of("r_2").unwrap();
    let r3 = pair.role_of("r_3").unwrap();
    let (rest, kept) = pair.g.remove_vertices(&[r2, r3]);
    let v = kept.iter().position(|&x| x == pair.v).unwrap();
    assert_eq!(rest.degree(v), 1);
    assert!(!is_parity_wilsonian(&rest));
}

#[test]
fn role_dump_is_labeled() {
    let p = derive_params(3, FORMULA_M).unwrap();
    let pair = build_gadget(&p, None).unwrap();
    let dump = pair.dump();
    let json = serde_json::to_string(&dump).unwrap();
    assert!(json.contains("\"role\":\"x_3\""));
    assert!(dump.aliases.contains_key("t~_2"));
    assert!(dump.aliases.contains_key("q"));
    let back: GadgetDump = serde_json::from_str(&json).unwrap();
    assert_eq!(back, dump);
    // The alias t~_1 sits k-2 steps before s_1 on the big cycle.
    let t1 = pair.cycle_position[dump.aliases["t~_1"]].unwrap();
    let s1 = pair.cycle_position[pair.role_of("s_1").unwrap()].unwrap();
    assert_eq!((s1 + p.cycle_len - t1) % p.cycle_len, p.k - 2);
}

#[test]
fn collision_is_a_placement_conflict() {
    let p = GadgetParams::custom(1, 64, 4, 4).unwrap();
    let ov = Overrides { s2: Some(2), s1: Some(30) };
    assert!(matches!(build_gadget(&p, Some(&ov)), Err(GadgetError::PlacementConflict(_))));
}

#[test]
fn mutation_edge_inside_a_side_breaks_bipartiteness() {
    let (p, pair) = desk(1, 48);
    let a = pair.a_g[0];
    let b = *pair.a_g.iter().find(|&&x| x != a && !pair.g.has_edge(a, x)).unwrap();
    let mut bad = pair.clone();
    bad.g = pair.g.with_edges(&[(a, b)]).unwrap();
    let rep = validate_gadget_with(&bad, &p, 10, 0);
    assert!(!rep.passed("bipartite_g"));
    assert!(rep.passed("bipartite_h"));
}

#[test]
fn mutation_chord_removed_changes_edge_count_only_by_one() {
    let (p, pair) = desk(1, 48);
    let lay = pair.layout.clone().unwrap();
    let pos_to_id = |pos: usize| pair.cycle_position.iter().position(|&c| c == Some(pos)).unwrap();
    let (a, e) = lay.chords[0];
    let mut cut = pair.clone();
    cut.g = pair.g.without_edges(&[(pos_to_id(a), pos_to_id(e))]);
    let before = validate_gadget_with(&pair, &p, 50, 3);
    let after = validate_gadget_with(&cut, &p, 50, 3);
    let excess = |r: &ValidationReport| r.check("p4_edges").unwrap().detail["excess"].as_i64().unwrap();
    assert_eq!(excess(&after), excess(&before) - 1);
    assert!(after.passed("bipartite_g") && after.passed("c_rho"));
    let fails = |r: &ValidationReport| r.check("p3_wilsonian").unwrap().detail["failures"].as_u64().unwrap();
    assert!(fails(&after) >= fails(&before));
}

// Brute-force cycle count by length: every vertex sequence starting at its
// minimum, second vertex smaller than the last.
fn cycles_by_brute_force(g: &SimpleGraph, below: usize) -> Vec<usize> {
    fn rec(g: &SimpleGraph, path: &mut Vec<usize>, below: usize, out: &mut Vec<usize>) {
        let n = g.n();
        let last = *path.last().unwrap();
        if path.len() >= 3 && g.has_edge(last, path[0]) && path[1] < last && path.len() < below {
            out.push(path.len());
        }
        for w in path[0] + 1..n {
            if !path.contains(&w) && g.has_edge(last, w) {
                path.push(w);
                rec(g, path, below, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        rec(g, &mut vec![s], below, &mut out);
    }
    out.sort_unstable();
    out
}

proptest! {
    #[test]
    fn short_cycles_match_brute_force(n in 3usize..8, mask in any::<u32>(), below in 3usize..9) {
        let mut edges = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> (bit % 32) & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        let g = SimpleGraph::new(n, &edges).unwrap();
        let (cycles, truncated) = short_cycles(&g, below);
        prop_assert!(!truncated);
        let mut lens: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
        lens.sort_unstable();
        prop_assert_eq!(lens, cycles_by_brute_force(&g, below));
    }
}

#[test]
fn parity_wilsonian_predicate() {
    assert!(!is_parity_wilsonian(&SimpleGraph::cycle(6)));
    assert!(is_parity_wilsonian(&SimpleGraph::complete_bipartite(2, 3)));
    assert!(!is_parity_wilsonian(&SimpleGraph::theta0()));
    assert!(!is_parity_wilsonian(&SimpleGraph::path(4)));
    assert!(is_parity_wilsonian(&SimpleGraph::complete(4)));
}

#[test]
fn single_edge_gadget_embeds() {
    let e = SimpleGraph::new(2, &[(0, 1)]).unwrap();
    let x = SimpleGraph::path(3);
    let sigma = vec![0, 1, 2];
    let emb = find_respecting_embeddings(&e, &e, 0, 1, &x, &x, &sigma, 0, 1, 1000).unwrap().unwrap();
    assert_eq!(emb.psi_h, vec![0, 1]);
    assert_eq!(emb.psi_g, vec![0, 1]);
    let empty = SimpleGraph::empty(3);
    assert_eq!(find_respecting_embeddings(&e, &e, 0, 1, &empty, &x, &sigma, 0, 1, 1000).unwrap(), None);
}

#[test]
fn embedding_budget_is_reported() {
    let g = SimpleGraph::path(6);
    let x = SimpleGraph::cycle(8);
    let sigma: Vec<usize> = (0..8).collect();
    let r = find_respecting_embeddings(&g, &g, 0, 5, &x, &x, &sigma, 0, 4, 3);
    assert_eq!(r, Err(GadgetError::Budget(3)));
}

#[test]
fn path_gadget_script_replays_in_host() {
    // m = 1: vertices w = 0, u = 1, v = 2; G is the path u-w-v, H is K_3.
    let g = SimpleGraph::new(3, &[(0, 1), (0, 2)]).unwrap();
    let h = SimpleGraph::complete(3);
    let (u, v) = (1, 2);
    let id: Vec<usize> = (0..3).collect();
    let script = swap_script(&g, &h, &id, u, v, 1000).unwrap().expect("u, v exchangeable");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut present = 0;
    for _ in 0..200 {
        let n = 6;
        let rand_graph = |rng: &mut ChaCha8Rng| {
            let edges: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.6)).collect();
            SimpleGraph::new(n, &edges).unwrap()
        };
        let x = rand_graph(&mut rng);
        let y = rand_graph(&mut rng);
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        let u0 = rng.gen_range(0..n);
        let v0 = (u0 + rng.gen_range(1..n)) % n;
        let Some(emb) = find_respecting_embeddings(&g, &h, u, v, &x, &y, &sigma, u0, v0, 100_000).unwrap() else {
            continue;
        };
        present += 1;
        for p in 0..3 {
            assert_eq!(emb.psi_h[p], sigma[emb.psi_g[p]]);
        }
        assert_eq!((emb.psi_h[u], emb.psi_h[v]), (u0, v0));
        let mut cur = sigma.clone();
        for (a, b) in push_swaps(&emb.psi_g, &script) {
            assert!(x.has_edge(a, b) && y.has_edge(cur[a], cur[b]), "pushed swap is friendly");
            cur.swap(a, b);
        }
        let mut want = sigma.clone();
        for l in want.iter_mut() {
            if *l == u0 {
                *l = v0;
            } else if *l == v0 {
                *l = u0;
            }
        }
        assert_eq!(cur, want);
    }
    assert!(present > 10, "only {present} hosts admitted the gadget");
}

#[test]
fn miniature_exchangeability_by_bfs() {
    let pair = GadgetPair::miniature(SimpleGraph::complete(4), SimpleGraph::path(4), 0, 3).unwrap();
    let out = check_gadget_exchangeability(&pair, 1_000);
    assert_eq!(out.state_count, "24");
    assert_eq!(out.answer, Some(true));

    // v isolated in G can never move.
    let g = SimpleGraph::new(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let cut = GadgetPair::miniature(g, SimpleGraph::path(4), 0, 3).unwrap();
    assert_eq!(check_gadget_exchangeability(&cut, 1_000).answer, Some(false));

    // Cross-check against the scripted BFS on a bipartite miniature.
    let g = SimpleGraph::complete_bipartite(3, 3);
    let h = SimpleGraph::cycle(6);
    let pair = GadgetPair::miniature(g.clone(), h.clone(), 0, 3).unwrap();
    let id: Vec<usize> = (0..6).collect();
    let scripted = swap_script(&g, &h, &id, 0, 3, 1_000_000).unwrap().is_some();
    assert_eq!(check_gadget_exchangeability(&pair, 1_000_000).answer, Some(scripted));
}

#[test]
fn formula_scale_exchangeability_is_size_infeasible() {
    let p = derive_params(1, FORMULA_M).unwrap();
    let pair = build_gadget(&p, None).unwrap();
    let out = check_gadget_exchangeability(&pair, 20_000_000);
    assert_eq!(out.answer, None);
    let fact: num_bigint::BigUint = (1..=(FORMULA_M as u64 + 2)).map(num_bigint::BigUint::from).product();
    assert_eq!(out.state_count, fact.to_string());
}
