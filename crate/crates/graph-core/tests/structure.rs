use graph_core::family::{all_labeled_graphs, connected_graphs_up_to_iso, graphs_up_to_iso, permutations};
use graph_core::{bridge_sides, contingency_count, find_k_bridges, GraphSpec, MultiplicityGraph, SimpleGraph};
use proptest::prelude::*;

fn g(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
    SimpleGraph::new(n, edges).unwrap()
}

// Oracle: a cut vertex is one whose deletion raises the component count.
fn cut_vertices_by_deletion(h: &SimpleGraph) -> Vec<usize> {
    let base = h.component_labels().0;
    (0..h.n())
        .filter(|&v| {
            let (rest, _) = h.remove_vertices(&[v]);
            // Deleting an isolated vertex lowers the count; that is not a cut.
            rest.component_labels().0 > base
        })
        .collect()
}

// Oracle: enumerate every matrix with entries bounded by the margins.
fn contingency_brute(rows: &[usize], cols: &[usize]) -> u128 {
    let cells = rows.len() * cols.len();
    let bound = rows.iter().copied().max().unwrap_or(0) + 1;
    let mut count = 0;
    let mut cur = vec![0usize; cells];
    loop {
        let row_ok = (0..rows.len()).all(|i| (0..cols.len()).map(|j| cur[i * cols.len() + j]).sum::<usize>() == rows[i]);
        let col_ok = (0..cols.len()).all(|j| (0..rows.len()).map(|i| cur[i * cols.len() + j]).sum::<usize>() == cols[j]);
        if row_ok && col_ok {
            count += 1;
        }
        let mut i = 0;
        while i < cells {
            cur[i] += 1;
            if cur[i] < bound {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == cells {
            return count;
        }
    }
}

#[test]
fn complement_examples() {
    assert_eq!(SimpleGraph::path(3).complement().edges(), &[(0, 2)]);
    assert_eq!(SimpleGraph::complete(3).complement().edge_count(), 0);
    let c5 = SimpleGraph::cycle(5);
    assert_eq!(c5.complement().complement(), c5);
}

#[test]
fn bipartition_examples() {
    assert_eq!(SimpleGraph::cycle(4).bipartition(), Some((vec![0, 2], vec![1, 3])));
    assert_eq!(SimpleGraph::complete(3).bipartition(), None);
    assert_eq!(SimpleGraph::empty(3).bipartition(), Some((vec![0, 1, 2], vec![])));
}

#[test]
fn articulation_examples() {
    let p3 = SimpleGraph::path(3).articulation_analysis();
    assert_eq!((p3.cut_vertices, p3.biconnected), (vec![1], false));
    let c5 = SimpleGraph::cycle(5).articulation_analysis();
    assert_eq!((c5.cut_vertices, c5.biconnected), (vec![], true));
    let t = SimpleGraph::theta0().articulation_analysis();
    assert_eq!((t.cut_vertices, t.biconnected), (vec![], true));
    // Small graphs are never biconnected.
    assert!(!SimpleGraph::complete(2).is_biconnected());
    assert!(!SimpleGraph::complete(1).is_biconnected());
}

#[test]
fn articulation_matches_deletion_oracle_exhaustively() {
    for n in 0..=6 {
        for h in all_labeled_graphs(n) {
            let a = h.articulation_analysis();
            assert_eq!(a.cut_vertices, cut_vertices_by_deletion(&h), "{h:?}");
            let expect_bi = n >= 3 && h.is_connected() && a.cut_vertices.is_empty();
            assert_eq!(a.biconnected, expect_bi);
        }
    }
}

#[test]
fn theta0_recognition() {
    assert!(SimpleGraph::theta0().is_theta0());
    assert!(!SimpleGraph::cycle(7).is_theta0());
    // Every relabeling of the hexagon-with-center is still recognized.
    let t = SimpleGraph::theta0();
    for (i, p) in permutations(7).iter().enumerate() {
        if i % 97 == 0 {
            assert!(t.permuted(p).is_theta0());
        }
    }
    // Same degree sequence, different graph: two triangles-free variants.
    let other = g(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (6, 0), (6, 2)]);
    assert_eq!(other.degree_sequence(), t.degree_sequence());
    assert!(!other.is_theta0());
}

#[test]
fn wilsonian_examples() {
    assert!(!SimpleGraph::cycle(6).is_wilsonian());
    assert!(!SimpleGraph::theta0().is_wilsonian());
    assert!(SimpleGraph::complete(4).is_wilsonian());
    assert!(SimpleGraph::complete(3).is_wilsonian());
    assert!(!SimpleGraph::complete_bipartite(3, 3).is_wilsonian());
    assert!(!SimpleGraph::complete(2).is_wilsonian());
}

#[test]
fn wilsonian_implies_biconnected_and_odd_cycle() {
    for n in 1..=7 {
        for h in graphs_up_to_iso(n) {
            if h.is_wilsonian() {
                assert!(h.articulation_analysis().biconnected);
                assert!(h.bipartition().is_none());
            }
        }
    }
}

#[test]
fn family_counts_match_known_sequences() {
    // Graphs and connected graphs up to isomorphism on n vertices.
    let all: Vec<usize> = (1..=6).map(|n| graphs_up_to_iso(n).len()).collect();
    assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
    let conn: Vec<usize> = (1..=6).map(|n| connected_graphs_up_to_iso(n).len()).collect();
    assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
}

#[test]
fn lift_examples() {
    let edge = MultiplicityGraph::new(SimpleGraph::path(2), vec![1, 2]).unwrap();
    let (l, cl) = edge.lift();
    assert_eq!(l, SimpleGraph::complete(3));
    assert_eq!(cl.blocks(), &[vec![0], vec![1, 2]]);

    let c5 = MultiplicityGraph::unit(SimpleGraph::cycle(5));
    assert_eq!(c5.lift().0, SimpleGraph::cycle(5));

    let x = MultiplicityGraph::new(SimpleGraph::path(3), vec![2, 2, 4]).unwrap();
    let (l, cl) = x.lift();
    assert_eq!(l.n(), 8);
    assert_eq!(cl.blocks(), &[vec![0, 1], vec![2, 3], vec![4, 5, 6, 7]]);
    let comp = l.complement();
    let mut expect = Vec::new();
    for a in [0, 1] {
        for b in 4..8 {
            expect.push((a, b));
        }
    }
    assert_eq!(comp.edges(), expect.as_slice());
    assert_eq!(comp.degree(2), 0);
    assert_eq!(comp.degree(3), 0);
}

#[test]
fn k_bridge_examples() {
    assert_eq!(find_k_bridges(&SimpleGraph::path(5), 3), vec![vec![1, 2, 3]]);
    assert!(find_k_bridges(&SimpleGraph::cycle(6), 3).is_empty());
    // A bridge edge whose deletion leaves two sides of size >= 2.
    assert_eq!(find_k_bridges(&SimpleGraph::path(4), 2), vec![vec![1, 2]]);
    assert!(find_k_bridges(&SimpleGraph::path(3), 2).is_empty());
    assert!(find_k_bridges(&SimpleGraph::cycle(5), 2).is_empty());
    // Two triangles joined by a 3-vertex path: a 3-bridge through the middle.
    let dumbbell = g(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)]);
    assert_eq!(find_k_bridges(&dumbbell, 3), vec![vec![2, 3, 4]]);
    assert_eq!(find_k_bridges(&dumbbell, 2), vec![vec![2, 3], vec![3, 4]]);
    assert!(find_k_bridges(&dumbbell, 4).is_empty());
    let (a, b) = bridge_sides(&dumbbell, &[2, 3, 4]);
    assert_eq!((a, b), (vec![0, 1], vec![5, 6]));
}

// Oracle: brute-force tuples straight from the definition.
fn k_bridges_brute(h: &SimpleGraph, k: usize) -> Vec<Vec<usize>> {
    let n = h.n();
    let mut out = Vec::new();
    if k < 2 || k > n {
        return out;
    }
    let mut tuple = vec![0; k];
    let total = n.pow(k as u32);
    for code in 0..total {
        let mut c = code;
        for t in tuple.iter_mut() {
            *t = c % n;
            c /= n;
        }
        let mut distinct = tuple.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != k || tuple[0] > tuple[k - 1] {
            continue;
        }
        if !(1..k).all(|i| h.has_edge(tuple[i - 1], tuple[i])) {
            continue;
        }
        if !(1..k - 1).all(|i| h.degree(tuple[i]) == 2) {
            continue;
        }
        let rest = if k == 2 {
            h.without_edges(&[(tuple[0], tuple[1])])
        } else {
            // Keep indices stable by isolating the interior instead of deleting.
            let drop: Vec<(usize, usize)> =
                h.edges().iter().copied().filter(|&(u, v)| tuple[1..k - 1].contains(&u) || tuple[1..k - 1].contains(&v)).collect();
            h.without_edges(&drop)
        };
        let (_, label) = rest.component_labels();
        let (la, lb) = (label[tuple[0]], label[tuple[k - 1]]);
        let size = |l| label.iter().filter(|&&x| x == l).count();
        if la != lb && size(la) >= 2 && size(lb) >= 2 {
            out.push(tuple.clone());
        }
    }
    out.sort();
    out
}

#[test]
fn k_bridges_match_definition_oracle() {
    for n in 2..=6 {
        for h in connected_graphs_up_to_iso(n) {
            for k in 2..=4 {
                assert_eq!(find_k_bridges(&h, k), k_bridges_brute(&h, k), "{h:?} k={k}");
            }
        }
    }
}

#[test]
fn contingency_examples() {
    assert_eq!(contingency_count(&[1, 2], &[1, 2]).unwrap(), 2);
    assert_eq!(contingency_count(&[5], &[5]).unwrap(), 1);
    assert_eq!(contingency_count(&[1, 1], &[1, 1]).unwrap(), 2);
    assert!(contingency_count(&[1, 2], &[2, 2]).is_err());
}

#[test]
fn contingency_matches_enumeration() {
    let margins = graph_core::family::multiplicity_lists(3, 8);
    let mut checked = 0;
    for rows in margins.iter().filter(|r| r.len() <= 3) {
        for cols in graph_core::family::compositions(2, rows.iter().sum()) {
            let s: usize = rows.iter().sum();
            if s > 8 {
                continue;
            }
            assert_eq!(contingency_count(rows, &cols).unwrap(), contingency_brute(rows, &cols));
            checked += 1;
        }
    }
    for rows in graph_core::family::multiplicity_lists(2, 6) {
        for cols in graph_core::family::compositions(3, rows.iter().sum()) {
            assert_eq!(contingency_count(&rows, &cols).unwrap(), contingency_brute(&rows, &cols));
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn graph_json_roundtrip() {
    let spec: GraphSpec = serde_json::from_str(r#"{"n":3,"edges":[[0,1],[1,2]],"mult":[1,2,1]}"#).unwrap();
    let m = spec.to_multiplicity().unwrap();
    assert_eq!(m.total(), 4);
    assert_eq!(GraphSpec::from(&m), spec);
    let plain: GraphSpec = serde_json::from_str(r#"{"n":2,"edges":[[0,1]]}"#).unwrap();
    assert!(plain.to_multiplicity().unwrap().all_unit());
    let bad: GraphSpec = serde_json::from_str(r#"{"n":2,"edges":[[0,2]]}"#).unwrap();
    assert!(bad.to_simple().is_err());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            SimpleGraph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn lift_projects_to_base(h in arb_graph(6), seed in proptest::collection::vec(1usize..4, 6)) {
        let mult: Vec<usize> = seed[..h.n()].to_vec();
        let m = MultiplicityGraph::new(h.clone(), mult.clone()).unwrap();
        let (l, cl) = m.lift();
        prop_assert_eq!(l.n(), mult.iter().sum::<usize>());
        for a in 0..l.n() {
            for b in 0..l.n() {
                if a == b { continue; }
                let (va, vb) = (cl.owner(a), cl.owner(b));
                let expect = va == vb || h.has_edge(va, vb);
                prop_assert_eq!(l.has_edge(a, b), expect);
            }
        }
    }

    #[test]
    fn complement_is_involution(h in arb_graph(8)) {
        prop_assert_eq!(h.complement().complement(), h.clone());
        prop_assert_eq!(h.complement().edge_count() + h.edge_count(), h.n() * (h.n().saturating_sub(1)) / 2);
    }

    #[test]
    fn no_two_bridge_in_connected_graph_without_bridge_edge(h in arb_graph(7)) {
        // Every reported 2-bridge is a bridge edge of the graph.
        for b in find_k_bridges(&h, 2) {
            let cut = h.without_edges(&[(b[0], b[1])]);
            prop_assert!(cut.component_labels().0 > h.component_labels().0);
        }
    }
}
