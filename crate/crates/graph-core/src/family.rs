//! Small exhaustive graph families: all graphs on `n` vertices up to
//! isomorphism, and multiplicity lists.

use std::collections::HashSet;

use crate::SimpleGraph;

/// Largest vertex count for which isomorphism-free enumeration is offered.
pub const MAX_FAMILY_N: usize = 7;

/// Every permutation of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

/// Advances to the next lexicographic permutation (multisets allowed);
/// returns false after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn edge_bit(n: usize, u: usize, v: usize) -> u32 {
    let (a, b) = (u.min(v), u.max(v));
    // Index of pair (a,b) in row-major upper-triangle order.
    let idx = a * (2 * n - a - 1) / 2 + (b - a - 1);
    1 << idx
}

fn mask_of(g: &SimpleGraph) -> u32 {
    g.edges().iter().fold(0, |m, &(u, v)| m | edge_bit(g.n(), u, v))
}

fn canonical_mask(g: &SimpleGraph, perms: &[Vec<usize>]) -> u32 {
    let n = g.n();
    perms
        .iter()
        .map(|p| g.edges().iter().fold(0, |m, &(u, v)| m | edge_bit(n, p[u], p[v])))
        .min()
        .unwrap_or(0)
}

fn from_mask(n: usize, mask: u32) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask & edge_bit(n, u, v) != 0 {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, &edges).expect("mask graph")
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by edge count then canonical mask. Panics above [`MAX_FAMILY_N`].
pub fn graphs_up_to_iso(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= MAX_FAMILY_N, "family enumeration limited to n <= {MAX_FAMILY_N}");
    if n == 0 {
        return vec![SimpleGraph::empty(0)];
    }
    // Grow from the classes on n-1 vertices by attaching a new vertex to
    // every neighbor subset.
    let smaller = graphs_up_to_iso(n - 1);
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for h in &smaller {
        for subset in 0u32..(1 << (n - 1)) {
            let mut edges: Vec<(usize, usize)> = h.edges().to_vec();
            for u in 0..n - 1 {
                if subset >> u & 1 == 1 {
                    edges.push((u, n - 1));
                }
            }
            let g = SimpleGraph::new(n, &edges).expect("extension");
            let key = canonical_mask(&g, &perms);
            if seen.insert(key) {
                reps.push(key);
            }
        }
    }
    reps.sort_by_key(|&m| (m.count_ones(), m));
    reps.into_iter().map(|m| from_mask(n, m)).collect()
}

/// Connected representatives on `n` vertices.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<SimpleGraph> {
    graphs_up_to_iso(n).into_iter().filter(|g| g.is_connected()).collect()
}

/// Every labeled graph on `n` vertices (all `2^(n choose 2)` edge subsets).
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = SimpleGraph> {
    assert!(n <= MAX_FAMILY_N);
    let pairs = n * n.saturating_sub(1) / 2;
    (0u32..(1u32 << pairs)).map(move |m| from_mask(n, m))
}

/// Canonical bitmask of `g` under relabeling; equal iff isomorphic.
pub fn canonical_form(g: &SimpleGraph) -> u32 {
    assert!(g.n() <= MAX_FAMILY_N);
    canonical_mask(g, &permutations(g.n()))
}

/// Raw edge bitmask (row-major upper triangle).
pub fn edge_mask(g: &SimpleGraph) -> u32 {
    mask_of(g)
}

/// All lists of `len` positive integers with sum at most `max_total`, in
/// lexicographic order.
pub fn multiplicity_lists(len: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fill(len, max_total, &mut cur, &mut out);
    out
}

fn fill(len: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let remaining_slots = len - cur.len() - 1;
    if budget < remaining_slots + 1 {
        return;
    }
    for c in 1..=budget - remaining_slots {
        cur.push(c);
        fill(len, budget - c, cur, out);
        cur.pop();
    }
}

/// Lists of `len` positive integers summing exactly to `total`.
pub fn compositions(len: usize, total: usize) -> Vec<Vec<usize>> {
    multiplicity_lists(len, total)
        .into_iter()
        .filter(|l| l.iter().sum::<usize>() == total)
        .collect()
}
