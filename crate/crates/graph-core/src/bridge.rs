use crate::SimpleGraph;

/// All k-bridges of `g`, each reported once with `a_1 < a_k`, sorted.
///
/// The interior `a_2..a_{k-1}` must be vertices whose only neighbors are their
/// two path neighbors. Deleting the interior (for `k = 2`, deleting the edge
/// `a_1 a_2`) must leave `a_1` and `a_k` in different components, each with at
/// least two vertices.
pub fn find_k_bridges(g: &SimpleGraph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k < 2 || k > g.n() {
        return out;
    }
    let mut path = Vec::with_capacity(k);
    for start in 0..g.n() {
        path.push(start);
        extend(g, k, &mut path, &mut out);
        path.pop();
    }
    out.sort();
    out.dedup();
    out
}

fn extend(g: &SimpleGraph, k: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if path.len() == k {
        if path[0] < path[k - 1] && separates(g, path) {
            out.push(path.clone());
        }
        return;
    }
    let last = *path.last().unwrap();
    // Anything already on the path other than an endpoint is interior and must
    // have degree 2.
    if path.len() >= 2 && g.degree(last) != 2 {
        return;
    }
    for &w in g.neighbors(last) {
        if !path.contains(&w) {
            path.push(w);
            extend(g, k, path, out);
            path.pop();
        }
    }
}

fn separates(g: &SimpleGraph, path: &[usize]) -> bool {
    let k = path.len();
    let (a1, ak) = (path[0], path[k - 1]);
    let (rest, keep) = if k == 2 {
        (g.without_edges(&[(a1, ak)]), (0..g.n()).collect::<Vec<_>>())
    } else {
        g.remove_vertices(&path[1..k - 1])
    };
    let idx = |v: usize| keep.iter().position(|&x| x == v).expect("endpoint survives");
    let (_, label) = rest.component_labels();
    let (la, lk) = (label[idx(a1)], label[idx(ak)]);
    if la == lk {
        return false;
    }
    let size_a = label.iter().filter(|&&l| l == la).count();
    let size_k = label.iter().filter(|&&l| l == lk).count();
    size_a >= 2 && size_k >= 2
}

/// The two sides of a bridge: vertices (other than `a_1`, `a_k`) reachable from
/// `a_1` and from `a_k` once the interior is deleted.
pub fn bridge_sides(g: &SimpleGraph, bridge: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = bridge.len();
    let (a1, ak) = (bridge[0], bridge[k - 1]);
    let (rest, keep) = if k == 2 {
        (g.without_edges(&[(a1, ak)]), (0..g.n()).collect::<Vec<_>>())
    } else {
        g.remove_vertices(&bridge[1..k - 1])
    };
    let (_, label) = rest.component_labels();
    let pos = |v: usize| keep.iter().position(|&x| x == v).unwrap();
    let (la, lk) = (label[pos(a1)], label[pos(ak)]);
    let side = |l: usize, end: usize| -> Vec<usize> {
        keep.iter()
            .enumerate()
            .filter(|&(i, &v)| label[i] == l && v != end)
            .map(|(_, &v)| v)
            .collect()
    };
    (side(la, a1), side(lk, ak))
}
