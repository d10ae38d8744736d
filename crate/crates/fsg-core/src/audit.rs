use graph_core::{bridge_sides, find_k_bridges, MultiplicityGraph, SimpleGraph};

use crate::components::{bfs_until, build_components, check_budget, UnionFind};
use crate::{ComponentsReport, FsError, FsGraph, FsInstance};

/// Parity of a permutation given as a vector (0 even, 1 odd).
pub fn permutation_parity(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut parity = 0;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        parity += len - 1;
    }
    parity % 2
}

/// Whether swapping the labels `u` and `v` in `a` can be realized by friendly
/// swaps. Only meaningful for bijective instances.
pub fn labels_exchangeable(inst: &FsInstance, a: &[usize], u: usize, v: usize, budget: u64) -> Result<bool, FsError> {
    if !inst.is_bijective() {
        return Err(FsError::Unsupported("label exchange needs a bijective instance".into()));
    }
    if u == v || u >= inst.n() || v >= inst.n() {
        return Err(FsError::InvalidArrangement(format!("bad label pair ({u}, {v})")));
    }
    inst.validate(a)?;
    let target: Vec<usize> = a.iter().map(|&l| if l == u { v } else if l == v { u } else { l }).collect();
    reaches(inst, a, &target, budget)
}

/// Whether the labels at positions `p` and `q` can be exchanged (target
/// `a` composed with the transposition of `p` and `q`).
pub fn positions_exchangeable(g: &dyn FsGraph, a: &[usize], p: usize, q: usize, budget: u64) -> Result<bool, FsError> {
    if p == q || p >= a.len() || q >= a.len() {
        return Err(FsError::InvalidArrangement(format!("bad position pair ({p}, {q})")));
    }
    g.validate(a)?;
    let mut target = a.to_vec();
    target.swap(p, q);
    reaches(g, a, &target, budget)
}

fn reaches(g: &dyn FsGraph, from: &[usize], to: &[usize], budget: u64) -> Result<bool, FsError> {
    let mut hit = None;
    let (_, stopped) = bfs_until(g, from, budget, &mut |b| b == to, &mut hit)?;
    Ok(stopped)
}

/// Checks that within every component, `sgn(sigma) + |sigma(A_X) ∩ A_Y|` has a
/// constant parity. Equivalent to the pairwise statement
/// `sgn(sigma^-1 tau) ≡ |tau(A_X)∩A_Y| - |sigma(A_X)∩A_Y| (mod 2)`.
pub fn parity_audit(inst: &FsInstance, report: &ComponentsReport) -> Result<bool, FsError> {
    if !inst.is_bijective() {
        return Err(FsError::Unsupported("parity audit needs a bijective instance".into()));
    }
    let (ax, _) = inst.x().bipartition().ok_or(FsError::NotBipartite("x"))?;
    let (ay, _) = inst.y().base().bipartition().ok_or(FsError::NotBipartite("y"))?;
    let mut in_ay = vec![false; inst.n()];
    for &v in &ay {
        in_ay[v] = true;
    }
    let mut class_parity: Vec<Option<usize>> = vec![None; report.component_count];
    let mut ok = true;
    inst.for_each_arrangement(&mut |i, a| {
        let hits = ax.iter().filter(|&&p| in_ay[a[p]]).count();
        let key = (permutation_parity(a) + hits) % 2;
        let c = report.component_id[i] as usize;
        match class_parity[c] {
            None => class_parity[c] = Some(key),
            Some(k) if k != key => ok = false,
            _ => {}
        }
    });
    Ok(ok)
}

/// Outcome of the lift/quotient comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAudit {
    pub holds: bool,
    /// Vertices of `FS(X, lift(y))`.
    pub lifted_vertices: u64,
    /// Vertices of `FSm(X, y)`.
    pub quotient_vertices: u64,
    /// Number of permutation-equivalence edges added.
    pub equivalence_edges: u64,
    pub lifted_components: usize,
    pub quotient_components: usize,
}

/// Builds `FS(X, lift(y))`, joins permutation-equivalent arrangements, projects
/// the resulting components through the clique partition and compares with the
/// directly computed components of `FSm(X, y)`.
pub fn quotient_audit(x: &SimpleGraph, y: &MultiplicityGraph, budget: u64) -> Result<QuotientAudit, FsError> {
    let (lift, cliques) = y.lift();
    let lifted = FsInstance::bijective(x.clone(), lift)?;
    let direct = FsInstance::new(x.clone(), y.clone())?;
    let n_lift = check_budget(&lifted, budget)?;
    let n_direct = check_budget(&direct, budget)?;

    let lifted_report = build_components(&lifted, budget)?;
    let mut uf = UnionFind::new(n_lift);
    let mut comp_rep = vec![usize::MAX; lifted_report.component_count];
    let mut class_rep = vec![usize::MAX; n_direct];
    let mut equivalence_edges = 0u64;
    let mut class_size = vec![0u64; n_direct];
    let mut projected = vec![0usize; x.n()];
    lifted.for_each_arrangement(&mut |i, a| {
        // FS components are merged through one representative each.
        let c = lifted_report.component_id[i] as usize;
        if comp_rep[c] == usize::MAX {
            comp_rep[c] = i;
        } else {
            uf.union(comp_rep[c], i);
        }
        for (p, &l) in a.iter().enumerate() {
            projected[p] = cliques.owner(l);
        }
        let j = direct.index_of(&projected);
        equivalence_edges += class_size[j];
        class_size[j] += 1;
        if class_rep[j] == usize::MAX {
            class_rep[j] = i;
        } else {
            uf.union(class_rep[j], i);
        }
    });

    let direct_report = build_components(&direct, budget)?;
    // The two partitions of the FSm vertex set must coincide: map each direct
    // component to the merged root and back.
    let mut direct_to_root = vec![usize::MAX; direct_report.component_count];
    let mut root_to_direct = std::collections::HashMap::new();
    let mut holds = true;
    for j in 0..n_direct {
        let root = uf.find(class_rep[j]);
        let d = direct_report.component_id[j] as usize;
        if direct_to_root[d] == usize::MAX {
            direct_to_root[d] = root;
        } else if direct_to_root[d] != root {
            holds = false;
        }
        if *root_to_direct.entry(root).or_insert(d) != d {
            holds = false;
        }
    }
    Ok(QuotientAudit {
        holds,
        lifted_vertices: n_lift as u64,
        quotient_vertices: n_direct as u64,
        equivalence_edges,
        lifted_components: lifted_report.component_count,
        quotient_components: direct_report.component_count,
    })
}

/// Checks that every arrangement in the component of `start` keeps all copies
/// of `leaf` inside `A` or on the first `x(tau)` non-blank bridge positions,
/// where `x(tau)` counts blanks (label 0, the star center) inside `A`.
///
/// The bridge is oriented so that its first endpoint lies on the larger side.
pub fn kbridge_component_invariant(
    x: &SimpleGraph,
    star: &MultiplicityGraph,
    bridge: &[usize],
    leaf: usize,
    start: &[usize],
    budget: u64,
) -> Result<bool, FsError> {
    let k = star.mult()[0];
    let mut canon = bridge.to_vec();
    if canon.first() > canon.last() {
        canon.reverse();
    }
    if bridge.len() != k || !find_k_bridges(x, k).contains(&canon) {
        return Err(FsError::Precondition(format!("{bridge:?} is not a {k}-bridge")));
    }
    if leaf == 0 || leaf >= star.n() {
        return Err(FsError::Precondition(format!("label {leaf} is not a leaf")));
    }
    let mut path = bridge.to_vec();
    let (mut a_side, mut b_side) = bridge_sides(x, &path);
    if a_side.len() < b_side.len() {
        path.reverse();
        std::mem::swap(&mut a_side, &mut b_side);
    }
    let inst = FsInstance::new(x.clone(), star.clone())?;
    let mut in_a = vec![false; x.n()];
    for &v in &a_side {
        in_a[v] = true;
    }
    let holds = |t: &[usize]| -> bool {
        let xt = a_side.iter().filter(|&&v| t[v] == 0).count();
        let mut allowed = in_a.clone();
        for &ai in path.iter().filter(|&&ai| t[ai] != 0).take(xt) {
            allowed[ai] = true;
        }
        (0..t.len()).all(|p| t[p] != leaf || allowed[p])
    };
    inst.validate(start)?;
    if !holds(start) {
        return Err(FsError::Precondition("start arrangement violates the invariant".into()));
    }
    let mut hit = None;
    let mut broken = |t: &[usize]| !holds(t);
    let (_, stopped) = bfs_until(&inst, start, budget, &mut broken, &mut hit)?;
    Ok(!stopped)
}
