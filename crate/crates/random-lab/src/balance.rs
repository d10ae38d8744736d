use graph_core::SimpleGraph;

use crate::RandomError;

/// Label pairs swapped in order; each swap exchanges the positions of the
/// two labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwapSequence {
    pub swaps: Vec<(usize, usize)>,
}

impl SwapSequence {
    /// Applies the swaps to `a` (`a[p]` = label), checking each is friendly.
    pub fn apply(&self, x: &SimpleGraph, y: &SimpleGraph, a: &[usize]) -> Result<Vec<usize>, RandomError> {
        let mut cur = a.to_vec();
        let mut pos = inverse(a)?;
        for &(c, d) in &self.swaps {
            let (p, q) = (pos[c], pos[d]);
            if !y.has_edge(c, d) || !x.has_edge(p, q) {
                return Err(RandomError::BadArrangement(format!("swap {c}-{d} is not friendly")));
            }
            cur.swap(p, q);
            pos.swap(c, d);
        }
        Ok(cur)
    }
}

fn inverse(a: &[usize]) -> Result<Vec<usize>, RandomError> {
    let mut pos = vec![usize::MAX; a.len()];
    for (p, &l) in a.iter().enumerate() {
        if l >= a.len() || pos[l] != usize::MAX {
            return Err(RandomError::BadArrangement("not a bijection".into()));
        }
        pos[l] = p;
    }
    Ok(pos)
}

fn check_sides(g: &SimpleGraph, n: usize) -> Result<(), RandomError> {
    if g.n() != 2 * n || g.edges().iter().any(|&(u, v)| (u < n) == (v < n)) {
        return Err(RandomError::NotBipartite);
    }
    Ok(())
}

/// `|sigma(A_X) ∩ A_Y|` with `A = {0..n}` on both sides.
pub fn a_side_count(a: &[usize]) -> usize {
    let n = a.len() / 2;
    a[..n].iter().filter(|&&l| l < n).count()
}

/// `n/3 <= |sigma(A_X) ∩ A_Y| <= 2n/3`.
pub fn is_balanced(a: &[usize]) -> bool {
    let n = a.len() / 2;
    let c = a_side_count(a);
    3 * c >= n && 3 * c <= 2 * n
}

/// Friendly swaps avoiding the labels in `forbidden` that turn `a` into a
/// balanced arrangement. Both graphs use sides `0..n` and `n..2n`.
///
/// If too many `A_X` positions hold `A_Y` labels, the swaps come from a
/// maximum matching of the graph on `C = sigma(A_X) ∩ A_Y` and
/// `D = sigma(B_X) ∩ B_Y` whose edges are pairs adjacent in `y` with
/// preimages adjacent in `x`; each matched swap lowers the count by one.
/// The opposite case uses `sigma(A_X) ∩ B_Y` and `sigma(B_X) ∩ A_Y`.
pub fn balance_arrangement(
    x: &SimpleGraph,
    y: &SimpleGraph,
    a: &[usize],
    forbidden: (usize, usize),
) -> Result<SwapSequence, RandomError> {
    let n = a.len() / 2;
    if a.len() % 2 != 0 || x.n() != a.len() {
        return Err(RandomError::SizeMismatch(x.n(), a.len()));
    }
    check_sides(x, n)?;
    check_sides(y, n)?;
    let pos = inverse(a)?;
    let count = a_side_count(a);
    let (needed, c_side_a) = if 3 * count > 2 * n {
        (count - 2 * n / 3, true)
    } else if 3 * count < n {
        (n.div_ceil(3) - count, false)
    } else {
        return Ok(SwapSequence::default());
    };
    let in_a = |l: usize| l < n;
    let usable = |l: usize| l != forbidden.0 && l != forbidden.1;
    // C: labels on A_X positions lying in A_Y (or B_Y); D: labels on B_X
    // positions lying in B_Y (or A_Y).
    let c_set: Vec<usize> = a[..n].iter().copied().filter(|&l| in_a(l) == c_side_a && usable(l)).collect();
    let d_set: Vec<usize> = a[n..].iter().copied().filter(|&l| in_a(l) != c_side_a && usable(l)).collect();
    let adj: Vec<Vec<usize>> = c_set
        .iter()
        .map(|&c| {
            (0..d_set.len()).filter(|&j| y.has_edge(c, d_set[j]) && x.has_edge(pos[c], pos[d_set[j]])).collect()
        })
        .collect();
    let matching = max_matching(&adj, d_set.len());
    let pairs: Vec<(usize, usize)> =
        matching.iter().enumerate().filter_map(|(i, m)| m.map(|j| (c_set[i], d_set[j]))).collect();
    if pairs.len() < needed {
        return Err(RandomError::InsufficientMatching { nu: pairs.len(), needed });
    }
    Ok(SwapSequence { swaps: pairs.into_iter().take(needed).collect() })
}

// Augmenting-path bipartite matching; returns the partner of each left vertex.
fn max_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(l, adj, &mut seen, &mut match_right);
    }
    let mut match_left = vec![None; adj.len()];
    for (r, m) in match_right.iter().enumerate() {
        if let Some(l) = *m {
            match_left[l] = Some(r);
        }
    }
    match_left
}

fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if match_right[r].is_none_or(|l2| augment(l2, adj, seen, match_right)) {
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}
