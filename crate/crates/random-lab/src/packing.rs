use graph_core::SimpleGraph;

use crate::RandomError;

pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// A bijection `sigma` (`sigma[u]` = vertex of `y`) with `sigma(u) sigma(v)`
/// a non-edge of `y` for every edge `uv` of `x`, or `None` when none exists.
///
/// Backtracking assigns the `x` vertex with the fewest remaining candidates
/// (ties broken by higher degree) and prunes candidates of its neighbors.
pub fn find_packing(x: &SimpleGraph, y: &SimpleGraph, node_budget: u64) -> Result<Option<Vec<usize>>, RandomError> {
    let n = x.n();
    if y.n() != n {
        return Err(RandomError::SizeMismatch(n, y.n()));
    }
    assert!(n <= 128, "packing search supports at most 128 vertices");
    if x.edge_count() + y.edge_count() > n * n.saturating_sub(1) / 2 {
        return Ok(None);
    }
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let non_adj: Vec<u128> = (0..n)
        .map(|v| {
            let adj = y.neighbors(v).iter().fold(0u128, |m, &w| m | 1 << w);
            full & !adj & !(1 << v)
        })
        .collect();
    let mut search = Search {
        x,
        non_adj,
        sigma: vec![usize::MAX; n],
        nodes: 0,
        budget: node_budget,
    };
    let domains = vec![full; n];
    if search.rec(domains, full)? {
        Ok(Some(search.sigma))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    x: &'a SimpleGraph,
    non_adj: Vec<u128>,
    sigma: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn rec(&mut self, domains: Vec<u128>, free: u128) -> Result<bool, RandomError> {
        let n = self.sigma.len();
        let mut pick = None;
        let mut best = (u32::MAX, 0usize);
        for u in 0..n {
            if self.sigma[u] != usize::MAX {
                continue;
            }
            let size = (domains[u] & free).count_ones();
            let key = (size, self.x.degree(u));
            if key.0 < best.0 || (key.0 == best.0 && key.1 > best.1) {
                best = key;
                pick = Some(u);
            }
        }
        let Some(u) = pick else { return Ok(true) };
        let mut cand = domains[u] & free;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(RandomError::NodeBudget(self.budget));
            }
            let free2 = free & !(1 << v);
            let mut next = domains.clone();
            let mut dead = false;
            for &w in self.x.neighbors(u) {
                if self.sigma[w] == usize::MAX {
                    next[w] &= self.non_adj[v];
                    if next[w] & free2 == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if dead {
                continue;
            }
            self.sigma[u] = v;
            if self.rec(next, free2)? {
                return Ok(true);
            }
            self.sigma[u] = usize::MAX;
        }
        Ok(false)
    }
}
