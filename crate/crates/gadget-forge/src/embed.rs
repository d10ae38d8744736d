use std::collections::VecDeque;

use graph_core::SimpleGraph;
use serde::{Deserialize, Serialize};

use crate::GadgetError;

/// Maps `psi_g: V(g) -> V(x)` and `psi_h: V(h) -> V(y)` with
/// `psi_h = sigma ∘ psi_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embeddings {
    pub psi_g: Vec<usize>,
    pub psi_h: Vec<usize>,
}

struct Search<'a> {
    g: &'a SimpleGraph,
    h: &'a SimpleGraph,
    x: &'a SimpleGraph,
    y: &'a SimpleGraph,
    sigma: &'a [usize],
    order: Vec<usize>,
    psi: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn fits(&self, p: usize, img: usize) -> bool {
        if self.used[img] {
            return false;
        }
        let sp = self.sigma[img];
        self.order.iter().take_while(|&&q| self.psi[q] != usize::MAX).all(|&q| {
            let iq = self.psi[q];
            (!self.g.has_edge(p, q) || self.x.has_edge(img, iq))
                && (!self.h.has_edge(p, q) || self.y.has_edge(sp, self.sigma[iq]))
        })
    }

    fn extend(&mut self, depth: usize) -> Result<bool, GadgetError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let p = self.order[depth];
        if self.psi[p] != usize::MAX {
            // Pre-assigned (u and v).
            return self.extend(depth + 1);
        }
        // Candidates come from the x-neighborhood of an assigned g-neighbor.
        let anchor = self.g.neighbors(p).iter().copied().find(|&q| self.psi[q] != usize::MAX);
        let cands: Vec<usize> = match anchor {
            Some(q) => self.x.neighbors(self.psi[q]).to_vec(),
            None => (0..self.x.n()).collect(),
        };
        for img in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GadgetError::Budget(self.budget));
            }
            if self.fits(p, img) {
                self.psi[p] = img;
                self.used[img] = true;
                if self.extend(depth + 1)? {
                    return Ok(true);
                }
                self.psi[p] = usize::MAX;
                self.used[img] = false;
            }
        }
        Ok(false)
    }
}

/// Searches for injective adjacency-preserving maps of `g` into `x` and of
/// `h` into `y` that commute with the arrangement `sigma: V(x) -> V(y)` and
/// send `u` to `u0`, `v` to `v0`. `None` means the search space was
/// exhausted.
#[allow(clippy::too_many_arguments)]
pub fn find_respecting_embeddings(
    g: &SimpleGraph,
    h: &SimpleGraph,
    u: usize,
    v: usize,
    x: &SimpleGraph,
    y: &SimpleGraph,
    sigma: &[usize],
    u0: usize,
    v0: usize,
    budget: u64,
) -> Result<Option<Embeddings>, GadgetError> {
    let n = g.n();
    if h.n() != n || u >= n || v >= n || u == v {
        return Err(GadgetError::InvalidParams("g and h must share a vertex set containing u != v".into()));
    }
    let nx = x.n();
    if y.n() != nx || sigma.len() != nx || u0 >= nx || v0 >= nx || u0 == v0 {
        return Err(GadgetError::InvalidParams("x, y and sigma must have equal size; u0 != v0".into()));
    }
    let mut inv = vec![usize::MAX; nx];
    for (p, &l) in sigma.iter().enumerate() {
        if l >= nx || inv[l] != usize::MAX {
            return Err(GadgetError::InvalidParams("sigma is not a bijection".into()));
        }
        inv[l] = p;
    }
    if n > nx {
        return Ok(None);
    }

    // u and v first, then BFS order over the union of both graphs.
    let mut order = vec![u, v];
    let mut seen = vec![false; n];
    seen[u] = true;
    seen[v] = true;
    let mut queue = VecDeque::from([u, v]);
    loop {
        while let Some(a) = queue.pop_front() {
            for &b in g.neighbors(a).iter().chain(h.neighbors(a)) {
                if !seen[b] {
                    seen[b] = true;
                    order.push(b);
                    queue.push_back(b);
                }
            }
        }
        match (0..n).find(|&a| !seen[a]) {
            Some(a) => {
                seen[a] = true;
                order.push(a);
                queue.push_back(a);
            }
            None => break,
        }
    }

    let mut s = Search {
        g,
        h,
        x,
        y,
        sigma,
        order,
        psi: vec![usize::MAX; n],
        used: vec![false; nx],
        nodes: 0,
        budget,
    };
    let (iu, iv) = (inv[u0], inv[v0]);
    // u and v are placed before the rest; check their mutual constraints.
    if (g.has_edge(u, v) && !x.has_edge(iu, iv)) || (h.has_edge(u, v) && !y.has_edge(u0, v0)) {
        return Ok(None);
    }
    s.psi[u] = iu;
    s.psi[v] = iv;
    s.used[iu] = true;
    s.used[iv] = true;
    if !s.extend(2)? {
        return Ok(None);
    }
    let psi_h = s.psi.iter().map(|&p| sigma[p]).collect();
    Ok(Some(Embeddings { psi_g: s.psi, psi_h }))
}

/// Pushes a swap script on the positions of `g` through `psi_g`.
pub fn push_swaps(psi_g: &[usize], script: &[(usize, usize)]) -> Vec<(usize, usize)> {
    script.iter().map(|&(a, b)| (psi_g[a], psi_g[b])).collect()
}
