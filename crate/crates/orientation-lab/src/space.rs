use std::collections::HashMap;

use graph_core::{CliquePartition, MultiplicityGraph, SimpleGraph};
use serde::Serialize;

use crate::OrientError;

/// Largest host edge count representable by an [`Orientation`].
pub const MAX_HOST_EDGES: usize = 128;

/// An orientation of a host graph, relative to the host's sorted edge list:
/// bit `e` clear means edge `(u, v)` (with `u < v`) points `u -> v`, set means
/// `v -> u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation(pub u128);

/// A host graph (typically the complement of a lift) together with the
/// clique partition whose within-block permutations act on its orientations.
#[derive(Clone, Debug)]
pub struct AcycSpace {
    host: SimpleGraph,
    cliques: CliquePartition,
    // edge_index[u * n + v] = index of edge {u, v}, or usize::MAX.
    edge_index: Vec<usize>,
}

/// Serializable view: arcs in canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationArcs {
    pub arcs: Vec<[usize; 2]>,
}

impl AcycSpace {
    /// Blocks must be independent sets of `host` whose vertices share the same
    /// neighborhood, so that permuting inside a block is a host automorphism.
    pub fn new(host: SimpleGraph, cliques: CliquePartition) -> Result<Self, OrientError> {
        if host.edge_count() > MAX_HOST_EDGES {
            return Err(OrientError::HostTooLarge(host.edge_count()));
        }
        if cliques.len() != host.n() {
            return Err(OrientError::BadBlocks("partition size differs from host order".into()));
        }
        for block in cliques.blocks() {
            for (i, &a) in block.iter().enumerate() {
                for &b in &block[i + 1..] {
                    if host.has_edge(a, b) || host.neighbors(a) != host.neighbors(b) {
                        return Err(OrientError::BadBlocks(format!("vertices {a} and {b} are not twins")));
                    }
                }
            }
        }
        let n = host.n();
        let mut edge_index = vec![usize::MAX; n * n];
        for (e, &(u, v)) in host.edges().iter().enumerate() {
            edge_index[u * n + v] = e;
            edge_index[v * n + u] = e;
        }
        Ok(AcycSpace { host, cliques, edge_index })
    }

    /// Host with singleton blocks (no permutation action).
    pub fn plain(host: SimpleGraph) -> Result<Self, OrientError> {
        let n = host.n();
        AcycSpace::new(host, CliquePartition::singletons(n))
    }

    /// The complement of the lift of `x`, blocked by the lift cliques.
    pub fn for_lift(x: &MultiplicityGraph) -> Result<Self, OrientError> {
        let (lift, cliques) = x.lift();
        AcycSpace::new(lift.complement(), cliques)
    }

    pub fn host(&self) -> &SimpleGraph {
        &self.host
    }

    pub fn cliques(&self) -> &CliquePartition {
        &self.cliques
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    /// Whether the host edge `{u, v}` points `u -> v`. Panics on non-edges.
    #[inline]
    pub fn points(&self, o: Orientation, u: usize, v: usize) -> bool {
        let e = self.edge_index[u * self.n() + v];
        assert!(e != usize::MAX, "{u}-{v} is not a host edge");
        let reversed = o.0 >> e & 1 == 1;
        (u < v) != reversed
    }

    pub fn arcs(&self, o: Orientation) -> Vec<(usize, usize)> {
        self.host
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| if o.0 >> e & 1 == 1 { (v, u) } else { (u, v) })
            .collect()
    }

    pub fn to_arcs(&self, o: Orientation) -> OrientationArcs {
        OrientationArcs { arcs: self.arcs(o).into_iter().map(|(u, v)| [u, v]).collect() }
    }

    /// Orientation with the given arcs; every host edge must appear once.
    pub fn from_arcs(&self, arcs: &[(usize, usize)]) -> Result<Orientation, OrientError> {
        let mut mask = 0u128;
        let mut seen = vec![false; self.host.edge_count()];
        for &(u, v) in arcs {
            if u >= self.n() || v >= self.n() || self.edge_index[u * self.n() + v] == usize::MAX {
                return Err(OrientError::NotAnEdge(u, v));
            }
            let e = self.edge_index[u * self.n() + v];
            seen[e] = true;
            if u > v {
                mask |= 1 << e;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(OrientError::BadArrangement("not every host edge is oriented".into()));
        }
        let o = Orientation(mask);
        if !self.is_acyclic(o) {
            return Err(OrientError::Cyclic);
        }
        Ok(o)
    }

    /// Edge `uv` directed `u -> v` iff `u` comes first in `order`, where
    /// `order[p]` is the host vertex at position `p`.
    pub fn induced(&self, order: &[usize]) -> Result<Orientation, OrientError> {
        let n = self.n();
        if order.len() != n {
            return Err(OrientError::BadArrangement(format!("length {} != {n}", order.len())));
        }
        let mut pos = vec![usize::MAX; n];
        for (p, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(OrientError::BadArrangement("not a bijection".into()));
            }
            pos[v] = p;
        }
        let mut mask = 0u128;
        for (e, &(u, v)) in self.host.edges().iter().enumerate() {
            if pos[v] < pos[u] {
                mask |= 1 << e;
            }
        }
        Ok(Orientation(mask))
    }

    fn out_neighbors(&self, o: Orientation, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.host.neighbors(u).iter().copied().filter(move |&v| self.points(o, u, v))
    }

    pub fn is_acyclic(&self, o: Orientation) -> bool {
        // Kahn's algorithm.
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for (u, v) in self.arcs(o) {
            let _ = u;
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(u) = stack.pop() {
            done += 1;
            for v in self.out_neighbors(o, u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        done == n
    }

    pub fn is_source(&self, o: Orientation, v: usize) -> bool {
        self.host.neighbors(v).iter().all(|&w| self.points(o, v, w))
    }

    pub fn is_sink(&self, o: Orientation, v: usize) -> bool {
        self.host.neighbors(v).iter().all(|&w| self.points(o, w, v))
    }

    fn flip_mask(&self, v: usize) -> u128 {
        self.host.neighbors(v).iter().fold(0, |m, &w| m | 1 << self.edge_index[v * self.n() + w])
    }

    /// Reverses every edge at a source or sink.
    pub fn flip(&self, o: Orientation, v: usize) -> Result<Orientation, OrientError> {
        if v >= self.n() || !(self.is_source(o, v) || self.is_sink(o, v)) {
            return Err(OrientError::IllegalFlip(v));
        }
        Ok(Orientation(o.0 ^ self.flip_mask(v)))
    }

    /// Simultaneous flips at a source `u` and a non-adjacent sink `v != u`.
    pub fn double_flip(&self, o: Orientation, u: usize, v: usize) -> Result<Orientation, OrientError> {
        if u == v || u >= self.n() || v >= self.n() || self.host.has_edge(u, v) {
            return Err(OrientError::IllegalFlip(u));
        }
        if !self.is_source(o, u) || !self.is_sink(o, v) {
            return Err(OrientError::IllegalFlip(u));
        }
        Ok(Orientation(o.0 ^ self.flip_mask(u) ^ self.flip_mask(v)))
    }

    /// The orientation `rho(o)`: `u -> v` in `o` iff `rho(u) -> rho(v)` in the
    /// result. `rho` must preserve every block.
    pub fn permute(&self, o: Orientation, rho: &[usize]) -> Orientation {
        let mut mask = 0u128;
        for (u, v) in self.arcs(o) {
            let (a, b) = (rho[u], rho[v]);
            if a > b {
                mask |= 1 << self.edge_index[a * self.n() + b];
            }
        }
        Orientation(mask)
    }

    /// Transpositions of consecutive block members; they generate the group
    /// of within-block permutations.
    pub fn block_generators(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for block in self.cliques.blocks() {
            for w in block.windows(2) {
                let mut rho: Vec<usize> = (0..self.n()).collect();
                rho.swap(w[0], w[1]);
                out.push(rho);
            }
        }
        out
    }

    /// Every acyclic orientation, sorted by mask.
    pub fn enumerate_acyc(&self) -> Vec<Orientation> {
        let n = self.n();
        assert!(n <= 128);
        let edges = self.host.edges();
        let mut reach = vec![0u128; n]; // reach[v]: vertices reachable from v
        for (v, r) in reach.iter_mut().enumerate() {
            *r = 1 << v;
        }
        let mut out = Vec::new();
        self.acyc_rec(edges, 0, 0, &mut reach, &mut out);
        out.sort();
        out
    }

    fn acyc_rec(&self, edges: &[(usize, usize)], e: usize, mask: u128, reach: &mut Vec<u128>, out: &mut Vec<Orientation>) {
        if e == edges.len() {
            out.push(Orientation(mask));
            return;
        }
        let (u, v) = edges[e];
        for (from, to, bit) in [(u, v, 0u128), (v, u, 1u128)] {
            // Adding from -> to closes a cycle iff `to` already reaches `from`.
            if reach[to] >> from & 1 == 1 {
                continue;
            }
            let saved = reach.clone();
            let gain = reach[to];
            for w in 0..reach.len() {
                if reach[w] >> from & 1 == 1 {
                    reach[w] |= gain;
                }
            }
            self.acyc_rec(edges, e + 1, mask | bit << e, reach, out);
            *reach = saved;
        }
    }

    /// Every order (position -> vertex) inducing `o`, lexicographic.
    pub fn linear_extensions(&self, o: Orientation) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.arcs(o) {
            indeg[v] += 1;
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.ext_rec(o, &mut indeg, &mut used, &mut cur, &mut |ext| {
            out.push(ext.to_vec());
            true
        });
        out
    }

    // Depth-first topological orders; `visit` returning false aborts.
    fn ext_rec(
        &self,
        o: Orientation,
        indeg: &mut [usize],
        used: &mut [bool],
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.n();
        if cur.len() == n {
            return visit(cur);
        }
        for v in 0..n {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            used[v] = true;
            cur.push(v);
            let outs: Vec<usize> = self.out_neighbors(o, v).collect();
            for &w in &outs {
                indeg[w] -= 1;
            }
            let go_on = self.ext_rec(o, indeg, used, cur, visit);
            for &w in &outs {
                indeg[w] += 1;
            }
            cur.pop();
            used[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Least `p >= 1` such that rotating the arrangement by `p` positions
    /// keeps every position in the same block.
    pub fn period_of_arrangement(&self, order: &[usize]) -> usize {
        let blocks: Vec<usize> = order.iter().map(|&v| self.cliques.owner(v)).collect();
        block_sequence_period(&blocks)
    }

    /// Smallest period over all linear extensions of `o`.
    ///
    /// Candidate periods are the divisors `p` of the order, tried upward; for
    /// each, a pruned search looks for an extension whose block sequence
    /// repeats with period `p`. Divisors below `n / gcd(block sizes)` are
    /// skipped since each residue class must sit inside a single block.
    pub fn period_of_orientation(&self, o: Orientation) -> usize {
        let n = self.n();
        if n == 0 {
            return 1;
        }
        let g = self.cliques.blocks().iter().fold(0, |acc, b| num_integer::gcd(acc, b.len()));
        let p_min = n / g.max(1);
        for p in (1..=n).filter(|p| n % p == 0 && *p >= p_min) {
            if self.has_extension_with_period(o, p) {
                return p;
            }
        }
        unreachable!("the order itself is always a period")
    }

    fn has_extension_with_period(&self, o: Orientation, p: usize) -> bool {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for (_, v) in self.arcs(o) {
            indeg[v] += 1;
        }
        let mut used = vec![false; n];
        let mut cur = Vec::with_capacity(n);
        self.periodic_rec(o, p, &mut indeg, &mut used, &mut cur)
    }

    fn periodic_rec(&self, o: Orientation, p: usize, indeg: &mut [usize], used: &mut [bool], cur: &mut Vec<usize>) -> bool {
        let n = self.n();
        let j = cur.len();
        if j == n {
            return true;
        }
        let forced = (j >= p).then(|| self.cliques.owner(cur[j - p]));
        let mut tried_block = vec![false; self.cliques.block_count()];
        for v in 0..n {
            if used[v] || indeg[v] != 0 {
                continue;
            }
            let b = self.cliques.owner(v);
            if forced.is_some_and(|f| f != b) {
                continue;
            }
            // Available vertices of one block are interchangeable twins, so
            // trying one per block suffices.
            if tried_block[b] {
                continue;
            }
            tried_block[b] = true;
            used[v] = true;
            cur.push(v);
            let outs: Vec<usize> = self.out_neighbors(o, v).collect();
            for &w in &outs {
                indeg[w] -= 1;
            }
            let found = self.periodic_rec(o, p, indeg, used, cur);
            for &w in &outs {
                indeg[w] += 1;
            }
            cur.pop();
            used[v] = false;
            if found {
                return true;
            }
        }
        false
    }

    /// Restriction of `o` to the induced subgraph on `keep` (renumbered in
    /// the given order), with blocks restricted accordingly.
    pub fn restrict(&self, o: Orientation, keep: &[usize]) -> (AcycSpace, Orientation) {
        let sub_host = self.host.induced(keep);
        let sub = AcycSpace::new(sub_host, self.cliques.restrict(keep)).expect("restriction keeps twins");
        let mut mask = 0u128;
        for (e, &(a, b)) in sub.host.edges().iter().enumerate() {
            if !self.points(o, keep[a], keep[b]) {
                mask |= 1 << e;
            }
        }
        (sub, Orientation(mask))
    }

    /// Per-component periods and their gcd.
    pub fn period_profile(&self, o: Orientation) -> PeriodProfile {
        let mut periods = Vec::new();
        let mut sizes = Vec::new();
        for comp in self.host.components() {
            let (sub, so) = self.restrict(o, &comp);
            periods.push(sub.period_of_orientation(so));
            sizes.push(comp.len());
        }
        let delta = periods.iter().fold(0, |acc, &p| num_integer::gcd(acc, p));
        PeriodProfile { periods, component_sizes: sizes, delta }
    }

    /// Dense index of each orientation in a sorted list.
    pub(crate) fn index_map(list: &[Orientation]) -> HashMap<Orientation, usize> {
        list.iter().enumerate().map(|(i, &o)| (o, i)).collect()
    }
}

/// Least rotation under which a cyclic block sequence is unchanged.
pub fn block_sequence_period(blocks: &[usize]) -> usize {
    let q = blocks.len();
    (1..=q)
        .find(|&p| q % p == 0 && (0..q).all(|j| blocks[(j + p) % q] == blocks[j]))
        .unwrap_or(1)
}

/// Periods of the restrictions of an orientation to the host components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodProfile {
    pub periods: Vec<usize>,
    pub component_sizes: Vec<usize>,
    pub delta: usize,
}
