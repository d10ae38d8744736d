use std::collections::VecDeque;
use std::fmt;

use crate::GraphError;

/// Undirected loop-free graph on vertices `0..n`.
///
/// Edges are stored once, as `(u, v)` with `u < v`, in sorted order. An
/// adjacency matrix is kept alongside the lists since most graphs here are tiny
/// and edge queries dominate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl SimpleGraph {
    /// Builds a graph, normalizing edge order and dropping duplicates.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(SimpleGraph { n, edges: norm, adj, matrix })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph::new(n, &[]).expect("edgeless graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::new(n, &edges).expect("path")
    }

    /// Cycle on `n` vertices; for `n < 3` this degenerates to the path.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return SimpleGraph::path(n);
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, &edges).expect("cycle")
    }

    /// Star with `n` vertices in total: center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        SimpleGraph::new(n, &edges).expect("star")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, &edges).expect("complete")
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(a + b, &edges).expect("complete bipartite")
    }

    /// The exceptional graph: hexagon `0..6` plus center 6 joined to 0 and 3.
    pub fn theta0() -> Self {
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.push((6, 0));
        edges.push((6, 3));
        SimpleGraph::new(7, &edges).expect("theta0")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Same vertex set, exactly the non-edges as edges.
    pub fn complement(&self) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        SimpleGraph::new(self.n, &edges).expect("complement")
    }

    /// Adds edges, returning a new graph.
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<SimpleGraph, GraphError> {
        let mut all = self.edges.clone();
        all.extend_from_slice(extra);
        SimpleGraph::new(self.n, &all)
    }

    /// Removes edges (in either orientation), returning a new graph.
    pub fn without_edges(&self, drop: &[(usize, usize)]) -> SimpleGraph {
        let kept: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| !drop.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v)))
            .collect();
        SimpleGraph::new(self.n, &kept).expect("subgraph")
    }

    /// Subgraph induced on `keep` (taken in the given order); vertex `i` of
    /// the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                edges.push((index[u], index[v]));
            }
        }
        SimpleGraph::new(keep.len(), &edges).expect("induced subgraph")
    }

    /// Deletes the given vertices; returns the remaining graph and the
    /// original label of each surviving vertex.
    pub fn remove_vertices(&self, removed: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| !removed.contains(v)).collect();
        (self.induced(&keep), keep)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        SimpleGraph::new(self.n, &edges).expect("relabeling")
    }

    /// Component index per vertex, numbered by smallest member.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (count, label) = self.component_labels();
        let mut out = vec![Vec::new(); count];
        for v in 0..self.n {
            out[label[v]].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_labels().0 == 1
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Two-coloring with the lowest vertex of each component on side A, or
    /// `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| color[v] == 0).collect();
        let b = (0..self.n).filter(|&v| color[v] == 1).collect();
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Cut vertices via DFS low-link, plus the biconnectivity flag
    /// (connected, no cut vertex, and at least three vertices).
    pub fn articulation_analysis(&self) -> Articulation {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS: (vertex, parent, next neighbor index).
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if top.2 < self.adj[v].len() {
                    let w = self.adj[v][top.2];
                    top.2 += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
        let biconnected = n >= 3 && self.is_connected() && cut_vertices.is_empty();
        Articulation { cut_vertices, biconnected }
    }

    pub fn is_biconnected(&self) -> bool {
        self.articulation_analysis().biconnected
    }

    /// Connected, 2-regular, at least three vertices.
    pub fn is_cycle_graph(&self) -> bool {
        self.n >= 3 && self.is_connected() && (0..self.n).all(|v| self.degree(v) == 2)
    }

    pub fn is_isomorphic(&self, other: &SimpleGraph) -> bool {
        if self.n != other.n
            || self.edge_count() != other.edge_count()
            || self.degree_sequence() != other.degree_sequence()
        {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut used = vec![false; self.n];
        iso_extend(self, other, 0, &mut perm, &mut used)
    }

    /// Isomorphic to the hexagon-with-center graph.
    pub fn is_theta0(&self) -> bool {
        if self.n != 7 || self.edge_count() != 8 {
            return false;
        }
        if self.degree_sequence() != [3, 3, 2, 2, 2, 2, 2] {
            return false;
        }
        self.is_isomorphic(&SimpleGraph::theta0())
    }

    pub fn is_wilsonian(&self) -> bool {
        self.n >= 3
            && self.is_biconnected()
            && !self.is_bipartite()
            && !(self.is_cycle_graph() && self.n >= 4)
            && !self.is_theta0()
    }
}

/// Output of [`SimpleGraph::articulation_analysis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Articulation {
    pub cut_vertices: Vec<usize>,
    pub biconnected: bool,
}

// Backtracking isomorphism: perm[v] is the image in `b` of vertex v of `a`.
fn iso_extend(a: &SimpleGraph, b: &SimpleGraph, v: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
    if v == a.n {
        return true;
    }
    for w in 0..b.n {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let ok = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(perm[u], w));
        if !ok {
            continue;
        }
        perm[v] = w;
        used[w] = true;
        if iso_extend(a, b, v + 1, perm, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
