use std::collections::VecDeque;
use std::mem;

use serde::{Deserialize, Serialize};

use crate::{FsError, FsGraph};

/// Default cap on the number of arrangements materialized.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind { parent: (0..len as u32).collect(), size: vec![1; len] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut x = x as u32;
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x as usize
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    /// Dense labels, numbered in order of first appearance by index.
    pub fn labels(&mut self) -> (usize, Vec<u32>) {
        let n = self.parent.len();
        let mut root_id = vec![u32::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut next = 0u32;
        for x in 0..n {
            let r = self.find(x);
            if root_id[r] == u32::MAX {
                root_id[r] = next;
                next += 1;
            }
            out.push(root_id[r]);
        }
        (next as usize, out)
    }
}

/// Partition of an FS-type graph into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentsReport {
    pub component_count: usize,
    /// Component of each arrangement, indexed by canonical rank. Ids are
    /// assigned in order of each component's lowest-ranked arrangement.
    pub component_id: Vec<u32>,
    pub component_sizes: Vec<usize>,
    pub vertex_count: u64,
    pub edge_count: u64,
}

/// Serialized summary: `{"vertices": N, "edges": M, "components": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsSummary {
    pub vertices: u64,
    pub edges: u64,
    pub components: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component_id: Option<Vec<u32>>,
}

impl ComponentsReport {
    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }

    pub fn has_singleton(&self) -> bool {
        self.component_sizes.contains(&1)
    }

    pub fn summary(&self, with_ids: bool) -> ComponentsSummary {
        ComponentsSummary {
            vertices: self.vertex_count,
            edges: self.edge_count,
            components: self.component_sizes.clone(),
            component_id: with_ids.then(|| self.component_id.clone()),
        }
    }
}

pub fn check_budget(g: &dyn FsGraph, budget: u64) -> Result<usize, FsError> {
    let count = g.vertex_count();
    if count > budget as u128 {
        return Err(FsError::BudgetExceeded { states: count, budget });
    }
    Ok(count as usize)
}

/// Exact component partition by union-find over the whole arrangement space.
pub fn build_components(g: &dyn FsGraph, budget: u64) -> Result<ComponentsReport, FsError> {
    let count = check_budget(g, budget)?;
    let mut uf = UnionFind::new(count);
    let mut half_edges = 0u64;
    g.for_each_arrangement(&mut |i, a| {
        g.for_each_neighbor(a, &mut |b| {
            half_edges += 1;
            let j = g.index_of(b);
            if j > i {
                uf.union(i, j);
            }
        });
    });
    let (component_count, component_id) = uf.labels();
    let mut component_sizes = vec![0usize; component_count];
    for &c in &component_id {
        component_sizes[c as usize] += 1;
    }
    Ok(ComponentsReport {
        component_count,
        component_id,
        component_sizes,
        vertex_count: count as u64,
        edge_count: half_edges / 2,
    })
}

/// Indices of the component containing `start`, found by BFS; errors once
/// more than `budget` arrangements have been visited.
pub fn component_of(g: &dyn FsGraph, start: &[usize], budget: u64) -> Result<Vec<Vec<usize>>, FsError> {
    let mut found = None;
    bfs_until(g, start, budget, &mut |_| false, &mut found).map(|(seen, _)| seen)
}

/// BFS from `start` stopping early when `stop` returns true; returns the
/// visited arrangements and whether the search stopped early.
pub(crate) fn bfs_until(
    g: &dyn FsGraph,
    start: &[usize],
    budget: u64,
    stop: &mut dyn FnMut(&[usize]) -> bool,
    hit: &mut Option<Vec<usize>>,
) -> Result<(Vec<Vec<usize>>, bool), FsError> {
    g.validate(start)?;
    let mut seen = std::collections::HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    order.push(start.to_vec());
    queue.push_back(start.to_vec());
    if stop(start) {
        *hit = Some(start.to_vec());
        return Ok((order, true));
    }
    while let Some(a) = queue.pop_front() {
        let mut next = Vec::new();
        g.for_each_neighbor(&a, &mut |b| next.push(b.to_vec()));
        for b in next {
            if seen.contains(&b) {
                continue;
            }
            if seen.len() as u64 >= budget {
                return Err(FsError::BudgetExceeded { states: seen.len() as u128 + 1, budget });
            }
            seen.insert(b.clone());
            order.push(b.clone());
            if stop(&b) {
                *hit = Some(b);
                return Ok((order, true));
            }
            queue.push_back(b);
        }
    }
    Ok((order, false))
}
