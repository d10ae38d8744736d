use crate::{GraphError, SimpleGraph};

/// A simple graph with a positive multiplicity on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicityGraph {
    base: SimpleGraph,
    mult: Vec<usize>,
}

impl MultiplicityGraph {
    pub fn new(base: SimpleGraph, mult: Vec<usize>) -> Result<Self, GraphError> {
        if mult.len() != base.n() {
            return Err(GraphError::MultLength { expected: base.n(), got: mult.len() });
        }
        if let Some(v) = mult.iter().position(|&c| c == 0) {
            return Err(GraphError::ZeroMultiplicity(v));
        }
        Ok(MultiplicityGraph { base, mult })
    }

    /// All multiplicities 1.
    pub fn unit(base: SimpleGraph) -> Self {
        let mult = vec![1; base.n()];
        MultiplicityGraph { base, mult }
    }

    /// Star `S_m` (center 0, leaves `1..m`) with the given center and leaf
    /// multiplicities.
    pub fn star(center: usize, leaves: &[usize]) -> Result<Self, GraphError> {
        let mut mult = vec![center];
        mult.extend_from_slice(leaves);
        MultiplicityGraph::new(SimpleGraph::star(leaves.len() + 1), mult)
    }

    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn total(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn all_unit(&self) -> bool {
        self.mult.iter().all(|&c| c == 1)
    }

    /// Blow-up: each vertex becomes a clique of its multiplicity, with
    /// complete joins along base edges. Blocks are numbered consecutively in
    /// base-vertex order.
    pub fn lift(&self) -> (SimpleGraph, CliquePartition) {
        let cliques = CliquePartition::from_mult(&self.mult);
        let total = self.total();
        let mut edges = Vec::new();
        for a in 0..total {
            for b in a + 1..total {
                let (va, vb) = (cliques.owner(a), cliques.owner(b));
                if va == vb || self.base.has_edge(va, vb) {
                    edges.push((a, b));
                }
            }
        }
        (SimpleGraph::new(total, &edges).expect("lift"), cliques)
    }
}

/// The partition of a lift's vertex set into the cliques `S_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliquePartition {
    blocks: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl CliquePartition {
    pub fn from_mult(mult: &[usize]) -> Self {
        let mut blocks = Vec::with_capacity(mult.len());
        let mut owner = Vec::new();
        let mut next = 0;
        for (v, &c) in mult.iter().enumerate() {
            blocks.push((next..next + c).collect());
            owner.extend(std::iter::repeat(v).take(c));
            next += c;
        }
        CliquePartition { blocks, owner }
    }

    /// Singleton blocks on `n` vertices.
    pub fn singletons(n: usize) -> Self {
        CliquePartition::from_mult(&vec![1; n])
    }

    /// Arbitrary block assignment; `owner[x]` is the block of vertex `x`.
    /// Block ids must be dense `0..b`.
    pub fn from_owner(owner: Vec<usize>) -> Self {
        let count = owner.iter().map(|&b| b + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); count];
        for (x, &b) in owner.iter().enumerate() {
            blocks[b].push(x);
        }
        CliquePartition { blocks, owner }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Number of lift vertices.
    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    /// The projection: base vertex owning lift vertex `x`.
    #[inline]
    pub fn owner(&self, x: usize) -> usize {
        self.owner[x]
    }

    pub fn owners(&self) -> &[usize] {
        &self.owner
    }

    /// Restriction to a vertex subset, renumbering vertices by position in
    /// `keep` and dropping empty blocks (remaining blocks keep their order).
    pub fn restrict(&self, keep: &[usize]) -> CliquePartition {
        let mut remap = vec![usize::MAX; self.blocks.len()];
        let mut next = 0;
        let mut owner = Vec::with_capacity(keep.len());
        let mut present: Vec<usize> = keep.iter().map(|&x| self.owner[x]).collect();
        present.sort_unstable();
        present.dedup();
        for b in present {
            remap[b] = next;
            next += 1;
        }
        for &x in keep {
            owner.push(remap[self.owner[x]]);
        }
        CliquePartition::from_owner(owner)
    }
}
