use serde::Serialize;

use crate::space::{AcycSpace, Orientation};

/// Equivalence relations on acyclic orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    /// Permutation within blocks.
    Permutation,
    /// Closure of single source/sink flips.
    Flip,
    /// Closure of double flips.
    DoubleFlip,
    /// Closure of flips and permutations.
    FlipPermutation,
    /// Closure of double flips and permutations.
    DoubleFlipPermutation,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::Permutation,
        Relation::Flip,
        Relation::DoubleFlip,
        Relation::FlipPermutation,
        Relation::DoubleFlipPermutation,
    ];

    fn uses_flips(self) -> bool {
        matches!(self, Relation::Flip | Relation::FlipPermutation)
    }

    fn uses_double_flips(self) -> bool {
        matches!(self, Relation::DoubleFlip | Relation::DoubleFlipPermutation)
    }

    fn uses_permutations(self) -> bool {
        matches!(self, Relation::Permutation | Relation::FlipPermutation | Relation::DoubleFlipPermutation)
    }
}

/// Partition of all acyclic orientations into classes.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub relation: Relation,
    /// Every acyclic orientation, sorted.
    pub orientations: Vec<Orientation>,
    /// Class id per orientation; ids follow the smallest member.
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub relation: Relation,
    pub orientations: usize,
    pub class_sizes: Vec<usize>,
}

impl ClassPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_orientation(&self, o: Orientation) -> Option<usize> {
        self.orientations.binary_search(&o).ok().map(|i| self.class_of[i])
    }

    /// One orientation per class (the smallest).
    pub fn representatives(&self) -> Vec<Orientation> {
        self.classes.iter().map(|c| self.orientations[c[0]]).collect()
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            relation: self.relation,
            orientations: self.orientations.len(),
            class_sizes: self.classes.iter().map(Vec::len).collect(),
        }
    }

    /// Whether every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &ClassPartition) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&i| coarser.class_of[i] == coarser.class_of[c[0]]))
    }
}

impl AcycSpace {
    /// Orientations one generating move away from `o` under `rel`.
    pub fn moves(&self, o: Orientation, rel: Relation) -> Vec<Orientation> {
        let n = self.n();
        let mut out = Vec::new();
        if rel.uses_flips() {
            for v in 0..n {
                if let Ok(f) = self.flip(o, v) {
                    out.push(f);
                }
            }
        }
        if rel.uses_double_flips() {
            let sources: Vec<usize> = (0..n).filter(|&v| self.is_source(o, v)).collect();
            let sinks: Vec<usize> = (0..n).filter(|&v| self.is_sink(o, v)).collect();
            for &u in &sources {
                for &v in &sinks {
                    if let Ok(f) = self.double_flip(o, u, v) {
                        out.push(f);
                    }
                }
            }
        }
        if rel.uses_permutations() {
            for rho in self.block_generators() {
                out.push(self.permute(o, &rho));
            }
        }
        out
    }

    /// Classes of the equivalence closure of `rel`.
    pub fn partition_by(&self, rel: Relation) -> ClassPartition {
        let orientations = self.enumerate_acyc();
        let index = AcycSpace::index_map(&orientations);
        let mut class_of = vec![usize::MAX; orientations.len()];
        let mut classes = Vec::new();
        for s in 0..orientations.len() {
            if class_of[s] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[s] = id;
            let mut members = vec![s];
            let mut k = 0;
            while k < members.len() {
                let o = orientations[members[k]];
                k += 1;
                for f in self.moves(o, rel) {
                    let j = index[&f];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ClassPartition { relation: rel, orientations, class_of, classes }
    }
}
