use serde::{Deserialize, Serialize};

use crate::{GraphError, MultiplicityGraph, SimpleGraph};

/// JSON form of a graph: `{"n": 3, "edges": [[0,1],[1,2]], "mult": [1,2,1]}`.
/// A missing `mult` means every multiplicity is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<usize>>,
}

impl GraphSpec {
    pub fn to_simple(&self) -> Result<SimpleGraph, GraphError> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        SimpleGraph::new(self.n, &edges)
    }

    pub fn to_multiplicity(&self) -> Result<MultiplicityGraph, GraphError> {
        let base = self.to_simple()?;
        match &self.mult {
            Some(m) => MultiplicityGraph::new(base, m.clone()),
            None => Ok(MultiplicityGraph::unit(base)),
        }
    }
}

impl From<&SimpleGraph> for GraphSpec {
    fn from(g: &SimpleGraph) -> Self {
        GraphSpec { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(), mult: None }
    }
}

impl From<&MultiplicityGraph> for GraphSpec {
    fn from(m: &MultiplicityGraph) -> Self {
        let mut spec = GraphSpec::from(m.base());
        spec.mult = Some(m.mult().to_vec());
        spec
    }
}
