use std::collections::{HashMap, VecDeque};

use fsg_core::{positions_exchangeable, FsInstance};
use graph_core::SimpleGraph;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::{GadgetError, GadgetPair};

/// Result of the exchangeability BFS: the state-space size `(m+2)!` and the
/// answer when that size fits the budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeOutcome {
    pub state_count: String,
    pub answer: Option<bool>,
}

/// Whether `u` and `v` are `(G, H)`-exchangeable from the identity, decided
/// by BFS in `FS(G, H)` when `(m+2)! <= budget`.
pub fn check_gadget_exchangeability(pair: &GadgetPair, budget: u64) -> ExchangeOutcome {
    let n = pair.n();
    let size: BigUint = (1..=n as u64).map(BigUint::from).product();
    let state_count = size.to_string();
    if size > BigUint::from(budget) {
        return ExchangeOutcome { state_count, answer: None };
    }
    let answer = FsInstance::bijective(pair.g.clone(), pair.h.clone())
        .and_then(|inst| {
            let id: Vec<usize> = (0..n).collect();
            positions_exchangeable(&inst, &id, pair.u, pair.v, budget)
        })
        .ok();
    ExchangeOutcome { state_count, answer }
}

/// Shortest sequence of `(g, h)`-friendly swaps (as position pairs) taking
/// `start` to `start` with the labels at positions `p` and `q` exchanged.
pub fn swap_script(
    g: &SimpleGraph,
    h: &SimpleGraph,
    start: &[usize],
    p: usize,
    q: usize,
    budget: u64,
) -> Result<Option<Vec<(usize, usize)>>, GadgetError> {
    let mut target = start.to_vec();
    target.swap(p, q);
    let mut parent: HashMap<Vec<usize>, (Vec<usize>, (usize, usize))> = HashMap::new();
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut seen = std::collections::HashSet::from([start.to_vec()]);
    while let Some(a) = queue.pop_front() {
        if a == target {
            let mut script = Vec::new();
            let mut cur = a;
            while let Some((prev, sw)) = parent.get(&cur) {
                script.push(*sw);
                cur = prev.clone();
            }
            script.reverse();
            return Ok(Some(script));
        }
        for &(i, j) in g.edges() {
            if h.has_edge(a[i], a[j]) {
                let mut b = a.clone();
                b.swap(i, j);
                if seen.insert(b.clone()) {
                    if seen.len() as u64 > budget {
                        return Err(GadgetError::Budget(budget));
                    }
                    parent.insert(b.clone(), (a.clone(), (i, j)));
                    queue.push_back(b);
                }
            }
        }
    }
    Ok(None)
}
