use std::collections::HashMap;

use crate::GraphError;

/// Number of nonnegative integer matrices with the given row and column sums.
///
/// Dynamic programming over columns; the state is the vector of residual row
/// sums.
pub fn contingency_count(rows: &[usize], cols: &[usize]) -> Result<u128, GraphError> {
    let (rs, cs): (usize, usize) = (rows.iter().sum(), cols.iter().sum());
    if rs != cs {
        return Err(GraphError::MarginMismatch { rows: rs, cols: cs });
    }
    let mut states: HashMap<Vec<usize>, u128> = HashMap::from([(rows.to_vec(), 1)]);
    for &c in cols {
        let mut next: HashMap<Vec<usize>, u128> = HashMap::new();
        for (residual, ways) in states {
            let mut cur = residual.clone();
            distribute(&residual, c, 0, &mut cur, &mut |r| {
                *next.entry(r.to_vec()).or_insert(0) += ways;
            });
        }
        states = next;
    }
    Ok(states.get(&vec![0; rows.len()]).copied().unwrap_or(0))
}

// Every way of taking `left` units from the rows, row i giving at most
// residual[i].
fn distribute(residual: &[usize], left: usize, i: usize, cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if i == residual.len() {
        if left == 0 {
            emit(cur);
        }
        return;
    }
    let cap: usize = residual[i..].iter().sum();
    if cap < left {
        return;
    }
    for take in 0..=left.min(residual[i]) {
        cur[i] = residual[i] - take;
        distribute(residual, left - take, i + 1, cur, emit);
    }
    cur[i] = residual[i];
}
