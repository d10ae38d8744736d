use graph_core::SimpleGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::RandomError;

/// ChaCha8 seeded with `seed`, on stream `stream`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One uniform in `[0, 1)` per candidate pair, in the given order.
pub fn edge_uniforms(rng: &mut impl Rng, pairs: usize) -> Vec<f64> {
    (0..pairs).map(|_| rng.gen::<f64>()).collect()
}

fn check_p(p: f64) -> Result<(), RandomError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(RandomError::Probability(p))
    }
}

/// Pairs `(u, v)`, `u < v`, in lexicographic order.
fn gnp_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Cross pairs `(u, n + v)` in lexicographic order.
fn bipartite_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (0..n).map(move |v| (u, n + v)))
}

/// `G(n, p)` from uniforms listed in canonical pair order: a pair is an edge
/// iff its uniform is below `p`.
pub fn threshold_gnp(n: usize, uniforms: &[f64], p: f64) -> SimpleGraph {
    let edges: Vec<_> = gnp_pairs(n).zip(uniforms).filter(|(_, &u)| u < p).map(|(e, _)| e).collect();
    SimpleGraph::new(n, &edges).expect("pairs are valid")
}

/// Subgraph of `K_{n,n}` (sides `0..n`, `n..2n`) from uniforms in canonical
/// cross-pair order.
pub fn threshold_bipartite(n: usize, uniforms: &[f64], p: f64) -> SimpleGraph {
    let edges: Vec<_> = bipartite_pairs(n).zip(uniforms).filter(|(_, &u)| u < p).map(|(e, _)| e).collect();
    SimpleGraph::new(2 * n, &edges).expect("pairs are valid")
}

/// Erdős-Rényi graph: ChaCha8 seeded with `seed` (stream 0), one `f64` draw
/// per pair in lexicographic order.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<SimpleGraph, RandomError> {
    check_p(p)?;
    let u = edge_uniforms(&mut trial_rng(seed, 0), n * n.saturating_sub(1) / 2);
    Ok(threshold_gnp(n, &u, p))
}

/// Random subgraph of `K_{n,n}` with the same draw convention.
pub fn sample_bipartite(n: usize, p: f64, seed: u64) -> Result<SimpleGraph, RandomError> {
    check_p(p)?;
    let u = edge_uniforms(&mut trial_rng(seed, 0), n * n);
    Ok(threshold_bipartite(n, &u, p))
}
