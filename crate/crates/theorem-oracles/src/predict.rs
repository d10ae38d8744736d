use fsg_core::{build_components, FsInstance, FsmmInstance};
use graph_core::{contingency_count, find_k_bridges, MultiplicityGraph, SimpleGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::family::{Instance, Verdict};
use crate::OracleError;

/// Connectivity of `FSm(S_n, x)` for a connected multiplicity graph `x`.
pub fn predict_star_vs_multgraph(x: &MultiplicityGraph) -> Result<bool, OracleError> {
    let g = x.base();
    if !g.is_connected() {
        return Err(OracleError::Precondition("x must be connected".into()));
    }
    let c = x.mult();
    // One or two base vertices: every swap across the base edge is allowed.
    if g.n() <= 2 || g.is_wilsonian() {
        return Ok(true);
    }
    let art = g.articulation_analysis();
    if art.cut_vertices.is_empty() {
        Ok(c.iter().any(|&m| m >= 2))
    } else {
        Ok(art.cut_vertices.iter().all(|&v| c[v] >= 2))
    }
}

// Checks that `star` is S_m (center 0) with m > 2, center multiplicity >= 2
// and total |V(x)|; returns the center multiplicity.
fn star_preconditions(x: &SimpleGraph, star: &MultiplicityGraph) -> Result<usize, OracleError> {
    let m = star.n();
    if m <= 2 || !star.base().is_isomorphic(&SimpleGraph::star(m)) || star.base().degree(0) != m - 1 {
        return Err(OracleError::Precondition("star must be S_m with m > 2 and center 0".into()));
    }
    let k = star.mult()[0];
    if k < 2 {
        return Err(OracleError::Precondition("center multiplicity must be at least 2".into()));
    }
    if star.total() != x.n() {
        return Err(OracleError::Precondition(format!("total {} != |V(x)| = {}", star.total(), x.n())));
    }
    if !x.is_connected() {
        return Err(OracleError::Precondition("x must be connected".into()));
    }
    Ok(k)
}

/// Connectivity of `FSm(x, S_m)`: cycles follow the cyclic-order rule,
/// other graphs are connected iff they have no k-bridge.
pub fn predict_multgraph_vs_star(x: &SimpleGraph, star: &MultiplicityGraph) -> Result<bool, OracleError> {
    let k = star_preconditions(x, star)?;
    if x.is_cycle_graph() {
        return Ok(cyclic_order_count(&star.mult()[1..]).is_one());
    }
    Ok(find_k_bridges(x, k).is_empty())
}

/// `(c_1 + ... + c_r - 1)! / (c_1! ... c_r!)` as an exact rational.
pub fn cyclic_order_count(leaf_mults: &[usize]) -> BigRational {
    let fact = |n: usize| -> BigInt { (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i)) };
    let total: usize = leaf_mults.iter().sum();
    let den = leaf_mults.iter().fold(BigInt::one(), |a, &c| a * fact(c));
    BigRational::new(fact(total.saturating_sub(1)), den)
}

/// Oracle connectivity of `FSm(x, S_m)` for `x` on exactly `k + 2` vertices.
pub fn small_support_lemma(x: &SimpleGraph, star: &MultiplicityGraph, budget: u64) -> Result<bool, OracleError> {
    let k = star_preconditions(x, star)?;
    if x.n() != k + 2 {
        return Err(OracleError::Precondition(format!("x has {} vertices, expected {}", x.n(), k + 2)));
    }
    let inst = FsInstance::new(x.clone(), star.clone())?;
    Ok(build_components(&inst, budget)?.is_connected())
}

/// Compares "no k-bridge whose vertices all have multiplicity 1" with the
/// connectivity of `FSmm(x, star)`. The verdict is informational.
pub fn conjecture62_probe(x: &MultiplicityGraph, star: &MultiplicityGraph, budget: u64) -> Result<Verdict, OracleError> {
    if x.total() != star.total() {
        return Err(OracleError::Precondition("totals differ".into()));
    }
    let k = star.mult()[0];
    let predicted = !find_k_bridges(x.base(), k).iter().any(|b| b.iter().all(|&v| x.mult()[v] == 1));
    let inst = FsmmInstance::new(x.clone(), star.clone())?;
    let oracle = build_components(&inst, budget)?.is_connected();
    Ok(Verdict::new("conj62", Instance::pair(x, star), predicted.into(), oracle.into(), false))
}

/// Lower bound on the component count of `FSm(y, x)` from a multiplicity-1
/// cut vertex `x0` of `x` and a cut vertex `y0` of `y`: the number of
/// nonnegative matrices whose row sums are the total multiplicities of the
/// components of `x - x0` and whose column sums are the orders of the
/// components of `y - y0`.
pub fn cut_vertex_bound(x: &MultiplicityGraph, x0: usize, y: &SimpleGraph, y0: usize) -> Result<u128, OracleError> {
    if x.n() < 3 || !x.base().is_connected() || x.total() != y.n() {
        return Err(OracleError::Precondition("x connected on at least 3 vertices with total |V(y)|".into()));
    }
    if x.mult()[x0] != 1 {
        return Err(OracleError::Precondition(format!("x0 = {x0} has multiplicity {}", x.mult()[x0])));
    }
    if !x.base().articulation_analysis().cut_vertices.contains(&x0)
        || !y.articulation_analysis().cut_vertices.contains(&y0)
    {
        return Err(OracleError::Precondition("x0 and y0 must be cut vertices".into()));
    }
    let (xr, xkeep) = x.base().remove_vertices(&[x0]);
    let (yr, _) = y.remove_vertices(&[y0]);
    let (x_parts, y_parts) = (xr.components(), yr.components());
    let rows: Vec<usize> = x_parts.iter().map(|c| c.iter().map(|&v| x.mult()[xkeep[v]]).sum()).collect();
    let cols: Vec<usize> = y_parts.iter().map(Vec::len).collect();
    Ok(contingency_count(&rows, &cols)?)
}
