use graph_core::{CliquePartition, MultiplicityGraph, SimpleGraph};

use crate::relations::Relation;
use crate::space::AcycSpace;
use crate::OrientError;

/// Lift of an `FSm` arrangement (`a[p]` = label): the `i`-th occurrence of
/// label `v` becomes the `i`-th vertex of block `v`.
pub fn lift_order(cliques: &CliquePartition, a: &[usize]) -> Result<Vec<usize>, OrientError> {
    let mut used = vec![0usize; cliques.block_count()];
    let mut out = Vec::with_capacity(a.len());
    for &l in a {
        let block = cliques
            .blocks()
            .get(l)
            .ok_or_else(|| OrientError::BadArrangement(format!("label {l} out of range")))?;
        let v = *block
            .get(used[l])
            .ok_or_else(|| OrientError::BadArrangement(format!("label {l} used too often")))?;
        used[l] += 1;
        out.push(v);
    }
    if out.len() != cliques.len() {
        return Err(OrientError::BadArrangement("wrong length".into()));
    }
    Ok(out)
}

/// Components of `FSm(P_n, x)`: permutation classes of acyclic orientations
/// of the lift complement.
pub fn predict_path_components(x: &MultiplicityGraph) -> Result<usize, OrientError> {
    Ok(AcycSpace::for_lift(x)?.partition_by(Relation::Permutation).class_count())
}

/// Components of `FSm(Cycle_n, x)`: sum over flip-permutation classes of the
/// gcd of the component periods.
pub fn predict_cycle_components(x: &MultiplicityGraph) -> Result<usize, OrientError> {
    let space = AcycSpace::for_lift(x)?;
    let classes = space.partition_by(Relation::FlipPermutation);
    Ok(classes.representatives().into_iter().map(|o| space.period_profile(o).delta).sum())
}

/// Sum over flip classes of the gcd of the component sizes of `complement`,
/// the all-unit count for `FS(Cycle_n, X)` with `complement` the complement of `X`.
pub fn unit_cycle_components(complement: &SimpleGraph) -> Result<usize, OrientError> {
    let space = AcycSpace::plain(complement.clone())?;
    let nu = complement.components().iter().fold(0, |g, c| num_integer::gcd(g, c.len()));
    Ok(space.partition_by(Relation::Flip).class_count() * nu.max(1))
}

/// Whether the lift complement is a forest whose trees have coprime sizes.
pub fn coprime_forest_connected(x: &MultiplicityGraph) -> bool {
    let (lift, _) = x.lift();
    let host = lift.complement();
    let comps = host.components();
    let is_forest = host.edge_count() + comps.len() == host.n();
    is_forest && comps.iter().fold(0, |g, c| num_integer::gcd(g, c.len())) == 1
}
