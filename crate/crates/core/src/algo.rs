//! Exact solvers driven by enumeration of (nested) integer partitions, plus
//! the P3 branching that reduces editing on general graphs to cluster graphs.

use std::collections::HashSet;

use thiserror::Error;

use crate::cccd::solve_bcd;
use crate::graph::{apply_edits, sizes_balanced, EditSet, Graph, Instance, Variant};
use crate::partition::{
    completion_wrt, deletion_wrt, for_each_inner, is_valid_for_sizes, partition_table, partitions,
    replace_sizes,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("this solver needs a cluster graph")]
    NotCluster,
}

pub type Verdict = Result<Option<EditSet>, SolveError>;

pub(crate) fn pair_budget(g: &Graph, k: usize) -> usize {
    let n = g.n();
    k.min(n * n.saturating_sub(1) / 2)
}

/// Completion solver for cluster graphs.
pub fn algo_bcc(inst: &Instance) -> Verdict {
    let g = &inst.graph;
    let comps = g.components();
    if !comps.all_cliques(g) {
        return Err(SolveError::NotCluster);
    }
    let cs = comps.sizes();
    if sizes_balanced(&cs, inst.eta) {
        return Ok(Some(EditSet::new()));
    }
    if inst.k == 0 {
        return Ok(None);
    }
    let k = pair_budget(g, inst.k);
    let lmax = (2 * k).min(g.n());
    let table = partition_table(lmax);
    for l in 2..=lmax {
        for outer in partitions(l) {
            let hit = for_each_inner(&outer, &table, |np| {
                let flat = np.flattened();
                if !is_valid_for_sizes(&flat, &cs) || np.cost() > k {
                    return None;
                }
                if !sizes_balanced(&replace_sizes(&cs, &flat, &np.outer), inst.eta) {
                    return None;
                }
                Some(completion_wrt(g, np).expect("valid nested partition").1)
            });
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

/// Editing solver for cluster graphs: pure completion, pure deletion, or a
/// split phase followed by a merge phase.
pub fn algo_bce_c(inst: &Instance) -> Verdict {
    let g = &inst.graph;
    let comps = g.components();
    if !comps.all_cliques(g) {
        return Err(SolveError::NotCluster);
    }
    let cs = comps.sizes();
    if sizes_balanced(&cs, inst.eta) {
        return Ok(Some(EditSet::new()));
    }
    if let Some(f) = algo_bcc(&inst.with_variant(Variant::Bcc))? {
        return Ok(Some(f));
    }
    if let Some(f) = solve_bcd(&inst.with_variant(Variant::Bcd)) {
        return Ok(Some(f));
    }
    if inst.k == 0 {
        return Ok(None);
    }
    let k = pair_budget(g, inst.k);
    let lmax = (2 * k).min(g.n());
    let table = partition_table(lmax);
    for l1 in 2..=lmax {
        for y in partitions(l1) {
            if !is_valid_for_sizes(&y, &cs) {
                continue;
            }
            let hit = for_each_inner(&y, &table, |ny| {
                let c1 = ny.cost();
                if c1 > k {
                    return None;
                }
                let cs2 = replace_sizes(&cs, &ny.outer, &ny.flattened());
                for l2 in 2..=lmax {
                    for x in partitions(l2) {
                        let hit = for_each_inner(&x, &table, |nx| {
                            let flat = nx.flattened();
                            if c1 + nx.cost() > k || !is_valid_for_sizes(&flat, &cs2) {
                                return None;
                            }
                            if !sizes_balanced(&replace_sizes(&cs2, &flat, &nx.outer), inst.eta) {
                                return None;
                            }
                            let (g1, _) = deletion_wrt(g, ny).expect("valid split");
                            let (g2, _) = completion_wrt(&g1, nx).expect("valid merge");
                            Some(EditSet::between(g, &g2))
                        });
                        if hit.is_some() {
                            return hit;
                        }
                    }
                }
                None
            });
            if hit.is_some() {
                return Ok(hit);
            }
        }
    }
    Ok(None)
}

/// Branches on induced P3s into `G - uv`, `G - vw`, `G + uw` until the graph
/// is a cluster graph, then calls `leaf`. Leaf failures are memoized by
/// component sizes and remaining budget.
pub fn branch_p3(inst: &Instance, leaf: &dyn Fn(&Instance) -> Option<EditSet>) -> Option<EditSet> {
    let mut g = inst.graph.clone();
    let mut failed = HashSet::new();
    let end = branch_rec(&mut g, inst.k, inst.eta, leaf, &mut failed)?;
    Some(EditSet::between(&inst.graph, &end))
}

fn branch_rec(
    g: &mut Graph,
    k: usize,
    eta: usize,
    leaf: &dyn Fn(&Instance) -> Option<EditSet>,
    failed: &mut HashSet<(Vec<usize>, usize)>,
) -> Option<Graph> {
    let Some((u, v, w)) = g.find_induced_p3() else {
        let key = (g.components().sizes(), k);
        if failed.contains(&key) {
            return None;
        }
        let inst = Instance {
            graph: g.clone(),
            k,
            eta,
            variant: Variant::Bce,
        };
        return match leaf(&inst) {
            Some(f) => Some(apply_edits(g, &f).expect("leaf edits are consistent")),
            None => {
                failed.insert(key);
                None
            }
        };
    };
    if k == 0 {
        return None;
    }
    for (a, b, add) in [(u, v, false), (v, w, false), (u, w, true)] {
        if add {
            g.add_edge(a, b);
        } else {
            g.remove_edge(a, b);
        }
        let r = branch_rec(g, k - 1, eta, leaf, failed);
        if add {
            g.remove_edge(a, b);
        } else {
            g.add_edge(a, b);
        }
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Editing solver for arbitrary graphs.
pub fn solve_bce(inst: &Instance) -> Option<EditSet> {
    branch_p3(inst, &|leaf| {
        algo_bce_c(leaf).expect("leaves are cluster graphs")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_solution;
    use crate::oracle::oracle_solve;

    fn bcc(sizes: &[usize], k: usize, eta: usize) -> Instance {
        Instance::new(Graph::cluster(sizes), k, eta, Variant::Bcc).unwrap()
    }

    #[test]
    fn bcc_examples() {
        let ex1 = bcc(&[1, 1, 2, 2, 2], 4, 1);
        let f = algo_bcc(&ex1).unwrap().unwrap();
        assert!(verify_solution(&ex1, &f));
        assert_eq!(algo_bcc(&bcc(&[2, 2], 0, 0)).unwrap(), Some(EditSet::new()));
        assert_eq!(algo_bcc(&bcc(&[5, 1], 2, 0)).unwrap(), None);
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let bad = Instance {
            graph: p3,
            k: 1,
            eta: 0,
            variant: Variant::Bcc,
        };
        assert_eq!(algo_bcc(&bad), Err(SolveError::NotCluster));
    }

    #[test]
    fn bce_cluster_examples() {
        let inst = bcc(&[3, 1], 2, 0).with_variant(Variant::Bce);
        let ours = algo_bce_c(&inst).unwrap();
        assert_eq!(ours.is_some(), oracle_solve(&inst).unwrap().is_some());
        let k22 = bcc(&[2, 2], 0, 0).with_variant(Variant::Bce);
        assert_eq!(algo_bce_c(&k22).unwrap(), Some(EditSet::new()));
    }

    #[test]
    fn bce_general_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let yes = Instance::new(p3.clone(), 1, 1, Variant::Bce).unwrap();
        assert!(verify_solution(&yes, &solve_bce(&yes).unwrap()));
        let no = Instance::new(p3, 0, 1, Variant::Bce).unwrap();
        assert_eq!(solve_bce(&no), None);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let inst = Instance::new(c4, 2, 0, Variant::Bce).unwrap();
        assert_eq!(
            solve_bce(&inst).is_some(),
            oracle_solve(&inst).unwrap().is_some()
        );
    }
}
