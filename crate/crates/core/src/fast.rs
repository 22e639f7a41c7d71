//! Faster completion and editing solvers: every merge or split pattern is
//! priced as a balls-in-bins instance instead of enumerating nested partitions.

use std::collections::HashMap;

use thiserror::Error;

use crate::algo::{branch_p3, pair_budget, SolveError, Verdict};
use crate::binb::{solve_binb_min, Assignment, BinBInstance};
use crate::cccd::solve_bcd;
use crate::graph::{sizes_balanced, EditSet, Graph, Instance, Variant};
use crate::partition::{
    is_valid_for_sizes, merge_by_assignment, partitions, replace_sizes, split_by_assignment,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnoError {
    #[error("partitions sum to {0} and {1}")]
    TotalMismatch(usize, usize),
    #[error("partition {0:?} is not realizable by the graph's components")]
    NotValid(Vec<usize>),
    #[error("input is not a cluster graph")]
    NotCluster,
}

/// Balls are the current sizes `xp`, bins the target sizes `x`; a ball costs
/// twice the edges it gains inside its bin. Oversized balls get `2k + 1`.
pub fn annocm_binb(k: usize, x: &[usize], xp: &[usize]) -> BinBInstance {
    let balls: Vec<u64> = xp.iter().map(|&b| b as u64).collect();
    let bins: Vec<u64> = x.iter().map(|&b| b as u64).collect();
    let cost = balls
        .iter()
        .map(|&b| {
            bins.iter()
                .map(|&c| {
                    if c >= b {
                        b * (c - b)
                    } else {
                        2 * k as u64 + 1
                    }
                })
                .collect()
        })
        .collect();
    BinBInstance::new(balls, bins, cost, 2 * k as u64)
}

/// Cheapest way (in added edges, at most `k`) to merge components of sizes
/// `xp` into components of sizes `x`.
pub fn annocm_plan(k: usize, x: &[usize], xp: &[usize]) -> Option<(Assignment, usize)> {
    if x.iter().sum::<usize>() != xp.iter().sum::<usize>() {
        return None;
    }
    solve_binb_min(&annocm_binb(k, x, xp)).map(|(a, c)| (a, (c / 2) as usize))
}

/// Decides whether `g` can turn components of sizes `xp` into components of
/// sizes `x` with at most `k` added edges; on success returns the new graph
/// and the added edges.
pub fn solve_annocm(
    g: &Graph,
    k: usize,
    x: &[usize],
    xp: &[usize],
) -> Result<Option<(Graph, EditSet)>, AnnoError> {
    let (a, b) = (x.iter().sum::<usize>(), xp.iter().sum::<usize>());
    if a != b {
        return Err(AnnoError::TotalMismatch(a, b));
    }
    if !g.is_cluster_graph() {
        return Err(AnnoError::NotCluster);
    }
    if !is_valid_for_sizes(xp, &g.components().sizes()) {
        return Err(AnnoError::NotValid(xp.to_vec()));
    }
    Ok(annocm_plan(k, x, xp)
        .map(|(asg, _)| merge_by_assignment(g, xp, x, &asg).expect("validated partition")))
}

type PlanCache = HashMap<(Vec<usize>, Vec<usize>), Option<(Assignment, usize)>>;

fn cached_plan(
    cache: &mut PlanCache,
    k: usize,
    x: &[usize],
    xp: &[usize],
) -> Option<(Assignment, usize)> {
    cache
        .entry((x.to_vec(), xp.to_vec()))
        .or_insert_with(|| annocm_plan(k, x, xp))
        .clone()
}

/// Edges added by any exact merge of parts `xp` into parts `x`; `None` when
/// negative. The balls-in-bins search only has to decide feasibility.
pub fn merge_edges(x: &[usize], xp: &[usize]) -> Option<usize> {
    let c2 = |v: &[usize]| {
        v.iter()
            .map(|&a| a * a.saturating_sub(1) / 2)
            .sum::<usize>()
    };
    c2(x).checked_sub(c2(xp))
}

pub fn fast_algo_bcc(inst: &Instance) -> Verdict {
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
    for l in 2..=(2 * k).min(g.n()) {
        let parts = partitions(l);
        for x in &parts {
            for xp in &parts {
                if merge_edges(x, xp).is_none_or(|e| e > k) {
                    continue;
                }
                if !is_valid_for_sizes(xp, &cs)
                    || !sizes_balanced(&replace_sizes(&cs, xp, x), inst.eta)
                {
                    continue;
                }
                if let Some((asg, _)) = annocm_plan(k, x, xp) {
                    let (_, f) = merge_by_assignment(g, xp, x, &asg).expect("validated partition");
                    return Ok(Some(f));
                }
            }
        }
    }
    Ok(None)
}

/// Smallest `k_i` admitted by the outer loops for a pattern of total `l`
/// that costs `e` edges.
fn budget_needed(l: usize, e: usize) -> usize {
    e.max(l.div_ceil(2)).max(1)
}

pub fn fast_algo_bce_c(inst: &Instance) -> Verdict {
    let g = &inst.graph;
    let comps = g.components();
    if !comps.all_cliques(g) {
        return Err(SolveError::NotCluster);
    }
    let cs = comps.sizes();
    if sizes_balanced(&cs, inst.eta) {
        return Ok(Some(EditSet::new()));
    }
    if let Some(f) = fast_algo_bcc(&inst.with_variant(Variant::Bcc))? {
        return Ok(Some(f));
    }
    if let Some(f) = solve_bcd(&inst.with_variant(Variant::Bcd)) {
        return Ok(Some(f));
    }
    if inst.k == 0 {
        return Ok(None);
    }
    let k = pair_budget(g, inst.k);
    let n = g.n();
    let lmax = (2 * k).min(n);
    let table: Vec<Vec<Vec<usize>>> = (0..=lmax).map(partitions).collect();
    // (x, x', edges) for every pair of partitions of l whose merge fits in k.
    let cheap: Vec<Vec<(usize, usize, usize)>> = (0..=lmax)
        .map(|l| {
            let t = &table[l];
            (0..t.len())
                .flat_map(|i| (0..t.len()).map(move |j| (i, j)))
                .filter_map(|(i, j)| {
                    merge_edges(&t[i], &t[j])
                        .filter(|&e| budget_needed(l, e) <= k)
                        .map(|e| (i, j, e))
                })
                .collect()
        })
        .collect();
    let mut cache = PlanCache::new();
    // Second-phase outcome per intermediate size multiset and remaining budget.
    let mut second: HashMap<(Vec<usize>, usize), Option<SecondPhase>> = HashMap::new();
    for l1 in 2..=lmax {
        let t1 = &table[l1];
        for &(yi, ypi, e1) in &cheap[l1] {
            let (y, yp) = (&t1[yi], &t1[ypi]);
            let k1 = budget_needed(l1, e1);
            if k1 >= k || !is_valid_for_sizes(y, &cs) {
                continue;
            }
            let cs2 = replace_sizes(&cs, y, yp);
            let rest = k - k1;
            let found = second
                .entry((cs2, rest))
                .or_insert_with_key(|(cs2, rest)| {
                    second_phase(&table, &cheap, cs2, *rest, n, k, inst.eta, &mut cache)
                })
                .clone();
            let Some((l2, xi, xpi, asg2)) = found else {
                continue;
            };
            let Some((asg1, _)) = cached_plan(&mut cache, k, y, yp) else {
                continue;
            };
            let (x, xp) = (&table[l2][xi], &table[l2][xpi]);
            let (g1, _) = split_by_assignment(g, y, yp, &asg1).expect("validated split");
            let (g2, _) = merge_by_assignment(&g1, xp, x, &asg2).expect("validated merge");
            return Ok(Some(EditSet::between(g, &g2)));
        }
    }
    Ok(None)
}

/// `(l2, x index, x' index, assignment)` of a second-phase merge.
type SecondPhase = (usize, usize, usize, Assignment);

/// First merge pattern (by `l2`, then table order) that balances `cs2` within
/// `rest`.
#[allow(clippy::too_many_arguments)]
fn second_phase(
    table: &[Vec<Vec<usize>>],
    cheap: &[Vec<(usize, usize, usize)>],
    cs2: &[usize],
    rest: usize,
    n: usize,
    k: usize,
    eta: usize,
    cache: &mut PlanCache,
) -> Option<SecondPhase> {
    for l2 in 2..=(2 * rest).min(n) {
        let t2 = &table[l2];
        for &(xi, xpi, e2) in &cheap[l2] {
            let (x, xp) = (&t2[xi], &t2[xpi]);
            if budget_needed(l2, e2) > rest
                || !is_valid_for_sizes(xp, cs2)
                || !sizes_balanced(&replace_sizes(cs2, xp, x), eta)
            {
                continue;
            }
            if let Some((asg, _)) = cached_plan(cache, k, x, xp) {
                return Some((l2, xi, xpi, asg));
            }
        }
    }
    None
}

/// Editing on arbitrary graphs with the fast cluster-graph solver at the leaves.
pub fn fast_solve_bce(inst: &Instance) -> Option<EditSet> {
    branch_p3(inst, &|leaf| {
        fast_algo_bce_c(leaf).expect("leaves are cluster graphs")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annocm_examples() {
        let g = Graph::cluster(&[1, 2, 3]);
        let (h, f) = solve_annocm(&g, 2, &[3], &[2, 1]).unwrap().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(h.components().sizes(), vec![3, 3]);
        assert_eq!(solve_annocm(&g, 1, &[3], &[2, 1]).unwrap(), None);
        let (h, f) = solve_annocm(&g, 0, &[2, 1], &[2, 1]).unwrap().unwrap();
        assert!(f.is_empty());
        assert_eq!(h, g);
        assert_eq!(
            solve_annocm(&g, 3, &[4], &[2, 1]),
            Err(AnnoError::TotalMismatch(4, 3))
        );
        assert_eq!(
            solve_annocm(&g, 3, &[4], &[2, 2]),
            Err(AnnoError::NotValid(vec![2, 2]))
        );
    }
}
