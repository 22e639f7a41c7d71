//! Brute-force reference solvers. Deliberately naive: every candidate edit set
//! is tried in size-then-lexicographic order.

use std::env;

use itertools::Itertools;
use thiserror::Error;

use crate::binb::{Assignment, BinBInstance};
use crate::graph::{EditSet, Instance, Variant};

/// Environment variable overriding the vertex cap of [`oracle_solve`].
pub const MAX_N_VAR: &str = "BALCLUST_ORACLE_MAX_N";
/// Environment variable overriding the `t^s` cap of [`oracle_binb`].
pub const MAX_MAPS_VAR: &str = "BALCLUST_ORACLE_MAX_MAPS";

pub const DEFAULT_MAX_N: usize = 12;
pub const DEFAULT_MAX_MAPS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("{maps} assignments exceed oracle cap {cap}")]
    TooManyMaps { maps: u64, cap: u64 },
}

fn env_or<T: std::str::FromStr>(var: &str, default: T) -> T {
    env::var(var)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn max_n() -> usize {
    env_or(MAX_N_VAR, DEFAULT_MAX_N).min(64)
}

pub fn max_maps() -> u64 {
    env_or(MAX_MAPS_VAR, DEFAULT_MAX_MAPS)
}

/// Closed neighbourhoods as bitmasks. The graph is a balanced cluster graph
/// iff adjacent vertices have equal closed neighbourhoods and the popcounts
/// of those neighbourhoods span at most η.
fn balanced_cluster(closed: &[u64], eta: usize) -> bool {
    let mut lo = u32::MAX;
    let mut hi = 0;
    for (v, &nb) in closed.iter().enumerate() {
        let mut rest = nb & !(1u64 << v);
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if closed[u] != nb {
                return false;
            }
        }
        let c = nb.count_ones();
        lo = lo.min(c);
        hi = hi.max(c);
    }
    closed.is_empty() || (hi - lo) as usize <= eta
}

/// Exact answer with a minimum-cardinality witness when the answer is yes.
pub fn oracle_solve(inst: &Instance) -> Result<Option<EditSet>, OracleError> {
    oracle_solve_capped(inst, max_n())
}

pub fn oracle_solve_capped(inst: &Instance, cap: usize) -> Result<Option<EditSet>, OracleError> {
    let g = &inst.graph;
    let n = g.n();
    if n > cap.min(64) {
        return Err(OracleError::TooManyVertices { n, cap });
    }
    let mut closed: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(1u64 << v, |acc, &u| acc | 1 << u)
        })
        .collect();
    let universe: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| match inst.variant {
            Variant::Bcc => !g.has_edge(u, v),
            Variant::Bcd => g.has_edge(u, v),
            Variant::Bce => true,
        })
        .collect();
    let k = inst.k.min(universe.len());
    for size in 0..=k {
        for combo in (0..universe.len()).combinations(size) {
            for &i in &combo {
                let (u, v) = universe[i];
                closed[u] ^= 1 << v;
                closed[v] ^= 1 << u;
            }
            let ok = balanced_cluster(&closed, inst.eta);
            for &i in &combo {
                let (u, v) = universe[i];
                closed[u] ^= 1 << v;
                closed[v] ^= 1 << u;
            }
            if ok {
                let mut f = EditSet::new();
                for &i in &combo {
                    let (u, v) = universe[i];
                    if g.has_edge(u, v) {
                        f.delete(u, v);
                    } else {
                        f.add(u, v);
                    }
                }
                return Ok(Some(f));
            }
        }
    }
    Ok(None)
}

/// Tries every map from balls to bins; returns the first feasible one in
/// lexicographic order of the bin sequence.
pub fn oracle_binb(inst: &BinBInstance) -> Result<Option<Assignment>, OracleError> {
    let s = inst.balls.len();
    let t = inst.bins.len();
    let maps = (t as u64).checked_pow(s as u32).unwrap_or(u64::MAX);
    let cap = max_maps();
    if maps > cap {
        return Err(OracleError::TooManyMaps { maps, cap });
    }
    for bins in (0..s).map(|_| 0..t).multi_cartesian_product() {
        if inst.assignment_ok(&bins) {
            return Ok(Some(bins));
        }
    }
    if s == 0 {
        return Ok(Some(Vec::new()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{verify_solution, Graph};

    #[test]
    fn small_examples() {
        let inst = Instance::new(Graph::cluster(&[1, 2]), 2, 0, Variant::Bcc).unwrap();
        let f = oracle_solve(&inst).unwrap().unwrap();
        assert_eq!(f.len(), 2);
        assert!(verify_solution(&inst, &f));

        let k3 = Instance::new(Graph::cluster(&[3]), 0, 0, Variant::Bcd).unwrap();
        assert_eq!(oracle_solve(&k3).unwrap(), Some(EditSet::new()));

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new(p3, 0, 5, Variant::Bce).unwrap();
        assert_eq!(oracle_solve(&inst).unwrap(), None);
    }

    #[test]
    fn cap_enforced() {
        let inst = Instance::new(Graph::new(13), 0, 0, Variant::Bcd).unwrap();
        assert!(matches!(
            oracle_solve_capped(&inst, 12),
            Err(OracleError::TooManyVertices { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn binb_examples() {
        let one = BinBInstance::new(vec![1], vec![1], vec![vec![0]], 0);
        assert!(oracle_binb(&one).unwrap().is_some());
        let big = BinBInstance::new(vec![2], vec![1], vec![vec![0]], 0);
        assert!(oracle_binb(&big).unwrap().is_none());
        let cost = vec![vec![1, 2], vec![2, 4]];
        let pair = BinBInstance::new(vec![1, 1], vec![1, 1], cost, 3);
        assert!(oracle_binb(&pair).unwrap().is_none());
    }
}
