//! Solver dispatch, the self-test corpus and the kernel benchmark.

use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algo::{algo_bcc, solve_bce, SolveError};
use crate::cccd::solve_bcd;
use crate::fast::{fast_algo_bcc, fast_solve_bce};
use crate::graph::{verify_solution, EditSet, Graph, Instance, Variant};
use crate::harness::gen::gen_random;
use crate::harness::io::{parse_instance, serialize_instance};
use crate::oracle::{oracle_solve, OracleError};
use crate::{kernel_bound, kernelize, KernelError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Oracle,
    Partition,
    Fast,
    Branch,
}

impl Algo {
    pub const ALL: [Algo; 4] = [Algo::Oracle, Algo::Partition, Algo::Fast, Algo::Branch];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Partition => "partition",
            Algo::Fast => "fast",
            Algo::Branch => "branch",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Algo::ALL.into_iter().find(|a| a.name() == s)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Runs one solver. `Partition` uses the nested-partition solvers, `Fast`
/// the balls-in-bins ones, `Branch` the P3 branching wrappers with
/// partition-based leaves.
pub fn solve_with(inst: &Instance, algo: Algo) -> Result<Option<EditSet>, RunError> {
    let cluster = || {
        if inst.graph.is_cluster_graph() {
            Ok(())
        } else {
            Err(SolveError::NotCluster)
        }
    };
    Ok(match (algo, inst.variant) {
        (Algo::Oracle, _) => oracle_solve(inst)?,
        (Algo::Partition | Algo::Branch, Variant::Bcc) => algo_bcc(inst)?,
        (Algo::Fast, Variant::Bcc) => {
            cluster()?;
            fast_algo_bcc(inst)?
        }
        (_, Variant::Bcd) => solve_bcd(inst),
        (Algo::Partition, Variant::Bce) => match crate::algo::algo_bce_c(inst) {
            Err(SolveError::NotCluster) => solve_bce(inst),
            r => r?,
        },
        (Algo::Branch, Variant::Bce) => solve_bce(inst),
        (Algo::Fast, Variant::Bce) => fast_solve_bce(inst),
    })
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub answer: Option<EditSet>,
    pub elapsed: Duration,
    pub verified: bool,
}

pub fn solve_report(inst: &Instance, algo: Algo) -> Result<SolveReport, RunError> {
    let t = Instant::now();
    let answer = solve_with(inst, algo)?;
    let elapsed = t.elapsed();
    let verified = answer.as_ref().is_none_or(|f| verify_solution(inst, f));
    Ok(SolveReport {
        answer,
        elapsed,
        verified,
    })
}

#[derive(Debug, Clone, Default)]
pub struct SelftestSummary {
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SelftestSummary {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Cross-checks one instance: file round trip, every solver against the
/// oracle, witnesses, and the kernel verdict and size bound.
pub fn check_instance(inst: &Instance, sum: &mut SelftestSummary) {
    sum.instances += 1;
    let tag = || serialize_instance(inst).replace('\n', "; ");
    sum.check(
        parse_instance(&serialize_instance(inst)).as_ref() == Ok(inst),
        || format!("round trip: {}", tag()),
    );
    let truth = match oracle_solve(inst) {
        Ok(r) => r.is_some(),
        Err(e) => {
            sum.failures.push(format!("oracle: {e}: {}", tag()));
            return;
        }
    };
    for algo in Algo::ALL {
        match solve_report(inst, algo) {
            Ok(r) => {
                sum.check(r.answer.is_some() == truth, || {
                    format!("{algo} disagrees: {}", tag())
                });
                sum.check(r.verified, || format!("{algo} witness rejected: {}", tag()));
            }
            Err(e) => sum.failures.push(format!("{algo}: {e}: {}", tag())),
        }
    }
    match kernelize(inst) {
        Ok(r) => match r.outcome {
            Outcome::TrivialYes | Outcome::TrivialNo => {
                let v = r.outcome.verdict();
                sum.check(v == Some(truth), || {
                    format!("kernel verdict {v:?}: {}", tag())
                });
            }
            Outcome::Reduced { instance, .. } => {
                let bound = kernel_bound(instance.variant, instance.k);
                sum.check(instance.graph.n() <= bound, || {
                    format!("kernel size: {}", tag())
                });
                if let Ok(red) = oracle_solve(&instance) {
                    sum.check(red.is_some() == truth, || {
                        format!("kernel not equivalent: {}", tag())
                    });
                }
            }
        },
        Err(e) => sum.failures.push(format!("kernel: {e}: {}", tag())),
    }
}

/// All graphs on `n` vertices in edge-mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("distinct pairs")
    })
}

/// The self-test corpus: every graph up to 4 vertices (5 with `deep`) with
/// small budgets, plus seeded random graphs.
pub fn selftest_corpus(deep: bool) -> Vec<Instance> {
    let max_n = if deep { 5 } else { 4 };
    let mut out = Vec::new();
    let mut push = |g: &Graph, k: usize, eta: usize| {
        for v in [Variant::Bcc, Variant::Bcd, Variant::Bce] {
            if let Ok(i) = Instance::new(g.clone(), k, eta, v) {
                out.push(i);
            }
        }
    };
    for n in 0..=max_n {
        for g in all_graphs(n) {
            for k in 0..=2 {
                for eta in 0..=2 {
                    push(&g, k, eta);
                }
            }
        }
    }
    let randoms = if deep { 400 } else { 60 };
    for seed in 0..randoms {
        let n = 5 + (seed % 3) as usize;
        let g = gen_random(n, 0.3 + 0.1 * (seed % 5) as f64, seed).expect("valid probability");
        push(&g, (seed % 4) as usize, (seed % 3) as usize);
    }
    out
}

pub fn selftest(deep: bool) -> SelftestSummary {
    let mut sum = SelftestSummary::default();
    for inst in selftest_corpus(deep) {
        check_instance(&inst, &mut sum);
    }
    sum
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub variant: Variant,
    pub n_in: usize,
    pub k: usize,
    pub n_out: Option<usize>,
    pub bound: usize,
    pub elapsed: Duration,
}

/// Kernelizes seeded random cluster-leaning instances of each variant.
pub fn bench(n: usize, k: usize, count: u64, seed: u64) -> Result<Vec<BenchRow>, RunError> {
    let mut rows = Vec::new();
    for i in 0..count {
        let s = seed.wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut sizes = Vec::new();
        let mut total = 0;
        while total < n {
            let x = rng.gen_range(1..=6).min(n - total);
            sizes.push(x);
            total += x;
        }
        let base = Graph::cluster(&sizes);
        let noise = gen_random(base.n(), 0.01, s).expect("valid probability");
        for v in [Variant::Bcc, Variant::Bcd, Variant::Bce] {
            let g = if v == Variant::Bcc {
                base.clone()
            } else {
                let mut h = base.clone();
                for (a, b) in noise.edges() {
                    if !h.remove_edge(a, b) {
                        h.add_edge(a, b);
                    }
                }
                h
            };
            let inst = Instance {
                graph: g,
                k,
                eta: 1 + (s % 4) as usize,
                variant: v,
            };
            let t = Instant::now();
            let r = kernelize(&inst)?;
            let n_out = match &r.outcome {
                Outcome::Reduced { instance, .. } => Some(instance.graph.n()),
                _ => None,
            };
            rows.push(BenchRow {
                variant: v,
                n_in: inst.graph.n(),
                k,
                n_out,
                bound: kernel_bound(v, k),
                elapsed: t.elapsed(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_with_no_budget() {
        let inst = parse_instance("BCE 3 2 0 0\n0 1\n1 2\n").unwrap();
        for algo in Algo::ALL {
            assert_eq!(solve_with(&inst, algo).unwrap(), None, "{algo}");
        }
    }

    #[test]
    fn graph_counts() {
        assert_eq!(all_graphs(3).count(), 8);
        assert_eq!(all_graphs(0).count(), 1);
    }

    #[test]
    fn small_selftest_is_clean() {
        let mut sum = SelftestSummary::default();
        for n in 0..=3 {
            for g in all_graphs(n) {
                for v in [Variant::Bcd, Variant::Bce] {
                    check_instance(
                        &Instance {
                            graph: g.clone(),
                            k: 1,
                            eta: 0,
                            variant: v,
                        },
                        &mut sum,
                    );
                }
            }
        }
        assert!(sum.failures.is_empty(), "{:?}", sum.failures);
        assert!(sum.checks > 0);
    }
}
