//! Shared result types and bookkeeping for the three kernels.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Instance, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("completion kernel needs a cluster graph")]
    NotCluster,
    #[error("instance variant {0} does not match this kernel")]
    WrongVariant(Variant),
    #[error("no large clique and no large independent set in a component of {0} vertices")]
    RamseyWitnessMissing(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    TrivialYes,
    TrivialNo,
    /// Equivalent smaller instance; `vertex_map[v]` is the new id of input vertex `v`.
    Reduced {
        instance: Instance,
        vertex_map: Vec<Option<usize>>,
    },
}

impl Outcome {
    /// The decided answer, if the kernel settled it.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Outcome::TrivialYes => Some(true),
            Outcome::TrivialNo => Some(false),
            Outcome::Reduced { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: &'static str,
    pub effect: String,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.effect)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelResult {
    pub outcome: Outcome,
    pub trace: Vec<TraceEntry>,
}

/// Mutable working copy of an instance plus the map back to input ids.
#[derive(Debug, Clone)]
pub(crate) struct Work {
    pub g: Graph,
    pub k: usize,
    pub eta: usize,
    pub variant: Variant,
    pub map: Vec<Option<usize>>,
    pub trace: Vec<TraceEntry>,
}

impl Work {
    pub fn new(inst: &Instance) -> Self {
        Work {
            g: inst.graph.clone(),
            k: inst.k,
            eta: inst.eta,
            variant: inst.variant,
            map: (0..inst.graph.n()).map(Some).collect(),
            trace: Vec::new(),
        }
    }

    pub fn log(&mut self, rule: &'static str, effect: impl Into<String>) {
        self.trace.push(TraceEntry {
            rule,
            effect: effect.into(),
        });
    }

    /// Removes vertices of the current graph; returns the current-to-new id map.
    pub fn remove_vertices(&mut self, remove: &BTreeSet<usize>) -> Vec<Option<usize>> {
        let (h, m) = self.g.without(remove);
        for slot in self.map.iter_mut() {
            *slot = slot.and_then(|v| m[v]);
        }
        self.g = h;
        m
    }

    pub fn finish(self, outcome: Outcome) -> KernelResult {
        KernelResult {
            outcome,
            trace: self.trace,
        }
    }

    pub fn yes(mut self, rule: &'static str) -> KernelResult {
        self.log(rule, "trivial yes-instance");
        self.finish(Outcome::TrivialYes)
    }

    pub fn no(mut self, rule: &'static str, why: impl Into<String>) -> KernelResult {
        self.log(rule, format!("trivial no-instance: {}", why.into()));
        self.finish(Outcome::TrivialNo)
    }

    pub fn reduced(mut self, rule: &'static str) -> KernelResult {
        let effect = format!("return n={} k={} eta={}", self.g.n(), self.k, self.eta);
        self.log(rule, effect);
        let instance = Instance {
            graph: self.g.clone(),
            k: self.k,
            eta: self.eta,
            variant: self.variant,
        };
        let vertex_map = self.map.clone();
        self.finish(Outcome::Reduced {
            instance,
            vertex_map,
        })
    }
}

/// Clique components (by member list), sorted by size then smallest vertex.
pub(crate) fn sorted_clique_components(
    g: &Graph,
    pred: impl Fn(&[usize]) -> bool,
) -> Vec<Vec<usize>> {
    let comps = g.components();
    let mut out: Vec<Vec<usize>> = (0..comps.count())
        .filter(|&c| comps.is_clique(g, c) && pred(&comps.members[c]))
        .map(|c| comps.members[c].clone())
        .collect();
    out.sort_by_key(|m| (m.len(), m[0]));
    out
}

/// Keeps at most `keep` components of each size `1..=max_size` among those
/// selected by `pred`; later ones (by smallest vertex) are removed.
pub(crate) fn dedup_small_cliques(
    w: &mut Work,
    rule: &'static str,
    max_size: usize,
    keep: usize,
    pred: impl Fn(&[usize]) -> bool,
) -> Vec<Option<usize>> {
    let small = sorted_clique_components(&w.g, |m| m.len() <= max_size && pred(m));
    let mut remove = BTreeSet::new();
    for j in 1..=max_size {
        let same: Vec<&Vec<usize>> = small.iter().filter(|m| m.len() == j).collect();
        if same.len() > keep {
            for m in &same[keep..] {
                remove.extend(m.iter().copied());
            }
            w.log(
                rule,
                format!("deleted {} components of size {j}", same.len() - keep),
            );
        }
    }
    w.remove_vertices(&remove)
}

/// The shared tail for large clique components: balance check, dropping the
/// middle ones, the size cap on the largest, and the final trim. `bound` is
/// the threshold deciding whether the smallest large component is kept.
pub(crate) fn large_clique_pipeline(
    mut w: Work,
    large: Vec<Vec<usize>>,
    bound: usize,
    eta_target: usize,
) -> KernelResult {
    let r = large.len();
    let (h1, hr) = (large[0].len(), large[r - 1].len());
    if hr - h1 > w.eta {
        let why = format!("|H_r| - |H_1| = {} > eta = {}", hr - h1, w.eta);
        return w.no("large-cliques-spread", why);
    }
    let s = if h1 > bound { 0 } else { 1 };
    let mut largest = large[r - 1].clone();
    if s + 1 < r {
        let remove: BTreeSet<usize> = large[s..r - 1].iter().flatten().copied().collect();
        w.log(
            "drop-middle-large",
            format!("deleted {} components", r - 1 - s),
        );
        let m = w.remove_vertices(&remove);
        largest = largest
            .iter()
            .map(|&v| m[v].expect("H_r is kept"))
            .collect();
    }
    if hr > bound + w.eta {
        let why = format!("|H_r| = {hr} > {}", bound + w.eta);
        return w.no("largest-too-big", why);
    }
    if hr <= eta_target || w.eta <= eta_target {
        return w.reduced("large-cliques-small");
    }
    let keep = hr - (w.eta - eta_target);
    trim_largest(&mut w, &largest, keep, eta_target);
    w.reduced("trim-largest")
}

/// Deletes the highest-id vertices of `members` so that `keep` remain, and
/// sets the new balance slack.
pub(crate) fn trim_largest(w: &mut Work, members: &[usize], keep: usize, eta_new: usize) {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    let drop = sorted.len() - keep;
    let remove: BTreeSet<usize> = sorted[keep..].iter().copied().collect();
    w.log(
        "trim-largest",
        format!(
            "deleted {drop} vertices of the largest component, eta {} -> {eta_new}",
            w.eta
        ),
    );
    w.eta = eta_new;
    w.remove_vertices(&remove);
}
