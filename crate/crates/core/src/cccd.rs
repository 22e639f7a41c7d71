//! Cluster deletion under a component-size window, and the deletion solver
//! built on top of it.

use crate::graph::{EditSet, Graph, Instance};
use crate::partition::spp;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub gamma1: usize,
    pub gamma2: usize,
}

impl Window {
    pub fn new(gamma1: usize, gamma2: usize) -> Self {
        assert!(
            1 <= gamma1 && gamma1 <= gamma2,
            "invalid window [{gamma1}, {gamma2}]"
        );
        Window { gamma1, gamma2 }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.gamma1 <= x && x <= self.gamma2
    }

    /// Feasible part counts `t` for splitting `n` vertices.
    pub fn part_range(&self, n: usize) -> Option<(usize, usize)> {
        let lo = n.div_ceil(self.gamma2);
        let hi = n / self.gamma1;
        (lo <= hi).then_some((lo, hi))
    }
}

/// Greedy fill into `t` parts: each vertex goes to the first part below
/// `gamma1`, otherwise the first part below `gamma2`.
pub fn fill_sizes(n: usize, w: Window, t: usize) -> Option<Vec<usize>> {
    if t == 0 || t * w.gamma1 > n || t * w.gamma2 < n {
        return None;
    }
    let mut sizes = vec![0usize; t];
    for _ in 0..n {
        let i = match sizes.iter().position(|&s| s < w.gamma1) {
            Some(i) => i,
            None => sizes.iter().position(|&s| s < w.gamma2)?,
        };
        sizes[i] += 1;
    }
    Some(sizes)
}

/// `(t, h(t))` over the whole feasible range of part counts.
pub fn cost_profile(n: usize, w: Window) -> Vec<(usize, usize)> {
    match w.part_range(n) {
        Some((lo, hi)) => (lo..=hi)
            .map(|t| (t, spp(&fill_sizes(n, w, t).expect("t is feasible"))))
            .collect(),
        None => Vec::new(),
    }
}

/// Part sizes of a cheapest split of `K_n` into cliques with sizes in the window.
pub fn clique_split_sizes(n: usize, w: Window) -> Option<Vec<usize>> {
    let (lo, _) = w.part_range(n)?;
    fill_sizes(n, w, lo)
}

/// Minimum number of deletions splitting `K_n` into cliques with sizes in the window.
pub fn cccd_on_clique(n: usize, w: Window) -> Option<usize> {
    clique_split_sizes(n, w).map(|s| spp(&s))
}

/// Each component is split on its own; fails if the total exceeds `k` or
/// some component cannot be split.
pub fn cccd_on_cluster(g: &Graph, w: Window, k: usize) -> Option<EditSet> {
    let comps = g.components();
    debug_assert!(comps.all_cliques(g));
    let mut f = EditSet::new();
    let mut total = 0;
    for members in &comps.members {
        let sizes = clique_split_sizes(members.len(), w)?;
        total += spp(&sizes);
        if total > k {
            return None;
        }
        let mut start = 0;
        let mut groups = Vec::new();
        for s in sizes {
            groups.push(&members[start..start + s]);
            start += s;
        }
        for (i, a) in groups.iter().enumerate() {
            for b in &groups[i + 1..] {
                for &u in a.iter() {
                    for &v in b.iter() {
                        f.delete(u, v);
                    }
                }
            }
        }
    }
    Some(f)
}

/// Branches on induced P3s (drop one of the two edges) until the graph is a
/// cluster graph, then solves the cluster case.
pub fn algo_cccd(g: &Graph, w: Window, k: usize) -> Option<EditSet> {
    let mut h = g.clone();
    branch(&mut h, w, k)
}

fn branch(g: &mut Graph, w: Window, k: usize) -> Option<EditSet> {
    let comps = g.components();
    if comps.scomp() < w.gamma1 && g.n() > 0 {
        return None;
    }
    if comps.all_cliques(g) {
        return cccd_on_cluster(g, w, k);
    }
    if k == 0 {
        return None;
    }
    let (u, v, x) = g
        .find_induced_p3()
        .expect("non-cluster graph has an induced P3");
    for (a, b) in [(u, v), (v, x)] {
        g.remove_edge(a, b);
        let r = branch(g, w, k - 1);
        g.add_edge(a, b);
        if let Some(mut f) = r {
            f.delete(a, b);
            return Some(f);
        }
    }
    None
}

/// Windows `[g1, g2]` with `g2 - g1 <= eta`, by increasing `g1` then `g2`.
pub fn windows(n: usize, eta: usize) -> impl Iterator<Item = Window> {
    (1..=n).flat_map(move |g1| (g1..=n.min(g1 + eta)).map(move |g2| Window::new(g1, g2)))
}

/// Deletion-only solver: tries every admissible window.
pub fn solve_bcd(inst: &Instance) -> Option<EditSet> {
    let g = &inst.graph;
    if g.is_balanced_cluster(inst.eta) {
        return Some(EditSet::new());
    }
    windows(g.n(), inst.eta).find_map(|w| algo_cccd(g, w, inst.k))
}
