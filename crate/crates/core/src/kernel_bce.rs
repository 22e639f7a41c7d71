//! Cubic vertex kernel for balanced cluster editing.

use std::collections::BTreeSet;

use crate::graph::{Graph, Instance, Variant};
use crate::kernel::{
    dedup_small_cliques, large_clique_pipeline, sorted_clique_components, KernelError,
    KernelResult, Work,
};

/// `10 (2k + 1)^3`.
pub fn bce_threshold(k: usize) -> usize {
    10 * (2 * k + 1).pow(3)
}

/// Bound on the vertices outside large invisible cliques: modulator, visible
/// components and small invisible cliques.
pub fn bce_small_part_bound(k: usize) -> usize {
    6 * k * k * (2 * k + 1) + (2 * k + 1) * (k + 1) * (k + 2) / 2 + 3 * k
}

/// Vertex bound guaranteed for a reduced instance: the small part, the
/// smallest kept large clique, and the trimmed largest one.
pub fn bce_vertex_bound(k: usize) -> usize {
    bce_small_part_bound(k) + bce_threshold(k) + 3 * bce_threshold(k)
}

/// Dense adjacency rows for fast P3 counting.
struct Bits {
    rows: Vec<Vec<u64>>,
}

impl Bits {
    fn of(g: &Graph) -> Self {
        let words = g.n().div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; g.n()];
        for (u, v) in g.edges() {
            rows[u][v / 64] |= 1 << (v % 64);
            rows[v][u / 64] |= 1 << (u % 64);
        }
        Bits { rows }
    }

    fn toggle(&mut self, u: usize, v: usize) {
        self.rows[u][v / 64] ^= 1 << (v % 64);
        self.rows[v][u / 64] ^= 1 << (u % 64);
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    fn p3_count(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.rows[u], &self.rows[v]);
        if self.has(u, v) {
            let raw: u32 = a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum();
            raw as usize - 2
        } else {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x & y).count_ones())
                .sum::<u32>() as usize
        }
    }
}

/// Number of induced P3s containing the pair `uv`.
pub fn p3_count(g: &Graph, u: usize, v: usize) -> usize {
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    if g.has_edge(u, v) {
        nu.symmetric_difference(nv)
            .filter(|&&x| x != u && x != v)
            .count()
    } else {
        nu.intersection(nv).count()
    }
}

/// Outcome of forcing edits on pairs that lie in more than `k` induced P3s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    Done {
        graph: Graph,
        k: usize,
        forced: Vec<(usize, usize)>,
    },
    Infeasible,
}

pub fn p3_saturation(g: &Graph, k: usize) -> Saturation {
    let mut g = g.clone();
    let mut bits = Bits::of(&g);
    let mut k = k;
    let mut forced = Vec::new();
    let n = g.n();
    'scan: loop {
        for u in 0..n {
            for v in u + 1..n {
                if bits.p3_count(u, v) > k {
                    if k == 0 {
                        return Saturation::Infeasible;
                    }
                    bits.toggle(u, v);
                    if !g.remove_edge(u, v) {
                        g.add_edge(u, v);
                    }
                    forced.push((u, v));
                    k -= 1;
                    continue 'scan;
                }
            }
        }
        return Saturation::Done {
            graph: g,
            k,
            forced,
        };
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulatorResult {
    Found(BTreeSet<usize>),
    TooBig,
}

/// Vertex set whose removal leaves a cluster graph: all three vertices of
/// greedily found induced P3s, then shrunk to an inclusion-minimal set.
pub fn find_modulator(g: &Graph, k: usize) -> ModulatorResult {
    let mut s = BTreeSet::new();
    let mut triples = 0;
    loop {
        let (h, map) = g.without(&s);
        let back: Vec<usize> = (0..g.n()).filter(|&v| map[v].is_some()).collect();
        match h.find_induced_p3() {
            None => break,
            Some((a, b, c)) => {
                triples += 1;
                if triples > k {
                    return ModulatorResult::TooBig;
                }
                s.extend([back[a], back[b], back[c]]);
            }
        }
    }
    for v in s.clone() {
        s.remove(&v);
        if !g.without(&s).0.is_cluster_graph() {
            s.insert(v);
        }
    }
    ModulatorResult::Found(s)
}

/// Per-component view of `G - S` relative to a modulator `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentClass {
    pub members: Vec<usize>,
    pub visible: bool,
    /// Some vertex of `S` has both a neighbour and a non-neighbour inside.
    pub type1: bool,
}

pub fn classify_components(g: &Graph, s: &BTreeSet<usize>) -> Vec<ComponentClass> {
    let (h, map) = g.without(s);
    let back: Vec<usize> = (0..g.n()).filter(|&v| map[v].is_some()).collect();
    h.components()
        .members
        .iter()
        .map(|m| {
            let members: Vec<usize> = m.iter().map(|&v| back[v]).collect();
            let mut visible = false;
            let mut type1 = false;
            for &x in s {
                let adj = members.iter().filter(|&&v| g.has_edge(x, v)).count();
                if adj > 0 {
                    visible = true;
                    if adj < members.len() {
                        type1 = true;
                    }
                }
            }
            ComponentClass {
                members,
                visible,
                type1,
            }
        })
        .collect()
}

pub fn kernelize_bce(inst: &Instance) -> Result<KernelResult, KernelError> {
    if inst.variant != Variant::Bce {
        return Err(KernelError::WrongVariant(inst.variant));
    }
    let mut w = Work::new(inst);
    match p3_saturation(&w.g, w.k) {
        Saturation::Infeasible => {
            return Ok(w.no(
                "p3-saturation",
                "a pair lies in more induced P3s than the budget allows",
            ));
        }
        Saturation::Done { graph, k, forced } => {
            if !forced.is_empty() {
                w.log(
                    "p3-saturation",
                    format!("forced {} edits {:?}, k = {k}", forced.len(), forced),
                );
            }
            w.g = graph;
            w.k = k;
        }
    }
    let k = w.k;
    let comps = w.g.components();
    if comps.all_cliques(&w.g) && comps.is_eta_balanced(w.eta) {
        return Ok(w.yes("balanced-cluster"));
    }
    let cap = comps.lcomp().max(k);
    if w.eta > cap {
        w.log("cap-eta", format!("eta {} -> {cap}", w.eta));
        w.eta = cap;
    }
    let s = match find_modulator(&w.g, k) {
        ModulatorResult::TooBig => {
            return Ok(w.no("modulator", format!("more than {k} disjoint induced P3s")));
        }
        ModulatorResult::Found(s) => s,
    };
    w.log("modulator", format!("S = {s:?}"));
    let classes = classify_components(&w.g, &s);
    for &x in &s {
        let seen = classes
            .iter()
            .filter(|c| c.members.iter().any(|&v| w.g.has_edge(x, v)))
            .count();
        if seen >= 2 * k + 2 {
            return Ok(w.no("sees-many", format!("vertex {x} sees {seen} components")));
        }
    }
    let invisible: BTreeSet<usize> = classes
        .iter()
        .filter(|c| !c.visible)
        .flat_map(|c| c.members.iter().copied())
        .collect();
    let m = dedup_small_cliques(&mut w, "small-cliques", k + 1, 2 * k + 1, |m| {
        invisible.contains(&m[0])
    });
    let invisible: BTreeSet<usize> = invisible.iter().filter_map(|&v| m[v]).collect();
    let large = sorted_clique_components(&w.g, |m| m.len() >= k + 2 && invisible.contains(&m[0]));
    if large.is_empty() {
        return Ok(w.reduced("no-large-cliques"));
    }
    let t = bce_threshold(k);
    Ok(large_clique_pipeline(w, large, t, 2 * t))
}

/// Visible components larger than allowed for their type (`2k` for type 1,
/// `k` otherwise). Empty on any instance the kernel does not reject early.
pub fn oversized_visible(g: &Graph, s: &BTreeSet<usize>, k: usize) -> Vec<ComponentClass> {
    classify_components(g, s)
        .into_iter()
        .filter(|c| c.visible && c.members.len() > if c.type1 { 2 * k } else { k })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Outcome;

    #[test]
    fn p3_counts_match_dense() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let bits = Bits::of(&g);
        for u in 0..5 {
            for v in u + 1..5 {
                assert_eq!(bits.p3_count(u, v), p3_count(&g, u, v), "{u} {v}");
            }
        }
        assert_eq!(p3_count(&g, 0, 2), 1);
    }

    #[test]
    fn saturation_forces_star_centre() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(p3_saturation(&star, 0), Saturation::Infeasible);
        match p3_saturation(&star, 1) {
            Saturation::Infeasible => {}
            Saturation::Done { k, .. } => assert!(k < 1),
        }
    }

    #[test]
    fn modulator_on_p3() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let ModulatorResult::Found(s) = find_modulator(&p3, 1) else {
            panic!("expected a modulator");
        };
        assert_eq!(s.len(), 1);
        assert!(p3.without(&s).0.is_cluster_graph());
        assert_eq!(find_modulator(&p3, 0), ModulatorResult::TooBig);
    }

    #[test]
    fn balanced_cluster_is_yes() {
        let inst = Instance::new(Graph::cluster(&[3, 3]), 0, 0, Variant::Bce).unwrap();
        assert_eq!(kernelize_bce(&inst).unwrap().outcome, Outcome::TrivialYes);
    }

    #[test]
    fn many_small_cliques_are_deduplicated() {
        let mut sizes = vec![1; 9];
        sizes.push(4);
        let inst = Instance::new(Graph::cluster(&sizes), 1, 1, Variant::Bce).unwrap();
        let r = kernelize_bce(&inst).unwrap();
        let Outcome::Reduced { instance, .. } = r.outcome else {
            panic!("expected a reduced instance, got {:?}", r.outcome);
        };
        assert_eq!(instance.graph.components().sizes(), vec![1, 1, 1, 4]);
        assert!(instance.graph.n() <= bce_vertex_bound(1));
    }
}
