//! Simple undirected graphs, component bookkeeping, and the cluster/balance
//! predicates every other module builds on.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("pair {0}-{1} is already an edge")]
    AlreadyEdge(usize, usize),
    #[error("pair {0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("pair {0}-{1} is both added and deleted")]
    Conflicting(usize, usize),
    #[error("graph is not a cluster graph")]
    NotCluster,
}

/// Normalized unordered pair with `u < v`.
pub fn pair(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                let (a, b) = pair(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Disjoint union of cliques with the given sizes, laid out on consecutive ids.
    pub fn cluster(sizes: &[usize]) -> Self {
        let n = sizes.iter().sum();
        let mut g = Graph::new(n);
        let mut start = 0;
        for &s in sizes {
            for u in start..start + s {
                for v in u + 1..start + s {
                    g.add_edge(u, v);
                }
            }
            start += s;
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(&v)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::VertexOutOfRange(u, n));
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Inserts `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n() && v < self.n(), "bad pair {u}-{v}");
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
            true
        } else {
            false
        }
    }

    /// Removes `uv`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if self.adj[u].remove(&v) {
            self.adj[v].remove(&u);
            self.m -= 1;
            true
        } else {
            false
        }
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn components(&self) -> Components {
        Components::of(self)
    }

    /// Subgraph induced by `keep` (any order), re-indexed densely in increasing
    /// id order. Returns the graph and the old-to-new vertex map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut map = vec![None; self.n()];
        for (i, &v) in sorted.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut h = Graph::new(sorted.len());
        for &u in &sorted {
            for &v in self.adj[u].range(u + 1..) {
                if let (Some(a), Some(b)) = (map[u], map[v]) {
                    h.add_edge(a, b);
                }
            }
        }
        (h, map)
    }

    /// Graph with the listed vertices removed, re-indexed.
    pub fn without(&self, remove: &BTreeSet<usize>) -> (Graph, Vec<Option<usize>>) {
        let keep: Vec<usize> = (0..self.n()).filter(|v| !remove.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Some induced P3 `(u, v, w)` with middle vertex `v`, or `None`.
    pub fn find_induced_p3(&self) -> Option<(usize, usize, usize)> {
        for v in 0..self.n() {
            let nb: Vec<usize> = self.adj[v].iter().copied().collect();
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if !self.has_edge(u, w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    pub fn is_cluster_graph(&self) -> bool {
        self.components().all_cliques(self)
    }

    pub fn is_eta_balanced(&self, eta: usize) -> bool {
        self.components().is_eta_balanced(eta)
    }

    pub fn is_balanced_cluster(&self, eta: usize) -> bool {
        let c = self.components();
        c.all_cliques(self) && c.is_eta_balanced(eta)
    }

    pub fn is_eta_blocker(&self, component: usize, eta: usize) -> bool {
        let c = self.components();
        let s = c.members[component].len();
        c.sizes().into_iter().any(|t| s.abs_diff(t) > eta)
    }
}

/// Component index of a graph. Component ids are assigned in order of their
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub comp_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Components {
    pub fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut comp_of = vec![usize::MAX; n];
        let mut members = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = members.len();
            comp_of[s] = id;
            let mut stack = vec![s];
            let mut mem = vec![s];
            while let Some(u) = stack.pop() {
                for &v in g.neighbors(u) {
                    if comp_of[v] == usize::MAX {
                        comp_of[v] = id;
                        stack.push(v);
                        mem.push(v);
                    }
                }
            }
            mem.sort_unstable();
            members.push(mem);
        }
        Components { comp_of, members }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    /// The multiset CS(G), sorted ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.members.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    pub fn lcomp(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scomp(&self) -> usize {
        self.members.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_eta_balanced(&self, eta: usize) -> bool {
        self.lcomp() - self.scomp() <= eta
    }

    pub fn is_clique(&self, g: &Graph, id: usize) -> bool {
        let mem = &self.members[id];
        let s = mem.len();
        mem.iter().all(|&v| g.degree(v) == s - 1)
    }

    pub fn all_cliques(&self, g: &Graph) -> bool {
        (0..self.count()).all(|id| self.is_clique(g, id))
    }
}

/// Whether a multiset of component sizes is η-balanced. Empty counts as balanced.
pub fn sizes_balanced(sizes: &[usize], eta: usize) -> bool {
    match (sizes.iter().min(), sizes.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= eta,
        _ => true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Bcc,
    Bcd,
    Bce,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Bcc => "BCC",
            Variant::Bcd => "BCD",
            Variant::Bce => "BCE",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "BCC" => Some(Variant::Bcc),
            "BCD" => Some(Variant::Bcd),
            "BCE" => Some(Variant::Bce),
            _ => None,
        }
    }

    pub fn allows_add(self) -> bool {
        matches!(self, Variant::Bcc | Variant::Bce)
    }

    pub fn allows_delete(self) -> bool {
        matches!(self, Variant::Bcd | Variant::Bce)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub eta: usize,
    pub variant: Variant,
}

impl Instance {
    /// Builds an instance, rejecting BCC inputs that are not cluster graphs.
    pub fn new(graph: Graph, k: usize, eta: usize, variant: Variant) -> Result<Self, GraphError> {
        if variant == Variant::Bcc && !graph.is_cluster_graph() {
            return Err(GraphError::NotCluster);
        }
        Ok(Instance {
            graph,
            k,
            eta,
            variant,
        })
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        Instance {
            variant,
            ..self.clone()
        }
    }
}

/// A set of pair additions and deletions relative to some base graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditSet {
    pub additions: BTreeSet<(usize, usize)>,
    pub deletions: BTreeSet<(usize, usize)>,
}

impl EditSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.additions.len() + self.deletions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn add(&mut self, u: usize, v: usize) {
        self.additions.insert(pair(u, v));
    }

    pub fn delete(&mut self, u: usize, v: usize) {
        self.deletions.insert(pair(u, v));
    }

    /// The edit set turning `from` into `to` (same vertex set).
    pub fn between(from: &Graph, to: &Graph) -> Self {
        assert_eq!(from.n(), to.n());
        let a: BTreeSet<_> = from.edges().into_iter().collect();
        let b: BTreeSet<_> = to.edges().into_iter().collect();
        EditSet {
            additions: b.difference(&a).copied().collect(),
            deletions: a.difference(&b).copied().collect(),
        }
    }

    /// Rewrites vertex ids through `f`.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Self {
        EditSet {
            additions: self
                .additions
                .iter()
                .map(|&(u, v)| pair(f(u), f(v)))
                .collect(),
            deletions: self
                .deletions
                .iter()
                .map(|&(u, v)| pair(f(u), f(v)))
                .collect(),
        }
    }
}

pub fn apply_edits(g: &Graph, f: &EditSet) -> Result<Graph, GraphError> {
    let mut h = g.clone();
    for &(u, v) in &f.deletions {
        g.check_pair(u, v)?;
        if f.additions.contains(&(u, v)) {
            return Err(GraphError::Conflicting(u, v));
        }
        if !h.remove_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
    }
    for &(u, v) in &f.additions {
        g.check_pair(u, v)?;
        if !h.add_edge(u, v) {
            return Err(GraphError::AlreadyEdge(u, v));
        }
    }
    Ok(h)
}

pub fn add_edges(g: &Graph, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let mut f = EditSet::new();
    for &(u, v) in pairs {
        f.add(u, v);
    }
    apply_edits(g, &f)
}

pub fn delete_edges(g: &Graph, pairs: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let mut f = EditSet::new();
    for &(u, v) in pairs {
        f.delete(u, v);
    }
    apply_edits(g, &f)
}

/// Whether `f` is a solution for `inst`: within budget, respecting the
/// variant, and producing an η-balanced cluster graph.
pub fn verify_solution(inst: &Instance, f: &EditSet) -> bool {
    if f.len() > inst.k {
        return false;
    }
    if !inst.variant.allows_add() && !f.additions.is_empty() {
        return false;
    }
    if !inst.variant.allows_delete() && !f.deletions.is_empty() {
        return false;
    }
    match apply_edits(&inst.graph, f) {
        Ok(h) => h.is_balanced_cluster(inst.eta),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn components_basic() {
        assert!(Graph::new(0).components().sizes().is_empty());
        let g = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.components().sizes(), vec![1, 1, 3]);
        assert_eq!(Graph::cluster(&[3, 3]).components().sizes(), vec![3, 3]);
    }

    #[test]
    fn p3_detection() {
        assert_eq!(Graph::cluster(&[3]).find_induced_p3(), None);
        assert!(Graph::cluster(&[3]).is_cluster_graph());
        assert_eq!(p3().find_induced_p3(), Some((0, 1, 2)));
        assert!(!p3().is_cluster_graph());
        assert!(Graph::cluster(&[3, 2]).is_cluster_graph());
    }

    #[test]
    fn balance_and_blockers() {
        assert!(Graph::cluster(&[3, 3]).is_eta_balanced(0));
        assert!(!Graph::cluster(&[1, 4]).is_eta_balanced(2));
        assert!(p3().is_eta_balanced(0));
        let g = Graph::cluster(&[5, 1]);
        assert!(g.is_eta_blocker(0, 3));
        assert!(!g.is_eta_blocker(0, 4));
        assert!(!Graph::cluster(&[4]).is_eta_blocker(0, 0));
        assert!(Graph::new(0).is_balanced_cluster(0));
    }

    #[test]
    fn edits_apply() {
        let g = p3();
        let h = delete_edges(&g, &[(0, 1)]).unwrap();
        assert_eq!(h.edges(), vec![(1, 2)]);
        let h = add_edges(&Graph::new(2), &[(1, 0)]).unwrap();
        assert_eq!(h, Graph::cluster(&[2]));
        assert_eq!(apply_edits(&g, &EditSet::new()).unwrap(), g);
        assert_eq!(add_edges(&g, &[(0, 1)]), Err(GraphError::AlreadyEdge(0, 1)));
        assert_eq!(
            delete_edges(&g, &[(0, 2)]),
            Err(GraphError::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn verify_examples() {
        let g = Graph::cluster(&[1, 2]);
        let mut f = EditSet::new();
        f.add(0, 1);
        f.add(0, 2);
        let bcc = Instance::new(g.clone(), 2, 0, Variant::Bcc).unwrap();
        assert!(verify_solution(&bcc, &f));
        assert!(!verify_solution(&bcc.with_variant(Variant::Bcd), &f));
        let tight = Instance::new(g, 1, 0, Variant::Bcc).unwrap();
        assert!(!verify_solution(&tight, &f));
        assert!(Instance::new(p3(), 1, 0, Variant::Bcc).is_err());
    }

    #[test]
    fn between_roundtrip() {
        let g = p3();
        let h = Graph::cluster(&[2, 1]);
        let f = EditSet::between(&g, &h);
        assert_eq!(apply_edits(&g, &f).unwrap(), h);
    }
}
