//! Polynomial kernel for balanced cluster deletion, based on closure of the
//! graph and a Ramsey bound for c-closed graphs.

use std::collections::BTreeSet;

use crate::graph::{Graph, Instance, Variant};
use crate::kernel::{
    dedup_small_cliques, large_clique_pipeline, sorted_clique_components, KernelError,
    KernelResult, Work,
};

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// `R_c(a, b) = (a-1)(b-1) + (c-1) C(b-1, 2) + 1`.
pub fn ramsey_bound(a: usize, b: usize, c: usize) -> usize {
    assert!(a >= 1 && b >= 1 && c >= 1);
    (a - 1) * (b - 1) + (c - 1) * choose2(b - 1) + 1
}

/// The threshold used by the kernel for budget `k`.
pub fn kernel_ramsey(k: usize) -> usize {
    ramsey_bound(k + 2, k + 2, k + 1)
}

/// Vertex bound guaranteed for a reduced instance.
pub fn bcd_vertex_bound(k: usize) -> usize {
    let r = kernel_ramsey(k);
    3 * r + k * (r - 1) + (k + 1) * (k + 1) * (k + 2) / 2 + r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueOrIndependent {
    /// Inclusion-maximal clique with at least `a` vertices.
    Clique(Vec<usize>),
    /// Pairwise non-adjacent set of exactly `b` vertices.
    Independent(Vec<usize>),
}

/// Whether every two non-adjacent vertices have at most `c - 1` common neighbours.
pub fn is_c_closed(g: &Graph, c: usize) -> bool {
    max_common_nonadjacent(g) < c
}

/// Largest common-neighbour count over non-adjacent pairs (0 if none).
pub fn max_common_nonadjacent(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    let mut cnt = vec![0usize; n];
    for u in 0..n {
        let mut touched = Vec::new();
        for &w in g.neighbors(u) {
            for &x in g.neighbors(w) {
                if x > u && !g.has_edge(u, x) {
                    if cnt[x] == 0 {
                        touched.push(x);
                    }
                    cnt[x] += 1;
                }
            }
        }
        for x in touched {
            best = best.max(cnt[x]);
            cnt[x] = 0;
        }
    }
    best
}

fn find_common_violation(g: &Graph, vs: &[usize], k: usize) -> Option<(usize, usize)> {
    let mut cnt = vec![0usize; g.n()];
    for &u in vs {
        let mut touched = Vec::new();
        let mut hit = None;
        for &w in g.neighbors(u) {
            for &x in g.neighbors(w) {
                if x > u && !g.has_edge(u, x) {
                    if cnt[x] == 0 {
                        touched.push(x);
                    }
                    cnt[x] += 1;
                    if cnt[x] > k && hit.is_none() {
                        hit = Some((u, x));
                    }
                }
            }
        }
        for x in touched {
            cnt[x] = 0;
        }
        if hit.is_some() {
            return hit;
        }
    }
    None
}

/// First maximal clique of size at least `a` in the subgraph induced by `vs`,
/// found by pruned Bron-Kerbosch search over increasing vertex ids.
fn large_maximal_clique(g: &Graph, vs: &[usize], a: usize) -> Option<Vec<usize>> {
    fn rec(
        g: &Graph,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        a: usize,
    ) -> Option<Vec<usize>> {
        if p.is_empty() && x.is_empty() {
            return (r.len() >= a).then(|| r.clone());
        }
        if r.len() + p.len() < a {
            return None;
        }
        let mut p = p;
        let mut x = x;
        while let Some(&v) = p.first() {
            let np: Vec<usize> = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            r.push(v);
            let hit = rec(g, r, np, nx, a);
            r.pop();
            if hit.is_some() {
                return hit;
            }
            p.remove(0);
            x.push(v);
            if r.len() + p.len() < a {
                return None;
            }
        }
        None
    }
    rec(g, &mut Vec::new(), vs.to_vec(), Vec::new(), a)
}

/// Some independent set of exactly `b` vertices among `vs`, by backtracking.
fn independent_set(g: &Graph, vs: &[usize], b: usize) -> Option<Vec<usize>> {
    fn rec(g: &Graph, cand: &[usize], cur: &mut Vec<usize>, b: usize) -> bool {
        if cur.len() == b {
            return true;
        }
        for (i, &v) in cand.iter().enumerate() {
            if cur.len() + cand.len() - i < b {
                return false;
            }
            let rest: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&u| !g.has_edge(u, v))
                .collect();
            cur.push(v);
            if rec(g, &rest, cur, b) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    rec(g, vs, &mut cur, b).then_some(cur)
}

/// On a component `vs` with at least `R_c(a, b)` vertices of a c-closed graph,
/// returns a maximal clique of size at least `a` or an independent set of size
/// `b`. Witnesses are checked before returning.
pub fn clique_or_independent_set(
    g: &Graph,
    vs: &[usize],
    a: usize,
    b: usize,
    _c: usize,
) -> Result<CliqueOrIndependent, KernelError> {
    let mut vs = vs.to_vec();
    vs.sort_unstable();
    let inside: BTreeSet<usize> = vs.iter().copied().collect();
    if let Some(q) = large_maximal_clique(g, &vs, a) {
        assert!(g.is_clique(&q) && q.len() >= a);
        let maximal = vs
            .iter()
            .filter(|v| !q.contains(v))
            .all(|&v| q.iter().any(|&u| !g.has_edge(u, v)));
        assert!(maximal, "clique witness is not maximal");
        return Ok(CliqueOrIndependent::Clique(q));
    }
    if let Some(i) = independent_set(g, &vs, b) {
        assert!(i.len() == b && i.iter().all(|v| inside.contains(v)));
        assert!(i
            .iter()
            .enumerate()
            .all(|(x, &u)| i[x + 1..].iter().all(|&v| !g.has_edge(u, v))));
        return Ok(CliqueOrIndependent::Independent(i));
    }
    Err(KernelError::RamseyWitnessMissing(vs.len()))
}

pub fn kernelize_bcd(inst: &Instance) -> Result<KernelResult, KernelError> {
    if inst.variant != Variant::Bcd {
        return Err(KernelError::WrongVariant(inst.variant));
    }
    let mut w = Work::new(inst);
    loop {
        let comps = w.g.components();
        if comps.all_cliques(&w.g) && comps.is_eta_balanced(w.eta) {
            return Ok(w.yes("balanced-cluster"));
        }
        let lcomp = comps.lcomp();
        if w.eta > lcomp {
            w.log("cap-eta", format!("eta {} -> {lcomp}", w.eta));
            w.eta = lcomp;
        }
        let non_clique: Vec<Vec<usize>> = (0..comps.count())
            .filter(|&c| !comps.is_clique(&w.g, c))
            .map(|c| comps.members[c].clone())
            .collect();
        if non_clique.len() > w.k {
            let why = format!("{} non-clique components, k = {}", non_clique.len(), w.k);
            return Ok(w.no("non-clique-count", why));
        }
        let all: Vec<usize> = non_clique.iter().flatten().copied().collect();
        if let Some((u, v)) = find_common_violation(&w.g, &all, w.k) {
            let why = format!("{u} and {v} share more than k common neighbours");
            return Ok(w.no("common-neighbours", why));
        }
        debug_assert!(is_c_closed(&w.g, w.k + 1));
        let r = kernel_ramsey(w.k);
        if let Some(comp) = non_clique.iter().find(|c| c.len() >= r) {
            match clique_or_independent_set(&w.g, comp, w.k + 2, w.k + 2, w.k + 1)? {
                CliqueOrIndependent::Independent(i) => {
                    return Ok(w.no("clique-or-independent", format!("independent set {i:?}")));
                }
                CliqueOrIndependent::Clique(q) => {
                    let qs: BTreeSet<usize> = q.iter().copied().collect();
                    let cut: Vec<(usize, usize)> = q
                        .iter()
                        .flat_map(|&u| w.g.neighbors(u).iter().map(move |&v| (u, v)))
                        .filter(|(_, v)| !qs.contains(v))
                        .collect();
                    if cut.len() > w.k {
                        let why = format!(
                            "isolating clique of size {} needs {} deletions",
                            q.len(),
                            cut.len()
                        );
                        return Ok(w.no("clique-or-independent", why));
                    }
                    for &(u, v) in &cut {
                        w.g.remove_edge(u, v);
                    }
                    w.k -= cut.len();
                    w.log(
                        "clique-or-independent",
                        format!(
                            "isolated clique of size {}, deleted {} edges, k = {}",
                            q.len(),
                            cut.len(),
                            w.k
                        ),
                    );
                    continue;
                }
            }
        }
        break;
    }

    let k = w.k;
    dedup_small_cliques(&mut w, "small-cliques", k + 1, k + 1, |_| true);
    let large = sorted_clique_components(&w.g, |m| m.len() >= k + 2);
    if large.is_empty() {
        return Ok(w.reduced("no-large-cliques"));
    }
    let r = kernel_ramsey(k);
    Ok(large_clique_pipeline(w, large, r, 2 * r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Outcome;

    #[test]
    fn ramsey_values() {
        assert_eq!(ramsey_bound(3, 3, 2), 6);
        assert_eq!(ramsey_bound(2, 2, 7), 2);
        assert_eq!(kernel_ramsey(2), 16);
    }

    #[test]
    fn witness_examples() {
        let k6 = Graph::cluster(&[6]);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(
            clique_or_independent_set(&k6, &all, 3, 3, 2).unwrap(),
            CliqueOrIndependent::Clique(all.clone())
        );
        let star = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(is_c_closed(&star, 2));
        match clique_or_independent_set(&star, &all, 3, 3, 2).unwrap() {
            CliqueOrIndependent::Independent(i) => assert!(!i.contains(&0)),
            other => panic!("unexpected {other:?}"),
        }
        let joined =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
                .unwrap();
        match clique_or_independent_set(&joined, &all, 3, 3, 2).unwrap() {
            CliqueOrIndependent::Clique(q) => assert_eq!(q.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kernel_examples() {
        let k4e = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let inst = Instance::new(k4e, 1, 0, Variant::Bcd).unwrap();
        assert_eq!(kernelize_bcd(&inst).unwrap().outcome, Outcome::TrivialNo);
        let inst = Instance::new(Graph::cluster(&[5, 5]), 2, 0, Variant::Bcd).unwrap();
        assert_eq!(kernelize_bcd(&inst).unwrap().outcome, Outcome::TrivialYes);
    }

    #[test]
    fn pendant_clique_is_isolated() {
        let mut g = Graph::cluster(&[6, 1]);
        g.add_edge(0, 6);
        let inst = Instance::new(g, 1, 5, Variant::Bcd).unwrap();
        let r = kernelize_bcd(&inst).unwrap();
        assert!(r.trace.iter().any(|t| t.rule == "clique-or-independent"));
        assert_eq!(r.outcome, Outcome::TrivialYes);
    }
}
