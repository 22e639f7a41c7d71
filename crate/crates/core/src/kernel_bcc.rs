//! Linear vertex kernel for balanced cluster completion.

use std::collections::BTreeSet;

use crate::graph::{Instance, Variant};
use crate::kernel::{trim_largest, KernelError, KernelResult, Work};

/// Vertex bound guaranteed for a reduced instance.
pub fn bcc_vertex_bound(k: usize) -> usize {
    10 * k
}

pub fn kernelize_bcc(inst: &Instance) -> Result<KernelResult, KernelError> {
    if inst.variant != Variant::Bcc {
        return Err(KernelError::WrongVariant(inst.variant));
    }
    let comps = inst.graph.components();
    if !comps.all_cliques(&inst.graph) {
        return Err(KernelError::NotCluster);
    }
    let mut w = Work::new(inst);
    let k = w.k;
    if comps.is_eta_balanced(w.eta) {
        return Ok(w.yes("balanced"));
    }
    let (scomp, lcomp) = (comps.scomp(), comps.lcomp());
    if scomp > k {
        return Ok(w.no("sanity-bounds", format!("scomp = {scomp} >= k + 1")));
    }
    if lcomp > 2 * k + w.eta {
        return Ok(w.no("sanity-bounds", format!("lcomp = {lcomp} >= 2k + eta + 1")));
    }

    let mut order: Vec<Vec<usize>> = comps.members.clone();
    order.sort_by_key(|m| (m.len(), m[0]));
    let r = order.len();
    let mut s = 0;
    let mut prefix = 0;
    for (i, m) in order.iter().enumerate() {
        prefix += m.len();
        if prefix <= 4 * k {
            s = i + 1;
        } else {
            break;
        }
    }
    let mut largest = order[r - 1].clone();
    if s + 1 < r {
        let remove: BTreeSet<usize> = order[s..r - 1].iter().flatten().copied().collect();
        w.log(
            "drop-middle",
            format!("s = {s}, deleted {} components", r - 1 - s),
        );
        let m = w.remove_vertices(&remove);
        largest = largest
            .iter()
            .map(|&v| m[v].expect("H_r is kept"))
            .collect();
    }

    let hr = largest.len();
    if hr <= 4 * k || w.eta <= 4 * k {
        return Ok(w.reduced("small-return"));
    }
    let keep = hr - (w.eta - 4 * k);
    trim_largest(&mut w, &largest, keep, 4 * k);
    Ok(w.reduced("trim-largest"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::kernel::Outcome;

    fn bcc(sizes: &[usize], k: usize, eta: usize) -> Instance {
        Instance::new(Graph::cluster(sizes), k, eta, Variant::Bcc).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let r = kernelize_bcc(&bcc(&[1, 1], 1, 0)).unwrap();
        assert_eq!(r.outcome, Outcome::TrivialYes);
        let r = kernelize_bcc(&bcc(&[3, 1], 0, 0)).unwrap();
        assert_eq!(r.outcome, Outcome::TrivialNo);
    }

    #[test]
    fn trims_large_clique() {
        let r = kernelize_bcc(&bcc(&[1, 2, 100], 2, 97)).unwrap();
        let Outcome::Reduced {
            instance,
            vertex_map,
        } = r.outcome
        else {
            panic!("expected a reduced instance");
        };
        assert_eq!(instance.eta, 8);
        assert_eq!(instance.graph.components().sizes(), vec![1, 2, 11]);
        assert!(instance.graph.n() <= bcc_vertex_bound(2));
        assert_eq!(vertex_map[0], Some(0));
        assert_eq!(vertex_map[13], Some(13));
        assert_eq!(vertex_map[14], None);
    }

    #[test]
    fn rejects_non_cluster() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = Instance {
            graph: p3,
            k: 1,
            eta: 0,
            variant: Variant::Bcc,
        };
        assert_eq!(kernelize_bcc(&inst), Err(KernelError::NotCluster));
    }
}
