use std::collections::BTreeSet;

use balclust::binb::{
    hamming_project, poly_multiply, solve_binb, solve_binb_dp3, BinBInstance, MaskPolynomial,
};
use balclust::cccd::{cccd_on_clique, cost_profile, Window};
use balclust::graph::{apply_edits, EditSet, Graph, Instance, Variant};
use balclust::harness::io::{parse_instance, serialize_instance};
use balclust::kernel_bce::{find_modulator, p3_saturation, ModulatorResult, Saturation};
use balclust::oracle::{oracle_binb, oracle_solve};
use balclust::partition::{partitions, spp};
use balclust::{kernel_bound, kernelize, verify_solution, Outcome};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(graph_on)
}

fn graph_on(n: usize) -> impl Strategy<Value = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
        let mut g = Graph::new(n);
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits[i] {
                    g.add_edge(u, v);
                }
                i += 1;
            }
        }
        g
    })
}

fn sizes() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1usize..=40, 1..8)
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Bcc), Just(Variant::Bcd), Just(Variant::Bce)]
}

fn binb(max_s: usize, max_t: usize) -> impl Strategy<Value = BinBInstance> {
    (1..=max_s, 1..=max_t).prop_flat_map(|(s, t)| {
        (
            proptest::collection::vec(1u64..=5, s),
            proptest::collection::vec(1u64..=10, t),
            proptest::collection::vec(proptest::collection::vec(0u64..=6, t), s),
            0u64..=12,
        )
            .prop_map(|(b, c, cost, w)| BinBInstance::new(b, c, cost, w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn components_partition_vertices(g in graph(10)) {
        let c = g.components();
        let mut seen: Vec<usize> = c.members.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
        prop_assert_eq!(c.sizes().iter().sum::<usize>(), g.n());
        prop_assert_eq!(g.is_cluster_graph(), g.find_induced_p3().is_none());
    }

    #[test]
    fn edit_between_round_trips((a, b) in (0usize..=8).prop_flat_map(|n| (graph_on(n), graph_on(n)))) {
        let f = EditSet::between(&a, &b);
        prop_assert_eq!(apply_edits(&a, &f).unwrap(), b);
    }

    #[test]
    fn file_round_trip(g in graph(9), k in 0usize..20, eta in 0usize..20, v in variant()) {
        prop_assume!(v != Variant::Bcc || g.is_cluster_graph());
        let inst = Instance::new(g, k, eta, v).unwrap();
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn spp_counts_merge_edges(parts in proptest::collection::vec(1usize..=6, 1..6)) {
        let g = Graph::cluster(&parts);
        let n = g.n();
        prop_assert_eq!(spp(&parts), n * (n - 1) / 2 - g.m());
    }

    #[test]
    fn partitions_are_distinct_and_sum(l in 1usize..=18) {
        let ps = partitions(l);
        let set: BTreeSet<Vec<usize>> = ps.iter().cloned().collect();
        prop_assert_eq!(set.len(), ps.len());
        for p in &ps {
            prop_assert_eq!(p.iter().sum::<usize>(), l);
            prop_assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn hamming_projection_keeps_weight(exps in proptest::collection::btree_set(0u64..256, 0..20), i in 0u32..9) {
        let p = MaskPolynomial::from_exponents(8, exps.clone());
        let h = hamming_project(&p, i);
        prop_assert!(h.present.iter().all(|e| e.count_ones() == i));
        prop_assert_eq!(h.present.len(), exps.iter().filter(|e| e.count_ones() == i).count());
    }

    #[test]
    fn disjoint_products_keep_weight(a in 0u64..128, b in 0u64..128) {
        let pa = MaskPolynomial::from_exponents(7, [a]);
        let pb = MaskPolynomial::from_exponents(7, [b]);
        let w = a.count_ones() + b.count_ones();
        let kept = hamming_project(&poly_multiply(&pa, &pb), w);
        prop_assert_eq!(!kept.is_empty(), a & b == 0);
    }

    #[test]
    fn binb_agrees_with_brute_force(inst in binb(5, 4)) {
        let fast = solve_binb(&inst);
        let truth = oracle_binb(&inst).unwrap();
        prop_assert_eq!(fast.is_some(), truth.is_some());
        prop_assert_eq!(solve_binb_dp3(&inst).is_some(), truth.is_some());
        if let Some(a) = fast {
            prop_assert!(inst.assignment_ok(&a));
        }
    }

    #[test]
    fn clique_split_cost_is_monotone(n in 1usize..=30, g1 in 1usize..=30, span in 0usize..=30) {
        let w = Window::new(g1, g1 + span);
        let prof = cost_profile(n, w);
        prop_assert!(prof.windows(2).all(|p| p[0].1 <= p[1].1));
        prop_assert_eq!(cccd_on_clique(n, w), prof.first().map(|p| p.1));
    }

    #[test]
    fn saturation_edits_are_forced(g in graph(8), k in 0usize..4) {
        let truth = oracle_solve(&Instance { graph: g.clone(), k, eta: g.n(), variant: Variant::Bce }).unwrap();
        match p3_saturation(&g, k) {
            Saturation::Infeasible => prop_assert!(truth.is_none()),
            Saturation::Done { graph, k: k2, forced } => {
                prop_assert_eq!(k2 + forced.len(), k);
                let reduced = oracle_solve(&Instance { graph, k: k2, eta: g.n(), variant: Variant::Bce }).unwrap();
                prop_assert_eq!(reduced.is_some(), truth.is_some());
            }
        }
    }

    #[test]
    fn modulator_leaves_cluster_graph(g in graph(10), k in 0usize..5) {
        if let ModulatorResult::Found(s) = find_modulator(&g, k) {
            prop_assert!(s.len() <= 3 * k);
            prop_assert!(g.without(&s).0.is_cluster_graph());
            for &v in &s {
                let mut t = s.clone();
                t.remove(&v);
                prop_assert!(!g.without(&t).0.is_cluster_graph());
            }
        }
    }

    #[test]
    fn kernels_on_cluster_graphs(sz in sizes(), k in 0usize..4, eta in 0usize..12, v in variant()) {
        let inst = Instance::new(Graph::cluster(&sz), k, eta, v).unwrap();
        let r = kernelize(&inst).unwrap();
        if let Outcome::Reduced { instance, vertex_map } = &r.outcome {
            prop_assert!(instance.graph.n() <= kernel_bound(v, instance.k));
            prop_assert!(instance.k <= k);
            let kept: Vec<usize> = vertex_map.iter().flatten().copied().collect();
            prop_assert_eq!(kept, (0..instance.graph.n()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn kernels_preserve_answers(g in graph(7), k in 0usize..3, eta in 0usize..4, v in variant()) {
        prop_assume!(v != Variant::Bcc || g.is_cluster_graph());
        let inst = Instance::new(g, k, eta, v).unwrap();
        let truth = oracle_solve(&inst).unwrap();
        if let Some(f) = &truth {
            prop_assert!(verify_solution(&inst, f));
        }
        let r = kernelize(&inst).unwrap();
        match &r.outcome {
            Outcome::Reduced { instance, .. } => {
                prop_assert_eq!(oracle_solve(instance).unwrap().is_some(), truth.is_some());
            }
            o => prop_assert_eq!(o.verdict(), Some(truth.is_some())),
        }
    }
}
