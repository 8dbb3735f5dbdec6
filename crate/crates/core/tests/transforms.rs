mod common;

use common::capacitated;
use decmatch_core::graph::{
    bipartite_double_cover, collapse, distribute, kappa_plus, low_capacity_edges, sample_graph, split_matching, BcMap,
    CapacityFn, CollapsedMatching, EdgeId, FractionalMatching, Multigraph, Pair,
};
use decmatch_core::seed;
use proptest::prelude::*;
use std::cmp::Ordering;

fn collapsed_values(g: &Multigraph, raw: &[f64]) -> CollapsedMatching {
    let mut y = CollapsedMatching::default();
    for ((p, _), &v) in g.groups().zip(raw) {
        if v > 0.0 {
            y.values.insert(p, v);
        }
    }
    y
}

proptest! {
    #[test]
    fn collapse_after_distribute_is_identity(
        (g, k) in capacitated(9, 24, -4),
        raw in prop::collection::vec(0.0f64..1.0, 40),
    ) {
        let y = collapsed_values(&g, &raw);
        let x = distribute(&g, &k, &y).unwrap();
        let back = collapse(&g, &x);
        prop_assert_eq!(back.values.len(), y.values.len());
        for (p, v) in y.iter() {
            prop_assert!((back.get(p) - v).abs() <= 1e-9);
        }
    }

    #[test]
    fn distributed_values_follow_capacity_shares(
        (g, k) in capacitated(8, 20, -3),
        raw in prop::collection::vec(0.0f64..1.0, 40),
    ) {
        let y = collapsed_values(&g, &raw);
        let x = distribute(&g, &k, &y).unwrap();
        for (p, d) in g.groups() {
            let total = k.group_value(&g, p);
            for &e in d {
                prop_assert!((x.get(e) - y.get(p) * k.value(e) / total).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn split_reassembles(
        (g, k) in capacitated(9, 24, -4),
        raw in prop::collection::vec(0.0f64..1.0, 24),
    ) {
        let mut x = FractionalMatching::new();
        for ((e, _), &v) in g.edges().zip(&raw) {
            x.set(e, v);
        }
        let (xf, xi) = split_matching(&g, &k, &x);
        let mut sum = xf.clone();
        sum.add(&xi);
        for (e, _) in g.edges() {
            prop_assert!((sum.get(e) - x.get(e)).abs() <= 1e-9);
        }
        for (e, _) in xf.iter() {
            let p = g.endpoints(e).unwrap();
            prop_assert!(k.group_cmp(&g, p, -2) != Ordering::Greater);
        }
        for (e, _) in xi.iter() {
            let p = g.endpoints(e).unwrap();
            prop_assert_eq!(k.group_cmp(&g, p, -2), Ordering::Greater);
        }
    }

    #[test]
    fn double_cover_is_bipartite_and_degree_preserving((g, k) in capacitated(9, 24, -4)) {
        let (h, hk, map) = bipartite_double_cover(&g, &k);
        prop_assert_eq!(h.n(), 2 * g.n());
        prop_assert_eq!(h.m(), 2 * g.m());
        for v in 0..g.n() {
            prop_assert_eq!(h.degree(v), g.degree(v));
            prop_assert_eq!(h.degree(map.copy(v)), g.degree(v));
        }
        for (f, p) in h.edges() {
            prop_assert!(p.lo() < g.n() && p.hi() >= g.n());
            let e = BcMap::origin(f);
            prop_assert_eq!(hk.exponent(f), k.exponent(e));
            let q = g.endpoints(e).unwrap();
            prop_assert!(q.contains(p.lo()) && q.contains(p.hi() - g.n()));
        }
    }

    #[test]
    fn kappa_plus_raises_exactly_the_low_edges((g, k) in capacitated(8, 20, -4)) {
        let low = low_capacity_edges(&g, &k);
        let kp = kappa_plus(&g, &k);
        for (e, _) in g.edges() {
            let want = if low.contains(&e) { k.exponent(e) + 1 } else { k.exponent(e) };
            prop_assert_eq!(kp.exponent(e), want);
        }
    }

    #[test]
    fn sampling_is_reproducible_and_keeps_ids((g, k) in capacitated(9, 24, -3), s in any::<u64>()) {
        let a = sample_graph(&g, &k, 5.0, &mut seed::rng(s));
        let b = sample_graph(&g, &k, 5.0, &mut seed::rng(s));
        let ea: Vec<_> = a.edges().collect();
        let eb: Vec<_> = b.edges().collect();
        prop_assert_eq!(&ea, &eb);
        for (e, p) in ea {
            prop_assert_eq!(g.endpoints(e), Some(p));
        }
        for (e, _) in g.edges() {
            if k.value(e) * 5.0 >= 1.0 {
                prop_assert!(a.is_live(e));
            }
        }
    }
}

#[test]
fn deletion_updates_groups() {
    let mut g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
    assert_eq!(g.delete_edge(EdgeId(0)).unwrap(), Pair::new(0, 1));
    assert_eq!(g.group(Pair::new(0, 1)).unwrap().len(), 1);
    g.delete_edge(EdgeId(1)).unwrap();
    assert!(g.group(Pair::new(0, 1)).is_none());
    assert!(g.delete_edge(EdgeId(1)).is_err());
    assert_eq!(g.m(), 1);
}

#[test]
fn sampling_inclusion_rate() {
    // kappa = 1/16, rho = 4: each edge kept with probability 1/4
    let edges: Vec<(usize, usize)> = (0..200).map(|i| (i % 10, 10 + i % 7)).collect();
    let g = Multigraph::from_edges(17, &edges).unwrap();
    let k = CapacityFn::uniform(4.0, g.id_bound(), -2);
    let mut kept = 0usize;
    for s in 0..50 {
        kept += sample_graph(&g, &k, 4.0, &mut seed::rng(s)).m();
    }
    let rate = kept as f64 / (200.0 * 50.0);
    // standard error sqrt(p(1-p)/N) = 0.0043
    assert!((rate - 0.25).abs() < 3.0 * 0.0044, "rate {rate}");
}
