#![allow(dead_code)]

use decmatch_core::graph::{CapacityFn, Multigraph};
use proptest::prelude::*;

/// Multigraph on `2..=max_n` vertices with up to `max_m` edges, parallel
/// copies allowed.
pub fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |raw| {
            let edges: Vec<(usize, usize)> = raw.into_iter().filter(|(u, v)| u != v).collect();
            Multigraph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Simple graph: each pair kept with probability about `p`.
pub fn simple_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n, 0.05f64..0.7).prop_flat_map(|(n, p)| {
        prop::collection::vec(prop::bool::weighted(p), n * (n - 1) / 2).prop_map(move |keep| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if keep[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Multigraph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Graph paired with a group-uniform capacity function, exponents in
/// `lo..=0`.
pub fn capacitated(max_n: usize, max_m: usize, lo: i32) -> impl Strategy<Value = (Multigraph, CapacityFn)> {
    multigraph(max_n, max_m).prop_flat_map(move |g| {
        let groups = g.pair_count();
        prop::collection::vec(lo..=0, groups).prop_map(move |exps| {
            let mut k = CapacityFn::uniform(4.0, g.id_bound(), 0);
            for ((_, d), &x) in g.groups().zip(&exps) {
                for &e in d {
                    k.set_exponent(e, x);
                }
            }
            (g.clone(), k)
        })
    })
}

pub fn er(n: usize, p: f64, seed: u64) -> Multigraph {
    use rand::Rng;
    let mut r = decmatch_core::seed::rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Multigraph::from_edges(n, &edges).unwrap()
}
