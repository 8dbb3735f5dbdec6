use super::{CapacityFn, EdgeId, Multigraph};
use crate::seed::Rng;
use alloc::collections::BTreeSet;
use core::cmp::Ordering;
use rand::Rng as _;

/// Id scheme of the bipartite double cover: vertex `v` keeps its index and
/// its copy is `n + v`; edge `e = (u, v)` with `u < v` becomes `2e` on
/// `(u, v')` and `2e + 1` on `(v, u')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BcMap {
    pub n: usize,
}

impl BcMap {
    #[inline]
    pub fn first(e: EdgeId) -> EdgeId {
        EdgeId(2 * e.0)
    }

    #[inline]
    pub fn second(e: EdgeId) -> EdgeId {
        EdgeId(2 * e.0 + 1)
    }

    #[inline]
    pub fn origin(f: EdgeId) -> EdgeId {
        EdgeId(f.0 / 2)
    }

    #[inline]
    pub fn copy(&self, v: usize) -> usize {
        self.n + v
    }
}

pub fn bipartite_double_cover(g: &Multigraph, kappa: &CapacityFn) -> (Multigraph, CapacityFn, BcMap) {
    let map = BcMap { n: g.n() };
    let mut h = Multigraph::new(2 * g.n());
    let mut k = CapacityFn::uniform(kappa.alpha(), 2 * g.id_bound(), 0);
    for (e, p) in g.edges() {
        let (u, v) = (p.lo(), p.hi());
        for (f, a, b) in [(BcMap::first(e), u, map.copy(v)), (BcMap::second(e), v, map.copy(u))] {
            h.add_edge_with_id(f, a, b).expect("fresh bc edge");
            k.set_exponent(f, kappa.exponent(e));
        }
    }
    (h, k, map)
}

/// Edges whose whole group has capacity at most `1/alpha^2`.
pub fn low_capacity_edges(g: &Multigraph, kappa: &CapacityFn) -> BTreeSet<EdgeId> {
    g.groups()
        .filter(|(p, _)| kappa.group_cmp(g, *p, -2) != Ordering::Greater)
        .flat_map(|(_, d)| d.iter().copied())
        .collect()
}

/// `kappa` multiplied by alpha on the low-capacity edges.
pub fn kappa_plus(g: &Multigraph, kappa: &CapacityFn) -> CapacityFn {
    let mut k = kappa.clone();
    for e in low_capacity_edges(g, kappa) {
        k.set_exponent(e, (kappa.exponent(e) + 1).min(0));
    }
    k
}

/// Keeps each edge independently with probability `min(1, kappa(e) rho)`.
pub fn sample_graph(g: &Multigraph, kappa: &CapacityFn, rho: f64, rng: &mut Rng) -> Multigraph {
    g.filter_edges(|e, _| {
        let p = kappa.value(e) * rho;
        if p >= 1.0 {
            true
        } else if p <= 0.0 {
            false
        } else {
            rng.random_bool(p)
        }
    })
}
