//! Capacitated fractional matchings from blocking flows.

use crate::error::{Error, Result};
use crate::graph::{bipartite_double_cover, BcMap, CapacityFn, EdgeId, FractionalMatching, Multigraph, Pair};
use crate::OpCounter;
use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::cmp::Ordering;

const EPS_FLOW: f64 = 1e-12;

struct Dinic {
    to: Vec<usize>,
    cap: Vec<f64>,
    adj: Vec<Vec<usize>>,
    level: Vec<usize>,
    it: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic { to: Vec::new(), cap: Vec::new(), adj: alloc::vec![Vec::new(); n], level: Vec::new(), it: Vec::new() }
    }

    fn arc(&mut self, u: usize, v: usize, c: f64) -> usize {
        let id = self.to.len();
        self.to.extend([v, u]);
        self.cap.extend([c, 0.0]);
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    fn bfs(&mut self, s: usize, t: usize, ops: &mut OpCounter) -> bool {
        self.level = alloc::vec![usize::MAX; self.adj.len()];
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.adj[u] {
                ops.tick(1);
                let v = self.to[a];
                if self.cap[a] > EPS_FLOW && self.level[v] == usize::MAX {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] != usize::MAX
    }

    fn dfs(&mut self, u: usize, t: usize, limit: f64, ops: &mut OpCounter) -> f64 {
        if u == t {
            return limit;
        }
        while self.it[u] < self.adj[u].len() {
            let a = self.adj[u][self.it[u]];
            let v = self.to[a];
            ops.tick(1);
            if self.cap[a] > EPS_FLOW && self.level[v] == self.level[u] + 1 {
                let pushed = self.dfs(v, t, limit.min(self.cap[a]), ops);
                if pushed > 0.0 {
                    self.cap[a] -= pushed;
                    self.cap[a ^ 1] += pushed;
                    return pushed;
                }
            }
            self.it[u] += 1;
        }
        0.0
    }

    /// Runs at most `max_phases` blocking-flow phases.
    fn run(&mut self, s: usize, t: usize, max_phases: usize, ops: &mut OpCounter) -> usize {
        let mut phases = 0;
        while phases < max_phases && self.bfs(s, t, ops) {
            phases += 1;
            self.it = alloc::vec![0; self.adj.len()];
            while self.dfs(s, t, f64::INFINITY, ops) > EPS_FLOW {}
        }
        phases
    }

    fn flow(&self, arc: usize) -> f64 {
        self.cap[arc ^ 1]
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = alloc::vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > EPS_FLOW && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Phase budget: `2 ceil(1/eps)`.
pub fn phase_cap(epsilon: f64) -> usize {
    2 * libm::ceil(1.0 / epsilon - 1e-12) as usize
}

/// Proper 2-colouring, `true` meaning left.
pub fn two_coloring(g: &Multigraph) -> Option<Vec<bool>> {
    let s = g.simple();
    let mut color: Vec<Option<bool>> = alloc::vec![None; g.n()];
    for r in 0..g.n() {
        if color[r].is_some() {
            continue;
        }
        color[r] = Some(true);
        let mut stack = alloc::vec![r];
        while let Some(u) = stack.pop() {
            let cu = color[u].expect("coloured before push");
            for &v in &s.adj[u] {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        stack.push(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(color.into_iter().map(|c| c.unwrap_or(true)).collect())
}

/// Flow-based fractional matching for a bipartite graph with sides given by `left`.
pub fn bipartite_flow(
    g: &Multigraph,
    kappa: &CapacityFn,
    left: &[bool],
    max_phases: usize,
    ops: &mut OpCounter,
) -> FractionalMatching {
    bipartite_flow_cut(g, kappa, left, max_phases, ops).0
}

/// As [`bipartite_flow`], also returning the edges whose arcs cross from
/// the source side of the residual graph to the sink side. When the flow
/// is maximum these edges form the edge part of a minimum cut.
pub fn bipartite_flow_cut(
    g: &Multigraph,
    kappa: &CapacityFn,
    left: &[bool],
    max_phases: usize,
    ops: &mut OpCounter,
) -> (FractionalMatching, Vec<EdgeId>) {
    let n = g.n();
    let (s, t) = (n, n + 1);
    let mut d = Dinic::new(n + 2);
    for v in 0..n {
        if left[v] {
            d.arc(s, v, 1.0);
        } else {
            d.arc(v, t, 1.0);
        }
    }
    let arcs: Vec<(EdgeId, usize)> = g
        .edges()
        .map(|(e, p)| {
            let (u, v) = if left[p.lo()] { (p.lo(), p.hi()) } else { (p.hi(), p.lo()) };
            (e, d.arc(u, v, kappa.value(e)))
        })
        .collect();
    d.run(s, t, max_phases, ops);
    let reach = d.reachable(s);
    let mut x = FractionalMatching::new();
    let mut cut = Vec::new();
    for (e, a) in arcs {
        let f = d.flow(a);
        if f > EPS_FLOW {
            x.set(e, f.min(kappa.value(e)));
        }
        if reach[d.to[a ^ 1]] && !reach[d.to[a]] {
            cut.push(e);
        }
    }
    (x, cut)
}

pub fn frac_match_bipartite(g: &Multigraph, kappa: &CapacityFn, epsilon: f64) -> Result<FractionalMatching> {
    let left = two_coloring(g).ok_or(Error::NotBipartite)?;
    Ok(bipartite_flow(g, kappa, &left, phase_cap(epsilon), &mut OpCounter::default()))
}

/// Groups whose capacity exceeds `1/alpha`.
pub fn heavy_groups(g: &Multigraph, kappa: &CapacityFn) -> Vec<Pair> {
    g.groups().map(|(p, _)| p).filter(|&p| kappa.group_cmp(g, p, -1) == Ordering::Greater).collect()
}

/// Fractional matching of a general multigraph: flow on the bipartite
/// double cover, averaged back over the two copies of each edge.
pub fn frac_match_general(g: &Multigraph, kappa: &CapacityFn, epsilon: f64) -> Result<FractionalMatching> {
    frac_match_general_counted(g, kappa, epsilon, &mut OpCounter::default())
}

pub fn frac_match_general_counted(
    g: &Multigraph,
    kappa: &CapacityFn,
    epsilon: f64,
    ops: &mut OpCounter,
) -> Result<FractionalMatching> {
    let heavy = heavy_groups(g, kappa);
    if !heavy.is_empty() {
        return Err(Error::GroupCapacity(heavy));
    }
    let (bc, kbc, map) = bipartite_double_cover(g, kappa);
    let left: Vec<bool> = (0..bc.n()).map(|v| v < map.n).collect();
    let xb = bipartite_flow(&bc, &kbc, &left, phase_cap(epsilon), ops);
    let mut z = FractionalMatching::new();
    for (e, _) in g.edges() {
        z.set(e, (xb.get(BcMap::first(e)) + xb.get(BcMap::second(e))) / 2.0);
    }
    Ok(z)
}

/// Maximum flow on the double cover, run to completion. Returns the
/// averaged matching and the original edges with a copy in the minimum cut.
pub fn general_min_cut(g: &Multigraph, kappa: &CapacityFn, ops: &mut OpCounter) -> (FractionalMatching, BTreeSet<EdgeId>) {
    let (bc, kbc, map) = bipartite_double_cover(g, kappa);
    let left: Vec<bool> = (0..bc.n()).map(|v| v < map.n).collect();
    let (xb, cut) = bipartite_flow_cut(&bc, &kbc, &left, usize::MAX, ops);
    let mut z = FractionalMatching::new();
    for (e, _) in g.edges() {
        z.set(e, (xb.get(BcMap::first(e)) + xb.get(BcMap::second(e))) / 2.0);
    }
    (z, cut.into_iter().map(BcMap::origin).collect())
}

/// `x / (1 + eps)`.
pub fn scale_to_feasible(x: &FractionalMatching, epsilon: f64) -> FractionalMatching {
    x.scaled(1.0 / (1.0 + epsilon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn g(n: usize, e: &[(usize, usize)]) -> Multigraph {
        Multigraph::from_edges(n, e).unwrap()
    }

    #[test]
    fn bipartite_examples() {
        let e = g(2, &[(0, 1)]);
        let half = CapacityFn::uniform(2.0, 1, -1);
        assert!((frac_match_bipartite(&e, &half, 0.1).unwrap().get(EdgeId(0)) - 0.5).abs() < 1e-12);
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let one = CapacityFn::uniform(2.0, 4, 0);
        assert!((frac_match_bipartite(&c4, &one, 0.1).unwrap().total() - 2.0).abs() < 1e-12);
        let k22 = g(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let quarter = CapacityFn::uniform(2.0, 4, -2);
        let x = frac_match_bipartite(&k22, &quarter, 0.1).unwrap();
        assert!((x.total() - 1.0).abs() < 1e-12);
        assert!((oracle::mu_lp(&k22, &quarter).unwrap().value - 1.0).abs() < 1e-9);
        let k3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(frac_match_bipartite(&k3, &one, 0.1), Err(Error::NotBipartite));
    }

    #[test]
    fn general_triangle_small_caps() {
        let k3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let k = CapacityFn::uniform(64.0, 3, -1);
        let z = frac_match_general(&k3, &k, 0.1).unwrap();
        for e in 0..3 {
            assert!((z.get(EdgeId(e)) - 1.0 / 64.0).abs() < 1e-12);
        }
        let lp = oracle::mu_lp(&k3, &k).unwrap().value;
        assert!(z.total() >= 0.9 * lp - 1e-9);
    }

    #[test]
    fn general_matches_bipartite_on_bipartite_input() {
        let p = g(4, &[(0, 1), (1, 2), (2, 3), (0, 1)]);
        let k = CapacityFn::uniform(4.0, 4, -2);
        let a = frac_match_bipartite(&p, &k, 0.1).unwrap();
        let b = frac_match_general(&p, &k, 0.1).unwrap();
        assert!((a.total() - b.total()).abs() < 1e-9);
    }

    #[test]
    fn precondition_and_empty() {
        let e = g(2, &[(0, 1)]);
        let one = CapacityFn::uniform(4.0, 1, 0);
        assert_eq!(frac_match_general(&e, &one, 0.1), Err(Error::GroupCapacity(alloc::vec![Pair::new(0, 1)])));
        let z = frac_match_general(&Multigraph::new(0), &one, 0.1).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn min_cut_of_a_star() {
        // star with centre 0 and three leaves, kappa = 1/4: the vertex
        // capacity at the centre is not binding, so all three edges are cut
        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let k = CapacityFn::uniform(4.0, 3, -1);
        let (z, cut) = general_min_cut(&star, &k, &mut OpCounter::default());
        assert!((z.total() - 0.75).abs() < 1e-12);
        assert_eq!(cut.len(), 3);
        // unit capacities: the centre saturates and no edge is a bottleneck
        let one = CapacityFn::uniform(4.0, 3, 0);
        let (z, cut) = general_min_cut(&star, &one, &mut OpCounter::default());
        assert!((z.total() - 1.0).abs() < 1e-12);
        assert!(cut.is_empty(), "{cut:?}");
    }

    #[test]
    fn scaling() {
        let k3 = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let mut x = FractionalMatching::new();
        for e in 0..3 {
            x.set(EdgeId(e), 1.0 / 3.0);
        }
        let y = scale_to_feasible(&x, 0.5);
        assert!((y.get(EdgeId(1)) - 1.0 / 4.5).abs() < 1e-12);
        assert!(scale_to_feasible(&FractionalMatching::new(), 0.5).is_empty());
        assert!(y.is_feasible(&k3, None));
    }
}
