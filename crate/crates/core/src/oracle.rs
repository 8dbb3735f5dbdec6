//! Exact reference computations for small instances.

use crate::error::{Error, Result};
use crate::graph::{CapacityFn, EdgeId, FractionalMatching, Multigraph, Pair, SimpleGraph};
use crate::lp;
use crate::matching::{self, EgClass};
use crate::OpCounter;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

pub const EXACT_CAP: usize = 500;
pub const TUTTE_CAP: usize = 20;
pub const LP_CAP: usize = 12;
pub const POTENTIAL_CAP: usize = 14;

fn cap(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLarge { what, n, cap: limit })
    } else {
        Ok(())
    }
}

/// Maximum matching of `g`, one representative edge per matched pair.
pub fn exact_mcm(g: &Multigraph) -> Result<Vec<EdgeId>> {
    exact_mcm_capped(g, EXACT_CAP)
}

pub fn exact_mcm_capped(g: &Multigraph, limit: usize) -> Result<Vec<EdgeId>> {
    cap("exact matching", g.n(), limit)?;
    let mate = matching::maximum_matching(&g.simple(), &mut OpCounter::default());
    Ok(matching::matched_pairs(&mate)
        .into_iter()
        .map(|p| g.representative(p).expect("matched pair is live"))
        .collect())
}

/// `mu(G)` for a simple graph, no size cap.
pub fn mu(g: &SimpleGraph) -> usize {
    matching::matched_pairs(&matching::maximum_matching(g, &mut OpCounter::default())).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteBergeWitness {
    pub u: Vec<usize>,
    pub value: usize,
}

fn masks(g: &SimpleGraph) -> Vec<u32> {
    g.adj.iter().map(|a| a.iter().fold(0u32, |m, &v| m | (1 << v))).collect()
}

fn odd_components(adj: &[u32], alive: u32) -> usize {
    let mut left = alive;
    let mut odd = 0;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        odd += (comp.count_ones() & 1) as usize;
    }
    odd
}

/// `(|U| + n - odd(G - U)) / 2` for one set `U`.
pub fn tutte_berge_value(g: &SimpleGraph, u: &[usize]) -> Result<usize> {
    cap("Tutte-Berge evaluation", g.n(), 32)?;
    let all = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    let umask = u.iter().fold(0u32, |m, &v| m | (1 << v));
    let odd = odd_components(&masks(g), all & !umask);
    Ok((u.len() + g.n() - odd) / 2)
}

/// Minimises the Tutte–Berge bound over every vertex subset.
pub fn tutte_berge_min(g: &Multigraph) -> Result<TutteBergeWitness> {
    cap("Tutte-Berge enumeration", g.n(), TUTTE_CAP)?;
    let s = g.simple();
    let adj = masks(&s);
    let n = g.n();
    let all = ((1u64 << n) - 1) as u32;
    let mut best = (usize::MAX, 0u32);
    for umask in 0..=all {
        let val = (umask.count_ones() as usize + n - odd_components(&adj, all & !umask)) / 2;
        if val < best.0 {
            best = (val, umask);
        }
    }
    Ok(TutteBergeWitness { u: (0..n).filter(|&v| best.1 >> v & 1 == 1).collect(), value: best.0 })
}

/// Witness from the Edmonds–Gallai decomposition; no enumeration.
pub fn tutte_berge_eg(g: &Multigraph) -> TutteBergeWitness {
    let s = g.simple();
    let mut ops = OpCounter::default();
    let mate = matching::maximum_matching(&s, &mut ops);
    let eg = matching::edmonds_gallai(&s, &mate, &mut ops);
    TutteBergeWitness {
        u: (0..g.n()).filter(|&v| eg[v] == EgClass::A).collect(),
        value: matching::matched_pairs(&mate).len(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: FractionalMatching,
    pub value: f64,
    /// Bitmasks of every odd set whose constraint was verified.
    pub odd_sets_checked: Vec<u32>,
}

/// Maximum fractional matching obeying `kappa`, the vertex constraints and
/// every odd-set constraint. Odd sets are added lazily as cuts.
pub fn mu_lp(g: &Multigraph, kappa: &CapacityFn) -> Result<LpSolution> {
    cap("odd-set LP", g.n(), LP_CAP)?;
    let n = g.n();
    let pairs: Vec<(Pair, f64)> = g.groups().map(|(p, _)| (p, kappa.group_value(g, p))).collect();
    let k = pairs.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    for (i, (_, c)) in pairs.iter().enumerate() {
        let mut r = alloc::vec![0.0; k];
        r[i] = 1.0;
        rows.push(r);
        rhs.push(c.min(1.0));
    }
    for v in 0..n {
        rows.push(pairs.iter().map(|(p, _)| if p.contains(v) { 1.0 } else { 0.0 }).collect());
        rhs.push(1.0);
    }
    let odd_sets: Vec<u32> = (0u32..(1u32 << n)).filter(|s| s.count_ones() >= 3 && s.count_ones() % 2 == 1).collect();
    let inside = |s: u32, p: Pair| s >> p.lo() & 1 == 1 && s >> p.hi() & 1 == 1;
    let obj = alloc::vec![1.0; k];
    loop {
        let sol = lp::maximize(&obj, &rows, &rhs).expect("bounded by vertex constraints");
        let mut cuts: Vec<(f64, u32)> = odd_sets
            .iter()
            .filter_map(|&s| {
                let load: f64 = pairs.iter().zip(&sol.x).filter(|((p, _), _)| inside(s, *p)).map(|(_, x)| x).sum();
                let excess = load - f64::from(s.count_ones() - 1) / 2.0;
                (excess > 1e-9).then_some((excess, s))
            })
            .collect();
        if cuts.is_empty() {
            let mut x = FractionalMatching::new();
            for ((p, total), &v) in pairs.iter().zip(&sol.x) {
                for &e in g.group(*p).expect("live pair") {
                    x.set(e, v * kappa.value(e) / total);
                }
            }
            return Ok(LpSolution { x, value: sol.value, odd_sets_checked: odd_sets });
        }
        cuts.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, s) in cuts.iter().take(8) {
            rows.push(pairs.iter().map(|(p, _)| if inside(s, *p) { 1.0 } else { 0.0 }).collect());
            rhs.push(f64::from(s.count_ones() - 1) / 2.0);
        }
    }
}

/// `max(0, log_alpha(n kappa(e)))`.
pub fn edge_cost(n: usize, kappa: &CapacityFn, e: EdgeId) -> f64 {
    let la = libm::log(n.max(1) as f64) / libm::log(kappa.alpha());
    (la + f64::from(kappa.exponent(e))).max(0.0)
}

/// Minimum total edge cost over matchings with at least `(1 - 3 eps) mu`
/// edges; infinite when there is none.
pub fn potential(g: &Multigraph, kappa: &CapacityFn, mu: f64, epsilon: f64) -> Result<f64> {
    cap("potential enumeration", g.n(), POTENTIAL_CAP)?;
    let n = g.n();
    let need = libm::ceil((1.0 - 3.0 * epsilon) * mu - 1e-9).max(0.0) as usize;
    let mut cost: BTreeMap<Pair, f64> = BTreeMap::new();
    for (e, p) in g.edges() {
        let c = edge_cost(n, kappa, e);
        cost.entry(p).and_modify(|x| *x = x.min(c)).or_insert(c);
    }
    let mut w = alloc::vec![alloc::vec![f64::INFINITY; n]; n];
    for (p, c) in &cost {
        w[p.lo()][p.hi()] = *c;
    }
    // best[mask][k]: cheapest way to pick k edges among vertices >= the
    // lowest vertex not in mask
    let half = n / 2 + 1;
    let full = (1usize << n) - 1;
    let mut memo = alloc::vec![f64::NAN; (full + 1) * half];
    fn solve(mask: usize, k: usize, n: usize, full: usize, w: &[Vec<f64>], half: usize, memo: &mut [f64]) -> f64 {
        if k == 0 {
            return 0.0;
        }
        if mask == full {
            return f64::INFINITY;
        }
        let slot = mask * half + k;
        if !memo[slot].is_nan() {
            return memo[slot];
        }
        let v = (!mask).trailing_zeros() as usize;
        let m2 = mask | 1 << v;
        let mut best = solve(m2, k, n, full, w, half, memo);
        for u in v + 1..n {
            if m2 >> u & 1 == 0 && w[v][u].is_finite() {
                let c = w[v][u] + solve(m2 | 1 << u, k - 1, n, full, w, half, memo);
                best = best.min(c);
            }
        }
        memo[slot] = best;
        best
    }
    if need >= half {
        return Ok(f64::INFINITY);
    }
    Ok(solve(0, need, n, full, &w, half, &mut memo))
}
