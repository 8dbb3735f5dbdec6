mod common;

use common::{capacitated, multigraph, simple_graph};
use decmatch_core::graph::{CapacityFn, Multigraph, Pair};
use decmatch_core::oracle::{edge_cost, exact_mcm, mu_lp, potential, tutte_berge_eg, tutte_berge_min, tutte_berge_value};
use proptest::prelude::*;

/// Every matching of `pairs`, by include/exclude recursion.
fn matchings(pairs: &[Pair], used: u64, out: &mut Vec<Vec<Pair>>, cur: &mut Vec<Pair>) {
    match pairs.split_first() {
        None => out.push(cur.clone()),
        Some((&p, rest)) => {
            matchings(rest, used, out, cur);
            let bits = 1u64 << p.lo() | 1u64 << p.hi();
            if used & bits == 0 {
                cur.push(p);
                matchings(rest, used | bits, out, cur);
                cur.pop();
            }
        }
    }
}

fn all_matchings(g: &Multigraph) -> Vec<Vec<Pair>> {
    let pairs: Vec<Pair> = g.groups().map(|(p, _)| p).collect();
    let mut out = Vec::new();
    matchings(&pairs, 0, &mut out, &mut Vec::new());
    out
}

fn brute_mu(g: &Multigraph) -> usize {
    all_matchings(g).iter().map(Vec::len).max().unwrap_or(0)
}

fn odd_components_without(g: &Multigraph, u: &[usize]) -> usize {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        if p[v] != v {
            let r = find(p, p[v]);
            p[v] = r;
        }
        p[v]
    }
    for (p, _) in g.groups() {
        if u.contains(&p.lo()) || u.contains(&p.hi()) {
            continue;
        }
        let (a, b) = (find(&mut parent, p.lo()), find(&mut parent, p.hi()));
        parent[a] = b;
    }
    let mut size = vec![0usize; n];
    for v in (0..n).filter(|v| !u.contains(v)) {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    size.iter().filter(|&&s| s % 2 == 1).count()
}

fn petersen() -> Multigraph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, i + 5));
    }
    Multigraph::from_edges(10, &e).unwrap()
}

#[test]
fn exact_examples() {
    let k4 = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(exact_mcm(&k4).unwrap().len(), 2);
    let path = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(exact_mcm(&path).unwrap().len(), 2);
    assert_eq!(brute_mu(&petersen()), 5);
    assert_eq!(exact_mcm(&petersen()).unwrap().len(), 5);
    assert!(exact_mcm(&Multigraph::new(501)).is_err());
}

#[test]
fn tutte_berge_examples() {
    let k3 = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert_eq!(tutte_berge_value(&k3.simple(), &[]).unwrap(), 1);
    let star = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    assert_eq!(tutte_berge_value(&star.simple(), &[0]).unwrap(), 1);
    assert_eq!(tutte_berge_min(&star).unwrap().value, 1);
    let c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let w = tutte_berge_min(&c4).unwrap();
    assert_eq!((w.value, w.u.len()), (2, 0));
    assert!(tutte_berge_min(&Multigraph::new(21)).is_err());
}

#[test]
fn lp_examples() {
    let tri = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    // capacity 1/2 would allow 3/2 without the odd-set row on V
    let half = CapacityFn::uniform(2.0, 3, -1);
    assert!((mu_lp(&tri, &half).unwrap().value - 1.0).abs() < 1e-9);
    let one = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
    let mut k = CapacityFn::uniform(4.0, 1, 0);
    k.set_exponent(decmatch_core::EdgeId(0), -1);
    assert!((mu_lp(&one, &k).unwrap().value - 0.25).abs() < 1e-9);
    let c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    assert!((mu_lp(&c4, &CapacityFn::uniform(4.0, 4, 0)).unwrap().value - 2.0).abs() < 1e-9);
    assert!(mu_lp(&Multigraph::new(13), &CapacityFn::uniform(4.0, 0, 0)).is_err());
}

#[test]
fn potential_examples() {
    // n = 4, alpha = 4: log_4 4 = 1, so kappa = 1/4 costs 0 and kappa = 1 costs 1
    let g = Multigraph::from_edges(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
    let mut k = CapacityFn::uniform(4.0, 3, -1);
    assert_eq!(potential(&g, &k, 2.0, 0.1).unwrap(), 0.0);
    k.set_exponent(decmatch_core::EdgeId(0), 0);
    // matchings of size >= 1.4 must use both 01 and 23
    assert_eq!(potential(&g, &k, 2.0, 0.1).unwrap(), 1.0);
    // size 1 suffices at eps = 0.2: take 23 or 12 for free
    assert_eq!(potential(&g, &k, 2.0, 0.2).unwrap(), 0.0);
    assert_eq!(potential(&g, &k, 3.0, 0.0).unwrap(), f64::INFINITY);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exact_matches_tutte_berge_and_brute_force(g in multigraph(14, 30)) {
        let m = exact_mcm(&g).unwrap();
        prop_assert!(g.is_matching(&m));
        prop_assert_eq!(m.len(), brute_mu(&g));
        let w = tutte_berge_min(&g).unwrap();
        prop_assert_eq!(w.value, m.len());
        let odd = odd_components_without(&g, &w.u);
        prop_assert_eq!((w.u.len() + g.n() - odd) / 2, m.len());
        let eg = tutte_berge_eg(&g);
        prop_assert_eq!(tutte_berge_value(&g.simple(), &eg.u).unwrap(), m.len());
    }

    #[test]
    fn lp_with_unit_capacities_is_integral_optimum(g in simple_graph(10)) {
        let sol = mu_lp(&g, &CapacityFn::uniform(4.0, g.id_bound(), 0)).unwrap();
        prop_assert!((sol.value - exact_mcm(&g).unwrap().len() as f64).abs() <= 1e-6);
        prop_assert!(sol.x.is_feasible(&g, None));
    }

    #[test]
    fn lp_solution_obeys_every_constraint((g, k) in capacitated(9, 20, -3)) {
        let sol = mu_lp(&g, &k).unwrap();
        prop_assert!(sol.x.is_feasible(&g, Some(&k)));
        prop_assert!((sol.x.total() - sol.value).abs() <= 1e-6);
        for &s in &sol.odd_sets_checked {
            let inside: f64 = sol.x.iter()
                .filter(|(e, _)| { let p = g.endpoints(*e).unwrap(); s >> p.lo() & 1 == 1 && s >> p.hi() & 1 == 1 })
                .map(|(_, v)| v)
                .sum();
            prop_assert!(inside <= f64::from(s.count_ones() - 1) / 2.0 + 1e-6);
        }
    }

    #[test]
    fn potential_is_minimum_cost_over_large_matchings((g, k) in capacitated(8, 16, -3), eps in 0.05f64..0.3) {
        let mu = brute_mu(&g) as f64;
        let need = ((1.0 - 3.0 * eps) * mu - 1e-9).ceil().max(0.0) as usize;
        let mut best = f64::INFINITY;
        for m in all_matchings(&g) {
            if m.len() < need {
                continue;
            }
            let c: f64 = m.iter()
                .map(|&p| g.group(p).unwrap().iter().map(|&e| edge_cost(g.n(), &k, e)).fold(f64::INFINITY, f64::min))
                .sum();
            best = best.min(c);
        }
        let got = potential(&g, &k, mu, eps).unwrap();
        prop_assert!((got - best).abs() <= 1e-9, "{} vs {}", got, best);
    }
}
