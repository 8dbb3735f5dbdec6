//! Static maximum matching with an approximate dual certificate.
//!
//! Duals are read off the Edmonds–Gallai decomposition of a maximum
//! matching and rounded up to multiples of epsilon, then large odd sets are
//! dissolved into their vertices.

use crate::graph::{Pair, SimpleGraph};
use crate::matching::{self, EgClass};
use crate::oracle;
use crate::OpCounter;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddSet {
    /// Sorted vertex list.
    pub members: Vec<usize>,
    /// Dual value in units of `epsilon / 2`.
    pub z: u64,
    pub parent: Option<usize>,
}

/// Vertex and odd-set duals stored exactly in units of `epsilon / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate {
    pub epsilon: f64,
    pub y: Vec<u64>,
    pub sets: Vec<OddSet>,
}

impl DualCertificate {
    pub fn zero(n: usize, epsilon: f64) -> Self {
        DualCertificate { epsilon, y: alloc::vec![0; n], sets: Vec::new() }
    }

    #[inline]
    pub fn unit(&self) -> f64 {
        self.epsilon / 2.0
    }

    /// Set ids containing each vertex, in increasing order.
    pub fn membership(&self) -> Vec<Vec<usize>> {
        let mut m = alloc::vec![Vec::new(); self.y.len()];
        for (i, s) in self.sets.iter().enumerate() {
            for &v in &s.members {
                m[v].push(i);
            }
        }
        m
    }

    /// `yz(u,v)` in units, given `membership()`.
    pub fn yz_units(&self, membership: &[Vec<usize>], u: usize, v: usize) -> u64 {
        let (a, b) = (&membership[u], &membership[v]);
        let (mut i, mut j, mut z) = (0, 0, 0u64);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    z += self.sets[a[i]].z;
                    i += 1;
                    j += 1;
                }
            }
        }
        self.y[u] + self.y[v] + z
    }

    /// `f(y,z)` in units.
    pub fn objective_units(&self) -> u64 {
        self.y.iter().sum::<u64>() + self.sets.iter().map(|s| (s.members.len() as u64 - 1) / 2 * s.z).sum::<u64>()
    }

    pub fn objective(&self) -> f64 {
        self.objective_units() as f64 * self.unit()
    }

    /// Smallest unit count with `units * epsilon / 2 >= 1 - epsilon`.
    pub fn covered_units(epsilon: f64) -> u64 {
        libm::ceil(2.0 * (1.0 - epsilon) / epsilon - 1e-9) as u64
    }

    /// Whether `|B| >= 3/eps + 1`.
    pub fn is_large(size: usize, epsilon: f64) -> bool {
        (size as f64 - 1.0) * epsilon >= 3.0 - 1e-9
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaticMatch {
    pub matching: Vec<Pair>,
    pub cert: DualCertificate,
    pub ops: u64,
}

fn components(g: &SimpleGraph, keep: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if !keep[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = alloc::vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &g.adj[v] {
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Maximum matching plus a certificate with properties (a) through (f).
pub fn static_match(g: &SimpleGraph, epsilon: f64) -> StaticMatch {
    let mut ops = OpCounter::default();
    let mate = matching::maximum_matching(g, &mut ops);
    let eg = matching::edmonds_gallai(g, &mate, &mut ops);
    let n = g.n();
    // vertex duals of K eps cover an edge alone; set duals get the next even multiple
    let k = DualCertificate::covered_units(epsilon).div_ceil(2);
    let zb = k + (k & 1);
    let mut cert = DualCertificate::zero(n, epsilon);
    let add_set = |cert: &mut DualCertificate, members: Vec<usize>| {
        if members.len() >= 3 {
            cert.sets.push(OddSet { members, z: 2 * zb, parent: None });
        }
    };
    for v in 0..n {
        if eg[v] == EgClass::A {
            cert.y[v] = 2 * k;
        }
    }
    let in_d: Vec<bool> = eg.iter().map(|c| *c == EgClass::D).collect();
    for comp in components(g, &in_d) {
        add_set(&mut cert, comp);
    }
    let in_c: Vec<bool> = eg.iter().map(|c| *c == EgClass::C).collect();
    for comp in components(g, &in_c) {
        cert.y[comp[0]] = 2 * k;
        add_set(&mut cert, comp[1..].to_vec());
    }
    ops.tick(n as u64 + g.m() as u64);
    let cert = dissolve_large_blossoms(&cert, epsilon);
    StaticMatch { matching: matching::matched_pairs(&mate), cert, ops: ops.0 }
}

/// Moves the dual of every set with `|B| >= 3/eps + 1` onto its members.
pub fn dissolve_large_blossoms(cert: &DualCertificate, epsilon: f64) -> DualCertificate {
    let mut out = cert.clone();
    for s in &mut out.sets {
        if s.z > 0 && DualCertificate::is_large(s.members.len(), epsilon) {
            debug_assert!(s.z % 2 == 0, "set duals are multiples of epsilon");
            for &v in &s.members {
                out.y[v] += s.z / 2;
            }
            s.z = 0;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: char,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertReport {
    pub checks: Vec<PropertyCheck>,
}

impl CertReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn get(&self, name: char) -> &PropertyCheck {
        self.checks.iter().find(|c| c.name == name).expect("known property")
    }
}

fn check(name: char, witness: Option<String>) -> PropertyCheck {
    PropertyCheck { name, ok: witness.is_none(), witness }
}

fn relation(a: &[usize], b: &[usize]) -> (bool, bool, bool) {
    let sa: BTreeSet<_> = a.iter().collect();
    let common = b.iter().filter(|v| sa.contains(v)).count();
    (common == 0, common == a.len(), common == b.len())
}

/// Checks properties (a) through (f), reporting the first violation of each.
pub fn verify_certificate(g: &SimpleGraph, m: &[Pair], cert: &DualCertificate, epsilon: f64) -> CertReport {
    let mu = oracle::mu(g);
    let mut used = BTreeSet::new();
    let bad_edge = m.iter().find(|p| !g.has_edge(p.lo(), p.hi()) || !used.insert(p.lo()) || !used.insert(p.hi()));
    let a = if let Some(p) = bad_edge {
        Some(format!("{p} is not a usable matching edge"))
    } else if (m.len() as f64) < (1.0 - epsilon) * mu as f64 - 1e-9 {
        Some(format!("|M| = {} < (1 - eps) * {mu}", m.len()))
    } else {
        None
    };

    let mut b = None;
    'outer: for (i, s) in cert.sets.iter().enumerate() {
        if s.members.len() % 2 == 0 {
            b = Some(format!("set {i} has even size {}", s.members.len()));
            break;
        }
        for (j, t) in cert.sets.iter().enumerate().skip(i + 1) {
            let (disjoint, t_in_s, s_in_t) = relation(&s.members, &t.members);
            if !(disjoint || t_in_s || s_in_t) {
                b = Some(format!("sets {i} and {j} cross"));
                break 'outer;
            }
        }
    }

    let c = cert
        .sets
        .iter()
        .enumerate()
        .find(|(_, s)| s.z > 0 && DualCertificate::is_large(s.members.len(), epsilon))
        .map(|(i, s)| format!("set {i} of size {} has z > 0", s.members.len()));

    let d = if let Some(v) = cert.y.iter().position(|y| y % 2 == 1) {
        Some(format!("y({v}) is not a multiple of eps"))
    } else {
        cert.sets.iter().position(|s| s.z % 2 == 1).map(|i| format!("z({i}) is not a multiple of eps"))
    };

    let need = DualCertificate::covered_units(epsilon);
    let membership = cert.membership();
    let e = g
        .edges()
        .find(|p| cert.yz_units(&membership, p.lo(), p.hi()) < need)
        .map(|p| format!("edge {p} has yz = {}", cert.yz_units(&membership, p.lo(), p.hi()) as f64 * cert.unit()));

    let obj = cert.objective();
    let f = (obj > (1.0 + epsilon) * mu as f64 + 1e-9).then(|| format!("f = {obj} > (1 + eps) * {mu}"));

    CertReport { checks: alloc::vec![check('a', a), check('b', b), check('c', c), check('d', d), check('e', e), check('f', f)] }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(n: usize, e: &[(usize, usize)]) -> SimpleGraph {
        SimpleGraph::from_pairs(n, e.iter().map(|&(u, v)| Pair::new(u, v)))
    }

    #[test]
    fn triangle_canonical_certificate() {
        let g = sg(3, &[(0, 1), (1, 2), (2, 0)]);
        let eps = 1.0 / 3.0;
        let mut cert = DualCertificate::zero(3, eps);
        // z = 3 eps = 1
        cert.sets.push(OddSet { members: alloc::vec![0, 1, 2], z: 6, parent: None });
        let r = verify_certificate(&g, &[Pair::new(0, 1)], &cert, eps);
        assert!(r.all_ok(), "{r:?}");
        assert!((cert.objective() - 1.0).abs() < 1e-12);
        let s = static_match(&g, eps);
        assert_eq!(s.matching.len(), 1);
        assert!(verify_certificate(&g, &s.matching, &s.cert, eps).all_ok());
    }

    #[test]
    fn single_edge_and_empty() {
        let g = sg(2, &[(0, 1)]);
        let s = static_match(&g, 0.25);
        assert_eq!(s.matching, [Pair::new(0, 1)]);
        assert!(verify_certificate(&g, &s.matching, &s.cert, 0.25).all_ok());
        let e = static_match(&SimpleGraph::new(0), 0.25);
        assert!(e.matching.is_empty() && e.cert.objective() == 0.0);
    }

    #[test]
    fn zero_duals_fail_coverage() {
        let g = sg(2, &[(0, 1)]);
        let r = verify_certificate(&g, &[Pair::new(0, 1)], &DualCertificate::zero(2, 0.2), 0.2);
        assert!(!r.get('e').ok);
        assert!(r.get('e').witness.as_ref().unwrap().contains("(0,1)"));
    }

    #[test]
    fn crossing_sets_fail_laminarity() {
        let g = sg(5, &[(0, 1)]);
        let mut cert = DualCertificate::zero(5, 0.2);
        cert.y[0] = 8;
        cert.sets.push(OddSet { members: alloc::vec![0, 1, 2], z: 2, parent: None });
        cert.sets.push(OddSet { members: alloc::vec![2, 3, 4], z: 2, parent: None });
        let r = verify_certificate(&g, &[Pair::new(0, 1)], &cert, 0.2);
        assert!(!r.get('b').ok);
    }

    #[test]
    fn dissolve_keeps_inner_coverage() {
        // eps = 1 is only used to exercise the arithmetic
        let mut cert = DualCertificate::zero(5, 1.0);
        cert.sets.push(OddSet { members: alloc::vec![0, 1, 2, 3, 4], z: 2, parent: None });
        let d = dissolve_large_blossoms(&cert, 1.0);
        assert_eq!(d.y, [1; 5]);
        assert_eq!(d.sets[0].z, 0);
        let (m0, m1) = (cert.membership(), d.membership());
        assert_eq!(cert.yz_units(&m0, 0, 1), d.yz_units(&m1, 0, 1));
    }

    #[test]
    fn dissolve_nested_only_outer() {
        let eps = 0.5;
        let mut cert = DualCertificate::zero(9, eps);
        cert.sets.push(OddSet { members: alloc::vec![0, 1, 2], z: 2, parent: Some(1) });
        cert.sets.push(OddSet { members: (0..9).collect(), z: 2, parent: None });
        let d = dissolve_large_blossoms(&cert, eps);
        assert_eq!(d.sets[0].z, 2);
        assert_eq!(d.sets[1].z, 0);
        assert_eq!(d.y, [1; 9]);
        let g = sg(9, &[]);
        let r = verify_certificate(&g, &[], &d, eps);
        assert!(r.get('b').ok && r.get('c').ok);
    }
}
