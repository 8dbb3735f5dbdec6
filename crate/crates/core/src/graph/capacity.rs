use super::{EdgeId, Multigraph, Pair};
use crate::params::integral_alpha;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Per-edge capacities `kappa(e) = alpha^k` with integer `k <= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityFn {
    alpha: f64,
    exp: Vec<i32>,
}

/// Outcome of comparing a group's total capacity with a power of alpha.
pub type GroupCmp = Ordering;

impl CapacityFn {
    /// Every id below `id_bound` gets exponent `k`.
    pub fn uniform(alpha: f64, id_bound: usize, k: i32) -> Self {
        assert!(k <= 0, "capacities are capped at 1");
        CapacityFn { alpha, exp: alloc::vec![k; id_bound] }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn exponent(&self, e: EdgeId) -> i32 {
        self.exp[e.index()]
    }

    #[inline]
    pub fn value(&self, e: EdgeId) -> f64 {
        libm::pow(self.alpha, f64::from(self.exponent(e)))
    }

    pub fn set_exponent(&mut self, e: EdgeId, k: i32) {
        assert!(k <= 0, "capacities are capped at 1");
        if self.exp.len() <= e.index() {
            self.exp.resize(e.index() + 1, k);
        }
        self.exp[e.index()] = k;
    }

    /// Multiply by alpha, saturating at 1. Returns whether anything changed.
    pub fn raise(&mut self, e: EdgeId) -> bool {
        let k = &mut self.exp[e.index()];
        if *k < 0 {
            *k += 1;
            true
        } else {
            false
        }
    }

    /// `kappa(D(p))`, zero for a pair with no live edges.
    pub fn group_value(&self, g: &Multigraph, p: Pair) -> f64 {
        g.group(p).map_or(0.0, |d| d.iter().map(|&e| self.value(e)).sum())
    }

    /// Compares `kappa(D(p))` with `alpha^t`.
    ///
    /// Exact when alpha is integral and the group has a common exponent,
    /// otherwise done in floating point with a relative slack of 1e-12.
    pub fn group_cmp(&self, g: &Multigraph, p: Pair, t: i32) -> GroupCmp {
        let Some(d) = g.group(p) else { return Ordering::Less };
        let mut ks = d.iter().map(|&e| self.exponent(e));
        let k0 = ks.next().expect("groups are nonempty");
        let common = ks.all(|k| k == k0);
        let exact = if common { integral_alpha(self.alpha) } else { None };
        if let Some(a) = exact {
            // |D| alpha^k0  vs  alpha^t
            let size = d.len() as u128;
            if t >= k0 {
                let mut p = 1u128;
                for _ in 0..(t - k0) {
                    p = p.saturating_mul(a);
                }
                size.cmp(&p)
            } else {
                Ordering::Greater
            }
        } else {
            let s: f64 = d.iter().map(|&e| libm::pow(self.alpha, f64::from(self.exponent(e) - t))).sum();
            if (s - 1.0).abs() <= 1e-12 {
                Ordering::Equal
            } else if s < 1.0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}
