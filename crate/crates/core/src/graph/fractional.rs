use super::{CapacityFn, EdgeId, Multigraph, Pair};
use crate::error::{Error, Result};
use crate::TOL;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Sparse map from edges to flow values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FractionalMatching {
    pub values: BTreeMap<EdgeId, f64>,
}

/// Sparse map from vertex pairs to flow values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CollapsedMatching {
    pub values: BTreeMap<Pair, f64>,
}

impl FractionalMatching {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, e: EdgeId) -> f64 {
        self.values.get(&e).copied().unwrap_or(0.0)
    }

    /// Zero values are not stored.
    pub fn set(&mut self, e: EdgeId, v: f64) {
        if v > 0.0 {
            self.values.insert(e, v);
        } else {
            self.values.remove(&e);
        }
    }

    pub fn remove(&mut self, e: EdgeId) -> f64 {
        self.values.remove(&e).unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.values().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, f64)> + '_ {
        self.values.iter().map(|(e, v)| (*e, *v))
    }

    /// Pointwise sum.
    pub fn add(&mut self, other: &FractionalMatching) {
        for (e, v) in other.iter() {
            *self.values.entry(e).or_insert(0.0) += v;
        }
    }

    pub fn scaled(&self, factor: f64) -> FractionalMatching {
        FractionalMatching { values: self.values.iter().map(|(e, v)| (*e, v * factor)).collect() }
    }

    /// Sum of values at each vertex. Edges not live in `g` are ignored.
    pub fn loads(&self, g: &Multigraph) -> Vec<f64> {
        let mut l = alloc::vec![0.0; g.n()];
        for (e, v) in self.iter() {
            if let Some(p) = g.endpoints(e) {
                l[p.lo()] += v;
                l[p.hi()] += v;
            }
        }
        l
    }

    /// Support on live edges, vertex sums at most 1, and `x <= kappa` when given.
    pub fn is_feasible(&self, g: &Multigraph, kappa: Option<&CapacityFn>) -> bool {
        self.iter().all(|(e, v)| {
            v >= -TOL && g.is_live(e) && kappa.is_none_or(|k| v <= k.value(e) + TOL)
        }) && self.loads(g).iter().all(|&l| l <= 1.0 + TOL)
    }
}

impl CollapsedMatching {
    pub fn get(&self, p: Pair) -> f64 {
        self.values.get(&p).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, f64)> + '_ {
        self.values.iter().map(|(p, v)| (*p, *v))
    }
}

/// `x^C(u,v) = sum of x over D(u,v)`.
pub fn collapse(g: &Multigraph, x: &FractionalMatching) -> CollapsedMatching {
    let mut c = CollapsedMatching::default();
    for (e, v) in x.iter() {
        if v == 0.0 {
            continue;
        }
        let p = g.endpoints(e).expect("support on live edges");
        *c.values.entry(p).or_insert(0.0) += v;
    }
    c
}

/// `y^D(e) = y(u,v) kappa(e) / kappa(D(u,v))`.
pub fn distribute(g: &Multigraph, kappa: &CapacityFn, y: &CollapsedMatching) -> Result<FractionalMatching> {
    let mut x = FractionalMatching::new();
    for (p, v) in y.iter() {
        let d = g.group(p).ok_or(Error::EmptyGroup(p))?;
        let total = kappa.group_value(g, p);
        if !(total > 0.0) {
            return Err(Error::EmptyGroup(p));
        }
        for &e in d {
            x.set(e, v * kappa.value(e) / total);
        }
    }
    Ok(x)
}

/// Splits `x` into `(x^f, x^i)` by group capacity against `1/alpha^2`.
///
/// Groups with capacity at most `1/alpha^2` go to `x^f`, matching the
/// low-capacity classification, so `x^i` only holds the unit-valued groups
/// produced for high-capacity pairs.
pub fn split_matching(
    g: &Multigraph,
    kappa: &CapacityFn,
    x: &FractionalMatching,
) -> (FractionalMatching, FractionalMatching) {
    let mut xf = FractionalMatching::new();
    let mut xi = FractionalMatching::new();
    let mut side: BTreeMap<Pair, bool> = BTreeMap::new();
    for (e, v) in x.iter() {
        let p = g.endpoints(e).expect("support on live edges");
        let low = *side.entry(p).or_insert_with(|| kappa.group_cmp(g, p, -2) != Ordering::Greater);
        if low {
            xf.set(e, v);
        } else {
            xi.set(e, v);
        }
    }
    (xf, xi)
}
