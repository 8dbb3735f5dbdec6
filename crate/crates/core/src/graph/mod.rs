//! Multigraphs with parallel-edge groups, capacity functions, fractional
//! matchings and the transforms between them.

mod capacity;
mod fractional;
mod simple;
mod transform;

pub use capacity::{CapacityFn, GroupCmp};
pub use fractional::{collapse, distribute, split_matching, CollapsedMatching, FractionalMatching};
pub use simple::SimpleGraph;
pub use transform::{bipartite_double_cover, kappa_plus, low_capacity_edges, sample_graph, BcMap};

use crate::error::{Error, Result};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Unordered vertex pair, stored with the smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(usize, usize);

impl Pair {
    /// Panics if `u == v`.
    pub fn new(u: usize, v: usize) -> Pair {
        assert!(u != v, "pair with equal endpoints");
        if u < v {
            Pair(u, v)
        } else {
            Pair(v, u)
        }
    }

    #[inline]
    pub fn lo(self) -> usize {
        self.0
    }

    #[inline]
    pub fn hi(self) -> usize {
        self.1
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: usize) -> usize {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Undirected multigraph supporting deletions.
///
/// Edge ids need not be dense: graphs derived from another graph keep the
/// ids of the edges they were built from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    ends: Vec<Option<Pair>>,
    groups: BTreeMap<Pair, BTreeSet<EdgeId>>,
    live: usize,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, ..Default::default() }
    }

    /// Ids are assigned in slice order.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<EdgeId> {
        let id = EdgeId(self.ends.len() as u32);
        self.add_edge_with_id(id, u, v)?;
        Ok(id)
    }

    pub fn add_edge_with_id(&mut self, id: EdgeId, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.ends.len() <= id.index() {
            self.ends.resize(id.index() + 1, None);
        } else if self.ends[id.index()].is_some() {
            return Err(Error::DuplicateEdge(id));
        }
        let p = Pair::new(u, v);
        self.ends[id.index()] = Some(p);
        self.groups.entry(p).or_default().insert(id);
        self.live += 1;
        Ok(())
    }

    pub fn delete_edge(&mut self, e: EdgeId) -> Result<Pair> {
        let p = self
            .ends
            .get_mut(e.index())
            .and_then(Option::take)
            .ok_or(Error::UnknownEdge(e))?;
        let group = self.groups.get_mut(&p).expect("live edge without group");
        group.remove(&e);
        if group.is_empty() {
            self.groups.remove(&p);
        }
        self.live -= 1;
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of live edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.live
    }

    /// One past the largest edge id ever used.
    #[inline]
    pub fn id_bound(&self) -> usize {
        self.ends.len()
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> Option<Pair> {
        self.ends.get(e.index()).copied().flatten()
    }

    #[inline]
    pub fn is_live(&self, e: EdgeId) -> bool {
        self.endpoints(e).is_some()
    }

    pub fn group(&self, p: Pair) -> Option<&BTreeSet<EdgeId>> {
        self.groups.get(&p)
    }

    pub fn groups(&self) -> impl Iterator<Item = (Pair, &BTreeSet<EdgeId>)> + '_ {
        self.groups.iter().map(|(p, g)| (*p, g))
    }

    pub fn pair_count(&self) -> usize {
        self.groups.len()
    }

    /// Live edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Pair)> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (EdgeId(i as u32), p)))
    }

    /// Smallest live id joining `p`, if any.
    pub fn representative(&self, p: Pair) -> Option<EdgeId> {
        self.groups.get(&p).and_then(|g| g.iter().next().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.groups
            .iter()
            .filter(|(p, _)| p.contains(v))
            .map(|(_, g)| g.len())
            .sum()
    }

    /// Simple graph on the same vertices with one edge per live pair.
    pub fn simple(&self) -> SimpleGraph {
        SimpleGraph::from_pairs(self.n, self.groups.keys().copied())
    }

    /// Same vertex set, keeping the live edges accepted by `keep` (ids preserved).
    pub fn filter_edges(&self, mut keep: impl FnMut(EdgeId, Pair) -> bool) -> Multigraph {
        let mut h = Multigraph::new(self.n);
        for (e, p) in self.edges() {
            if keep(e, p) {
                h.add_edge_with_id(e, p.lo(), p.hi()).expect("copy of a valid edge");
            }
        }
        h
    }

    /// True if the edge ids form a matching of live edges.
    pub fn is_matching(&self, m: &[EdgeId]) -> bool {
        let mut seen = BTreeSet::new();
        m.iter().all(|&e| match self.endpoints(e) {
            Some(p) => seen.insert(p.lo()) && seen.insert(p.hi()),
            None => false,
        })
    }
}
