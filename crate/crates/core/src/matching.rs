//! Edmonds' blossom algorithm and the Edmonds–Gallai decomposition.

use crate::graph::{Pair, SimpleGraph};
use crate::OpCounter;
use alloc::collections::VecDeque;
use alloc::vec::Vec;

const NONE: usize = usize::MAX;

/// Class of a vertex in the Edmonds–Gallai decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EgClass {
    /// Missed by some maximum matching.
    D,
    /// Neighbours of `D` outside `D`.
    A,
    /// Everything else; perfectly matched among themselves.
    C,
}

struct Search<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    even: Vec<bool>,
    mark: Vec<bool>,
    path: Vec<bool>,
    queue: VecDeque<usize>,
    ops: &'a mut OpCounter,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph, mate: Vec<usize>, ops: &'a mut OpCounter) -> Self {
        let n = g.n();
        Search {
            g,
            mate,
            parent: alloc::vec![NONE; n],
            base: (0..n).collect(),
            even: alloc::vec![false; n],
            mark: alloc::vec![false; n],
            path: alloc::vec![false; n],
            queue: VecDeque::new(),
            ops,
        }
    }

    fn reset(&mut self) {
        let n = self.g.n();
        self.ops.tick(n as u64);
        self.parent.fill(NONE);
        self.even.fill(false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> Option<usize> {
        self.path.fill(false);
        loop {
            a = self.base[a];
            self.path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.path[b] {
                return Some(b);
            }
            if self.mate[b] == NONE {
                return None;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.mark[self.base[v]] = true;
            self.mark[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn is_even(&self, v: usize) -> bool {
        if self.mate[v] == NONE {
            self.even[v]
        } else {
            self.parent[self.mate[v]] != NONE
        }
    }

    fn contract(&mut self, v: usize, to: usize) -> bool {
        let Some(b) = self.lca(v, to) else { return false };
        self.mark.fill(false);
        self.mark_path(v, b, to);
        self.mark_path(to, b, v);
        self.ops.tick(self.g.n() as u64);
        for i in 0..self.g.n() {
            if self.mark[self.base[i]] {
                self.base[i] = b;
                if !self.even[i] {
                    self.even[i] = true;
                    self.queue.push_back(i);
                }
            }
        }
        true
    }

    /// Grows alternating trees from the queued roots. Returns a free vertex
    /// reached from an odd position, if any.
    fn grow(&mut self) -> Option<usize> {
        while let Some(v) = self.queue.pop_front() {
            let g = self.g;
            for &to in &g.adj[v] {
                self.ops.tick(1);
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if self.is_even(to) {
                    let ok = self.contract(v, to);
                    debug_assert!(ok, "even-even edge across trees");
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let w = self.mate[to];
                    self.even[w] = true;
                    self.queue.push_back(w);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

fn greedy(g: &SimpleGraph) -> Vec<usize> {
    let mut mate = alloc::vec![NONE; g.n()];
    for u in 0..g.n() {
        if mate[u] == NONE {
            if let Some(&v) = g.adj[u].iter().find(|&&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    mate
}

/// Maximum cardinality matching as a mate array.
pub fn maximum_matching(g: &SimpleGraph, ops: &mut OpCounter) -> Vec<Option<usize>> {
    let mut s = Search::new(g, greedy(g), ops);
    // A vertex with no augmenting path keeps having none after later
    // augmentations, so one pass over the free vertices suffices.
    for root in 0..g.n() {
        if s.mate[root] != NONE || g.adj[root].is_empty() {
            continue;
        }
        s.reset();
        s.even[root] = true;
        s.queue.push_back(root);
        if let Some(end) = s.grow() {
            s.augment(end);
        }
    }
    s.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// Classifies vertices given a maximum matching.
pub fn edmonds_gallai(g: &SimpleGraph, mate: &[Option<usize>], ops: &mut OpCounter) -> Vec<EgClass> {
    let raw = mate.iter().map(|m| m.unwrap_or(NONE)).collect();
    let mut s = Search::new(g, raw, ops);
    s.reset();
    for v in 0..g.n() {
        if s.mate[v] == NONE {
            s.even[v] = true;
            s.queue.push_back(v);
        }
    }
    let aug = s.grow();
    assert!(aug.is_none(), "matching passed to edmonds_gallai is not maximum");
    (0..g.n())
        .map(|v| {
            if s.even[v] {
                EgClass::D
            } else if s.parent[v] != NONE {
                EgClass::A
            } else {
                EgClass::C
            }
        })
        .collect()
}

pub fn matched_pairs(mate: &[Option<usize>]) -> Vec<Pair> {
    mate.iter()
        .enumerate()
        .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| Pair::new(u, v)))
        .collect()
}
