use super::Pair;
use alloc::vec::Vec;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    pub adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: alloc::vec![Vec::new(); n] }
    }

    /// Duplicate pairs are merged.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = Pair>) -> Self {
        let mut g = SimpleGraph::new(n);
        for p in pairs {
            g.adj[p.lo()].push(p.hi());
            g.adj[p.hi()].push(p.lo());
        }
        for a in &mut g.adj {
            a.sort_unstable();
            a.dedup();
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Each edge once, as `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Pair> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| Pair::new(u, v)))
    }

    /// Subgraph induced by `keep`, vertex numbering unchanged.
    pub fn induced(&self, keep: &[bool]) -> SimpleGraph {
        SimpleGraph::from_pairs(self.n(), self.edges().filter(|p| keep[p.lo()] && keep[p.hi()]))
    }
}
