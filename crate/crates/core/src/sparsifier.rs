//! Dynamic rounding kernel for a fractional matching.
//!
//! Pairs are bucketed into levels by value; each level keeps a proper edge
//! colouring with a palette of `3 ceil((1+eps)^i)` colours, and a random
//! subset of colours is sampled per level. The kernel is the union of the
//! sampled colour classes.

use crate::error::{Error, Result};
use crate::graph::{CollapsedMatching, Pair};
use crate::seed;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use rand::Rng as _;

/// Level `i` holds values in `[(1+eps)^-i, (1+eps)^-i+1)`; values of at least 1 land in level 0.
pub fn level_of(x: f64, epsilon: f64) -> u32 {
    if x >= 1.0 {
        return 0;
    }
    let b = 1.0 + epsilon;
    // relative slack so that exact powers land on their own level
    let floor = |i: i32| libm::pow(b, -f64::from(i)) * (1.0 - 1e-12);
    let mut i = libm::ceil(-libm::log(x) / libm::log(b)).max(0.0) as i32;
    while floor(i) > x {
        i += 1;
    }
    while i > 0 && floor(i - 1) <= x {
        i -= 1;
    }
    i as u32
}

/// `ceil((1+eps)^i)`.
pub fn level_degree(i: u32, epsilon: f64) -> u64 {
    libm::ceil(libm::pow(1.0 + epsilon, f64::from(i)) - 1e-9) as u64
}

/// Uniform `k`-subset of `0..p` (Floyd's algorithm).
pub fn sample_without_replacement(p: u64, k: u64, rng: &mut seed::Rng) -> BTreeSet<u64> {
    let mut s = BTreeSet::new();
    if k >= p {
        s.extend(0..p);
        return s;
    }
    for j in p - k..p {
        let t = rng.random_range(0..=j);
        if !s.insert(t) {
            s.insert(j);
        }
    }
    s
}

#[derive(Debug, Clone)]
struct Level {
    palette: u64,
    leaves: u64,
    sampled: BTreeSet<u64>,
    used: BTreeMap<(usize, u64), u32>,
    next_overflow: u64,
}

impl Level {
    fn new(palette: u64, sampled: BTreeSet<u64>) -> Self {
        Level { palette, leaves: palette.next_power_of_two(), sampled, used: BTreeMap::new(), next_overflow: palette }
    }

    fn count(&self, v: usize, node: u64) -> u32 {
        self.used.get(&(v, node)).copied().unwrap_or(0)
    }

    /// Number of palette colours under `node`.
    fn span(&self, node: u64) -> u64 {
        let depth = 63 - node.leading_zeros() as u64;
        let width = self.leaves >> depth;
        let lo = (node - (1 << depth)) * width;
        self.palette.min(lo + width).saturating_sub(lo)
    }

    fn free_common(&mut self, u: usize, v: usize, ops: &mut u64) -> u64 {
        let mut node = 1u64;
        *ops += 1;
        if u64::from(self.count(u, 1) + self.count(v, 1)) >= self.palette {
            self.next_overflow += 1;
            return self.next_overflow - 1;
        }
        while node < self.leaves {
            *ops += 1;
            let l = 2 * node;
            node = if u64::from(self.count(u, l) + self.count(v, l)) < self.span(l) { l } else { l + 1 };
        }
        node - self.leaves
    }

    fn update(&mut self, v: usize, color: u64, add: bool, ops: &mut u64) {
        if color >= self.palette {
            return;
        }
        let mut node = self.leaves + color;
        while node >= 1 {
            *ops += 1;
            let slot = self.used.entry((v, node)).or_insert(0);
            if add {
                *slot += 1;
            } else {
                *slot -= 1;
                if *slot == 0 {
                    self.used.remove(&(v, node));
                }
            }
            node /= 2;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    value: f64,
    level: u32,
    color: u64,
}

/// Kernel membership before and after an update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelDelta {
    pub pair: Pair,
    pub was_in: bool,
    pub now_in: bool,
}

#[derive(Debug, Clone)]
pub struct Sparsifier {
    epsilon: f64,
    n: usize,
    d: f64,
    seed: u64,
    min_value: f64,
    entries: BTreeMap<Pair, Entry>,
    levels: BTreeMap<u32, Level>,
    kernel: BTreeSet<Pair>,
    last_ops: u64,
    max_ops: u64,
    overflows: u64,
}

impl Sparsifier {
    /// Builds the kernel for `x` on `n` vertices. Values below `(eps/n)^2` are ignored.
    pub fn new(x: &CollapsedMatching, n: usize, epsilon: f64, d: f64, seed: u64) -> Self {
        let nn = n.max(1) as f64;
        let mut s = Sparsifier {
            epsilon,
            n,
            d,
            seed,
            min_value: (epsilon / nn) * (epsilon / nn),
            entries: BTreeMap::new(),
            levels: BTreeMap::new(),
            kernel: BTreeSet::new(),
            last_ops: 0,
            max_ops: 0,
            overflows: 0,
        };
        for (p, v) in x.iter() {
            if v >= s.min_value {
                let mut ops = 0;
                s.insert(p, v, &mut ops);
                s.record(ops);
            }
        }
        s
    }

    /// `ceil(2 log_{1+eps}(n/eps))`.
    pub fn max_level(&self) -> u32 {
        libm::ceil(2.0 * libm::log(self.n.max(1) as f64 / self.epsilon) / libm::log(1.0 + self.epsilon)) as u32
    }

    pub fn palette(&self, i: u32) -> u64 {
        3 * level_degree(i, self.epsilon)
    }

    /// `3 min(ceil d, ceil((1+eps)^i))`.
    pub fn sample_size(&self, i: u32) -> u64 {
        3 * (libm::ceil(self.d) as u64).min(level_degree(i, self.epsilon))
    }

    fn level(&mut self, i: u32) -> &mut Level {
        if !self.levels.contains_key(&i) {
            let p = self.palette(i);
            let k = self.sample_size(i);
            let mut rng = seed::child_rng(self.seed, "sparsifier-level", u64::from(i));
            let sampled = sample_without_replacement(p, k, &mut rng);
            self.levels.insert(i, Level::new(p, sampled));
        }
        self.levels.get_mut(&i).expect("just inserted")
    }

    fn insert(&mut self, p: Pair, value: f64, ops: &mut u64) {
        let i = level_of(value, self.epsilon);
        let lv = self.level(i);
        let color = lv.free_common(p.lo(), p.hi(), ops);
        lv.update(p.lo(), color, true, ops);
        lv.update(p.hi(), color, true, ops);
        let inside = lv.sampled.contains(&color);
        if color >= lv.palette {
            self.overflows += 1;
        }
        if inside {
            self.kernel.insert(p);
        }
        self.entries.insert(p, Entry { value, level: i, color });
    }

    fn remove(&mut self, p: Pair, ops: &mut u64) -> Entry {
        let e = self.entries.remove(&p).expect("caller checked presence");
        let lv = self.levels.get_mut(&e.level).expect("level of a stored entry");
        lv.update(p.lo(), e.color, false, ops);
        lv.update(p.hi(), e.color, false, ops);
        self.kernel.remove(&p);
        e
    }

    fn record(&mut self, ops: u64) {
        self.last_ops = ops;
        self.max_ops = self.max_ops.max(ops);
    }

    pub fn delete(&mut self, p: Pair) -> Result<KernelDelta> {
        if !self.entries.contains_key(&p) {
            return Err(Error::UnknownPair(p));
        }
        let was_in = self.kernel.contains(&p);
        let mut ops = 0;
        self.remove(p, &mut ops);
        self.record(ops);
        Ok(KernelDelta { pair: p, was_in, now_in: false })
    }

    /// Lowers the value of `p`, moving it between levels as needed.
    pub fn decrease(&mut self, p: Pair, value: f64) -> Result<KernelDelta> {
        let Some(e) = self.entries.get(&p).copied() else { return Err(Error::UnknownPair(p)) };
        if value > e.value {
            return Err(Error::Increase { pair: p, old: e.value, new: value });
        }
        if value < self.min_value {
            return self.delete(p);
        }
        let was_in = self.kernel.contains(&p);
        let mut ops = 0;
        if level_of(value, self.epsilon) == e.level {
            self.entries.insert(p, Entry { value, ..e });
        } else {
            self.remove(p, &mut ops);
            self.insert(p, value, &mut ops);
        }
        self.record(ops);
        Ok(KernelDelta { pair: p, was_in, now_in: self.kernel.contains(&p) })
    }

    pub fn kernel(&self) -> &BTreeSet<Pair> {
        &self.kernel
    }

    pub fn tracks(&self, p: Pair) -> bool {
        self.entries.contains_key(&p)
    }

    pub fn value(&self, p: Pair) -> Option<f64> {
        self.entries.get(&p).map(|e| e.value)
    }

    pub fn level_of_pair(&self, p: Pair) -> Option<u32> {
        self.entries.get(&p).map(|e| e.level)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Work of the most recent update.
    pub fn last_update_ops(&self) -> u64 {
        self.last_ops
    }

    pub fn max_update_ops(&self) -> u64 {
        self.max_ops
    }

    /// Edges that found no colour inside their palette.
    pub fn overflows(&self) -> u64 {
        self.overflows
    }

    /// Sampled colours of a level, if it has been touched.
    pub fn sampled(&self, i: u32) -> Option<&BTreeSet<u64>> {
        self.levels.get(&i).map(|l| &l.sampled)
    }

    /// Direct scan: no two pairs sharing a vertex share a colour within a
    /// level, and every colour fits its palette.
    pub fn coloring_is_proper(&self) -> bool {
        let mut seen: BTreeSet<(u32, usize, u64)> = BTreeSet::new();
        self.entries.iter().all(|(p, e)| {
            let lv = &self.levels[&e.level];
            e.color < lv.palette && seen.insert((e.level, p.lo(), e.color)) && seen.insert((e.level, p.hi(), e.color))
        })
    }

    /// Pairs currently tracked, in order.
    pub fn pairs(&self) -> Vec<Pair> {
        self.entries.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(items: &[((usize, usize), f64)]) -> CollapsedMatching {
        CollapsedMatching { values: items.iter().map(|&((u, v), x)| (Pair::new(u, v), x)).collect() }
    }

    #[test]
    fn level_formula() {
        assert_eq!(level_of(0.1, 0.5), 6);
        assert_eq!(level_of(0.05, 0.5), 8);
        assert_eq!(level_of(1.0, 0.5), 0);
        // closed below: (1.5)^-2 lands in level 2
        assert_eq!(level_of(1.0 / 2.25, 0.5), 2);
        assert_eq!(level_of(0.7, 0.5), 1);
    }

    #[test]
    fn floyd_sample() {
        let mut r = seed::rng(3);
        let s = sample_without_replacement(10, 4, &mut r);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|&c| c < 10));
        assert_eq!(sample_without_replacement(5, 9, &mut r).len(), 5);
    }

    #[test]
    fn low_levels_keep_everything() {
        // level 6 at eps = 0.5: ceil(1.5^6) = 12 <= ceil(d) so all colours are sampled
        let x = cm(&[((0, 1), 0.1), ((1, 2), 0.1), ((2, 3), 0.1)]);
        let s = Sparsifier::new(&x, 4, 0.5, 32.0, 1);
        assert_eq!(s.kernel().len(), 3);
        assert_eq!(s.sample_size(6), s.palette(6));
        assert!(s.coloring_is_proper());
    }

    #[test]
    fn delete_and_decrease() {
        let x = cm(&[((0, 1), 0.1), ((1, 2), 0.1)]);
        let mut s = Sparsifier::new(&x, 3, 0.5, 32.0, 1);
        let d = s.decrease(Pair::new(0, 1), 0.09).unwrap();
        assert_eq!(s.level_of_pair(Pair::new(0, 1)), Some(6));
        assert!(d.was_in && d.now_in);
        s.decrease(Pair::new(0, 1), 0.05).unwrap();
        assert_eq!(s.level_of_pair(Pair::new(0, 1)), Some(8));
        assert!(matches!(s.decrease(Pair::new(0, 1), 0.2), Err(Error::Increase { .. })));
        let d = s.decrease(Pair::new(1, 2), 0.0).unwrap();
        assert!(d.was_in && !d.now_in);
        assert!(!s.tracks(Pair::new(1, 2)));
        assert_eq!(s.delete(Pair::new(1, 2)), Err(Error::UnknownPair(Pair::new(1, 2))));
        s.delete(Pair::new(0, 1)).unwrap();
        assert!(s.kernel().is_empty() && s.is_empty());
    }

    #[test]
    fn dense_level_coloring_stays_proper() {
        // star-free dense instance: K_8 with x = 1/7 per edge
        let mut items = Vec::new();
        for u in 0..8 {
            for v in u + 1..8 {
                items.push(((u, v), 1.0 / 7.0));
            }
        }
        let mut s = Sparsifier::new(&cm(&items), 8, 0.3, 4.0, 9);
        assert!(s.coloring_is_proper());
        assert_eq!(s.overflows(), 0);
        for (i, ((u, v), _)) in items.iter().enumerate() {
            if i % 3 == 0 {
                s.decrease(Pair::new(*u, *v), 0.01).unwrap();
            }
        }
        assert!(s.coloring_is_proper());
        assert!(s.kernel().iter().all(|p| s.tracks(*p)));
    }
}
