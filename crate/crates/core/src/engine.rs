//! Decremental matching on one multigraph.
//!
//! Capacities start at `alpha^-ceil(log_alpha n)`. Each phase computes a
//! fractional matching (raising capacities until the subroutine stops
//! returning bottleneck sets), rounds its small part through the
//! sparsifier and outputs a matching of the kernel plus the unit-valued
//! groups. Deleted fractional value and deleted output edges are counted;
//! crossing `eps mu` restarts the phase or rebuilds the output.

use crate::error::{Error, Result};
use crate::graph::{collapse, split_matching, CapacityFn, CollapsedMatching, EdgeId, FractionalMatching, Multigraph, Pair, SimpleGraph};
use crate::more::{m_or_estar, value_bottleneck, MoreOutcome, MoreRun};
use crate::params::Params;
use crate::seed;
use crate::sparsifier::Sparsifier;
use crate::static_match::static_match;
use crate::TOL;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    /// Retry a matching-branch result below `(1 - 13 eps) mu'` once with a
    /// fresh seed and keep the better one.
    pub retry_weak: bool,
    /// When set, a matching-branch result worth less than this fraction of
    /// `mu'` is not accepted while a bottleneck set can still be raised.
    pub value_floor: Option<f64>,
    /// Measure the deletion counters against the phase estimate `mu'`
    /// instead of the engine's `mu`.
    pub phase_budget: bool,
}

impl EngineConfig {
    /// Practical profile: all adjustments on, value floor 1.
    /// Theory: all off.
    pub fn for_params(p: &Params) -> Self {
        let practical = p.profile == crate::Profile::Practical;
        EngineConfig { retry_weak: practical, value_floor: practical.then_some(1.0), phase_budget: practical }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EStarCheck {
    pub size: usize,
    /// Every member had capacity below 1.
    pub sub_unit: bool,
    /// Every group touched is contained entirely.
    pub closed: bool,
    /// Total capacity of the set before the raise.
    pub capacity: f64,
    /// The `mu` handed to the subroutine.
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EngineEvent {
    PhaseStart { mu_phase: usize, value: f64 },
    EStar(EStarCheck),
    Rebuild { size: usize },
    No { mu_phase: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub phases: u64,
    pub more_calls: u64,
    pub estar_rounds: u64,
    pub raised_edges: u64,
    pub rebuilds: u64,
    pub retries: u64,
    pub empty_estar: u64,
    /// Raise rounds triggered by the value floor.
    pub value_raises: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineOutput {
    Matching(usize),
    No,
}

#[derive(Debug, Clone)]
pub struct Engine {
    h: Multigraph,
    kappa: CapacityFn,
    params: Params,
    config: EngineConfig,
    seed: u64,
    mu: f64,
    mu_phase: usize,
    x: FractionalMatching,
    y: FractionalMatching,
    z: FractionalMatching,
    yc: CollapsedMatching,
    sparsifier: Sparsifier,
    m: BTreeSet<EdgeId>,
    counter_x: f64,
    counter_m: usize,
    terminated: bool,
    stats: EngineStats,
    events: Vec<EngineEvent>,
}

impl Engine {
    /// `mu` should be at least `(1 - eps) mu(h)`.
    pub fn new(h: Multigraph, mu: f64, params: Params, config: EngineConfig, seed: u64) -> Result<Self> {
        params.validate()?;
        let k0 = -params.log_alpha_ceil(h.n());
        let kappa = CapacityFn::uniform(params.alpha, h.id_bound(), k0);
        let mut e = Engine {
            sparsifier: Sparsifier::new(&CollapsedMatching::default(), h.n(), params.epsilon, params.d, seed),
            h,
            kappa,
            params,
            config,
            seed,
            mu,
            mu_phase: 0,
            x: FractionalMatching::new(),
            y: FractionalMatching::new(),
            z: FractionalMatching::new(),
            yc: CollapsedMatching::default(),
            m: BTreeSet::new(),
            counter_x: 0.0,
            counter_m: 0,
            terminated: false,
            stats: EngineStats::default(),
            events: Vec::new(),
        };
        e.start_phase();
        Ok(e)
    }

    fn call_more(&mut self) -> MoreRun {
        self.stats.more_calls += 1;
        let s = seed::derive(self.seed, "more", self.stats.more_calls);
        let run = m_or_estar(&self.h, &self.kappa, &self.params, self.mu_phase as f64, s)
            .expect("low-capacity flow input satisfies its precondition");
        if run.empty_estar {
            self.stats.empty_estar += 1;
        }
        run
    }

    fn raise(&mut self, estar: &BTreeSet<EdgeId>) {
        let mut closed = true;
        let mut touched = BTreeSet::new();
        for &e in estar {
            let p = self.h.endpoints(e).expect("bottleneck edges are live");
            if touched.insert(p) {
                closed &= self.h.group(p).is_some_and(|d| d.iter().all(|f| estar.contains(f)));
            }
        }
        let check = EStarCheck {
            size: estar.len(),
            sub_unit: estar.iter().all(|&e| self.kappa.exponent(e) < 0),
            closed,
            capacity: estar.iter().map(|&e| self.kappa.value(e)).sum(),
            mu: self.mu_phase as f64,
        };
        for &e in estar {
            if self.kappa.raise(e) {
                self.stats.raised_edges += 1;
            }
        }
        self.stats.estar_rounds += 1;
        self.events.push(EngineEvent::EStar(check));
    }

    /// Recomputes `mu'`, then either terminates or computes a fresh
    /// fractional matching and output.
    fn start_phase(&mut self) {
        let eps = self.params.epsilon;
        self.mu_phase = static_match(&self.h.simple(), eps).matching.len();
        if self.mu_phase as f64 <= (1.0 - 3.0 * eps) * self.mu + TOL {
            self.terminated = true;
            self.m.clear();
            self.events.push(EngineEvent::No { mu_phase: self.mu_phase });
            return;
        }
        let mut x = loop {
            let run = self.call_more();
            match &run.outcome {
                MoreOutcome::EStar(s) => self.raise(s),
                MoreOutcome::Matching(x) => {
                    if let Some(floor) = self.config.value_floor {
                        let target = floor * self.mu_phase as f64;
                        if x.total() < target - TOL {
                            let b = value_bottleneck(&self.h, &self.kappa, eps, &run, target);
                            if !b.is_empty() {
                                self.stats.value_raises += 1;
                                self.raise(&b);
                                continue;
                            }
                        }
                    }
                    break x.clone();
                }
            }
        };
        if self.config.retry_weak && x.total() < (1.0 - 13.0 * eps) * self.mu_phase as f64 {
            self.stats.retries += 1;
            if let MoreOutcome::Matching(x2) = self.call_more().outcome {
                if x2.total() > x.total() {
                    x = x2;
                }
            }
        }
        let (y, z) = split_matching(&self.h, &self.kappa, &x);
        self.yc = collapse(&self.h, &y);
        self.sparsifier = Sparsifier::new(
            &self.yc,
            self.h.n(),
            eps,
            self.params.d,
            seed::derive(self.seed, "sparsifier", self.stats.phases),
        );
        self.stats.phases += 1;
        self.events.push(EngineEvent::PhaseStart { mu_phase: self.mu_phase, value: x.total() });
        self.x = x;
        self.y = y;
        self.z = z;
        self.counter_x = 0.0;
        self.rebuild();
    }

    /// Output = maximum matching of the kernel plus one edge per unit group.
    fn rebuild(&mut self) {
        let eps = self.params.epsilon;
        let kernel = SimpleGraph::from_pairs(self.h.n(), self.sparsifier.kernel().iter().copied());
        let sm = static_match(&kernel, eps);
        self.m.clear();
        let mut used = alloc::vec![false; self.h.n()];
        let unit: BTreeSet<Pair> = self.z.iter().filter_map(|(e, _)| self.h.endpoints(e)).collect();
        for p in sm.matching.into_iter().chain(unit) {
            if used[p.lo()] || used[p.hi()] {
                debug_assert!(false, "kernel and unit groups overlap at {p}");
                continue;
            }
            if let Some(e) = self.h.representative(p) {
                used[p.lo()] = true;
                used[p.hi()] = true;
                self.m.insert(e);
            }
        }
        self.counter_m = 0;
        self.stats.rebuilds += 1;
        self.events.push(EngineEvent::Rebuild { size: self.m.len() });
    }

    pub fn delete(&mut self, e: EdgeId) -> Result<EngineOutput> {
        if self.terminated {
            return Err(Error::Terminated);
        }
        let p = self.h.delete_edge(e)?;
        self.counter_x += self.x.remove(e);
        let ye = self.y.remove(e);
        if ye > 0.0 {
            let left = self.yc.get(p) - ye;
            if self.h.group(p).is_none() || left <= 0.0 {
                self.yc.values.remove(&p);
                if self.sparsifier.tracks(p) {
                    self.sparsifier.delete(p)?;
                }
            } else {
                self.yc.values.insert(p, left);
                if self.sparsifier.tracks(p) {
                    self.sparsifier.decrease(p, left)?;
                }
            }
        }
        self.z.remove(e);
        if self.m.remove(&e) {
            // a parallel edge keeps the pair matched
            match self.h.representative(p) {
                Some(f) => {
                    self.m.insert(f);
                }
                None => self.counter_m += 1,
            }
        }
        let base = if self.config.phase_budget { self.mu_phase as f64 } else { self.mu };
        let budget = self.params.epsilon * base;
        if self.counter_x > budget {
            self.start_phase();
        } else if self.counter_m as f64 > budget {
            self.rebuild();
        }
        Ok(self.output())
    }

    pub fn output(&self) -> EngineOutput {
        if self.terminated {
            EngineOutput::No
        } else {
            EngineOutput::Matching(self.m.len())
        }
    }

    pub fn matching(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.m.iter().copied()
    }

    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    pub fn graph(&self) -> &Multigraph {
        &self.h
    }

    pub fn capacities(&self) -> &CapacityFn {
        &self.kappa
    }

    pub fn fractional(&self) -> &FractionalMatching {
        &self.x
    }

    /// `(x^f, x^i)` as currently maintained.
    pub fn parts(&self) -> (&FractionalMatching, &FractionalMatching) {
        (&self.y, &self.z)
    }

    pub fn sparsifier(&self) -> &Sparsifier {
        &self.sparsifier
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn mu_phase(&self) -> usize {
        self.mu_phase
    }

    pub fn counters(&self) -> (f64, usize) {
        (self.counter_x, self.counter_m)
    }

    pub fn stats(&self) -> &EngineStats {
        &self.stats
    }

    pub fn events(&self) -> &[EngineEvent] {
        &self.events
    }

    /// Capacity exponents, fractional matching and output matching.
    pub fn dump(&self, out: &mut impl fmt::Write) -> fmt::Result {
        writeln!(out, "engine mu={} mu_phase={} counters=({}, {})", self.mu, self.mu_phase, self.counter_x, self.counter_m)?;
        for (e, _) in self.h.edges() {
            writeln!(out, "kappa {} {}", e.0, self.kappa.exponent(e))?;
        }
        for (e, v) in self.x.iter() {
            writeln!(out, "x {} {v}", e.0)?;
        }
        for e in &self.m {
            writeln!(out, "m {}", e.0)?;
        }
        Ok(())
    }
}
