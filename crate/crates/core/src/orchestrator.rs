//! Outer loop: estimate `mu`, shrink the vertex set by random binning into
//! several multigraphs, run one engine per multigraph and output the
//! matching of the first engine still active. When every engine has
//! given up, start over from a fresh estimate.

use crate::engine::{EStarCheck, Engine, EngineConfig, EngineEvent, EngineOutput};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::params::{Params, Profile};
use crate::seed;
use crate::static_match::static_match;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use rand::Rng as _;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterConfig {
    pub epsilon: f64,
    pub profile: Profile,
    pub alpha: Option<f64>,
    pub rho: Option<f64>,
    pub d: Option<f64>,
    /// Number of binned multigraphs.
    pub lambda: Option<usize>,
    /// Below this matching size the graph is handled by periodic static
    /// recomputation instead of engines.
    pub small_mu_cutoff: Option<f64>,
    pub retry_weak: Option<bool>,
    pub value_floor: Option<Option<f64>>,
    /// Restart once the output engine's phase estimate is at or below the
    /// small-matching cutoff. Defaults to on for the practical profile.
    pub tail_restart: Option<bool>,
    /// Output the largest matching among active engines rather than the
    /// least-indexed one. Defaults to on for the practical profile.
    pub best_output: Option<bool>,
    /// Slack of the vertex reduction. Defaults to `eps / 2` for the
    /// practical profile and `eps` for theory.
    pub delta: Option<f64>,
}

impl OuterConfig {
    pub fn new(profile: Profile, epsilon: f64) -> Self {
        OuterConfig { epsilon, profile, alpha: None, rho: None, d: None, lambda: None, small_mu_cutoff: None, retry_weak: None, value_floor: None, tail_restart: None, best_output: None, delta: None }
    }

    /// Engine parameters for a multigraph on `n` vertices.
    pub fn params_for(&self, n: usize) -> Params {
        let mut p = Params::for_profile(self.profile, n, self.epsilon);
        if let Some(a) = self.alpha {
            p.alpha = a;
        }
        if let Some(r) = self.rho {
            p.rho = r;
        }
        if let Some(d) = self.d {
            p.d = d;
        }
        p
    }

    /// Practical default 8; theory `100 log2 n / eps^4`.
    pub fn lambda_for(&self, n: usize) -> usize {
        self.lambda.unwrap_or(match self.profile {
            Profile::Practical => 8,
            Profile::Theory => {
                libm::ceil(100.0 * libm::log2(n.max(2) as f64) / libm::pow(self.epsilon, 4.0)) as usize
            }
        })
    }

    /// Practical default 2; theory `100 log2 n`.
    pub fn delta(&self) -> f64 {
        self.delta.unwrap_or(match self.profile {
            Profile::Practical => self.epsilon / 2.0,
            Profile::Theory => self.epsilon,
        })
    }

    pub fn cutoff_for(&self, n: usize) -> f64 {
        self.small_mu_cutoff.unwrap_or(match self.profile {
            Profile::Practical => 3.0 / self.epsilon,
            Profile::Theory => 100.0 * libm::log2(n.max(2) as f64),
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.params_for(2).validate()?;
        if self.lambda == Some(0) {
            return Err(Error::Param("lambda must be positive".into()));
        }
        let delta = self.delta();
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Param(alloc::format!("delta must lie in (0, 1), got {delta}")));
        }
        Ok(())
    }
}

/// Bins every vertex uniformly into `0..tau` and keeps the inter-bin edges
/// under their original ids.
pub fn vertex_red_basic(g: &Multigraph, tau: usize, rng: &mut seed::Rng) -> (Multigraph, Vec<usize>) {
    assert!(tau >= 1, "need at least one bin");
    let bins: Vec<usize> = (0..g.n()).map(|_| rng.random_range(0..tau)).collect();
    let mut h = Multigraph::new(tau);
    for (e, p) in g.edges() {
        let (a, b) = (bins[p.lo()], bins[p.hi()]);
        if a != b {
            h.add_edge_with_id(e, a, b).expect("bins are in range and ids unique");
        }
    }
    (h, bins)
}

/// `ceil(4 (1 + delta) mu / delta)`, at least 1.
pub fn bin_count(mu: f64, delta: f64) -> usize {
    (libm::ceil(4.0 * (1.0 + delta) * mu / delta - 1e-9) as usize).max(1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub tau: usize,
    pub bins: Vec<Vec<usize>>,
    pub graphs: Vec<Multigraph>,
}

pub fn vertex_red(g: &Multigraph, mu: f64, delta: f64, lambda: usize, root: u64) -> Reduction {
    let tau = bin_count(mu, delta);
    let (graphs, bins) = (0..lambda)
        .map(|i| vertex_red_basic(g, tau, &mut seed::child_rng(root, "vertex-red", i as u64)))
        .unzip();
    Reduction { tau, bins, graphs }
}

/// An engine that said "no", with its graph at that moment.
#[derive(Debug, Clone, PartialEq)]
pub struct NoRecord {
    pub step: u64,
    pub epoch: u64,
    pub engine: usize,
    pub mu: f64,
    pub graph: Multigraph,
}

/// Per-engine totals, collected when an epoch ends or on request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineRecord {
    pub epoch: u64,
    pub engine: usize,
    pub n: usize,
    pub alpha: f64,
    pub more_calls: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OuterStats {
    pub restarts: u64,
    pub bypass_rebuilds: u64,
    /// Epochs where no binned graph kept a large enough matching.
    pub fallbacks: u64,
    pub more_calls: u64,
    /// Restarts forced by the small-matching tail rule, included in `restarts`.
    pub tail_restarts: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepOutput {
    pub matched: usize,
    pub phase_events: u64,
    /// Cumulative over the run.
    pub more_calls: u64,
    pub restarted: bool,
}

#[derive(Debug, Clone)]
enum Mode {
    Bypass { m: BTreeSet<EdgeId>, built: usize, lost: usize },
    Engines { engines: Vec<Option<Engine>>, cur: usize },
}

#[derive(Debug, Clone)]
pub struct Orchestrator {
    g: Multigraph,
    config: OuterConfig,
    seed: u64,
    epoch: u64,
    step: u64,
    mu: usize,
    mode: Mode,
    stats: OuterStats,
    no_log: Vec<NoRecord>,
    engine_log: Vec<EngineRecord>,
    estar_log: Vec<EStarCheck>,
    restart_mus: Vec<usize>,
}

impl Orchestrator {
    pub fn new(g: Multigraph, config: OuterConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let mut o = Orchestrator {
            g,
            config,
            seed,
            epoch: 0,
            step: 0,
            mu: 0,
            mode: Mode::Bypass { m: BTreeSet::new(), built: 0, lost: 0 },
            stats: OuterStats::default(),
            no_log: Vec::new(),
            engine_log: Vec::new(),
            estar_log: Vec::new(),
            restart_mus: Vec::new(),
        };
        o.restart()?;
        Ok(o)
    }

    fn retire(&mut self) {
        if let Mode::Engines { engines, .. } = &mut self.mode {
            for (i, e) in engines.iter().enumerate() {
                if let Some(e) = e {
                    self.engine_log.push(EngineRecord {
                        epoch: self.epoch,
                        engine: i,
                        n: e.graph().n(),
                        alpha: e.capacities().alpha(),
                        more_calls: e.stats().more_calls,
                    });
                    self.estar_log.extend(e.events().iter().filter_map(|ev| match ev {
                        EngineEvent::EStar(c) => Some(*c),
                        _ => None,
                    }));
                }
            }
        }
    }

    fn static_lift(&self) -> (usize, BTreeSet<EdgeId>) {
        let sm = static_match(&self.g.simple(), self.config.epsilon);
        let m = sm.matching.iter().map(|&p| self.g.representative(p).expect("matched pair is live")).collect();
        (sm.matching.len(), m)
    }

    fn restart(&mut self) -> Result<()> {
        self.retire();
        self.epoch += 1;
        let eps = self.config.epsilon;
        let (mu, m) = self.static_lift();
        self.mu = mu;
        self.restart_mus.push(mu);
        if mu as f64 <= self.config.cutoff_for(self.g.n()) {
            self.mode = Mode::Bypass { built: m.len(), m, lost: 0 };
            return Ok(());
        }
        let lambda = self.config.lambda_for(self.g.n());
        let red = vertex_red(&self.g, mu as f64, self.config.delta(), lambda, seed::derive(self.seed, "epoch", self.epoch));
        let mut engines = Vec::with_capacity(lambda);
        for (i, h) in red.graphs.into_iter().enumerate() {
            let size = static_match(&h.simple(), eps).matching.len();
            if (size as f64) < (1.0 - eps) * mu as f64 {
                engines.push(None);
                continue;
            }
            let params = self.config.params_for(h.n());
            let mut cfg = EngineConfig::for_params(&params);
            if let Some(r) = self.config.retry_weak {
                cfg.retry_weak = r;
            }
            if let Some(f) = self.config.value_floor {
                cfg.value_floor = f;
            }
            let s = seed::derive(self.seed, "engine", self.epoch * 1_000_003 + i as u64);
            let e = Engine::new(h, mu as f64 * (1.0 - eps), params, cfg, s)?;
            self.stats.more_calls += e.stats().more_calls;
            engines.push(Some(e));
        }
        let active = |e: &Option<Engine>| e.as_ref().is_some_and(|e| !e.is_terminated());
        match engines.iter().position(active) {
            Some(mut cur) => {
                if self.config.best_output.unwrap_or(self.config.profile == Profile::Practical) {
                    cur = best_engine(&engines, cur);
                }
                self.mode = Mode::Engines { engines, cur };
            }
            None => {
                self.stats.fallbacks += 1;
                self.mode = Mode::Engines { engines, cur: usize::MAX };
                self.retire();
                self.mode = Mode::Bypass { built: m.len(), m, lost: 0 };
            }
        }
        Ok(())
    }

    pub fn delete(&mut self, e: EdgeId) -> Result<StepOutput> {
        self.g.delete_edge(e)?;
        self.step += 1;
        let eps = self.config.epsilon;
        let mut phase_events = 0;
        let mut restarted = false;
        let mut need_restart = false;
        match &mut self.mode {
            Mode::Bypass { m, built, lost } => {
                if m.remove(&e) {
                    *lost += 1;
                    if *lost as f64 > eps * *built as f64 {
                        let (_, fresh) = self.static_lift();
                        self.mode = Mode::Bypass { built: fresh.len(), m: fresh, lost: 0 };
                        self.stats.bypass_rebuilds += 1;
                        phase_events += 1;
                    }
                }
            }
            Mode::Engines { engines, cur } => {
                for (i, slot) in engines.iter_mut().enumerate() {
                    let Some(engine) = slot else { continue };
                    if engine.is_terminated() || !engine.graph().is_live(e) {
                        continue;
                    }
                    let before = engine.events().len();
                    let calls = engine.stats().more_calls;
                    let out = engine.delete(e)?;
                    self.stats.more_calls += engine.stats().more_calls - calls;
                    phase_events += engine.events()[before..]
                        .iter()
                        .filter(|ev| matches!(ev, EngineEvent::PhaseStart { .. } | EngineEvent::No { .. }))
                        .count() as u64;
                    if out == EngineOutput::No {
                        self.no_log.push(NoRecord {
                            step: self.step,
                            epoch: self.epoch,
                            engine: i,
                            mu: engine.mu(),
                            graph: engine.graph().clone(),
                        });
                    }
                }
                while *cur < engines.len() && engines[*cur].as_ref().is_none_or(Engine::is_terminated) {
                    *cur += 1;
                }
                need_restart = *cur >= engines.len();
                if !need_restart && self.config.best_output.unwrap_or(self.config.profile == Profile::Practical) {
                    *cur = best_engine(engines, *cur);
                }
                let tail = self.config.tail_restart.unwrap_or(self.config.profile == Profile::Practical);
                if !need_restart && tail {
                    let phase = engines[*cur].as_ref().map_or(0, Engine::mu_phase);
                    if phase as f64 <= self.config.cutoff_for(self.g.n()) {
                        self.stats.tail_restarts += 1;
                        need_restart = true;
                    }
                }
            }
        }
        if need_restart {
            self.stats.restarts += 1;
            self.restart()?;
            restarted = true;
            phase_events += 1;
        }
        Ok(StepOutput { matched: self.matching().len(), phase_events, more_calls: self.stats.more_calls, restarted })
    }

    /// Current output as edge ids of the input graph.
    pub fn matching(&self) -> Vec<EdgeId> {
        match &self.mode {
            Mode::Bypass { m, .. } => m.iter().copied().collect(),
            Mode::Engines { engines, cur } => {
                engines[*cur].as_ref().expect("cur is active").matching().collect()
            }
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.g
    }

    pub fn in_bypass(&self) -> bool {
        matches!(self.mode, Mode::Bypass { .. })
    }

    pub fn mu_estimate(&self) -> usize {
        self.mu
    }

    pub fn stats(&self) -> &OuterStats {
        &self.stats
    }

    /// Matching-size estimate at every (re)start, in order.
    pub fn restart_estimates(&self) -> &[usize] {
        &self.restart_mus
    }

    pub fn no_records(&self) -> &[NoRecord] {
        &self.no_log
    }

    /// Records of finished epochs plus the engines currently running.
    pub fn engine_records(&self) -> Vec<EngineRecord> {
        let mut out = self.engine_log.clone();
        if let Mode::Engines { engines, .. } = &self.mode {
            for (i, e) in engines.iter().enumerate() {
                if let Some(e) = e {
                    out.push(EngineRecord {
                        epoch: self.epoch,
                        engine: i,
                        n: e.graph().n(),
                        alpha: e.capacities().alpha(),
                        more_calls: e.stats().more_calls,
                    });
                }
            }
        }
        out
    }

    /// Bottleneck-set checks from every engine so far.
    pub fn estar_checks(&self) -> Vec<EStarCheck> {
        let mut out = self.estar_log.clone();
        if let Mode::Engines { engines, .. } = &self.mode {
            for e in engines.iter().flatten() {
                out.extend(e.events().iter().filter_map(|ev| match ev {
                    EngineEvent::EStar(c) => Some(*c),
                    _ => None,
                }));
            }
        }
        out
    }

    /// Active engines of the current epoch, if not in bypass.
    /// Index of the engine whose matching is output, if any.
    pub fn current(&self) -> Option<usize> {
        match &self.mode {
            Mode::Engines { cur, .. } => Some(*cur),
            Mode::Bypass { .. } => None,
        }
    }

    pub fn engines(&self) -> Vec<(usize, &Engine)> {
        match &self.mode {
            Mode::Engines { engines, .. } => {
                engines.iter().enumerate().filter_map(|(i, e)| e.as_ref().map(|e| (i, e))).collect()
            }
            Mode::Bypass { .. } => Vec::new(),
        }
    }
}

/// Active engine with the largest output, least index first among ties.
fn best_engine(engines: &[Option<Engine>], first: usize) -> usize {
    let mut best = first;
    let mut size = 0;
    for (i, e) in engines.iter().enumerate().skip(first) {
        if let Some(e) = e.as_ref().filter(|e| !e.is_terminated()) {
            let k = e.matching().count();
            if i == first || k > size {
                best = i;
                size = k;
            }
        }
    }
    best
}

/// Replays `deletions` and returns one output per step.
pub fn outer_run(g: Multigraph, config: OuterConfig, seed: u64, deletions: &[EdgeId]) -> Result<Vec<StepOutput>> {
    let mut o = Orchestrator::new(g, config, seed)?;
    deletions
        .iter()
        .enumerate()
        .map(|(position, &edge)| {
            if !o.graph().is_live(edge) {
                return Err(Error::BadDeletion { position, edge });
            }
            o.delete(edge)
        })
        .collect()
}
