//! Adversaries and oracle-verified end-to-end runs.

use crate::io::{resolve, FormatError, MetricsLine, TraceOp};
use decmatch_core::engine::EStarCheck;
use decmatch_core::graph::{EdgeId, Multigraph};
use decmatch_core::orchestrator::{Orchestrator, OuterConfig};
use decmatch_core::{oracle, seed};
use rand::Rng as _;
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] decmatch_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Chooses the next deletion. Adaptive strategies see only the current
/// output matching, never the algorithm's internal randomness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adversary {
    Random,
    /// Deletes a uniform edge of the current output; random when it is empty.
    AttackMatching,
    Trace { ops: Vec<TraceOp>, pos: usize },
}

impl Adversary {
    pub fn trace(ops: Vec<TraceOp>) -> Self {
        Adversary::Trace { ops, pos: 0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Adversary::Random => "random",
            Adversary::AttackMatching => "attack-matching",
            Adversary::Trace { .. } => "trace",
        }
    }

    /// `None` once the graph is empty or the trace is exhausted.
    pub fn next(&mut self, g: &Multigraph, output: &[EdgeId], rng: &mut seed::Rng) -> Result<Option<EdgeId>> {
        match self {
            Adversary::Trace { ops, pos } => {
                let Some(&op) = ops.get(*pos) else { return Ok(None) };
                *pos += 1;
                Ok(Some(resolve(op, g, *pos - 1)?))
            }
            _ if g.m() == 0 => Ok(None),
            Adversary::AttackMatching if !output.is_empty() => Ok(Some(output[rng.random_range(0..output.len())])),
            Adversary::Random | Adversary::AttackMatching => {
                let k = rng.random_range(0..g.m());
                Ok(g.edges().nth(k).map(|(e, _)| e))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub outer: OuterConfig,
    /// Enforced ratio is `1 - eps_acc`.
    pub eps_acc: f64,
    /// Compare against the exact maximum matching after every step.
    pub verify: bool,
    pub max_steps: Option<usize>,
}

impl RunConfig {
    pub fn new(outer: OuterConfig) -> Self {
        RunConfig { outer, eps_acc: 0.5, verify: true, max_steps: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub step: usize,
    pub what: String,
    /// Remaining graph and output at the time of the violation.
    pub snapshot: String,
}

/// An engine termination checked against the exact matching size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoCheck {
    pub step: u64,
    pub engine: usize,
    pub mu: f64,
    pub mu_h: usize,
    pub epsilon: f64,
}

impl NoCheck {
    pub fn holds(&self) -> bool {
        (self.mu_h as f64) < (1.0 - 2.0 * self.epsilon) * self.mu
    }
}

/// Largest per-engine call count against `10 alpha^3 log2 n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CallCheck {
    pub epoch: u64,
    pub engine: usize,
    pub calls: u64,
    pub bound: f64,
}

impl CallCheck {
    pub fn holds(&self) -> bool {
        self.calls as f64 <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub adversary: &'static str,
    pub config: RunConfig,
    pub steps: usize,
    pub initial_mu: Option<usize>,
    /// Smallest `|M| / mu` over verified steps with `mu > 0`.
    pub min_ratio: Option<f64>,
    pub more_calls: u64,
    pub restarts: u64,
    pub tail_restarts: u64,
    pub bypass_rebuilds: u64,
    pub failures: Vec<Failure>,
    pub no_checks: Vec<NoCheck>,
    pub call_checks: Vec<CallCheck>,
    pub estar: Vec<EStarCheck>,
    pub metrics: Vec<MetricsLine>,
    pub wall: Duration,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Everything except wall time; identical inputs give identical text.
    pub fn summary(&self) -> String {
        let o = &self.config.outer;
        let mut s = format!(
            "n={} m={} seed={} adversary={} profile={:?} epsilon={} eps_acc={} verify={}\n",
            self.n, self.m, self.seed, self.adversary, o.profile, o.epsilon, self.config.eps_acc, self.config.verify
        );
        let ratio = self.min_ratio.map_or("-".to_string(), |r| format!("{r:.4}"));
        s += &format!(
            "steps={} initial_mu={} min_ratio={ratio} more_calls={} restarts={} tail_restarts={} bypass_rebuilds={}\n",
            self.steps,
            self.initial_mu.map_or("-".to_string(), |m| m.to_string()),
            self.more_calls,
            self.restarts,
            self.tail_restarts,
            self.bypass_rebuilds
        );
        let max_calls = self.call_checks.iter().map(|c| c.calls).max().unwrap_or(0);
        s += &format!(
            "terminations={} terminations_ok={} max_engine_calls={max_calls} calls_ok={} estar_sets={}\n",
            self.no_checks.len(),
            self.no_checks.iter().all(NoCheck::holds),
            self.call_checks.iter().all(CallCheck::holds),
            self.estar.len()
        );
        for f in &self.failures {
            s += &format!("FAILURE step={} {}\n{}", f.step, f.what, f.snapshot);
        }
        s
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}wall_ms={}\n{}", self.summary(), self.wall.as_millis(), if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn snapshot(g: &Multigraph, m: &[EdgeId]) -> String {
    let mut s = String::from("graph:\n");
    for (e, p) in g.edges() {
        s += &format!("  {} {} {}\n", e.0, p.lo(), p.hi());
    }
    s += "output:";
    for e in m {
        s += &format!(" {}", e.0);
    }
    s.push('\n');
    s
}

/// Checks the current output; returns the exact `mu` when verifying.
fn check_step(
    o: &Orchestrator,
    cfg: &RunConfig,
    step: usize,
    min_ratio: &mut Option<f64>,
    failures: &mut Vec<Failure>,
) -> Result<Option<usize>> {
    let m = o.matching();
    let g = o.graph();
    if !g.is_matching(&m) {
        failures.push(Failure { step, what: "output is not a matching of the current graph".into(), snapshot: snapshot(g, &m) });
    }
    if !cfg.verify {
        return Ok(None);
    }
    let mu = oracle::exact_mcm(g)?.len();
    if mu > 0 {
        let r = m.len() as f64 / mu as f64;
        *min_ratio = Some(min_ratio.map_or(r, |x: f64| x.min(r)));
        if (m.len() as f64) < (1.0 - cfg.eps_acc) * mu as f64 - 1e-9 {
            failures.push(Failure {
                step,
                what: format!("|M| = {} below (1 - {}) * mu = {mu}", m.len(), cfg.eps_acc),
                snapshot: snapshot(g, &m),
            });
        }
    }
    Ok(Some(mu))
}

/// Runs the orchestrator on `g` against `adversary`, checking every step.
pub fn verified_run(g: &Multigraph, cfg: &RunConfig, mut adversary: Adversary, seed: u64) -> Result<RunReport> {
    let start = Instant::now();
    let mut o = Orchestrator::new(g.clone(), cfg.outer, seed)?;
    let mut rng = seed::child_rng(seed, "adversary", 0);
    let mut failures = Vec::new();
    let mut metrics = Vec::new();
    let mut min_ratio = None;
    let initial_mu = check_step(&o, cfg, 0, &mut min_ratio, &mut failures)?;
    let mut steps = 0;
    while cfg.max_steps.is_none_or(|k| steps < k) {
        let output = o.matching();
        let Some(e) = adversary.next(o.graph(), &output, &mut rng)? else { break };
        let out = o.delete(e)?;
        steps += 1;
        let mu_exact = check_step(&o, cfg, steps, &mut min_ratio, &mut failures)?;
        metrics.push(MetricsLine {
            step: steps,
            matched: out.matched,
            mu_exact,
            phase_events: out.phase_events,
            more_calls: out.more_calls,
        });
    }
    let eps = cfg.outer.epsilon;
    let mut no_checks = Vec::new();
    if cfg.verify {
        for r in o.no_records() {
            no_checks.push(NoCheck {
                step: r.step,
                engine: r.engine,
                mu: r.mu,
                mu_h: oracle::exact_mcm(&r.graph)?.len(),
                epsilon: eps,
            });
        }
    }
    let call_checks = o
        .engine_records()
        .iter()
        .map(|r| CallCheck {
            epoch: r.epoch,
            engine: r.engine,
            calls: r.more_calls,
            bound: 10.0 * r.alpha.powi(3) * (r.n.max(2) as f64).log2(),
        })
        .collect();
    for c in no_checks.iter().filter(|c| !c.holds()) {
        failures.push(Failure {
            step: c.step as usize,
            what: format!("engine {} said no with mu(H) = {} >= (1 - 2 eps) * {}", c.engine, c.mu_h, c.mu),
            snapshot: String::new(),
        });
    }
    let stats = *o.stats();
    Ok(RunReport {
        n: g.n(),
        m: g.m(),
        seed,
        adversary: adversary.name(),
        config: *cfg,
        steps,
        initial_mu,
        min_ratio,
        more_calls: stats.more_calls,
        restarts: stats.restarts,
        tail_restarts: stats.tail_restarts,
        bypass_rebuilds: stats.bypass_rebuilds,
        failures,
        no_checks,
        call_checks,
        estar: o.estar_checks(),
        metrics,
        wall: start.elapsed(),
    })
}

/// Erdős–Rényi graph `G(n, p)` from a seed.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Multigraph {
    let mut rng = seed::rng(seed);
    let mut g = Multigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("distinct vertices in range");
            }
        }
    }
    g
}

/// One end-to-end benchmark run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchCase {
    pub n: usize,
    pub p: f64,
    pub graph_seed: u64,
    pub attack: bool,
    pub run_seed: u64,
}

impl BenchCase {
    pub fn graph(&self) -> Multigraph {
        erdos_renyi(self.n, self.p, self.graph_seed)
    }

    pub fn adversary(&self) -> Adversary {
        if self.attack {
            Adversary::AttackMatching
        } else {
            Adversary::Random
        }
    }
}

/// Ten graphs over `n in {40, 60, 100}`, `p in {0.1, 0.3}`, each run
/// against both the random and the matching-attack adversary.
pub fn bench_cases() -> Vec<BenchCase> {
    const SHAPES: [(usize, f64); 6] = [(40, 0.1), (40, 0.3), (60, 0.1), (60, 0.3), (100, 0.1), (100, 0.3)];
    let mut out = Vec::new();
    for run in 0..10u64 {
        let (n, p) = SHAPES[run as usize % SHAPES.len()];
        for attack in [false, true] {
            out.push(BenchCase { n, p, graph_seed: run, attack, run_seed: 5 + run });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use decmatch_core::Profile;

    #[test]
    fn attack_picks_from_output() {
        let g = Multigraph::from_edges(6, &[(0, 1), (2, 3), (4, 5), (1, 2)]).unwrap();
        let m = [EdgeId(0), EdgeId(1), EdgeId(2)];
        let mut rng = seed::rng(1);
        for _ in 0..50 {
            let e = Adversary::AttackMatching.next(&g, &m, &mut rng).unwrap().unwrap();
            assert!(m.contains(&e));
        }
    }

    #[test]
    fn random_with_one_edge() {
        let g = Multigraph::from_edges(3, &[(0, 2)]).unwrap();
        let mut rng = seed::rng(2);
        assert_eq!(Adversary::Random.next(&g, &[], &mut rng).unwrap(), Some(EdgeId(0)));
        assert_eq!(Adversary::Random.next(&Multigraph::new(3), &[], &mut rng).unwrap(), None);
    }

    #[test]
    fn trace_replays_verbatim() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let ops = vec![TraceOp::Id(EdgeId(2)), TraceOp::Pair(2, 1)];
        let mut a = Adversary::trace(ops);
        let mut rng = seed::rng(3);
        assert_eq!(a.next(&g, &[], &mut rng).unwrap(), Some(EdgeId(2)));
        assert_eq!(a.next(&g, &[], &mut rng).unwrap(), Some(EdgeId(1)));
        assert_eq!(a.next(&g, &[], &mut rng).unwrap(), None);
    }

    #[test]
    fn empty_stream_is_one_check() {
        let g = erdos_renyi(20, 0.3, 4);
        let cfg = RunConfig::new(OuterConfig::new(Profile::Practical, 0.3));
        let r = verified_run(&g, &cfg, Adversary::trace(Vec::new()), 9).unwrap();
        assert_eq!(r.steps, 0);
        assert!(r.passed() && r.metrics.is_empty());
        assert!(r.min_ratio.unwrap() >= 0.5);
    }

    #[test]
    fn complete_bipartite_random_deletions() {
        let mut edges = Vec::new();
        for u in 0..10 {
            for v in 10..20 {
                edges.push((u, v));
            }
        }
        let g = Multigraph::from_edges(20, &edges).unwrap();
        let cfg = RunConfig::new(OuterConfig::new(Profile::Practical, 0.3));
        let r = verified_run(&g, &cfg, Adversary::Random, 5).unwrap();
        assert_eq!(r.steps, 100);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn summary_is_reproducible() {
        let g = erdos_renyi(30, 0.2, 6);
        let cfg = RunConfig::new(OuterConfig::new(Profile::Practical, 0.3));
        let a = verified_run(&g, &cfg, Adversary::AttackMatching, 7).unwrap();
        let b = verified_run(&g, &cfg, Adversary::AttackMatching, 7).unwrap();
        assert_eq!(a.summary(), b.summary());
        assert_eq!(a.metrics, b.metrics);
    }
}
