use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use decmatch::harness::{bench_cases, erdos_renyi, verified_run, Adversary, RunConfig};
use decmatch::io::{self, parse_capacities, parse_edge_list, parse_trace, write_metrics};
use decmatch::suites::{run_suite, SUITES};
use decmatch_core::engine::{Engine, EngineConfig, EngineOutput};
use decmatch_core::graph::{CapacityFn, EdgeId, Multigraph};
use decmatch_core::more::{m_or_estar, MoreOutcome};
use decmatch_core::orchestrator::OuterConfig;
use decmatch_core::static_match::static_match;
use decmatch_core::{oracle, Params, Profile};
use rayon::prelude::*;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "decmatch", version, about = "Decremental approximate maximum matching on multigraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Theory,
    Practical,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Theory => Profile::Theory,
            ProfileArg::Practical => Profile::Practical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdversaryArg {
    Trace,
    Random,
    AttackMatching,
}

#[derive(clap::Args, Clone)]
struct Tuning {
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = ProfileArg::Practical)]
    profile: ProfileArg,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
}

impl Tuning {
    fn params(&self, n: usize) -> Params {
        let mut p = Params::for_profile(self.profile.into(), n, self.epsilon);
        p.alpha = self.alpha.unwrap_or(p.alpha);
        p.rho = self.rho.unwrap_or(p.rho);
        p.d = self.d.unwrap_or(p.d);
        p
    }

    fn outer(&self, lambda: Option<usize>) -> OuterConfig {
        let mut c = OuterConfig::new(self.profile.into(), self.epsilon);
        c.alpha = self.alpha;
        c.rho = self.rho;
        c.d = self.d;
        c.lambda = lambda;
        c
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a G(n, p) graph as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact maximum matching, Tutte-Berge witness and, with capacities,
    /// the odd-set LP value.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        capacities: Option<PathBuf>,
        #[arg(long, default_value_t = 4.0)]
        alpha: f64,
    },
    /// Approximate matching with its dual certificate.
    Static {
        graph: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
    },
    /// One call of the matching-or-bottleneck subroutine with a debug dump.
    More {
        graph: PathBuf,
        #[arg(long)]
        capacities: PathBuf,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Decremental run of the full algorithm against an adversary.
    Run {
        /// Edge list; not needed with a trace, which carries its own graph.
        graph: Option<PathBuf>,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long)]
        lambda: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = AdversaryArg::Random)]
        adversary: AdversaryArg,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        metrics: Option<PathBuf>,
        /// Check every step against the exact maximum matching.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 0.5)]
        eps_acc: f64,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Line-driven single engine: reads `delete <eid>` or `dump` from stdin
    /// and answers `matching-size <k>` or `no`.
    Engine {
        graph: PathBuf,
        #[arg(long)]
        mu: Option<f64>,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verified runs over the fixed benchmark set.
    Bench {
        #[arg(long, default_value_t = 0.3)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.5)]
        eps_acc: f64,
    },
    /// Statistical suite for one randomized guarantee.
    Suite {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        name: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_capacities(path: &Path, g: &Multigraph, alpha: f64) -> Result<CapacityFn> {
    parse_capacities(&read(path)?, g, alpha).with_context(|| format!("parsing {}", path.display()))
}

fn oracle_cmd(graph: &Path, capacities: Option<&Path>, alpha: f64) -> Result<()> {
    let g = load_graph(graph)?;
    let m = oracle::exact_mcm(&g)?;
    println!("mu {}", m.len());
    print!("matching");
    for e in &m {
        print!(" {}", e.0);
    }
    println!();
    let w = oracle::tutte_berge_eg(&g);
    print!("tutte-berge {} U", w.value);
    for v in &w.u {
        print!(" {v}");
    }
    println!();
    if let Some(path) = capacities {
        let k = load_capacities(path, &g, alpha)?;
        println!("mu_lp {:.9}", oracle::mu_lp(&g, &k)?.value);
    }
    Ok(())
}

fn static_cmd(graph: &Path, epsilon: f64) -> Result<()> {
    let g = load_graph(graph)?;
    let sm = static_match(&g.simple(), epsilon);
    let unit = sm.cert.unit();
    for p in &sm.matching {
        println!("m {} {}", p.lo(), p.hi());
    }
    for (v, &y) in sm.cert.y.iter().enumerate().filter(|(_, &y)| y > 0) {
        println!("y {v} {}", y as f64 * unit);
    }
    for (i, s) in sm.cert.sets.iter().enumerate() {
        let members: Vec<String> = s.members.iter().map(|v| v.to_string()).collect();
        println!("z {i} {} {} {}", s.members.len(), members.join(" "), s.z as f64 * unit);
    }
    for (i, s) in sm.cert.sets.iter().enumerate() {
        println!("parent {i} {}", s.parent.map_or("-".into(), |p| p.to_string()));
    }
    Ok(())
}

fn more_cmd(graph: &Path, capacities: &Path, mu: f64, seed: u64, tuning: &Tuning) -> Result<()> {
    let g = load_graph(graph)?;
    let params = tuning.params(g.n());
    let k = load_capacities(capacities, &g, params.alpha)?;
    let run = m_or_estar(&g, &k, &params, mu, seed)?;
    println!("sampled {} of {} edges", run.sampled.m(), g.m());
    print!("{}", io::write_edge_list(&run.sampled));
    println!("sampled-matching {}", run.sampled_matching.len());
    for (v, &y) in run.cert.y.iter().enumerate().filter(|(_, &y)| y > 0) {
        println!("y {v} {}", y as f64 * run.cert.unit());
    }
    for (i, s) in run.cert.sets.iter().enumerate() {
        println!("z {i} {:?} {}", s.members, s.z as f64 * run.cert.unit());
    }
    match run.outcome {
        MoreOutcome::EStar(set) => {
            let ids: Vec<String> = set.iter().map(|e| e.0.to_string()).collect();
            println!("branch estar {}", ids.join(" "));
        }
        MoreOutcome::Matching(x) => {
            println!("branch matching value {:.6}", x.total() + 0.0);
            for (e, v) in x.iter() {
                println!("x {} {v:.6}", e.0);
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_cmd(
    graph: Option<&Path>,
    tuning: &Tuning,
    lambda: Option<usize>,
    seed: u64,
    adversary: AdversaryArg,
    trace: Option<&Path>,
    metrics: Option<&Path>,
    verify: bool,
    eps_acc: f64,
    max_steps: Option<usize>,
) -> Result<bool> {
    let (g, adv) = match (trace, graph) {
        (Some(t), _) => {
            let t = parse_trace(&read(t)?).with_context(|| format!("parsing {}", t.display()))?;
            if adversary != AdversaryArg::Trace {
                bail!("--trace requires --adversary trace");
            }
            (t.graph, Adversary::trace(t.ops))
        }
        (None, Some(path)) => {
            let adv = match adversary {
                AdversaryArg::Random => Adversary::Random,
                AdversaryArg::AttackMatching => Adversary::AttackMatching,
                AdversaryArg::Trace => bail!("--adversary trace needs --trace FILE"),
            };
            (load_graph(path)?, adv)
        }
        (None, None) => bail!("give an edge-list file or --trace"),
    };
    let cfg = RunConfig { outer: tuning.outer(lambda), eps_acc, verify, max_steps };
    let report = verified_run(&g, &cfg, adv, seed)?;
    if let Some(path) = metrics {
        std::fs::write(path, write_metrics(&report.metrics)).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{report}");
    Ok(report.passed())
}

fn engine_cmd(graph: &Path, mu: Option<f64>, tuning: &Tuning, seed: u64) -> Result<()> {
    let g = load_graph(graph)?;
    let params = tuning.params(g.n());
    let mu = match mu {
        Some(m) => m,
        None => (1.0 - params.epsilon) * oracle::exact_mcm(&g)?.len() as f64,
    };
    let mut engine = Engine::new(g, mu, params, EngineConfig::for_params(&params), seed)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let answer = |o: EngineOutput| match o {
        EngineOutput::Matching(k) => format!("matching-size {k}"),
        EngineOutput::No => "no".to_string(),
    };
    writeln!(out, "{}", answer(engine.output()))?;
    for line in std::io::stdin().lock().lines() {
        let line = line?;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            [] => continue,
            ["delete", id] => {
                let e = EdgeId(id.parse().with_context(|| format!("bad edge id {id:?}"))?);
                match engine.delete(e) {
                    Ok(o) => writeln!(out, "{}", answer(o))?,
                    Err(err) => writeln!(out, "error {err}")?,
                }
            }
            ["dump"] => {
                let mut s = String::new();
                engine.dump(&mut s)?;
                write!(out, "{s}")?;
            }
            _ => writeln!(out, "error unknown command {line:?}")?,
        }
        out.flush()?;
    }
    Ok(())
}

fn bench_cmd(epsilon: f64, eps_acc: f64) -> Result<bool> {
    let outer = OuterConfig::new(Profile::Practical, epsilon);
    let cfg = RunConfig { eps_acc, ..RunConfig::new(outer) };
    let reports: Vec<_> = bench_cases()
        .par_iter()
        .map(|c| verified_run(&c.graph(), &cfg, c.adversary(), c.run_seed))
        .collect::<Result<_, _>>()?;
    let mut ok = true;
    for (c, r) in bench_cases().iter().zip(&reports) {
        println!("# n={} p={} graph_seed={}", c.n, c.p, c.graph_seed);
        println!("{r}\n");
        ok &= r.passed() && r.call_checks.iter().all(|c| c.holds());
    }
    println!("bench {}", if ok { "PASS" } else { "FAIL" });
    Ok(ok)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let ok = match cli.cmd {
        Cmd::Gen { n, p, seed } => {
            print!("{}", io::write_edge_list(&erdos_renyi(n, p, seed)));
            true
        }
        Cmd::Oracle { graph, capacities, alpha } => {
            oracle_cmd(&graph, capacities.as_deref(), alpha)?;
            true
        }
        Cmd::Static { graph, epsilon } => {
            static_cmd(&graph, epsilon)?;
            true
        }
        Cmd::More { graph, capacities, mu, seed, tuning } => {
            more_cmd(&graph, &capacities, mu, seed, &tuning)?;
            true
        }
        Cmd::Run { graph, tuning, lambda, seed, adversary, trace, metrics, verify, eps_acc, max_steps } => run_cmd(
            graph.as_deref(),
            &tuning,
            lambda,
            seed,
            adversary,
            trace.as_deref(),
            metrics.as_deref(),
            verify,
            eps_acc,
            max_steps,
        )?,
        Cmd::Engine { graph, mu, tuning, seed } => {
            engine_cmd(&graph, mu, &tuning, seed)?;
            true
        }
        Cmd::Bench { epsilon, eps_acc } => bench_cmd(epsilon, eps_acc)?,
        Cmd::Suite { name, trials, seed } => {
            let s = run_suite(&name, trials, seed)?;
            println!("{s}");
            s.passed()
        }
    };
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
