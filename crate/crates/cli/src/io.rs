//! Plain-text formats: edge lists, capacity files, deletion traces and
//! per-step metrics.

use decmatch_core::graph::{CapacityFn, EdgeId, Multigraph, Pair};
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: decmatch_core::Error },
    #[error("edge {0} has no capacity line")]
    MissingCapacity(EdgeId),
    #[error("capacities differ inside the group of {0}")]
    SplitGroup(Pair),
    #[error("trace step {step}: {msg}")]
    Trace { step: usize, msg: String },
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn numbers<const K: usize>(line: usize, s: &str) -> Result<[i64; K]> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() != K {
        return Err(syntax(line, format!("expected {K} fields, found {}", parts.len())));
    }
    let mut out = [0i64; K];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| syntax(line, format!("not an integer: {p:?}")))?;
    }
    Ok(out)
}

fn index(line: usize, v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| syntax(line, format!("negative index {v}")))
}

/// Reads the header and `m` edge lines from `it`.
fn read_graph<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Multigraph> {
    let (hl, header) = it.next().ok_or_else(|| syntax(1, "missing header \"n m\""))?;
    let [n, m] = numbers::<2>(hl, header)?;
    let (n, m) = (index(hl, n)?, index(hl, m)?);
    let mut g = Multigraph::new(n);
    for k in 0..m {
        let (l, s) = it.next().ok_or_else(|| syntax(hl, format!("header promises {m} edges, found {k}")))?;
        let [u, v] = numbers::<2>(l, s)?;
        g.add_edge(index(l, u)?, index(l, v)?).map_err(|source| FormatError::Graph { line: l, source })?;
    }
    Ok(g)
}

/// Header `n m`, then `m` lines `u v`; ids follow line order.
pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut it = lines(text);
    let g = read_graph(&mut it)?;
    if let Some((l, _)) = it.next() {
        return Err(syntax(l, "trailing content after the edge list"));
    }
    Ok(g)
}

/// Live edges in id order. Ids are renumbered densely when read back.
pub fn write_edge_list(g: &Multigraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (_, p) in g.edges() {
        out.push_str(&format!("{} {}\n", p.lo(), p.hi()));
    }
    out
}

/// Lines `eid exponent`, one per live edge, meaning `kappa(e) = alpha^exponent`.
pub fn parse_capacities(text: &str, g: &Multigraph, alpha: f64) -> Result<CapacityFn> {
    let mut k = CapacityFn::uniform(alpha, g.id_bound(), 0);
    let mut seen = vec![false; g.id_bound()];
    for (l, s) in lines(text) {
        let [e, x] = numbers::<2>(l, s)?;
        let e = EdgeId(u32::try_from(e).map_err(|_| syntax(l, "edge id out of range"))?);
        if !g.is_live(e) {
            return Err(syntax(l, format!("unknown edge {e}")));
        }
        let x = i32::try_from(x).map_err(|_| syntax(l, "exponent out of range"))?;
        if x > 0 {
            return Err(syntax(l, "capacities above 1 are not allowed"));
        }
        k.set_exponent(e, x);
        seen[e.index()] = true;
    }
    for (e, _) in g.edges() {
        if !seen[e.index()] {
            return Err(FormatError::MissingCapacity(e));
        }
    }
    for (p, d) in g.groups() {
        let first = k.exponent(*d.iter().next().expect("groups are nonempty"));
        if d.iter().any(|&e| k.exponent(e) != first) {
            return Err(FormatError::SplitGroup(p));
        }
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOp {
    /// Delete some live edge between the two vertices.
    Pair(usize, usize),
    Id(EdgeId),
}

impl fmt::Display for TraceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOp::Pair(u, v) => write!(f, "D {u} {v}"),
            TraceOp::Id(e) => write!(f, "D# {}", e.0),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub graph: Multigraph,
    pub ops: Vec<TraceOp>,
}

/// Edge-list block, then lines `D u v` or `D# eid`.
pub fn parse_trace(text: &str) -> Result<Trace> {
    let mut it = lines(text);
    let graph = read_graph(&mut it)?;
    let mut ops = Vec::new();
    for (l, s) in it {
        let op = if let Some(rest) = s.strip_prefix("D#") {
            let [e] = numbers::<1>(l, rest)?;
            TraceOp::Id(EdgeId(u32::try_from(e).map_err(|_| syntax(l, "edge id out of range"))?))
        } else if let Some(rest) = s.strip_prefix('D') {
            let [u, v] = numbers::<2>(l, rest)?;
            TraceOp::Pair(index(l, u)?, index(l, v)?)
        } else {
            return Err(syntax(l, format!("expected a deletion line, found {s:?}")));
        };
        ops.push(op);
    }
    Ok(Trace { graph, ops })
}

pub fn write_trace(g: &Multigraph, ops: &[TraceOp]) -> String {
    let mut out = write_edge_list(g);
    for op in ops {
        out.push_str(&format!("{op}\n"));
    }
    out
}

/// The live edge a trace step deletes.
pub fn resolve(op: TraceOp, g: &Multigraph, step: usize) -> Result<EdgeId> {
    match op {
        TraceOp::Id(e) if g.is_live(e) => Ok(e),
        TraceOp::Id(e) => Err(FormatError::Trace { step, msg: format!("edge {e} is not live") }),
        TraceOp::Pair(u, v) => {
            let live = u != v && u.max(v) < g.n();
            live.then(|| g.representative(Pair::new(u, v)))
                .flatten()
                .ok_or_else(|| FormatError::Trace { step, msg: format!("no live edge between {u} and {v}") })
        }
    }
}

/// One row of the per-deletion metrics stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricsLine {
    pub step: usize,
    pub matched: usize,
    pub mu_exact: Option<usize>,
    pub phase_events: u64,
    pub more_calls: u64,
}

pub const METRICS_HEADER: &str = "step,matched_size,mu_exact,phase_events,more_calls";

impl fmt::Display for MetricsLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},", self.step, self.matched)?;
        if let Some(mu) = self.mu_exact {
            write!(f, "{mu}")?;
        }
        write!(f, ",{},{}", self.phase_events, self.more_calls)
    }
}

pub fn write_metrics(rows: &[MetricsLine]) -> String {
    let mut out = String::from(METRICS_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}
