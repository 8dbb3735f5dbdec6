//! The "matching or bottleneck set" subroutine.
//!
//! Samples edges in proportion to their capacity and matches the sample.
//! A small sampled matching means the capacities are too low somewhere;
//! the dual certificate of the sample then names the edges to raise.
//! Otherwise the sampled matching is turned into a fractional matching of
//! the whole graph that obeys the capacities.

use crate::error::Result;
use crate::frac_flow::{frac_match_general_counted, general_min_cut};
use crate::graph::{
    distribute, kappa_plus, sample_graph, CapacityFn, CollapsedMatching, EdgeId, FractionalMatching, Multigraph, Pair,
};
use crate::params::Params;
use crate::seed;
use crate::static_match::{static_match, DualCertificate};
use crate::OpCounter;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[derive(Debug, Clone, PartialEq)]
pub enum MoreOutcome {
    Matching(FractionalMatching),
    EStar(BTreeSet<EdgeId>),
}

/// One call's result plus what a debug dump needs.
#[derive(Debug, Clone, PartialEq)]
pub struct MoreRun {
    pub outcome: MoreOutcome,
    pub sampled: Multigraph,
    pub sampled_matching: Vec<Pair>,
    pub cert: DualCertificate,
    /// The sampled matching was small but every edge was already covered,
    /// so the call fell through to the matching branch.
    pub empty_estar: bool,
    pub ops: u64,
}

pub fn m_or_estar(g: &Multigraph, kappa: &CapacityFn, params: &Params, mu: f64, seed: u64) -> Result<MoreRun> {
    let eps = params.epsilon;
    let mut rng = seed::rng(seed);
    let sampled = sample_graph(g, kappa, params.rho, &mut rng);
    let sm = static_match(&sampled.simple(), eps);
    let mut ops = OpCounter(sm.ops);
    let mut empty_estar = false;
    if (sm.matching.len() as f64) < mu - 6.0 * eps * mu {
        let estar = extract_estar(g, kappa, &sm.cert, eps);
        if !estar.is_empty() {
            return Ok(MoreRun {
                outcome: MoreOutcome::EStar(estar),
                sampled,
                sampled_matching: sm.matching,
                cert: sm.cert,
                empty_estar,
                ops: ops.0,
            });
        }
        empty_estar = true;
    }
    let x = phase2_counted(g, kappa, eps, &sm.matching, &mut ops)?;
    Ok(MoreRun { outcome: MoreOutcome::Matching(x), sampled, sampled_matching: sm.matching, cert: sm.cert, empty_estar, ops: ops.0 })
}

/// High-capacity matched pairs become unit flows spread over their group;
/// the low-capacity matched vertices get a flow-based fractional matching
/// under the boosted capacities.
pub fn phase2_assemble(g: &Multigraph, kappa: &CapacityFn, epsilon: f64, m: &[Pair]) -> Result<FractionalMatching> {
    phase2_counted(g, kappa, epsilon, m, &mut OpCounter::default())
}

fn phase2_counted(
    g: &Multigraph,
    kappa: &CapacityFn,
    epsilon: f64,
    m: &[Pair],
    ops: &mut OpCounter,
) -> Result<FractionalMatching> {
    let is_low = |p: Pair| kappa.group_cmp(g, p, -2) != Ordering::Greater;
    let mut high = CollapsedMatching::default();
    let mut low_side = alloc::vec![false; g.n()];
    for &p in m {
        if is_low(p) {
            low_side[p.lo()] = true;
            low_side[p.hi()] = true;
        } else {
            high.values.insert(p, 1.0);
        }
    }
    let mut out = distribute(g, kappa, &high)?;
    let sub = g.filter_edges(|_, p| low_side[p.lo()] && low_side[p.hi()] && is_low(p));
    if sub.m() > 0 {
        let kp = kappa_plus(g, kappa);
        out.add(&frac_match_general_counted(&sub, &kp, epsilon, ops)?);
    }
    Ok(out)
}

/// Edges to raise when a matching-branch result falls short of `target`.
///
/// If the sampled matching itself is short, the uncovered edges of its
/// certificate; in any case the low-capacity edges crossing a minimum cut
/// of the boosted flow network on the matched low-capacity vertices.
/// Whole groups are taken and unit-capacity edges left out.
pub fn value_bottleneck(g: &Multigraph, kappa: &CapacityFn, epsilon: f64, run: &MoreRun, target: f64) -> BTreeSet<EdgeId> {
    let mut out = BTreeSet::new();
    if (run.sampled_matching.len() as f64) < target {
        out.extend(extract_estar(g, kappa, &run.cert, epsilon));
    }
    let is_low = |p: Pair| kappa.group_cmp(g, p, -2) != Ordering::Greater;
    let mut low_side = alloc::vec![false; g.n()];
    for &p in run.sampled_matching.iter().filter(|&&p| is_low(p)) {
        low_side[p.lo()] = true;
        low_side[p.hi()] = true;
    }
    let sub = g.filter_edges(|_, p| low_side[p.lo()] && low_side[p.hi()] && is_low(p));
    if sub.m() > 0 {
        let (_, cut) = general_min_cut(&sub, &kappa_plus(g, kappa), &mut OpCounter::default());
        for e in cut {
            let p = g.endpoints(e).expect("cut edges are live");
            out.extend(g.group(p).into_iter().flatten().copied());
        }
    }
    out.retain(|&e| kappa.exponent(e) < 0);
    out
}

/// Edges below unit capacity that the certificate leaves uncovered.
pub fn extract_estar(g: &Multigraph, kappa: &CapacityFn, cert: &DualCertificate, epsilon: f64) -> BTreeSet<EdgeId> {
    let need = DualCertificate::covered_units(epsilon);
    let membership = cert.membership();
    g.edges()
        .filter(|&(e, p)| kappa.exponent(e) < 0 && cert.yz_units(&membership, p.lo(), p.hi()) < need)
        .map(|(e, _)| e)
        .collect()
}
