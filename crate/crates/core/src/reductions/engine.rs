//! Constructive `⌈(n+k)/4⌉` dominating sets by repeated certified reduction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    find_applicable, find_irreducible_steps, make_step, Anchor, Certificate, LiftBranch, LiftRule,
    ReductionError, ReductionKind, ReductionStep,
};
use crate::bounds::{essential_bound, essential_pair_count};
use crate::domination::{gamma_mop_dp, is_dominating, DominatingSet};
use crate::mop::{MopGraph, Pos};

/// How the recursion bottomed out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    /// `n <= 6`, solved exactly.
    Exact,
    DominatingVertex,
    /// Striped graph without a dominating vertex, solved exactly; the bound
    /// then rests on `(n + t) / 4` with `t = 2`.
    StripedExact,
    /// No case of the construction applied; solved exactly and flagged.
    Anomaly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseResolution {
    pub kind: BaseKind,
    pub graph: MopGraph,
    pub set: Vec<Pos>,
}

/// Serialized record of one step, replayable by [`verify_trace`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub kind: ReductionKind,
    pub anchor: Anchor,
    pub n_before: usize,
    pub k_before: usize,
    pub n_after: usize,
    pub k_after: usize,
    pub lift_rule: LiftRule,
    pub lift_branch: LiftBranch,
    /// The lifted set, in pre-graph positions.
    pub set: Vec<Pos>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub graph: MopGraph,
    pub n: usize,
    pub k: usize,
    pub bound: usize,
    pub steps: Vec<TraceStep>,
    pub base: BaseResolution,
    pub set: DominatingSet,
    #[serde(default)]
    pub anomalies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("constructed set of size {size} exceeds ⌈(n+k)/4⌉ = {bound}")]
    BoundViolated {
        size: usize,
        bound: usize,
        trace: Box<ReductionTrace>,
    },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// First step, in engine priority order, whose certificate holds. Candidates
/// whose certificate fails are reported through `rejected`.
fn next_step(g: &MopGraph, rejected: &mut Vec<String>) -> Option<(ReductionStep, Certificate)> {
    let basic = find_applicable(g);
    let pool = if basic.is_empty() { find_irreducible_steps(g) } else { basic };
    for step in pool {
        let cert = step.certificate();
        if cert.holds() {
            return Some((step, cert));
        }
        rejected.push(format!(
            "{:?} at {:?} rejected: n {}->{}, k {}->{} on {:?}",
            step.kind, step.anchor, cert.n_before, cert.n_after, cert.k_before, cert.k_after, g
        ));
    }
    None
}

/// Builds a dominating set of size at most `⌈(n+k)/4⌉` following the
/// order R1, R2, R3, R4, then the deletion and contraction steps for
/// irreducible graphs.
pub fn dominate_mop(g: &MopGraph) -> Result<ReductionTrace, EngineError> {
    let mut chain: Vec<(ReductionStep, Certificate)> = Vec::new();
    let mut anomalies = Vec::new();
    let mut cur = g.clone();
    let base = loop {
        if cur.n() <= 6 {
            let set = gamma_mop_dp(&cur).vertices;
            break BaseResolution { kind: BaseKind::Exact, graph: cur, set };
        }
        if let Some(v) = cur.dominating_vertex() {
            break BaseResolution { kind: BaseKind::DominatingVertex, graph: cur, set: vec![v] };
        }
        let mut rejected = Vec::new();
        match next_step(&cur, &mut rejected) {
            Some((step, cert)) => {
                anomalies.extend(rejected);
                cur = step.post_graph.clone();
                chain.push((step, cert));
            }
            None => {
                anomalies.extend(rejected);
                let set = gamma_mop_dp(&cur).vertices;
                let kind = if cur.is_striped() {
                    BaseKind::StripedExact
                } else {
                    anomalies.push(format!("no reduction or irreducible-case step applies to {cur:?}"));
                    BaseKind::Anomaly
                };
                break BaseResolution { kind, graph: cur, set };
            }
        }
    };

    let base_k = essential_pair_count(&base.graph);
    if base.set.len() > essential_bound(base.graph.n(), base_k) {
        anomalies.push(format!(
            "base case {:?} needs {} > ⌈(n+k)/4⌉ = {}",
            base.kind,
            base.set.len(),
            essential_bound(base.graph.n(), base_k)
        ));
    }

    let mut set = base.set.clone();
    let mut steps = Vec::with_capacity(chain.len());
    for (step, cert) in chain.iter().rev() {
        let (lifted, branch) = step.lift(&set)?;
        steps.push(TraceStep {
            kind: step.kind,
            anchor: step.anchor,
            n_before: cert.n_before,
            k_before: cert.k_before,
            n_after: cert.n_after,
            k_after: cert.k_after,
            lift_rule: step.lift_rule.clone(),
            lift_branch: branch,
            set: lifted.clone(),
        });
        set = lifted;
    }
    steps.reverse();

    let n = g.n();
    let k = essential_pair_count(g);
    let bound = essential_bound(n, k);
    let simple = g.to_simple_graph();
    let trace = ReductionTrace {
        graph: g.clone(),
        n,
        k,
        bound,
        steps,
        base,
        set: DominatingSet::new(set, &simple),
        anomalies,
    };
    debug_assert!(is_dominating(&simple, &trace.set.vertices).unwrap_or(false));
    if trace.set.size > bound {
        return Err(EngineError::BoundViolated {
            size: trace.set.size,
            bound,
            trace: Box::new(trace),
        });
    }
    Ok(trace)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("step {index}: {reason}")]
    BadStep { index: usize, reason: String },
    #[error("base case: {0}")]
    BadBase(String),
    #[error("final set: {0}")]
    BadFinal(String),
}

/// Replays a trace from its input graph: every step is recomputed from its
/// kind and anchor, its accounting and lift are re-derived and compared with
/// the record, and every set along the way is re-checked for domination.
pub fn verify_trace(trace: &ReductionTrace) -> Result<(), TraceError> {
    let mut cur = trace.graph.clone();
    let mut replayed = Vec::with_capacity(trace.steps.len());
    for (index, rec) in trace.steps.iter().enumerate() {
        let bad = |reason: String| TraceError::BadStep { index, reason };
        let step = make_step(&cur, rec.kind, rec.anchor).map_err(|e| bad(e.to_string()))?;
        let cert = step.certificate();
        if (cert.n_before, cert.k_before, cert.n_after, cert.k_after)
            != (rec.n_before, rec.k_before, rec.n_after, rec.k_after)
        {
            return Err(bad(format!("recorded accounting differs from replay {cert:?}")));
        }
        if !cert.holds() {
            return Err(bad(format!("certificate fails: {cert:?}")));
        }
        if step.lift_rule != rec.lift_rule {
            return Err(bad(format!("recorded lift rule differs from {:?}", step.lift_rule)));
        }
        cur = step.post_graph.clone();
        replayed.push(step);
    }
    if trace.base.graph != cur {
        return Err(TraceError::BadBase("graph differs from the replayed reduction".into()));
    }
    if !is_dominating(&cur.to_simple_graph(), &trace.base.set).unwrap_or(false) {
        return Err(TraceError::BadBase("set does not dominate".into()));
    }
    let base_bound = essential_bound(cur.n(), essential_pair_count(&cur));
    if trace.base.set.len() > base_bound {
        return Err(TraceError::BadBase(format!("size exceeds {base_bound}")));
    }
    let mut set = trace.base.set.clone();
    for (index, (step, rec)) in replayed.iter().zip(&trace.steps).enumerate().rev() {
        let bad = |reason: String| TraceError::BadStep { index, reason };
        let (lifted, branch) = step.lift(&set).map_err(|e| bad(e.to_string()))?;
        if lifted != rec.set || branch != rec.lift_branch {
            return Err(bad(format!("recorded lift {:?} differs from replay {lifted:?}", rec.set)));
        }
        set = lifted;
    }
    let n = trace.graph.n();
    let k = essential_pair_count(&trace.graph);
    let bound = essential_bound(n, k);
    if (trace.n, trace.k, trace.bound) != (n, k, bound) {
        return Err(TraceError::BadFinal("recorded n, k or bound is wrong".into()));
    }
    if trace.set.vertices != set || trace.set.size != set.len() {
        return Err(TraceError::BadFinal(format!("recorded set differs from replay {set:?}")));
    }
    if !is_dominating(&trace.graph.to_simple_graph(), &set).unwrap_or(false) {
        return Err(TraceError::BadFinal("set does not dominate".into()));
    }
    if set.len() > bound {
        return Err(TraceError::BadFinal(format!("size {} exceeds {bound}", set.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_meets_bound_with_equality() {
        let g = MopGraph::new(6, &[(1, 3), (3, 5), (5, 1)]).unwrap();
        let tr = dominate_mop(&g).unwrap();
        assert_eq!(tr.set.size, 2);
        assert_eq!(tr.bound, 2);
        assert_eq!(tr.base.kind, BaseKind::Exact);
        verify_trace(&tr).unwrap();
    }

    #[test]
    fn fan_uses_dominating_vertex() {
        let chords: Vec<_> = (3..12).map(|v| (1, v)).collect();
        let g = MopGraph::new(12, &chords).unwrap();
        let tr = dominate_mop(&g).unwrap();
        assert_eq!(tr.base.kind, BaseKind::DominatingVertex);
        assert_eq!(tr.set.vertices, vec![1]);
    }

    #[test]
    fn tampered_lift_is_rejected() {
        // a zig-zag strip reduces at least once before its base case
        let g = MopGraph::new(
            12,
            &[(1, 3), (3, 12), (3, 11), (4, 11), (4, 10), (5, 10), (5, 9), (6, 9), (6, 8)],
        )
        .unwrap();
        let tr = dominate_mop(&g).unwrap();
        assert!(!tr.steps.is_empty(), "{tr:?}");
        verify_trace(&tr).unwrap();
        let mut bad = tr.clone();
        let last = bad.steps.len() - 1;
        bad.steps[last].set.push(bad.graph.n());
        bad.steps[last].set.dedup();
        if bad.steps[last].set == tr.steps[last].set {
            bad.steps[last].set.pop();
        }
        assert!(verify_trace(&bad).is_err());
        let mut bad = tr.clone();
        bad.steps[0].lift_rule = LiftRule::Add { vertex: 1 };
        bad.steps[0].kind = ReductionKind::R2;
        assert!(verify_trace(&bad).is_err());
    }
}
