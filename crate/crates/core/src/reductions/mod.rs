//! Certified reductions of maximal outerplane graphs.
//!
//! Every reduction maps a MOP `G` to a strictly smaller MOP `G'` and carries a
//! lift rule turning any dominating set `D'` of `G'` into a dominating set of
//! `G` with at most one extra vertex. The engine in [`engine`] chains them into
//! a constructive `⌈(n+k)/4⌉` dominating set.

mod engine;
mod irreducible;

pub use engine::{dominate_mop, verify_trace, BaseKind, BaseResolution, EngineError, ReductionTrace, TraceError, TraceStep};
pub use irreducible::{irreducibility_report, ClauseFinding, IrreducibilityError, IrreducibilityReport};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::essential_pair_count;
use crate::domination::is_dominating;
use crate::mop::{canon, MopError, MopGraph, Pos, Section};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ReductionKind {
    R1,
    R2,
    R3,
    R4,
    Claim1Delete,
    Claim2ContractBoth,
    Claim2ContractOne,
    FinalContract,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 8] = [
        ReductionKind::R1,
        ReductionKind::R2,
        ReductionKind::R3,
        ReductionKind::R4,
        ReductionKind::Claim1Delete,
        ReductionKind::Claim2ContractBoth,
        ReductionKind::Claim2ContractOne,
        ReductionKind::FinalContract,
    ];

    /// The four stand-alone reductions. The other kinds are only sound on
    /// graphs where none of these applies.
    pub fn is_basic(self) -> bool {
        matches!(self, Self::R1 | Self::R2 | Self::R3 | Self::R4)
    }

    /// Exact vertex loss, or `None` for R2 which loses at least four.
    pub fn vertex_loss(self) -> Option<usize> {
        match self {
            Self::R1 | Self::R3 | Self::R4 | Self::Claim2ContractBoth => Some(4),
            Self::R2 => None,
            Self::Claim1Delete | Self::Claim2ContractOne | Self::FinalContract => Some(3),
        }
    }

    /// Guaranteed drop in essential pairs.
    pub fn essential_drop(self) -> usize {
        if self.is_basic() {
            0
        } else {
            1
        }
    }
}

/// Positions of the section or triangle a step acts on, in the pre-graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Anchor {
    pub r: Pos,
    pub s: Pos,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Pos>,
    /// The dominating vertex of an R2 section.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Pos>,
}

impl Anchor {
    pub fn section(r: Pos, s: Pos) -> Self {
        Anchor { r, s, t: None, vertex: None }
    }

    pub fn triangle(r: Pos, s: Pos, t: Pos) -> Self {
        Anchor { r, s, t: Some(t), vertex: None }
    }
}

/// How a dominating set of the reduced graph is lifted. All positions refer
/// to the pre-graph; `x` denotes the contracted vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum LiftRule {
    /// `D = D' ∪ {vertex}`.
    Add { vertex: Pos },
    /// `D = D' ∪ {present}` if `witness ∈ D'`, else `D' ∪ {absent}`.
    Conditional { witness: Pos, present: Pos, absent: Pos },
    /// `D = (D' - x) ∪ replace` if `x ∈ D'`, else `D' ∪ otherwise`.
    Contracted { replace: Vec<Pos>, otherwise: Vec<Pos> },
}

/// Which branch of a [`LiftRule`] fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftBranch {
    Added,
    WitnessPresent,
    WitnessAbsent,
    ContractedIn,
    ContractedOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{kind:?} at {anchor:?}: {reason}")]
    PreconditionViolated {
        kind: ReductionKind,
        anchor: Anchor,
        reason: String,
    },
    #[error("reduced graph is not maximal outerplane: {0}")]
    ResultNotMaximalOuterplane(MopError),
    #[error("input set does not dominate the reduced graph")]
    InvalidInputSet,
    #[error("lift produced an invalid set: {0}")]
    LiftFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Surgery {
    Delete(Vec<Pos>),
    /// Clockwise contiguous run collapsed to one vertex.
    Contract(Vec<Pos>),
}

/// One applied reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub anchor: Anchor,
    pub pre_graph: MopGraph,
    pub post_graph: MopGraph,
    /// `vertex_map[p - 1]` lists the pre-graph positions merged into post
    /// position `p` (a single vertex unless `p` is the contracted vertex).
    pub vertex_map: Vec<Vec<Pos>>,
    pub lift_rule: LiftRule,
    /// Post position of the contracted vertex, if any.
    pub contracted: Option<Pos>,
}

/// Size and essential-pair accounting of one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n_before: usize,
    pub k_before: usize,
    pub n_after: usize,
    pub k_after: usize,
    pub n_ok: bool,
    pub k_ok: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.n_ok && self.k_ok
    }
}

fn section_len(g: &MopGraph, r: Pos, s: Pos) -> usize {
    g.segment_length(r, s)
}

fn fail(kind: ReductionKind, anchor: Anchor, reason: impl Into<String>) -> ReductionError {
    ReductionError::PreconditionViolated {
        kind,
        anchor,
        reason: reason.into(),
    }
}

/// Checks clockwise orientation `r -> s -> t` of an internal triangle.
fn check_internal_triangle(g: &MopGraph, kind: ReductionKind, a: Anchor) -> Result<Pos, ReductionError> {
    let t = a.t.ok_or_else(|| fail(kind, a, "triangle anchor needs t"))?;
    let (r, s) = (a.r, a.s);
    for (u, v) in [(r, s), (s, t), (t, r)] {
        if !g.is_chord(u, v) {
            return Err(fail(kind, a, format!("{{{u},{v}}} is not a chord")));
        }
    }
    if section_len(g, r, s) + section_len(g, s, t) + section_len(g, t, r) != g.n() {
        return Err(fail(kind, a, "triangle vertices are not clockwise r, s, t"));
    }
    Ok(t)
}

fn elementary(g: &MopGraph, r: Pos, s: Pos) -> Option<Section> {
    let sec = g.section_of(r, s).ok()?;
    (g.degree_two_count(&sec) == 1).then_some(sec)
}

/// Validates the preconditions of `kind` at `anchor` and returns the surgery
/// and lift rule of that step.
fn plan(g: &MopGraph, kind: ReductionKind, a: Anchor) -> Result<(Surgery, LiftRule), ReductionError> {
    use ReductionKind::*;
    let n = g.n();
    let (r, s) = (a.r, a.s);
    for v in [Some(r), Some(s), a.t, a.vertex].into_iter().flatten() {
        if v == 0 || v > n {
            return Err(fail(kind, a, format!("position {v} out of range")));
        }
    }
    let at = |d: usize| g.offset(r, d);
    let deg2 = |v: Pos| g.degree(v) == 2;
    if matches!(kind, R3 | R4) && n < 7 {
        return Err(fail(kind, a, "needs at least seven vertices"));
    }
    match kind {
        R1 => {
            let sec = elementary(g, r, s).ok_or_else(|| fail(kind, a, "not an elementary section"))?;
            if sec.vertex_count() != 6 {
                return Err(fail(kind, a, "section does not have six vertices"));
            }
            let d = (1..=4).find(|&d| deg2(at(d))).expect("elementary");
            let vertex = match d {
                1 => r,
                2 => at(3),
                3 => at(2),
                _ => s,
            };
            Ok((Surgery::Delete(sec.internal), LiftRule::Add { vertex }))
        }
        R2 => {
            let sec = g.section_of(r, s).map_err(|_| fail(kind, a, "not a chord"))?;
            if sec.vertex_count() < 6 {
                return Err(fail(kind, a, "section has fewer than six vertices"));
            }
            let verts = sec.vertices();
            let vertex = a.vertex.ok_or_else(|| fail(kind, a, "missing dominating vertex"))?;
            let dominates = verts.contains(&vertex)
                && verts.iter().all(|&u| u == vertex || g.is_adjacent(u, vertex));
            if !dominates {
                return Err(fail(kind, a, "vertex does not dominate the section"));
            }
            Ok((Surgery::Delete(sec.internal), LiftRule::Add { vertex }))
        }
        R3 => {
            let sec = elementary(g, r, s).ok_or_else(|| fail(kind, a, "not an elementary section"))?;
            if sec.vertex_count() != 5 {
                return Err(fail(kind, a, "section does not have five vertices"));
            }
            if deg2(at(2)) {
                return Err(fail(kind, a, "middle internal vertex has degree 2"));
            }
            let otherwise = if deg2(at(1)) { r } else { s };
            Ok((
                Surgery::Contract(sec.vertices()),
                LiftRule::Contracted {
                    replace: vec![r, s],
                    otherwise: vec![otherwise],
                },
            ))
        }
        R4 => {
            let t = check_internal_triangle(g, kind, a)?;
            if section_len(g, r, s) != 2 || section_len(g, s, t) != 2 {
                return Err(fail(kind, a, "sections do not each have one internal vertex"));
            }
            Ok((
                Surgery::Contract(g.segment(r, t)),
                LiftRule::Contracted {
                    replace: vec![r, t],
                    otherwise: vec![s],
                },
            ))
        }
        Claim1Delete => {
            let sec = elementary(g, r, s).ok_or_else(|| fail(kind, a, "not an elementary section"))?;
            if sec.vertex_count() != 5 || !deg2(at(2)) {
                return Err(fail(kind, a, "needs three internal vertices with the middle one of degree 2"));
            }
            Ok((
                Surgery::Delete(sec.internal),
                LiftRule::Conditional {
                    witness: r,
                    present: at(3),
                    absent: at(1),
                },
            ))
        }
        Claim2ContractBoth | Claim2ContractOne | FinalContract => {
            let t = check_internal_triangle(g, kind, a)?;
            if elementary(g, r, s).is_none() || elementary(g, s, t).is_none() {
                return Err(fail(kind, a, "sections are not both elementary"));
            }
            let (left, right) = (section_len(g, r, s), section_len(g, s, t));
            let first = deg2(g.next(r));
            let last = deg2(g.prev(t));
            match kind {
                Claim2ContractBoth => {
                    if (left, right) != (3, 3) || !first || !last {
                        return Err(fail(kind, a, "needs two internal vertices per section and both ends of degree 2"));
                    }
                    Ok((
                        Surgery::Contract(g.segment(g.next(r), g.prev(t))),
                        LiftRule::Contracted {
                            replace: vec![r, t],
                            otherwise: vec![r, t],
                        },
                    ))
                }
                Claim2ContractOne => {
                    if (left, right) != (3, 3) || first == last {
                        return Err(fail(kind, a, "needs two internal vertices per section and exactly one end of degree 2"));
                    }
                    // contract the section whose far end is not a degree-2 vertex
                    let (seg, replace) = if first {
                        (g.segment(s, t), vec![s, t])
                    } else {
                        (g.segment(r, s), vec![r, s])
                    };
                    Ok((
                        Surgery::Contract(seg),
                        LiftRule::Contracted {
                            replace,
                            otherwise: vec![s],
                        },
                    ))
                }
                _ => {
                    if !matches!((left, right), (2, 3) | (3, 2)) || !first || !last {
                        return Err(fail(kind, a, "needs internal counts {1,2} with both ends of degree 2"));
                    }
                    Ok((
                        Surgery::Contract(g.segment(g.next(r), g.prev(t))),
                        LiftRule::Contracted {
                            replace: vec![r, t],
                            otherwise: vec![r, t],
                        },
                    ))
                }
            }
        }
    }
}

/// Reduced graph, vertex classes, contracted post position.
type Quotient = (MopGraph, Vec<Vec<Pos>>, Option<Pos>);

/// Builds the reduced graph. Post positions follow the order of the smallest
/// pre position in each vertex class, which preserves the cyclic order.
fn quotient(g: &MopGraph, surgery: &Surgery) -> Result<Quotient, MopError> {
    let n = g.n();
    let mut class = vec![0usize; n + 1];
    let mut groups: Vec<Vec<Pos>> = Vec::new();
    let mut contracted_group = None;
    match surgery {
        Surgery::Delete(gone) => {
            let gone: BTreeSet<Pos> = gone.iter().copied().collect();
            for v in 1..=n {
                if !gone.contains(&v) {
                    groups.push(vec![v]);
                }
            }
        }
        Surgery::Contract(run) => {
            let run_set: BTreeSet<Pos> = run.iter().copied().collect();
            let run_min = *run_set.iter().next().expect("nonempty run");
            for v in 1..=n {
                if v == run_min {
                    contracted_group = Some(groups.len());
                    groups.push(run.clone());
                } else if !run_set.contains(&v) {
                    groups.push(vec![v]);
                }
            }
        }
    }
    for (i, grp) in groups.iter().enumerate() {
        for &v in grp {
            class[v] = i + 1;
        }
    }
    let m = groups.len();
    let mut chords = BTreeSet::new();
    for (a, b) in g.edges() {
        let (x, y) = (class[a], class[b]);
        if x == 0 || y == 0 || x == y {
            continue;
        }
        let (x, y) = canon(x, y);
        let boundary = y - x == 1 || (x == 1 && y == m);
        if !boundary {
            chords.insert((x, y));
        }
    }
    let chords: Vec<_> = chords.into_iter().collect();
    let post = MopGraph::new(m, &chords)?;
    Ok((post, groups, contracted_group.map(|i| i + 1)))
}

/// Checks preconditions and builds the step; the reduced graph is revalidated
/// as a MOP.
pub fn make_step(g: &MopGraph, kind: ReductionKind, anchor: Anchor) -> Result<ReductionStep, ReductionError> {
    let (surgery, lift_rule) = plan(g, kind, anchor)?;
    let (post_graph, vertex_map, contracted) =
        quotient(g, &surgery).map_err(ReductionError::ResultNotMaximalOuterplane)?;
    Ok(ReductionStep {
        kind,
        anchor,
        pre_graph: g.clone(),
        post_graph,
        vertex_map,
        lift_rule,
        contracted,
    })
}

/// Applies `step` (its kind and anchor) to `g`.
pub fn apply_step(g: &MopGraph, step: &ReductionStep) -> Result<MopGraph, ReductionError> {
    make_step(g, step.kind, step.anchor).map(|s| s.post_graph)
}

impl ReductionStep {
    pub fn certificate(&self) -> Certificate {
        let n_before = self.pre_graph.n();
        let n_after = self.post_graph.n();
        let k_before = essential_pair_count(&self.pre_graph);
        let k_after = essential_pair_count(&self.post_graph);
        let n_ok = match self.kind.vertex_loss() {
            Some(loss) => n_after + loss == n_before,
            None => n_after + 4 <= n_before,
        };
        let k_ok = k_after + self.kind.essential_drop() <= k_before;
        Certificate {
            n_before,
            k_before,
            n_after,
            k_after,
            n_ok,
            k_ok,
        }
    }

    /// Lifts a dominating set of the post-graph (post positions) to one of the
    /// pre-graph (pre positions).
    pub fn lift(&self, post_set: &[Pos]) -> Result<(Vec<Pos>, LiftBranch), ReductionError> {
        let post_simple = self.post_graph.to_simple_graph();
        if !is_dominating(&post_simple, post_set).map_err(|_| ReductionError::InvalidInputSet)? {
            return Err(ReductionError::InvalidInputSet);
        }
        let x_in = self.contracted.is_some_and(|x| post_set.contains(&x));
        let mut set: BTreeSet<Pos> = post_set
            .iter()
            .filter(|&&p| Some(p) != self.contracted)
            .map(|&p| self.vertex_map[p - 1][0])
            .collect();
        let branch = match &self.lift_rule {
            LiftRule::Add { vertex } => {
                set.insert(*vertex);
                LiftBranch::Added
            }
            LiftRule::Conditional { witness, present, absent } => {
                if set.contains(witness) {
                    set.insert(*present);
                    LiftBranch::WitnessPresent
                } else {
                    set.insert(*absent);
                    LiftBranch::WitnessAbsent
                }
            }
            LiftRule::Contracted { replace, otherwise } => {
                if x_in {
                    set.extend(replace);
                    LiftBranch::ContractedIn
                } else {
                    set.extend(otherwise);
                    LiftBranch::ContractedOut
                }
            }
        };
        let lifted: Vec<Pos> = set.into_iter().collect();
        let dedup_post: BTreeSet<Pos> = post_set.iter().copied().collect();
        if lifted.len() > dedup_post.len() + 1 {
            return Err(ReductionError::LiftFailed(format!(
                "{:?} grew the set from {} to {}",
                self.kind,
                dedup_post.len(),
                lifted.len()
            )));
        }
        if !is_dominating(&self.pre_graph.to_simple_graph(), &lifted).unwrap_or(false) {
            return Err(ReductionError::LiftFailed(format!(
                "{:?} at {:?}: {:?} does not dominate the pre-graph",
                self.kind, self.anchor, lifted
            )));
        }
        Ok((lifted, branch))
    }
}

/// Free-function form of [`ReductionStep::lift`].
pub fn lift(post_set: &[Pos], step: &ReductionStep) -> Result<Vec<Pos>, ReductionError> {
    step.lift(post_set).map(|(set, _)| set)
}

/// Clockwise rotations `(r, s, t)` of every internal triangle, scanning from
/// the smallest vertex.
fn triangle_rotations(g: &MopGraph) -> Vec<Anchor> {
    g.internal_triangles()
        .into_iter()
        .flat_map(|[a, b, c]| [Anchor::triangle(a, b, c), Anchor::triangle(b, c, a), Anchor::triangle(c, a, b)])
        .collect()
}

fn oriented_sections(g: &MopGraph) -> Vec<Section> {
    let mut secs = g.sections();
    secs.sort_by_key(|s| (s.r, s.s));
    secs
}

/// Candidate anchors for `kind`, in clockwise scan order from position 1.
pub fn candidates(g: &MopGraph, kind: ReductionKind) -> Vec<ReductionStep> {
    use ReductionKind::*;
    let anchors: Vec<Anchor> = match kind {
        R1 | R3 | Claim1Delete => oriented_sections(g)
            .into_iter()
            .map(|sec| Anchor::section(sec.r, sec.s))
            .collect(),
        R2 => oriented_sections(g)
            .into_iter()
            .filter(|sec| sec.vertex_count() >= 6)
            .filter_map(|sec| {
                let verts = sec.vertices();
                verts
                    .iter()
                    .copied()
                    .find(|&v| verts.iter().all(|&u| u == v || g.is_adjacent(u, v)))
                    .map(|v| Anchor {
                        vertex: Some(v),
                        ..Anchor::section(sec.r, sec.s)
                    })
            })
            .collect(),
        R4 | Claim2ContractBoth | Claim2ContractOne | FinalContract => triangle_rotations(g),
    };
    anchors
        .into_iter()
        .filter_map(|a| make_step(g, kind, a).ok())
        .collect()
}

/// All applicable R1–R4 steps, by kind priority then clockwise scan.
pub fn find_applicable(g: &MopGraph) -> Vec<ReductionStep> {
    [ReductionKind::R1, ReductionKind::R2, ReductionKind::R3, ReductionKind::R4]
        .into_iter()
        .flat_map(|k| candidates(g, k))
        .collect()
}

/// The irreducible-case steps (deletion, the two contractions and the final
/// contraction), by kind priority then clockwise scan. They are meaningful only when
/// [`find_applicable`] is empty.
pub fn find_irreducible_steps(g: &MopGraph) -> Vec<ReductionStep> {
    ReductionKind::ALL[4..]
        .iter()
        .flat_map(|&k| candidates(g, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::gamma_mop_dp;

    fn fan(n: usize) -> MopGraph {
        let chords: Vec<_> = (3..n).map(|v| (1, v)).collect();
        MopGraph::new(n, &chords).unwrap()
    }

    #[test]
    fn r1_on_elementary_hexagon_section() {
        // section (1,6) of a 9-gon triangulated as a fan from 1
        let g = MopGraph::new(9, &[(1, 3), (1, 4), (1, 5), (1, 6), (6, 8), (6, 9)]).unwrap();
        let steps = candidates(&g, ReductionKind::R1);
        let st = steps
            .iter()
            .find(|s| (s.anchor.r, s.anchor.s) == (1, 6))
            .expect("R1 at (1,6)");
        assert_eq!(st.post_graph.n(), 5);
        assert_eq!(st.lift_rule, LiftRule::Add { vertex: 1 });
        assert!(st.certificate().holds());
        // any dominating set of the reduced graph lifts
        let d = gamma_mop_dp(&st.post_graph);
        let (lifted, _) = st.lift(&d.vertices).unwrap();
        assert!(lifted.len() <= d.size + 1);
    }

    #[test]
    fn r2_on_fans() {
        // n = 6: no section has six vertices
        assert!(candidates(&fan(6), ReductionKind::R2).is_empty());
        let st = &candidates(&fan(7), ReductionKind::R2)[0];
        assert_eq!(st.anchor.vertex, Some(1));
        assert!(st.post_graph.n() <= 3);
    }

    #[test]
    fn r3_r4_need_seven_vertices() {
        let hex = MopGraph::new(6, &[(1, 3), (3, 5), (5, 1)]).unwrap();
        assert!(candidates(&hex, ReductionKind::R3).is_empty());
        assert!(candidates(&hex, ReductionKind::R4).is_empty());
        assert!(matches!(
            make_step(&hex, ReductionKind::R4, Anchor::triangle(1, 3, 5)),
            Err(ReductionError::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn r4_contracts_five_vertices() {
        // internal triangle 1,3,5 in an 8-gon
        let g = MopGraph::new(8, &[(1, 3), (3, 5), (1, 5), (5, 7), (1, 7)]).unwrap();
        let st = make_step(&g, ReductionKind::R4, Anchor::triangle(1, 3, 5)).unwrap();
        assert_eq!(st.post_graph.n(), 4);
        assert_eq!(st.contracted, Some(1));
        assert_eq!(st.vertex_map[0], vec![1, 2, 3, 4, 5]);
        // x in D' → (D' − x) ∪ {v_r, v_t}
        let (lifted, branch) = st.lift(&[1]).unwrap();
        assert_eq!(branch, LiftBranch::ContractedIn);
        assert_eq!(lifted, vec![1, 5]);
    }

    #[test]
    fn lift_rejects_non_dominating_input() {
        let g = MopGraph::new(8, &[(1, 3), (3, 5), (1, 5), (5, 7), (1, 7)]).unwrap();
        let st = make_step(&g, ReductionKind::R4, Anchor::triangle(1, 3, 5)).unwrap();
        assert_eq!(st.lift(&[]), Err(ReductionError::InvalidInputSet));
    }

    #[test]
    fn wrapping_contraction_keeps_cyclic_order() {
        let g = MopGraph::new(8, &[(1, 3), (3, 5), (1, 5), (5, 7), (1, 7)]).unwrap();
        let r = g.rotate(6);
        let tri = r.internal_triangles()[0];
        let st = triangle_rotations(&r)
            .into_iter()
            .find_map(|a| make_step(&r, ReductionKind::R4, a).ok())
            .unwrap_or_else(|| panic!("no R4 in {r:?} {tri:?}"));
        assert_eq!(st.post_graph.n(), 4);
        let x = st.contracted.unwrap();
        assert_eq!(st.vertex_map[x - 1].len(), 5);
    }
}
