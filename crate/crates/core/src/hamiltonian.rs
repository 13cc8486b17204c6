//! Hamiltonian plane triangulations split along a Hamilton cycle.
//!
//! With the cycle drawn as positions `1..=n`, the triangulation is the union of
//! an interior MOP and an exterior MOP that share only the cycle.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::{
    dominating_vertex, gamma_exact_bb_with_limit, gamma_mop_dp, is_dominating, DominatingSet,
    DominationError, SimpleGraph, DEFAULT_BB_LIMIT,
};
use crate::mop::{canon, chords_cross, MopError, MopGraph, Pos};
use crate::reductions::{dominate_mop, EngineError};

/// Default vertex cap for Hamilton-cycle enumeration.
pub const DEFAULT_CYCLE_SEARCH_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Interior,
    Exterior,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamError {
    #[error("{side:?} side is not a maximal outerplane graph: {source}")]
    SideInvalid { side: Side, source: MopError },
    #[error("chord {0:?} is drawn on both sides")]
    SharedChord((Pos, Pos)),
    #[error("expected {expected} edges for a triangulation, found {found}")]
    NotTriangulation { expected: usize, found: usize },
    #[error("not a Hamilton cycle: {0}")]
    NotHamiltonCycle(String),
    #[error("crossing chords cannot be split into two noncrossing sides")]
    ConflictGraphNotBipartite,
    #[error("graph has no Hamilton cycle")]
    NoHamiltonCycle,
    #[error("no good Hamilton cycle among {tried} cycles")]
    NotFound { tried: usize },
    #[error("graph has {n} vertices, search limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// A plane triangulation with a distinguished Hamilton cycle `1, 2, ..., n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HamTriangulation {
    inner: MopGraph,
    outer: MopGraph,
}

impl std::fmt::Debug for HamTriangulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "HamTriangulation(n={}, inner={:?}, outer={:?})",
            self.n(),
            self.inner.chords(),
            self.outer.chords()
        )
    }
}

impl HamTriangulation {
    pub fn new(n: usize, inner: &[(Pos, Pos)], outer: &[(Pos, Pos)]) -> Result<Self, HamError> {
        let inner = MopGraph::new(n, inner).map_err(|source| HamError::SideInvalid {
            side: Side::Interior,
            source,
        })?;
        let outer = MopGraph::new(n, outer).map_err(|source| HamError::SideInvalid {
            side: Side::Exterior,
            source,
        })?;
        Self::from_sides(inner, outer)
    }

    pub fn from_sides(inner: MopGraph, outer: MopGraph) -> Result<Self, HamError> {
        assert_eq!(inner.n(), outer.n(), "sides must share the cycle");
        if let Some(&c) = inner.chords().iter().find(|c| outer.chords().binary_search(c).is_ok()) {
            return Err(HamError::SharedChord(c));
        }
        Ok(HamTriangulation { inner, outer })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn side_graph(&self, side: Side) -> &MopGraph {
        match side {
            Side::Interior => &self.inner,
            Side::Exterior => &self.outer,
        }
    }

    /// The same triangulation with the sides exchanged.
    pub fn swapped(&self) -> Self {
        HamTriangulation {
            inner: self.outer.clone(),
            outer: self.inner.clone(),
        }
    }

    pub fn full_graph(&self) -> SimpleGraph {
        let mut edges = self.inner.edges();
        edges.extend_from_slice(self.outer.chords());
        SimpleGraph::new(self.n(), &edges).expect("positions are in range")
    }

    pub fn side_report(&self, side: Side) -> SideReport {
        let g = self.side_graph(side);
        let two_vertices = g.degree_two_vertices();
        let two_chords: Vec<(Pos, Pos)> = g
            .chords()
            .iter()
            .copied()
            .filter(|&(a, b)| g.segment_length(a, b) == 2 || g.segment_length(b, a) == 2)
            .collect();
        let bijection = self.n() < 5 || two_vertices.len() == two_chords.len();
        SideReport {
            side,
            two_vertex_count: two_vertices.len(),
            two_chord_count: two_chords.len(),
            two_vertices,
            two_chords,
            bijection,
        }
    }

    /// Vertices of degree 2 on either side.
    pub fn two_vertices(&self) -> Vec<Pos> {
        (1..=self.n())
            .filter(|&v| self.inner.degree(v) == 2 || self.outer.degree(v) == 2)
            .collect()
    }

    /// No three cyclically consecutive positions are all 2-vertices.
    pub fn good_cycle_check(&self) -> bool {
        let n = self.n();
        let two: Vec<bool> = (0..=n)
            .map(|v| v > 0 && (self.inner.degree(v) == 2 || self.outer.degree(v) == 2))
            .collect();
        (1..=n).all(|i| {
            let a = i;
            let b = i % n + 1;
            let c = b % n + 1;
            !(two[a] && two[b] && two[c])
        })
    }

    pub fn two_chord_graph(&self) -> TwoChordGraph {
        let mut chords = Vec::new();
        for side in [Side::Interior, Side::Exterior] {
            for c in self.side_report(side).two_chords {
                chords.push((c, side));
            }
        }
        let mut edges: Vec<(Pos, Pos)> = (1..=self.n()).map(|v| canon(v, v % self.n() + 1)).collect();
        edges.extend(chords.iter().map(|&(c, _)| c));
        TwoChordGraph {
            graph: SimpleGraph::new(self.n(), &edges).expect("positions are in range"),
            chords,
        }
    }
}

pub fn build_ht(n: usize, inner: &[(Pos, Pos)], outer: &[(Pos, Pos)]) -> Result<HamTriangulation, HamError> {
    HamTriangulation::new(n, inner, outer)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub side: Side,
    pub two_vertices: Vec<Pos>,
    pub two_chords: Vec<(Pos, Pos)>,
    pub two_vertex_count: usize,
    pub two_chord_count: usize,
    /// 2-chords and 2-vertices correspond one to one (vacuous below n = 5).
    pub bijection: bool,
}

/// The spanning subgraph formed by the cycle and every 2-chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoChordGraph {
    pub graph: SimpleGraph,
    /// Each 2-chord with the side it is drawn on.
    pub chords: Vec<((Pos, Pos), Side)>,
}

impl TwoChordGraph {
    pub fn two_chord_count(&self) -> usize {
        self.chords.len()
    }
}

/// Relabels `g` so that `cycle` becomes `1..=n` and splits the remaining
/// edges into two noncrossing sides by 2-coloring the crossing graph.
pub fn embed_with_cycle(g: &SimpleGraph, cycle: &[Pos]) -> Result<HamTriangulation, HamError> {
    let n = g.n();
    if cycle.len() != n || n < 3 {
        return Err(HamError::NotHamiltonCycle(format!("cycle has {} of {n} vertices", cycle.len())));
    }
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in cycle.iter().enumerate() {
        if v == 0 || v > n || pos[v] != 0 {
            return Err(HamError::NotHamiltonCycle(format!("{v} is out of range or repeated")));
        }
        pos[v] = i + 1;
    }
    for i in 0..n {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        if !g.is_adjacent(a, b) {
            return Err(HamError::NotHamiltonCycle(format!("{a} and {b} are not adjacent")));
        }
    }
    let found = g.edge_count();
    let expected = 3 * n - 6;
    if found != expected {
        return Err(HamError::NotTriangulation { expected, found });
    }
    let chords: Vec<(Pos, Pos)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| canon(pos[a], pos[b]))
        .filter(|&(a, b)| b - a != 1 && !(a == 1 && b == n))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let m = chords.len();
    let mut color: Vec<Option<bool>> = vec![None; m];
    for start in 0..m {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let ci = color[i].expect("colored on push");
            for j in 0..m {
                if j != i && chords_cross(chords[i], chords[j]) {
                    match color[j] {
                        None => {
                            color[j] = Some(!ci);
                            stack.push(j);
                        }
                        Some(cj) if cj == ci => return Err(HamError::ConflictGraphNotBipartite),
                        _ => {}
                    }
                }
            }
        }
    }
    let (mut inner, mut outer) = (Vec::new(), Vec::new());
    for (c, col) in chords.into_iter().zip(color) {
        if col == Some(false) {
            inner.push(c);
        } else {
            outer.push(c);
        }
    }
    HamTriangulation::new(n, &inner, &outer)
}

/// Visits every Hamilton cycle once (starting at vertex 1, one direction).
pub fn for_each_hamilton_cycle<F>(g: &SimpleGraph, mut visit: F)
where
    F: FnMut(&[Pos]) -> ControlFlow<()>,
{
    let n = g.n();
    if n < 3 {
        return;
    }
    let mut path = vec![1];
    let mut used = vec![false; n + 1];
    used[1] = true;
    fn extend<F: FnMut(&[Pos]) -> ControlFlow<()>>(
        g: &SimpleGraph,
        path: &mut Vec<Pos>,
        used: &mut [bool],
        visit: &mut F,
    ) -> ControlFlow<()> {
        let n = g.n();
        let last = *path.last().expect("path starts at 1");
        if path.len() == n {
            if g.is_adjacent(last, 1) && path[1] < path[n - 1] {
                return visit(path);
            }
            return ControlFlow::Continue(());
        }
        for &w in g.neighbors(last) {
            if !used[w] {
                used[w] = true;
                path.push(w);
                let flow = extend(g, path, used, visit);
                path.pop();
                used[w] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
    let _ = extend(g, &mut path, &mut used, &mut visit);
}

pub fn find_hamilton_cycle(g: &SimpleGraph) -> Result<Vec<Pos>, HamError> {
    find_hamilton_cycle_with_limit(g, DEFAULT_CYCLE_SEARCH_LIMIT)
}

pub fn find_hamilton_cycle_with_limit(g: &SimpleGraph, limit: usize) -> Result<Vec<Pos>, HamError> {
    if g.n() > limit {
        return Err(HamError::TooLarge { n: g.n(), limit });
    }
    let mut found = None;
    for_each_hamilton_cycle(g, |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    });
    found.ok_or(HamError::NoHamiltonCycle)
}

/// A Hamilton cycle with no three consecutive 2-vertices, searched
/// exhaustively. Returns the split triangulation, the cycle in the input
/// labels and the number of cycles examined.
pub fn find_good_cycle(g: &SimpleGraph) -> Result<(HamTriangulation, Vec<Pos>, usize), HamError> {
    find_good_cycle_with_limit(g, DEFAULT_CYCLE_SEARCH_LIMIT)
}

pub fn find_good_cycle_with_limit(
    g: &SimpleGraph,
    limit: usize,
) -> Result<(HamTriangulation, Vec<Pos>, usize), HamError> {
    if g.n() > limit {
        return Err(HamError::TooLarge { n: g.n(), limit });
    }
    let mut tried = 0;
    let mut result = None;
    let mut embed_error = None;
    for_each_hamilton_cycle(g, |c| {
        tried += 1;
        match embed_with_cycle(g, c) {
            Ok(t) if t.good_cycle_check() => {
                result = Some((t, c.to_vec()));
                ControlFlow::Break(())
            }
            Ok(_) => ControlFlow::Continue(()),
            Err(e) => {
                embed_error = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = embed_error {
        return Err(e);
    }
    match result {
        Some((t, c)) => Ok((t, c, tried)),
        None if tried == 0 => Err(HamError::NoHamiltonCycle),
        None => Err(HamError::NotFound { tried }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Some vertex dominates the whole triangulation.
    DominatingVertex,
    /// At least `(n+1)/2` 2-chords: the cycle plus 2-chords is solved exactly.
    TwoChordGraph,
    /// At most `n/2` 2-chords: one side has at most `n/4` and its MOP spans.
    SideMop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub method: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub good_cycle: bool,
    pub branch: Branch,
    pub c: usize,
    pub c_int: usize,
    pub c_ext: usize,
    pub side: Option<Side>,
    pub method: String,
    pub set: Vec<Pos>,
    pub size: usize,
    /// `⌊5n/16⌋`, enforced for `n >= 23`.
    pub bound_5n16: usize,
    /// `⌈2n/7⌉`
    pub bound_2n7: usize,
    /// `γ(K) <= ⌈2n/7⌉` whenever the 2-chord graph was solved.
    pub two_chord_bound_holds: Option<bool>,
    /// `min(c_int, c_ext) <= n/4` whenever `c <= n/2`.
    pub pigeonhole_holds: Option<bool>,
    pub within_5n16: bool,
    /// Size equals `⌈5n/16⌉` but exceeds `⌊5n/16⌋`.
    pub near_miss: bool,
    pub attempts: Vec<Attempt>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("n = {n} >= 23 but the best set has size {size} > ⌊5n/16⌋ = {bound}")]
    BoundViolated {
        n: usize,
        size: usize,
        bound: usize,
        report: Box<PipelineReport>,
    },
    #[error("2-chord graph on {n} vertices exceeds the exact solver limit {limit}")]
    SolverTooLarge { n: usize, limit: usize },
    #[error("pipeline needs n >= 4, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Domination(#[from] DominationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Vertex cap of the exact solver used on the 2-chord graph.
    pub bb_limit: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            bb_limit: DEFAULT_BB_LIMIT,
        }
    }
}

pub fn dominate_triangulation(t: &HamTriangulation) -> Result<(DominatingSet, PipelineReport), PipelineError> {
    dominate_triangulation_with(t, PipelineConfig::default())
}

/// Dominating set of size at most `⌊5n/16⌋` for `n >= 23`.
pub fn dominate_triangulation_with(
    t: &HamTriangulation,
    config: PipelineConfig,
) -> Result<(DominatingSet, PipelineReport), PipelineError> {
    let n = t.n();
    if n < 4 {
        return Err(PipelineError::TooSmall(n));
    }
    let full = t.full_graph();
    let c_int = t.side_report(Side::Interior).two_chord_count;
    let c_ext = t.side_report(Side::Exterior).two_chord_count;
    let c = c_int + c_ext;
    let bound = 5 * n / 16;
    let enforce = n >= 23;
    let mut report = PipelineReport {
        n,
        good_cycle: t.good_cycle_check(),
        branch: Branch::DominatingVertex,
        c,
        c_int,
        c_ext,
        side: None,
        method: String::new(),
        set: Vec::new(),
        size: 0,
        bound_5n16: bound,
        bound_2n7: (2 * n).div_ceil(7),
        two_chord_bound_holds: None,
        pigeonhole_holds: None,
        within_5n16: true,
        near_miss: false,
        attempts: Vec::new(),
    };

    // candidate sets, best kept by (size, order tried)
    let mut best: Option<(Vec<Pos>, String, Option<Side>)> = None;
    let mut consider = |report: &mut PipelineReport, set: Vec<Pos>, method: &str, side: Option<Side>| {
        debug_assert!(is_dominating(&full, &set).unwrap_or(false));
        report.attempts.push(Attempt {
            method: method.to_string(),
            size: set.len(),
        });
        if best.as_ref().is_none_or(|(b, _, _)| set.len() < b.len()) {
            best = Some((set, method.to_string(), side));
        }
        best.as_ref().map(|(b, _, _)| b.len()).unwrap_or(usize::MAX)
    };

    let sides_by_count = |limit_ok: &dyn Fn(usize) -> bool| -> Vec<Side> {
        [(Side::Interior, c_int), (Side::Exterior, c_ext)]
            .into_iter()
            .filter(|&(_, cs)| limit_ok(cs))
            .map(|(s, _)| s)
            .collect()
    };

    if let Some(v) = dominating_vertex(&full) {
        consider(&mut report, vec![v], "dominating-vertex", None);
    } else if 2 * c > n {
        report.branch = Branch::TwoChordGraph;
        if n > config.bb_limit.min(crate::domination::MAX_BB_LIMIT) {
            return Err(PipelineError::SolverTooLarge {
                n,
                limit: config.bb_limit,
            });
        }
        let k = t.two_chord_graph();
        let d = gamma_exact_bb_with_limit(&k.graph, config.bb_limit)?;
        report.two_chord_bound_holds = Some(d.size <= report.bound_2n7);
        let size = consider(&mut report, d.vertices, "two-chord-exact", None);
        if enforce && size > bound {
            // ⌈2n/7⌉ can exceed ⌊5n/16⌋ (n = 25); both side MOPs span
            for side in sides_by_count(&|_| true) {
                let dp = gamma_mop_dp(t.side_graph(side));
                consider(&mut report, dp.vertices, "side-exact-dp", Some(side));
            }
        }
    } else {
        report.branch = Branch::SideMop;
        report.pigeonhole_holds = Some(4 * c_int.min(c_ext) <= n);
        let qualifying = sides_by_count(&|cs| 4 * cs <= n);
        let mut size = usize::MAX;
        for &side in &qualifying {
            let trace = dominate_mop(t.side_graph(side))?;
            size = consider(&mut report, trace.set.vertices, "side-engine", Some(side));
        }
        if enforce && size > bound {
            for &side in &qualifying {
                let dp = gamma_mop_dp(t.side_graph(side));
                consider(&mut report, dp.vertices, "side-exact-dp", Some(side));
            }
        }
    }

    let (set, method, side) = best.expect("every branch produces a set");
    report.size = set.len();
    report.set = set.clone();
    report.method = method;
    report.side = side;
    report.within_5n16 = report.size <= bound;
    report.near_miss = report.size > bound && report.size <= (5 * n).div_ceil(16);
    if enforce && !report.within_5n16 {
        return Err(PipelineError::BoundViolated {
            n,
            size: report.size,
            bound,
            report: Box::new(report),
        });
    }
    Ok((DominatingSet::new(set, &full), report))
}
