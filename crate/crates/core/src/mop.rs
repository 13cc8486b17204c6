//! Maximal outerplane graphs stored as a triangulated convex polygon.
//!
//! Vertices are boundary positions `1..=n` in clockwise order. The boundary
//! Hamilton cycle is implicit; only the `n - 3` noncrossing chords are stored.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::SimpleGraph;

/// Boundary position, 1-indexed.
pub type Pos = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MopError {
    #[error("a maximal outerplane graph needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("expected {expected} chords for n = {n}, found {found}")]
    CountMismatch { n: usize, expected: usize, found: usize },
    #[error("chords {0:?} and {1:?} cross")]
    CrossingChords((Pos, Pos), (Pos, Pos)),
    #[error("chord {0:?} duplicates another chord or a boundary edge")]
    DuplicateOrBoundaryChord((Pos, Pos)),
    #[error("position {0} is outside 1..={1}")]
    BadIndex(Pos, usize),
    #[error("{{{0},{1}}} is not a chord")]
    NotAChord(Pos, Pos),
}

/// Canonical `(min, max)` form of an unordered pair.
pub fn canon(a: Pos, b: Pos) -> (Pos, Pos) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Whether two canonical chords cross in the interior of the polygon.
pub fn chords_cross(x: (Pos, Pos), y: (Pos, Pos)) -> bool {
    let (a, b) = x;
    let (c, d) = y;
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// A validated maximal outerplane graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::io::MopJson", into = "crate::io::MopJson")]
pub struct MopGraph {
    n: usize,
    chords: Vec<(Pos, Pos)>,
    // adj[v] sorted, index 0 unused
    adj: Vec<Vec<Pos>>,
}

impl fmt::Debug for MopGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MopGraph(n={}, chords={:?})", self.n, self.chords)
    }
}

impl MopGraph {
    /// Validates raw input and builds the graph. Chords may be given in any
    /// order and orientation; they are stored canonicalized and sorted.
    pub fn new(n: usize, chords: &[(Pos, Pos)]) -> Result<Self, MopError> {
        if n < 3 {
            return Err(MopError::TooSmall(n));
        }
        let expected = n - 3;
        if chords.len() != expected {
            return Err(MopError::CountMismatch {
                n,
                expected,
                found: chords.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in chords {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(MopError::BadIndex(v, n));
                }
            }
            let c = canon(a, b);
            let boundary = c.1 - c.0 == 1 || (c.0 == 1 && c.1 == n) || c.0 == c.1;
            if boundary || !seen.insert(c) {
                return Err(MopError::DuplicateOrBoundaryChord((a, b)));
            }
        }
        let sorted: Vec<(Pos, Pos)> = seen.into_iter().collect();
        for (i, &x) in sorted.iter().enumerate() {
            for &y in &sorted[i + 1..] {
                if chords_cross(x, y) {
                    return Err(MopError::CrossingChords(x, y));
                }
            }
        }
        Ok(Self::from_canonical(n, sorted))
    }

    fn from_canonical(n: usize, chords: Vec<(Pos, Pos)>) -> Self {
        let mut adj = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let next = if v == n { 1 } else { v + 1 };
            adj[v].push(next);
            adj[next].push(v);
        }
        for &(a, b) in &chords {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        MopGraph { n, chords, adj }
    }

    /// The triangle `K3`.
    pub fn triangle() -> Self {
        Self::from_canonical(3, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical chords, sorted.
    pub fn chords(&self) -> &[(Pos, Pos)] {
        &self.chords
    }

    pub fn neighbors(&self, v: Pos) -> &[Pos] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Pos) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: Pos, v: Pos) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_chord(&self, r: Pos, s: Pos) -> bool {
        r != s && r <= self.n && s <= self.n && self.chords.binary_search(&canon(r, s)).is_ok()
    }

    pub fn is_boundary_edge(&self, u: Pos, v: Pos) -> bool {
        self.next(u) == v || self.next(v) == u
    }

    /// All edges as canonical pairs, sorted.
    pub fn edges(&self) -> Vec<(Pos, Pos)> {
        let mut out = Vec::with_capacity(2 * self.n);
        for u in 1..=self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn next(&self, v: Pos) -> Pos {
        if v == self.n {
            1
        } else {
            v + 1
        }
    }

    pub fn prev(&self, v: Pos) -> Pos {
        if v == 1 {
            self.n
        } else {
            v - 1
        }
    }

    /// Position `d` steps clockwise from `v`.
    pub fn offset(&self, v: Pos, d: usize) -> Pos {
        (v - 1 + d) % self.n + 1
    }

    /// Number of edges on the clockwise boundary segment `C[r, s]`.
    pub fn segment_length(&self, r: Pos, s: Pos) -> usize {
        (s + self.n - r) % self.n
    }

    /// Vertices of the closed clockwise segment `C[r, s]`.
    pub fn segment(&self, r: Pos, s: Pos) -> Vec<Pos> {
        (0..=self.segment_length(r, s))
            .map(|d| self.offset(r, d))
            .collect()
    }

    /// Whether `v` lies strictly inside the clockwise segment `C[r, s]`.
    pub fn strictly_inside(&self, r: Pos, s: Pos, v: Pos) -> bool {
        let d = self.segment_length(r, v);
        d > 0 && d < self.segment_length(r, s)
    }

    pub fn degree_two_vertices(&self) -> Vec<Pos> {
        (1..=self.n).filter(|&v| self.degree(v) == 2).collect()
    }

    pub fn section_of(&self, r: Pos, s: Pos) -> Result<Section, MopError> {
        for v in [r, s] {
            if v == 0 || v > self.n {
                return Err(MopError::BadIndex(v, self.n));
            }
        }
        if !self.is_chord(r, s) {
            return Err(MopError::NotAChord(r, s));
        }
        Ok(self.section_unchecked(r, s))
    }

    fn section_unchecked(&self, r: Pos, s: Pos) -> Section {
        let len = self.segment_length(r, s);
        let internal = (1..len).map(|d| self.offset(r, d)).collect();
        Section { r, s, internal }
    }

    /// Both orientations of every chord, in chord order.
    pub fn sections(&self) -> Vec<Section> {
        self.chords
            .iter()
            .flat_map(|&(a, b)| [self.section_unchecked(a, b), self.section_unchecked(b, a)])
            .collect()
    }

    /// Number of degree-2 vertices of the whole graph among the internal
    /// vertices of `sec`.
    pub fn degree_two_count(&self, sec: &Section) -> usize {
        sec.internal.iter().filter(|&&v| self.degree(v) == 2).count()
    }

    pub fn elementary_sections(&self) -> Vec<Section> {
        self.sections()
            .into_iter()
            .filter(|sec| self.degree_two_count(sec) == 1)
            .collect()
    }

    /// Elementary sections not strictly contained in another elementary one.
    pub fn maximal_elementary_sections(&self) -> Vec<Section> {
        let all = self.elementary_sections();
        all.iter()
            .filter(|a| !all.iter().any(|b| b != *a && self.section_contains(b, a)))
            .cloned()
            .collect()
    }

    /// Whether the clockwise segment of `inner` lies within that of `outer`.
    pub fn section_contains(&self, outer: &Section, inner: &Section) -> bool {
        let start = self.segment_length(outer.r, inner.r);
        start + inner.len() <= outer.len()
    }

    /// Inner faces as sorted vertex triples, sorted.
    pub fn triangles(&self) -> Vec<[Pos; 3]> {
        let mut out = Vec::with_capacity(self.n - 2);
        for a in 1..=self.n {
            let up: Vec<Pos> = self.adj[a].iter().copied().filter(|&b| b > a).collect();
            for (i, &b) in up.iter().enumerate() {
                for &c in &up[i + 1..] {
                    if self.is_adjacent(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Faces whose three edges are all chords.
    pub fn internal_triangles(&self) -> Vec<[Pos; 3]> {
        self.triangles()
            .into_iter()
            .filter(|&[a, b, c]| self.is_chord(a, b) && self.is_chord(b, c) && self.is_chord(a, c))
            .collect()
    }

    pub fn is_striped(&self) -> bool {
        self.internal_triangles().is_empty()
    }

    pub fn inner_dual(&self) -> InnerDual {
        let triangles = self.triangles();
        let mut edges = Vec::new();
        for (i, t) in triangles.iter().enumerate() {
            for (j, u) in triangles.iter().enumerate().skip(i + 1) {
                let shared = t.iter().filter(|v| u.contains(v)).count();
                if shared == 2 {
                    edges.push((i, j));
                }
            }
        }
        InnerDual { triangles, edges }
    }

    /// A vertex adjacent to every other vertex, smallest first.
    pub fn dominating_vertex(&self) -> Option<Pos> {
        (1..=self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    pub fn to_simple_graph(&self) -> SimpleGraph {
        SimpleGraph::from_adjacency(self.adj.clone())
    }

    /// Relabels `v -> v + k (mod n)`.
    pub fn rotate(&self, k: usize) -> MopGraph {
        let chords: Vec<_> = self
            .chords
            .iter()
            .map(|&(a, b)| canon(self.offset(a, k), self.offset(b, k)))
            .collect();
        MopGraph::new(self.n, &chords).expect("rotation preserves validity")
    }

    /// Relabels `v -> n + 1 - v`, reversing the orientation.
    pub fn reflect(&self) -> MopGraph {
        let n = self.n;
        let chords: Vec<_> = self
            .chords
            .iter()
            .map(|&(a, b)| canon(n + 1 - a, n + 1 - b))
            .collect();
        MopGraph::new(n, &chords).expect("reflection preserves validity")
    }
}

/// The subgraph induced by the clockwise segment `C[r, s]` of a chord.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Section {
    pub r: Pos,
    pub s: Pos,
    pub internal: Vec<Pos>,
}

impl Section {
    /// Edge count of the segment.
    pub fn len(&self) -> usize {
        self.internal.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_count(&self) -> usize {
        self.internal.len() + 2
    }

    /// All vertices `r, internal.., s` in clockwise order.
    pub fn vertices(&self) -> Vec<Pos> {
        let mut out = Vec::with_capacity(self.vertex_count());
        out.push(self.r);
        out.extend_from_slice(&self.internal);
        out.push(self.s);
        out
    }
}

/// Tree on the inner faces; two faces are adjacent when they share a chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDual {
    pub triangles: Vec<[Pos; 3]>,
    pub edges: Vec<(usize, usize)>,
}

impl InnerDual {
    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.triangles.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn is_tree(&self) -> bool {
        let m = self.triangles.len();
        if m == 0 || self.edges.len() != m - 1 {
            return false;
        }
        let mut adj = vec![Vec::new(); m];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == m
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.degrees().iter().all(|&d| d <= 2)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexagon() -> MopGraph {
        MopGraph::new(6, &[(1, 3), (3, 5), (5, 1)]).unwrap()
    }

    fn fan6() -> MopGraph {
        MopGraph::new(6, &[(1, 3), (1, 4), (1, 5)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let t = MopGraph::new(3, &[]).unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(hexagon().chords(), &[(1, 3), (1, 5), (3, 5)]);
        assert_eq!(
            MopGraph::new(6, &[(1, 3), (2, 5), (3, 5)]),
            Err(MopError::CrossingChords((1, 3), (2, 5)))
        );
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            MopGraph::new(5, &[(1, 3)]),
            Err(MopError::CountMismatch { expected: 2, found: 1, .. })
        ));
        assert!(matches!(
            MopGraph::new(5, &[(1, 3), (3, 1)]),
            Err(MopError::DuplicateOrBoundaryChord(_))
        ));
        assert!(matches!(
            MopGraph::new(5, &[(1, 3), (1, 5)]),
            Err(MopError::DuplicateOrBoundaryChord((1, 5)))
        ));
        assert!(matches!(
            MopGraph::new(5, &[(1, 3), (1, 9)]),
            Err(MopError::BadIndex(9, 5))
        ));
        assert_eq!(MopGraph::new(2, &[]), Err(MopError::TooSmall(2)));
    }

    #[test]
    fn degree_two_examples() {
        assert_eq!(MopGraph::triangle().degree_two_vertices(), vec![1, 2, 3]);
        assert_eq!(hexagon().degree_two_vertices(), vec![2, 4, 6]);
        // brute-force degrees from the edge list
        let g = fan6();
        let mut deg = [0usize; 7];
        for (a, b) in g.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        let brute: Vec<_> = (1..=6).filter(|&v| deg[v] == 2).collect();
        assert_eq!(brute, vec![2, 6]);
        assert_eq!(g.degree_two_vertices(), brute);
    }

    #[test]
    fn segment_lengths() {
        let g = hexagon();
        assert_eq!(g.segment_length(2, 4), 2);
        assert_eq!(g.segment_length(6, 2), 2);
        let g14 = MopGraph::new(14, &(3..=13).map(|v| (1, v)).collect::<Vec<_>>()).unwrap();
        assert_eq!(g14.segment_length(5, 5), 0);
    }

    #[test]
    fn sections() {
        assert_eq!(hexagon().section_of(1, 3).unwrap().internal, vec![2]);
        assert_eq!(fan6().section_of(1, 4).unwrap().internal, vec![2, 3]);
        assert_eq!(hexagon().section_of(1, 2), Err(MopError::NotAChord(1, 2)));
        assert_eq!(hexagon().section_of(5, 1).unwrap().internal, vec![6]);
    }

    // Oracle: enumerate every (r, s) chord orientation and count degree-2
    // internal vertices directly from the edge list.
    fn brute_elementary(g: &MopGraph) -> Vec<(Pos, Pos)> {
        let mut deg = vec![0usize; g.n() + 1];
        for (a, b) in g.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut out = Vec::new();
        for &(a, b) in g.chords() {
            for (r, s) in [(a, b), (b, a)] {
                let mut v = if r == g.n() { 1 } else { r + 1 };
                let mut count = 0;
                while v != s {
                    if deg[v] == 2 {
                        count += 1;
                    }
                    v = if v == g.n() { 1 } else { v + 1 };
                }
                if count == 1 {
                    out.push((r, s));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn elementary_examples() {
        let g = fan6();
        let mut got: Vec<_> = g.elementary_sections().iter().map(|s| (s.r, s.s)).collect();
        got.sort();
        assert_eq!(got, brute_elementary(&g));
        assert!(got.contains(&(1, 4)));

        let h = hexagon();
        let mut max: Vec<_> = h
            .maximal_elementary_sections()
            .iter()
            .map(|s| (s.r, s.s))
            .collect();
        max.sort();
        assert_eq!(max, vec![(1, 3), (3, 5), (5, 1)]);
        assert_eq!(brute_elementary(&h), vec![(1, 3), (3, 5), (5, 1)]);
        assert!(MopGraph::triangle().elementary_sections().is_empty());
    }

    #[test]
    fn maximal_filter_fan() {
        let mut max: Vec<_> = fan6()
            .maximal_elementary_sections()
            .iter()
            .map(|s| (s.r, s.s))
            .collect();
        max.sort();
        assert_eq!(max, vec![(1, 5), (3, 1)]);
    }

    #[test]
    fn internal_triangles_and_stripes() {
        assert_eq!(hexagon().internal_triangles(), vec![[1, 3, 5]]);
        assert!(!hexagon().is_striped());
        assert!(fan6().is_striped());
        assert!(fan6().inner_dual().is_path());
    }

    #[test]
    fn inner_dual_examples() {
        let d = MopGraph::triangle().inner_dual();
        assert_eq!(d.triangles.len(), 1);
        assert!(d.edges.is_empty());
        let d = MopGraph::new(4, &[(1, 3)]).unwrap().inner_dual();
        assert_eq!((d.triangles.len(), d.edges.len()), (2, 1));
        let d = hexagon().inner_dual();
        assert!(d.is_tree());
        assert_eq!(d.max_degree(), 3);
        let center = d.triangles.iter().position(|t| *t == [1, 3, 5]).unwrap();
        assert!(d.edges.iter().all(|&(a, b)| a == center || b == center));
    }

    #[test]
    fn rotation_and_reflection() {
        let g = fan6();
        assert_eq!(g.rotate(1).chords(), &[(2, 4), (2, 5), (2, 6)]);
        assert_eq!(g.reflect().degree_two_vertices(), vec![1, 5]);
    }
}
