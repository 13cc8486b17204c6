//! Exact minimum dominating sets.
//!
//! Two independent solvers live here: a bitset branch-and-bound that works on
//! any small graph, and a linear dynamic program over the inner-dual tree of a
//! maximal outerplane graph. Tests cross-check them exhaustively.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mop::{MopGraph, Pos};

/// Default vertex cap of the branch-and-bound solver.
pub const DEFAULT_BB_LIMIT: usize = 32;
/// Bitset width of the branch-and-bound solver.
pub const MAX_BB_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("graph has {n} vertices, exact solver limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex {0} is outside 1..={1}")]
    BadIndex(Pos, usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    // adj[v] sorted, index 0 unused
    adj: Vec<Vec<Pos>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(Pos, Pos)]) -> Result<Self, DominationError> {
        let mut adj = vec![Vec::new(); n + 1];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(DominationError::BadIndex(v, n));
                }
            }
            if a == b {
                return Err(DominationError::InvalidGraph(format!("loop at {a}")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(Self::from_adjacency(adj))
    }

    pub(crate) fn from_adjacency(mut adj: Vec<Vec<Pos>>) -> Self {
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        SimpleGraph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len() - 1
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

    pub fn edges(&self) -> Vec<(Pos, Pos)> {
        let mut out = Vec::new();
        for u in 1..=self.n() {
            out.extend(self.adj[u].iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Whether every edge of `self` is an edge of `other` on the same vertex set.
    pub fn is_spanning_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.n() == other.n() && self.edges().iter().all(|&(a, b)| other.is_adjacent(a, b))
    }

    /// FNV-1a over the sorted edge list; identifies the graph a set certifies.
    pub fn graph_id(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        feed(self.n() as u64);
        for (a, b) in self.edges() {
            feed(a as u64);
            feed(b as u64);
        }
        format!("{h:016x}")
    }
}

/// A vertex set together with the id of the graph it dominates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSet {
    pub vertices: Vec<Pos>,
    pub size: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub graph_id: String,
}

impl DominatingSet {
    pub fn new(mut vertices: Vec<Pos>, g: &SimpleGraph) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        DominatingSet {
            size: vertices.len(),
            vertices,
            graph_id: g.graph_id(),
        }
    }

    pub fn contains(&self, v: Pos) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

pub fn is_dominating(g: &SimpleGraph, set: &[Pos]) -> Result<bool, DominationError> {
    let n = g.n();
    let mut covered = vec![false; n + 1];
    for &v in set {
        if v == 0 || v > n {
            return Err(DominationError::BadIndex(v, n));
        }
        covered[v] = true;
        for &w in g.neighbors(v) {
            covered[w] = true;
        }
    }
    Ok(covered[1..].iter().all(|&c| c))
}

/// Some vertex adjacent to all others (smallest such), if any.
pub fn dominating_vertex(g: &SimpleGraph) -> Option<Pos> {
    let n = g.n();
    (1..=n).find(|&v| g.degree(v) + 1 == n)
}

pub fn gamma_exact_bb(g: &SimpleGraph) -> Result<DominatingSet, DominationError> {
    gamma_exact_bb_with_limit(g, DEFAULT_BB_LIMIT)
}

/// Branch-and-bound minimum dominating set for graphs with at most `limit`
/// vertices (`limit` is capped at [`MAX_BB_LIMIT`]).
pub fn gamma_exact_bb_with_limit(
    g: &SimpleGraph,
    limit: usize,
) -> Result<DominatingSet, DominationError> {
    let n = g.n();
    let limit = limit.min(MAX_BB_LIMIT);
    if n > limit {
        return Err(DominationError::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok(DominatingSet::new(Vec::new(), g));
    }
    let mut solver = BranchAndBound::new(g);
    solver.run();
    let vertices = bits(solver.best).map(|i| i + 1).collect();
    Ok(DominatingSet::new(vertices, g))
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

struct BranchAndBound {
    closed: Vec<u128>,
    all: u128,
    best: u128,
    best_len: u32,
}

impl BranchAndBound {
    fn new(g: &SimpleGraph) -> Self {
        let n = g.n();
        let closed: Vec<u128> = (1..=n)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .fold(1u128 << (v - 1), |m, &w| m | 1u128 << (w - 1))
            })
            .collect();
        let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        let mut bb = BranchAndBound {
            closed,
            all,
            best: all,
            best_len: n as u32,
        };
        bb.greedy();
        bb
    }

    // max-coverage greedy seeds the incumbent
    fn greedy(&mut self) {
        let mut dominated = 0u128;
        let mut chosen = 0u128;
        while dominated != self.all {
            let w = (0..self.closed.len())
                .max_by_key(|&w| ((self.closed[w] & !dominated).count_ones(), usize::MAX - w))
                .expect("nonempty graph");
            chosen |= 1 << w;
            dominated |= self.closed[w];
        }
        if chosen.count_ones() < self.best_len {
            self.best = chosen;
            self.best_len = chosen.count_ones();
        }
    }

    fn lower_bound(&self, undominated: u128) -> u32 {
        // Undominated vertices whose closed neighborhoods are pairwise
        // disjoint each need their own dominator.
        let mut used = 0u128;
        let mut packing = 0;
        for u in bits(undominated) {
            if self.closed[u] & used == 0 {
                used |= self.closed[u];
                packing += 1;
            }
        }
        let max_cover = self
            .closed
            .iter()
            .map(|&c| (c & undominated).count_ones())
            .max()
            .unwrap_or(1)
            .max(1);
        packing.max(undominated.count_ones().div_ceil(max_cover))
    }

    fn run(&mut self) {
        self.search(0, 0, 0);
    }

    fn search(&mut self, chosen: u128, dominated: u128, count: u32) {
        if dominated == self.all {
            if count < self.best_len {
                self.best = chosen;
                self.best_len = count;
            }
            return;
        }
        let undominated = self.all & !dominated;
        if count + self.lower_bound(undominated) >= self.best_len {
            return;
        }
        // undominated vertex with the fewest possible dominators
        let v = bits(undominated)
            .min_by_key(|&u| (self.closed[u].count_ones(), u))
            .expect("some vertex undominated");
        let mut candidates: Vec<(usize, u128)> = bits(self.closed[v])
            .map(|w| (w, self.closed[w] & undominated))
            .collect();
        // drop candidates whose new coverage is subsumed by another's
        let snapshot = candidates.clone();
        candidates.retain(|&(w, cov)| {
            !snapshot
                .iter()
                .any(|&(w2, cov2)| w2 != w && cov & !cov2 == 0 && (cov != cov2 || w2 < w))
        });
        candidates.sort_by_key(|&(w, cov)| (std::cmp::Reverse(cov.count_ones()), w));
        for (w, _) in candidates {
            self.search(chosen | 1 << w, dominated | self.closed[w], count + 1);
            if count + 1 >= self.best_len {
                return;
            }
        }
    }
}

const INF: u32 = u32::MAX / 4;
const IN: usize = 0;
const DOM: usize = 1;
const FREE: usize = 2;

/// DP table for a section `(a, b)`: minimum number of chosen vertices of the
/// section (endpoints included) dominating every internal vertex, indexed by
/// the state of `a` and of `b`. States: chosen, not chosen but dominated
/// within the section, not chosen with no requirement.
type Table = [[u32; 3]; 3];

fn leaf_table(force: &[Option<bool>], a: Pos, b: Pos) -> Table {
    let mut t = [[INF; 3]; 3];
    t[IN][IN] = 2;
    t[IN][DOM] = 1;
    t[IN][FREE] = 1;
    t[DOM][IN] = 1;
    t[FREE][IN] = 1;
    t[FREE][FREE] = 0;
    apply_force(&mut t, force, a, b);
    t
}

fn apply_force(t: &mut Table, force: &[Option<bool>], a: Pos, b: Pos) {
    for (sa, row) in t.iter_mut().enumerate() {
        for (sb, cell) in row.iter_mut().enumerate() {
            let ok_a = force[a].is_none_or(|f| f == (sa == IN));
            let ok_b = force[b].is_none_or(|f| f == (sb == IN));
            if !(ok_a && ok_b) {
                *cell = INF;
            }
        }
    }
}

fn combine(left: &Table, right: &Table) -> Table {
    let mut t = [[INF; 3]; 3];
    for (sa, lrow) in left.iter().enumerate() {
        for (scl, &lv) in lrow.iter().enumerate() {
            if lv >= INF {
                continue;
            }
            for (scr, rrow) in right.iter().enumerate() {
                if (scl == IN) != (scr == IN) {
                    continue;
                }
                for (sb, &rv) in rrow.iter().enumerate() {
                    if rv >= INF {
                        continue;
                    }
                    let c_in = scl == IN;
                    let c_ok = c_in || sa == IN || sb == IN || scl == DOM || scr == DOM;
                    if !c_ok {
                        continue;
                    }
                    let ra = if sa == IN {
                        IN
                    } else if sa == DOM || sb == IN || c_in {
                        DOM
                    } else {
                        FREE
                    };
                    let rb = if sb == IN {
                        IN
                    } else if sb == DOM || sa == IN || c_in {
                        DOM
                    } else {
                        FREE
                    };
                    let cost = lv + rv - u32::from(c_in);
                    if cost < t[ra][rb] {
                        t[ra][rb] = cost;
                    }
                }
            }
        }
    }
    for row in t.iter_mut() {
        row[FREE] = row[FREE].min(row[DOM]);
    }
    let dom_row = t[DOM];
    for (f, d) in t[FREE].iter_mut().zip(dom_row) {
        *f = (*f).min(d);
    }
    t[FREE][FREE] = t[FREE][FREE].min(t[DOM][DOM]);
    t
}

/// Inner-dual dynamic program with optional per-vertex forcing; returns the
/// minimum size, or `INF` when the forcing is infeasible.
fn mop_dp(g: &MopGraph, force: &[Option<bool>]) -> u32 {
    let n = g.n();
    // every edge (a, b), a < b, bounds the sub-polygon a..b; process by span
    let mut edges = g.edges();
    edges.sort_by_key(|&(a, b)| (b - a, a));
    let mut tables: HashMap<(Pos, Pos), Table> = HashMap::with_capacity(edges.len());
    for &(a, b) in &edges {
        let t = if b - a == 1 {
            leaf_table(force, a, b)
        } else {
            let c = *g
                .neighbors(a)
                .iter()
                .filter(|&&c| c > a && c < b)
                .max()
                .expect("apex exists for every non-boundary section");
            combine(&tables[&(a, c)], &tables[&(c, b)])
        };
        tables.insert((a, b), t);
    }
    let top = &tables[&(1, n)];
    let mut best = INF;
    for sa in [IN, DOM] {
        for sb in [IN, DOM] {
            best = best.min(top[sa][sb]);
        }
    }
    best
}

/// Domination number of a MOP via the inner-dual dynamic program.
pub fn mop_domination_number(g: &MopGraph) -> usize {
    mop_dp(g, &vec![None; g.n() + 1]) as usize
}

/// Minimum dominating set of a MOP by dynamic programming over the inner dual.
/// Among minimum sets the lexicographically smallest is returned.
pub fn gamma_mop_dp(g: &MopGraph) -> DominatingSet {
    let n = g.n();
    let mut force = vec![None; n + 1];
    let gamma = mop_dp(g, &force);
    for v in 1..=n {
        force[v] = Some(true);
        if mop_dp(g, &force) != gamma {
            force[v] = Some(false);
        }
    }
    let vertices: Vec<Pos> = (1..=n).filter(|&v| force[v] == Some(true)).collect();
    debug_assert_eq!(vertices.len() as u32, gamma);
    DominatingSet::new(vertices, &g.to_simple_graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimpleGraph {
        // antipodal pairs {1,4}, {2,5}, {3,6} are the non-edges
        let mut edges = Vec::new();
        for a in 1..=6usize {
            for b in a + 1..=6 {
                if b - a != 3 {
                    edges.push((a, b));
                }
            }
        }
        SimpleGraph::new(6, &edges).unwrap()
    }

    fn hexagon() -> MopGraph {
        MopGraph::new(6, &[(1, 3), (3, 5), (5, 1)]).unwrap()
    }

    // Oracle: try every subset in order of size.
    fn brute_gamma(g: &SimpleGraph) -> usize {
        let n = g.n();
        (0..=n)
            .find(|&k| {
                (0u32..1 << n).any(|m| {
                    m.count_ones() as usize == k && {
                        let set: Vec<Pos> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect();
                        is_dominating(g, &set).unwrap()
                    }
                })
            })
            .unwrap()
    }

    #[test]
    fn is_dominating_examples() {
        let t = MopGraph::triangle().to_simple_graph();
        assert!(is_dominating(&t, &[1]).unwrap());
        assert!(!is_dominating(&hexagon().to_simple_graph(), &[1]).unwrap());
        let o = octahedron();
        assert!(is_dominating(&o, &[1, 4]).unwrap());
        assert!(is_dominating(&o, &[1, 2]).unwrap());
        assert!(!is_dominating(&o, &[1]).unwrap());
        assert_eq!(is_dominating(&o, &[7]), Err(DominationError::BadIndex(7, 6)));
    }

    #[test]
    fn bb_examples() {
        assert_eq!(gamma_exact_bb(&octahedron()).unwrap().size, 2);
        assert_eq!(brute_gamma(&octahedron()), 2);
        let single = SimpleGraph::new(1, &[]).unwrap();
        assert_eq!(gamma_exact_bb(&single).unwrap().vertices, vec![1]);
        let big = SimpleGraph::new(40, &[]).unwrap();
        assert_eq!(
            gamma_exact_bb(&big),
            Err(DominationError::TooLarge { n: 40, limit: 32 })
        );
        assert_eq!(gamma_exact_bb_with_limit(&big, 64).unwrap().size, 40);
    }

    #[test]
    fn bb_matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=11);
            let p = rng.gen_range(0.1..0.7);
            let mut edges = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    if rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            let g = SimpleGraph::new(n, &edges).unwrap();
            let d = gamma_exact_bb(&g).unwrap();
            assert!(is_dominating(&g, &d.vertices).unwrap());
            assert_eq!(d.size, brute_gamma(&g), "{edges:?}");
        }
    }

    #[test]
    fn dp_examples() {
        let t = gamma_mop_dp(&MopGraph::triangle());
        assert_eq!(t.vertices, vec![1]);
        let h = gamma_mop_dp(&hexagon());
        assert_eq!(h.size, 2);
        assert_eq!(h.vertices, vec![1, 3]);
        assert_eq!(mop_domination_number(&MopGraph::new(4, &[(1, 3)]).unwrap()), 1);
    }

    #[test]
    fn dominating_vertex_examples() {
        let fan = MopGraph::new(6, &[(1, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(dominating_vertex(&fan.to_simple_graph()), Some(1));
        assert_eq!(dominating_vertex(&hexagon().to_simple_graph()), None);
        let star: Vec<_> = (2..=7).map(|v| (1, v)).collect();
        assert_eq!(dominating_vertex(&SimpleGraph::new(7, &star).unwrap()), Some(1));
    }

    #[test]
    fn graph_id_tracks_edges() {
        let a = hexagon().to_simple_graph();
        let b = MopGraph::new(6, &[(2, 4), (4, 6), (6, 2)]).unwrap().to_simple_graph();
        assert_ne!(a.graph_id(), b.graph_id());
        assert_eq!(a.graph_id(), hexagon().to_simple_graph().graph_id());
    }
}
