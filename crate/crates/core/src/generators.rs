//! Exhaustive and random generation, plus the named example graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalan::{catalan, ln_catalan, triangulation_count, unrank_triangulation};
use crate::hamiltonian::HamTriangulation;
use crate::mop::{canon, MopGraph, Pos};

pub const MAX_ENUMERATE_MOP: usize = 16;
pub const MAX_ENUMERATE_HT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("n = {n} exceeds the exhaustive limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("n = {n} is below the minimum {min}")]
    TooSmall { n: usize, min: usize },
    #[error("index {index} is out of range for n = {n}")]
    IndexOutOfRange { n: usize, index: u128 },
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    Mop,
    HamTriangulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusMode {
    Exhaustive,
    Random,
}

/// Description of a test corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub kind: CorpusKind,
    pub n_min: usize,
    pub n_max: usize,
    pub mode: CorpusMode,
    pub seed: u64,
    /// Instances per `n` in random mode.
    pub count: usize,
}

fn polygon(n: usize) -> Vec<Pos> {
    (2..=n).chain(std::iter::once(1)).collect()
}

fn mop_from_chords(n: usize, chords: &[(Pos, Pos)]) -> MopGraph {
    MopGraph::new(n, chords).expect("generated triangulations are valid")
}

/// The `index`-th labeled triangulation of the `n`-gon.
pub fn mop_by_index(n: usize, index: u128) -> Result<MopGraph, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall { n, min: 3 });
    }
    let count = triangulation_count(n).ok_or(GenError::TooLarge { n, max: MAX_ENUMERATE_MOP })?;
    if index >= count {
        return Err(GenError::IndexOutOfRange { n, index });
    }
    let mut chords = Vec::with_capacity(n - 3);
    unrank_triangulation(&polygon(n), index, &mut chords);
    Ok(mop_from_chords(n, &chords))
}

/// Every labeled MOP on `n` vertices, in a fixed order.
pub fn enumerate_mops(n: usize) -> Result<impl Iterator<Item = MopGraph>, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall { n, min: 3 });
    }
    if n > MAX_ENUMERATE_MOP {
        return Err(GenError::TooLarge { n, max: MAX_ENUMERATE_MOP });
    }
    let count = triangulation_count(n).expect("fits below the cap");
    Ok((0..count).map(move |i| mop_by_index(n, i).expect("index in range")))
}

fn sample_triangulation<R: Rng>(verts: &[Pos], rng: &mut R, out: &mut Vec<(Pos, Pos)>) {
    let len = verts.len();
    if len <= 2 {
        return;
    }
    if let Some(count) = catalan(len - 2) {
        unrank_triangulation(verts, rng.gen_range(0..count), out);
        return;
    }
    // apex weights C(k-1) C(len-k-2) / C(len-2), in log space
    let total = ln_catalan(len - 2);
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut apex = len - 2;
    for k in 1..len - 1 {
        acc += (ln_catalan(k - 1) + ln_catalan(len - k - 2) - total).exp();
        if u < acc {
            apex = k;
            break;
        }
    }
    if apex != 1 {
        out.push((verts[0], verts[apex]));
    }
    if apex != len - 2 {
        out.push((verts[apex], verts[len - 1]));
    }
    sample_triangulation(&verts[..=apex], rng, out);
    sample_triangulation(&verts[apex..], rng, out);
}

fn sample_mop<R: Rng>(n: usize, rng: &mut R) -> MopGraph {
    let mut chords = Vec::with_capacity(n - 3);
    sample_triangulation(&polygon(n), rng, &mut chords);
    mop_from_chords(n, &chords)
}

/// Uniform random labeled MOP; `n >= 3`.
pub fn random_mop(n: usize, seed: u64) -> MopGraph {
    assert!(n >= 3, "a MOP needs at least 3 vertices");
    sample_mop(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn disjoint(a: &MopGraph, b: &MopGraph) -> bool {
    a.chords().iter().all(|c| b.chords().binary_search(c).is_err())
}

fn sample_ht<R: Rng>(n: usize, rng: &mut R) -> HamTriangulation {
    loop {
        let inner = sample_mop(n, rng);
        let outer = sample_mop(n, rng);
        if disjoint(&inner, &outer) {
            return HamTriangulation::from_sides(inner, outer).expect("sides are disjoint");
        }
    }
}

/// Uniform random Hamiltonian triangulation with cycle `1..=n`; `n >= 4`.
pub fn random_ht(n: usize, seed: u64) -> HamTriangulation {
    assert!(n >= 4, "a Hamiltonian triangulation needs at least 4 vertices");
    sample_ht(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniform among random triangulations whose cycle `1..=n` is good.
pub fn random_good_ht(n: usize, seed: u64) -> HamTriangulation {
    assert!(n >= 7, "cycles below 7 vertices are rarely good");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let t = sample_ht(n, &mut rng);
        if t.good_cycle_check() {
            return t;
        }
    }
}

/// Every ordered pair of chord-disjoint triangulations of the `n`-gon.
pub fn enumerate_hts(n: usize) -> Result<impl Iterator<Item = HamTriangulation>, GenError> {
    if n < 4 {
        return Err(GenError::TooSmall { n, min: 4 });
    }
    if n > MAX_ENUMERATE_HT {
        return Err(GenError::TooLarge { n, max: MAX_ENUMERATE_HT });
    }
    let mops: Vec<MopGraph> = enumerate_mops(n)?.collect();
    let pairs = mops.clone();
    Ok(mops.into_iter().flat_map(move |inner| {
        pairs
            .clone()
            .into_iter()
            .filter(|outer| disjoint(&inner, outer))
            .map(|outer| HamTriangulation::from_sides(inner.clone(), outer).expect("disjoint sides"))
            .collect::<Vec<_>>()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedGraph {
    Mop(MopGraph),
    Ham(HamTriangulation),
}

pub const NAMES: [&str; 4] = ["octahedron", "seven_vertex_fig1", "figure2", "hexagon_fan3"];

/// Least (by sorted chord list) 14-vertex MOP with one essential pair and
/// domination number 4.
const FIGURE2_CHORDS: [(Pos, Pos); 11] = [
    (1, 3), (1, 5), (1, 6), (1, 7), (1, 9), (1, 11), (1, 13), (3, 5), (7, 9), (9, 11), (11, 13),
];

/// Least 7-vertex triangulation (inner, then outer chords) with domination
/// number 2 and no dominating vertex.
const SEVEN_INNER: [(Pos, Pos); 4] = [(1, 3), (1, 4), (1, 5), (5, 7)];
const SEVEN_OUTER: [(Pos, Pos); 4] = [(2, 4), (2, 6), (2, 7), (4, 6)];

/// Least non-degree-2 vertex of [`figure2`] whose replacement by one strip
/// still violates `(n+k)/4`; vertex 1 does not.
const FAMILY_VERTEX: Pos = 3;

pub fn figure2() -> MopGraph {
    mop_from_chords(14, &FIGURE2_CHORDS)
}

pub fn hexagon_fan3() -> MopGraph {
    mop_from_chords(6, &[(1, 3), (3, 5), (1, 5)])
}

pub fn octahedron() -> HamTriangulation {
    HamTriangulation::new(6, &[(1, 3), (3, 5), (1, 5)], &[(2, 4), (4, 6), (2, 6)]).expect("valid")
}

pub fn seven_vertex_fig1() -> HamTriangulation {
    HamTriangulation::new(7, &SEVEN_INNER, &SEVEN_OUTER).expect("valid")
}

pub fn named_graph(name: &str) -> Result<NamedGraph, GenError> {
    match name {
        "octahedron" => Ok(NamedGraph::Ham(octahedron())),
        "seven_vertex_fig1" => Ok(NamedGraph::Ham(seven_vertex_fig1())),
        "figure2" => Ok(NamedGraph::Mop(figure2())),
        "hexagon_fan3" => Ok(NamedGraph::Mop(hexagon_fan3())),
        other => Err(GenError::UnknownName(other.to_string())),
    }
}

/// `g` with the non-degree-2 vertex `v` replaced by a path `p0 .. p(4m)`
/// carrying `2m` ears `p(2i) p(2i+1) p(2i+2)`. The rest of the strip is
/// fanned from `p0`, which inherits every chord of `v`.
pub fn replace_with_strip(g: &MopGraph, v: Pos, m: usize) -> MopGraph {
    assert!(g.degree(v) > 2, "the replaced vertex must not have degree 2");
    let n = g.n();
    let extra = 4 * m;
    let relabel = |u: Pos| if u > v { u + extra } else { u };
    let p = |i: usize| v + i;
    let succ = relabel(g.next(v));

    let mut chords: Vec<(Pos, Pos)> = g
        .chords()
        .iter()
        .map(|&(a, b)| canon(relabel(a), relabel(b)))
        .collect();
    for i in 0..2 * m {
        chords.push((p(2 * i), p(2 * i + 2)));
    }
    for j in 2..=2 * m {
        chords.push((p(0), p(2 * j)));
    }
    chords.push(canon(p(0), succ));
    mop_from_chords(n + extra, &chords)
}

pub fn figure2_family(m: usize) -> MopGraph {
    replace_with_strip(&figure2(), FAMILY_VERTEX, m)
}
