//! Degree-2 structure of a MOP and the domination bounds built on it.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::domination::mop_domination_number;
use crate::mop::{MopGraph, Pos};

/// Ordered pair of cyclically consecutive degree-2 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConsecutivePair {
    pub r: Pos,
    pub s: Pos,
    /// Edge count of the clockwise segment `C[r, s]`.
    pub gap: usize,
    pub essential: bool,
}

/// Pairs in clockwise order starting from the smallest degree-2 vertex.
/// Empty for the triangle.
pub fn consecutive_pairs(g: &MopGraph) -> Vec<ConsecutivePair> {
    if g.n() == 3 {
        return Vec::new();
    }
    let deg2 = g.degree_two_vertices();
    debug_assert!(deg2.len() >= 2, "a MOP with n >= 4 has two ears");
    (0..deg2.len())
        .map(|i| {
            let r = deg2[i];
            let s = deg2[(i + 1) % deg2.len()];
            let gap = g.segment_length(r, s);
            ConsecutivePair {
                r,
                s,
                gap,
                essential: gap >= 3,
            }
        })
        .collect()
}

pub fn essential_pair_count(g: &MopGraph) -> usize {
    consecutive_pairs(g).iter().filter(|p| p.essential).count()
}

pub fn bad_vertices(g: &MopGraph) -> Vec<Pos> {
    consecutive_pairs(g)
        .iter()
        .filter(|p| p.essential)
        .map(|p| p.r)
        .collect()
}

/// `⌈(n + k) / 4⌉`, the guaranteed bound.
pub fn essential_bound(n: usize, k: usize) -> usize {
    (n + k).div_ceil(4)
}

/// Exact rational rendered as `{"num", "den", "decimal"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(Ratio::new(num, den))
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    pub fn ceil(self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Rational", 3)?;
        st.serialize_field("num", self.0.numer())?;
        st.serialize_field("den", self.0.denom())?;
        st.serialize_field("decimal", &self.to_f64())?;
        st.end()
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub degree_two: Vec<Pos>,
    pub bad_vertices: Vec<Pos>,
    pub gamma: Option<usize>,
    /// `(n + t) / 4`
    pub bound_thm11: Rational,
    /// `⌈(n + k) / 4⌉`
    pub bound_thm12: usize,
    /// `(n + k) / 4`, the refuted bound; reported only to exhibit violations.
    pub bound_li: Rational,
    pub satisfies_thm11: Option<bool>,
    pub satisfies_thm12: Option<bool>,
    pub violates_li: Option<bool>,
}

pub fn bounds_report(g: &MopGraph, with_gamma: bool) -> BoundsReport {
    let n = g.n();
    let degree_two = g.degree_two_vertices();
    let t = degree_two.len();
    let bad = bad_vertices(g);
    let k = bad.len();
    let bound_thm11 = Rational::new((n + t) as i64, 4);
    let bound_li = Rational::new((n + k) as i64, 4);
    let bound_thm12 = essential_bound(n, k);
    let gamma = with_gamma.then(|| mop_domination_number(g));
    let as_ratio = |x: usize| Rational::new(x as i64, 1);
    BoundsReport {
        n,
        t,
        k,
        degree_two,
        bad_vertices: bad,
        gamma,
        bound_thm11,
        bound_thm12,
        bound_li,
        satisfies_thm11: gamma.map(|x| as_ratio(x) <= bound_thm11),
        satisfies_thm12: gamma.map(|x| x <= bound_thm12),
        violates_li: gamma.map(|x| as_ratio(x) > bound_li),
    }
}

/// Whether the exact domination number exceeds `(n + k) / 4`.
pub fn check_li_counterexample(g: &MopGraph) -> bool {
    let gamma = mop_domination_number(g);
    4 * gamma > g.n() + essential_pair_count(g)
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

    fn pairs(g: &MopGraph) -> Vec<(Pos, Pos, usize)> {
        consecutive_pairs(g).iter().map(|p| (p.r, p.s, p.gap)).collect()
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pairs(&hexagon()), vec![(2, 4, 2), (4, 6, 2), (6, 2, 2)]);
        assert_eq!(pairs(&fan6()), vec![(2, 6, 4), (6, 2, 2)]);
        let g4 = MopGraph::new(4, &[(1, 3)]).unwrap();
        assert_eq!(pairs(&g4), vec![(2, 4, 2), (4, 2, 2)]);
        assert!(consecutive_pairs(&MopGraph::triangle()).is_empty());
    }

    #[test]
    fn essential_examples() {
        assert_eq!(essential_pair_count(&hexagon()), 0);
        assert_eq!(essential_pair_count(&fan6()), 1);
        assert_eq!(bad_vertices(&fan6()), vec![2]);
        assert_eq!(essential_pair_count(&MopGraph::triangle()), 0);
    }

    #[test]
    fn report_examples() {
        let r = bounds_report(&hexagon(), true);
        assert_eq!(r.gamma, Some(2));
        assert_eq!(r.bound_thm12, 2);
        assert_eq!(r.satisfies_thm12, Some(true));
        assert_eq!(r.violates_li, Some(true));
        assert_eq!(r.bound_li, Rational::new(3, 2));
        let t = bounds_report(&MopGraph::triangle(), true);
        assert_eq!((t.gamma, t.t, t.k), (Some(1), 3, 0));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["bound_li"]["num"], 3);
        assert_eq!(json["bound_li"]["den"], 2);
        assert_eq!(json["bound_li"]["decimal"], 1.5);
    }

    #[test]
    fn li_examples() {
        assert!(check_li_counterexample(&hexagon()));
        assert!(!check_li_counterexample(&fan6()));
    }

    #[test]
    fn k_is_label_invariant() {
        let g = MopGraph::new(9, &[(1, 3), (3, 9), (4, 9), (4, 8), (5, 8), (5, 7)]).unwrap();
        let k = essential_pair_count(&g);
        for r in 0..9 {
            assert_eq!(essential_pair_count(&g.rotate(r)), k);
            assert_eq!(essential_pair_count(&g.rotate(r).reflect()), k);
        }
    }
}
