//! Structure of graphs on which no reduction applies.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use super::{find_applicable, Anchor, ReductionKind};
use crate::bounds::Rational;
use crate::mop::{MopGraph, Pos};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrreducibilityError {
    #[error("needs at least seven vertices, got {0}")]
    TooSmall(usize),
    #[error("alpha must be at least 1/4, got {0}")]
    AlphaTooSmall(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseFinding {
    pub holds: bool,
    /// Sections `(r, s)` or triangle rotations `(r, s, t)` violating the clause.
    pub witnesses: Vec<Vec<Pos>>,
}

impl ClauseFinding {
    fn from_witnesses(witnesses: Vec<Vec<Pos>>) -> Self {
        ClauseFinding {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApplicableReduction {
    pub kind: ReductionKind,
    pub anchor: Anchor,
    /// `⌈α(n'+k')⌉ + 1 <= ⌈α(n+k)⌉`, i.e. the bound transfers through this step.
    pub transfers: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub alpha: Rational,
    pub reducible: bool,
    pub applicable: Vec<ApplicableReduction>,
    /// Maximal elementary sections have at most three internal vertices,
    /// and with exactly three the degree-2 vertex is the middle one.
    pub clause1: ClauseFinding,
    /// Consecutive sections `G[r,s]`, `G[s,t]` with `rt` a chord have at
    /// least three internal vertices in total.
    pub clause2: ClauseFinding,
    /// No section with at least six vertices has a dominating vertex.
    pub clause3: ClauseFinding,
}

fn ceil_mul(alpha: Ratio<i64>, x: usize) -> i64 {
    (alpha * Ratio::from_integer(x as i64)).ceil().to_integer()
}

pub fn irreducibility_report(g: &MopGraph, alpha: Rational) -> Result<IrreducibilityReport, IrreducibilityError> {
    if g.n() < 7 {
        return Err(IrreducibilityError::TooSmall(g.n()));
    }
    if alpha.0 < Ratio::new(1, 4) {
        return Err(IrreducibilityError::AlphaTooSmall(alpha));
    }
    let applicable: Vec<ApplicableReduction> = find_applicable(g)
        .into_iter()
        .map(|step| {
            let c = step.certificate();
            let transfers = c.holds()
                && ceil_mul(alpha.0, c.n_after + c.k_after) < ceil_mul(alpha.0, c.n_before + c.k_before);
            ApplicableReduction {
                kind: step.kind,
                anchor: step.anchor,
                transfers,
            }
        })
        .collect();

    let clause1 = g
        .maximal_elementary_sections()
        .into_iter()
        .filter(|sec| {
            let k = sec.internal.len();
            k > 3 || (k == 3 && g.degree(sec.internal[1]) != 2)
        })
        .map(|sec| vec![sec.r, sec.s])
        .collect();

    let clause2 = g
        .internal_triangles()
        .into_iter()
        .flat_map(|[a, b, c]| [[a, b, c], [b, c, a], [c, a, b]])
        .filter(|&[r, s, t]| g.segment_length(r, s) + g.segment_length(s, t) - 2 < 3)
        .map(|rot| rot.to_vec())
        .collect();

    let clause3 = g
        .sections()
        .into_iter()
        .filter(|sec| sec.vertex_count() >= 6)
        .filter(|sec| {
            let verts = sec.vertices();
            verts
                .iter()
                .any(|&v| verts.iter().all(|&u| u == v || g.is_adjacent(u, v)))
        })
        .map(|sec| vec![sec.r, sec.s])
        .collect();

    Ok(IrreducibilityReport {
        alpha,
        reducible: applicable.iter().any(|a| a.transfers),
        applicable,
        clause1: ClauseFinding::from_witnesses(clause1),
        clause2: ClauseFinding::from_witnesses(clause2),
        clause3: ClauseFinding::from_witnesses(clause3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_graph_is_reducible() {
        let chords: Vec<_> = (3..9).map(|v| (1, v)).collect();
        let g = MopGraph::new(9, &chords).unwrap();
        let rep = irreducibility_report(&g, Rational::new(1, 4)).unwrap();
        assert!(rep.reducible);
        assert!(rep.applicable.iter().any(|a| a.kind == ReductionKind::R2));
        assert!(!rep.clause3.holds);
    }

    #[test]
    fn errors() {
        let g = MopGraph::new(6, &[(1, 3), (3, 5), (5, 1)]).unwrap();
        assert_eq!(irreducibility_report(&g, Rational::new(1, 4)), Err(IrreducibilityError::TooSmall(6)));
        let chords: Vec<_> = (3..9).map(|v| (1, v)).collect();
        let g = MopGraph::new(9, &chords).unwrap();
        assert!(matches!(
            irreducibility_report(&g, Rational::new(1, 5)),
            Err(IrreducibilityError::AlphaTooSmall(_))
        ));
    }
}
