//! Catalan numbers and ranking of labeled polygon triangulations.

use std::sync::OnceLock;

use crate::mop::Pos;

fn table() -> &'static [u128] {
    static TABLE: OnceLock<Vec<u128>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c: Vec<u128> = vec![1];
        'grow: loop {
            let m = c.len();
            let mut sum: u128 = 0;
            for i in 0..m {
                match c[i].checked_mul(c[m - 1 - i]).and_then(|x| sum.checked_add(x)) {
                    Some(s) => sum = s,
                    None => break 'grow,
                }
            }
            c.push(sum);
        }
        c
    })
}

/// `C(m)`, or `None` once it no longer fits in `u128`.
pub fn catalan(m: usize) -> Option<u128> {
    table().get(m).copied()
}

/// Number of labeled triangulations of an `n`-gon, `C(n - 2)`.
pub fn triangulation_count(n: usize) -> Option<u128> {
    if n < 2 {
        return None;
    }
    catalan(n - 2)
}

/// Natural log of `C(m)`, valid for any `m`.
pub fn ln_catalan(m: usize) -> f64 {
    (2..=m).map(|i| ((m + i) as f64 / i as f64).ln()).sum()
}

/// Chords of the `index`-th triangulation of the polygon `verts`, whose base
/// edge is `verts[0] -- verts[last]`. Triangulations are ordered by apex
/// position on the base edge, then by left rank, then right rank.
pub fn unrank_triangulation(verts: &[Pos], index: u128, out: &mut Vec<(Pos, Pos)>) {
    let len = verts.len();
    if len <= 2 {
        return;
    }
    let mut idx = index;
    for k in 1..len - 1 {
        let left = catalan(k - 1).expect("left sub-polygon count fits");
        let right = catalan(len - k - 2).expect("right sub-polygon count fits");
        let count = left * right;
        if idx < count {
            if k != 1 {
                out.push((verts[0], verts[k]));
            }
            if k != len - 2 {
                out.push((verts[k], verts[len - 1]));
            }
            unrank_triangulation(&verts[..=k], idx / right, out);
            unrank_triangulation(&verts[k..], idx % right, out);
            return;
        }
        idx -= count;
    }
    panic!("triangulation index out of range");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let expect = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
        for (m, &c) in expect.iter().enumerate() {
            assert_eq!(catalan(m), Some(c));
        }
        // closed form C(m) = binom(2m, m) / (m + 1)
        let binom = |n: u128, k: u128| (1..=k).fold(1u128, |acc, i| acc * (n + 1 - i) / i);
        for m in 0..30u128 {
            assert_eq!(catalan(m as usize), Some(binom(2 * m, m) / (m + 1)));
        }
        assert!(catalan(66).is_some());
        assert!(catalan(100).is_none());
    }

    #[test]
    fn ln_matches_exact() {
        for m in [1usize, 5, 20, 40] {
            let exact = catalan(m).unwrap() as f64;
            assert!((ln_catalan(m) - exact.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn unrank_is_injective() {
        let verts: Vec<Pos> = (1..=7).collect();
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..catalan(5).unwrap() {
            let mut chords = Vec::new();
            unrank_triangulation(&verts, i, &mut chords);
            assert_eq!(chords.len(), 4);
            chords.iter_mut().for_each(|c| *c = crate::mop::canon(c.0, c.1));
            chords.sort();
            assert!(seen.insert(chords));
        }
    }
}
