use proptest::prelude::*;

use outerdom::bounds::{bounds_report, essential_bound, essential_pair_count};
use outerdom::domination::{gamma_exact_bb_with_limit, gamma_mop_dp, is_dominating, mop_domination_number};
use outerdom::generators::{random_ht, random_mop};
use outerdom::hamiltonian::{embed_with_cycle, Side};
use outerdom::mop::MopGraph;
use outerdom::reductions::{dominate_mop, find_applicable, verify_trace};

fn mop() -> impl Strategy<Value = MopGraph> {
    (3usize..40, any::<u64>()).prop_map(|(n, seed)| random_mop(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_count_and_dual(g in mop()) {
        let n = g.n();
        prop_assert_eq!(g.edge_count(), 2 * n - 3);
        let dual = g.inner_dual();
        prop_assert!(dual.is_tree());
        prop_assert_eq!(g.is_striped(), dual.is_path());
        if n >= 4 {
            prop_assert!(g.degree_two_vertices().len() >= 2);
        }
    }

    #[test]
    fn relabeling_invariance(g in mop(), shift in 0usize..40) {
        let r = g.rotate(shift % g.n());
        let f = g.reflect();
        let k = essential_pair_count(&g);
        prop_assert_eq!(essential_pair_count(&r), k);
        prop_assert_eq!(essential_pair_count(&f), k);
        let gamma = mop_domination_number(&g);
        prop_assert_eq!(mop_domination_number(&r), gamma);
        prop_assert_eq!(mop_domination_number(&f), gamma);
    }

    #[test]
    fn solvers_agree(g in mop()) {
        let dp = gamma_mop_dp(&g);
        let simple = g.to_simple_graph();
        prop_assert!(is_dominating(&simple, &dp.vertices).unwrap());
        prop_assert_eq!(dp.size, gamma_exact_bb_with_limit(&simple, 64).unwrap().size);
    }

    #[test]
    fn bounds_hold(g in mop()) {
        let rep = bounds_report(&g, true);
        prop_assert_eq!(rep.satisfies_thm11, Some(true));
        prop_assert_eq!(rep.satisfies_thm12, Some(true));
        prop_assert!(rep.k <= rep.degree_two.len());
    }

    #[test]
    fn engine_traces_verify(g in mop()) {
        let trace = dominate_mop(&g).unwrap();
        prop_assert!(trace.anomalies.is_empty());
        prop_assert!(trace.set.size <= essential_bound(g.n(), essential_pair_count(&g)));
        prop_assert!(verify_trace(&trace).is_ok());
        let text = serde_json::to_string(&trace).unwrap();
        let back: outerdom::ReductionTrace = serde_json::from_str(&text).unwrap();
        prop_assert!(verify_trace(&back).is_ok());
    }

    #[test]
    fn basic_reductions_shrink(g in mop()) {
        for step in find_applicable(&g) {
            let c = step.certificate();
            prop_assert!(c.holds());
            prop_assert!(c.n_after + c.k_after + 4 <= c.n_before + c.k_before);
        }
    }

    #[test]
    fn json_round_trip(g in mop()) {
        let text = serde_json::to_string(&g).unwrap();
        let back: MopGraph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn triangulation_structure(n in 5usize..30, seed in any::<u64>()) {
        let t = random_ht(n, seed);
        let full = t.full_graph();
        prop_assert_eq!(full.edge_count(), 3 * n - 6);
        for side in [Side::Interior, Side::Exterior] {
            prop_assert!(t.side_report(side).bijection);
        }
        let k = t.two_chord_graph();
        prop_assert!(k.graph.is_spanning_subgraph_of(&full));
        let cycle: Vec<usize> = (1..=n).collect();
        let e = embed_with_cycle(&full, &cycle).unwrap();
        prop_assert!(e == t || e == t.swapped());
    }
}
