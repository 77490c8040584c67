use std::collections::BTreeSet;

use disect::engine::{
    min_gap_partition, min_gap_partition_with, prepare_split, star_decomposition, DecompositionError, GapBudget, GapMode,
};
use disect::matching::{maximum_matching, maximum_matching_size};
use disect::oracle::{exact_best_bisection, exact_matching_profile, exact_min_gap, exact_tight_check};
use disect::tight::is_tight;
use disect::{optimal_bisect, parse_digraph, Digraph, EngineConfig, UndirectedGraph};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * n).prop_map(move |pairs| {
            let arcs: BTreeSet<(usize, usize)> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

fn digraph_with_sides(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<bool>)> {
    digraph(max_n).prop_flat_map(|d| {
        let n = d.n();
        (Just(d), proptest::collection::vec(any::<bool>(), n))
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    digraph(max_n).prop_map(|d| d.underlying_graph())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cut_counts_partition_the_arcs((d, sides) in digraph_with_sides(14)) {
        let stats = d.cut_stats_by_side(&sides);
        prop_assert_eq!(stats.e12 + stats.e21 + stats.internal1 + stats.internal2, d.m());
        let flipped: Vec<bool> = sides.iter().map(|s| !s).collect();
        prop_assert_eq!(d.cut_stats_by_side(&flipped), stats.swapped());
    }

    #[test]
    fn degree_sums_equal_arc_count(d in digraph(16)) {
        let out: usize = (0..d.n()).map(|v| d.out_degree(v)).sum();
        let inn: usize = (0..d.n()).map(|v| d.in_degree(v)).sum();
        prop_assert_eq!(out, d.m());
        prop_assert_eq!(inn, d.m());
    }

    #[test]
    fn underlying_graph_collapses_antiparallel_pairs(d in digraph(16)) {
        let g = d.underlying_graph();
        let e = g.edge_count();
        prop_assert!(2 * e >= d.m() && e <= d.m());
        prop_assert_eq!(e, d.m() - d.antiparallel_pair_count());
    }

    #[test]
    fn arc_list_round_trips(d in digraph(16)) {
        let text = d.to_arc_list();
        prop_assert_eq!(&parse_digraph(&text).unwrap(), &d);
        prop_assert_eq!(&d.to_string().parse::<Digraph>().unwrap(), &d);
    }

    #[test]
    fn gap_solvers_agree_with_the_oracle(splus in proptest::collection::vec(-40i64..40, 0..=16)) {
        let oracle = exact_min_gap(&splus).unwrap().value;
        let table = min_gap_partition(&splus);
        prop_assert_eq!(table.mode, GapMode::Exact);
        prop_assert_eq!(table.theta, oracle);
        let mitm = min_gap_partition_with(&splus, &GapBudget { max_sum: 0, ..GapBudget::default() });
        prop_assert_eq!(mitm.mode, GapMode::Exact);
        prop_assert_eq!(mitm.theta, oracle);
        let local = min_gap_partition_with(&splus, &GapBudget { max_sum: 0, max_split_len: 0, ..GapBudget::default() });
        prop_assert!(local.theta >= oracle);
        for part in [&table, &mitm, &local] {
            let sum = |idx: &[usize]| idx.iter().map(|&i| splus[i]).sum::<i64>();
            prop_assert_eq!(sum(&part.x1) - sum(&part.x2), part.theta);
            prop_assert_eq!(part.x1.len() + part.x2.len(), splus.len());
        }
    }

    #[test]
    fn split_theta_is_nonnegative_and_minimal(d in digraph(14), threshold in 1usize..8) {
        let mut ctx = prepare_split(&d, Some(threshold));
        ctx.minimize_gap(&GapBudget::default());
        prop_assert!(ctx.theta >= 0);
        if ctx.x.len() <= 16 {
            prop_assert_eq!(ctx.theta, exact_min_gap(&ctx.splus).unwrap().value);
        }
    }

    #[test]
    fn blossom_matches_the_oracle(g in graph(10)) {
        let profile = exact_matching_profile(&g, None).unwrap().value;
        prop_assert_eq!(maximum_matching_size(&g), profile.size);
        prop_assert_eq!(maximum_matching(&g).size(), profile.size);
    }

    #[test]
    fn tightness_matches_the_oracle_on_components(g in graph(9)) {
        for component in g.connected_components() {
            let sub = g.induced(&component);
            prop_assert_eq!(is_tight(&sub).unwrap(), exact_tight_check(&sub).unwrap());
        }
    }

    #[test]
    fn star_decompositions_are_never_malformed(g in graph(14)) {
        let m = maximum_matching(&g);
        match star_decomposition(&g, &[], &m) {
            Ok(_) | Err(DecompositionError::RemainderTooLarge { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_bisections_are_balanced_and_dominated(d in digraph(11), seed in 0u64..1000) {
        let config = EngineConfig { trials: Some(300), seed, ..EngineConfig::default() };
        let outcome = optimal_bisect(&d, &config).unwrap();
        let b = &outcome.bisection;
        prop_assert!(b.is_balanced());
        prop_assert_eq!(b.part1.len() + b.part2.len(), d.n());
        prop_assert_eq!(d.cut_sizes(&b.part1, &b.part2).unwrap(), b.stats);
        prop_assert!(b.stats.min_dir <= exact_best_bisection(&d).unwrap().value);
        prop_assert!(outcome.certificate.failed_assertions().is_empty());
    }
}
