//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line;
//! run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use disect::constructions::{eulerian_complete_odd, extremal_family, random_connected_graph, random_min_semidegree, random_tournament, ExtremalLayout};
use disect::engine::{
    dense_random_bisection, expected_cut, unbalanced_sample, verify_claims, GapMode, RecordKind, RecordStatus,
};
use disect::matching::{maximum_matching_in, maximum_matching_size, refine_matching};
use disect::engine::stars::tight_component_count;
use disect::oracle::{exact_best_bisection, exact_matching_profile, exact_tight_check};
use disect::tight::is_tight;
use disect::{optimal_bisect, prepare_pipeline, Digraph, EngineConfig, ResultDocument, UndirectedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} - {detail}");
}

fn random_digraph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// Random digraph with minimum semidegree `d` plus a few hub vertices with
/// lopsided in/out degrees, so the high-degree set is usually non-empty.
fn hub_instance(n: usize, d: usize, hubs: usize, extra: f64, seed: u64) -> Digraph {
    let base = random_min_semidegree(n, d, extra, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut arcs: BTreeSet<(usize, usize)> = base.arcs().iter().copied().collect();
    for h in 0..hubs.min(n) {
        let out_p = rng.random_range(0.2..0.9);
        let in_p = rng.random_range(0.02..0.5);
        for v in 0..n {
            if v == h {
                continue;
            }
            if rng.random_bool(out_p) {
                arcs.insert((h, v));
            }
            if rng.random_bool(in_p) {
                arcs.insert((v, h));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// One hub with nearly all out-arcs over a sparse base, which forces
/// `theta > m/(2d+1)`.
fn lopsided_instance(n: usize, d: usize, seed: u64) -> Digraph {
    let base = random_min_semidegree(n, d, 0.0, seed).unwrap();
    let mut arcs: BTreeSet<(usize, usize)> = base.arcs().iter().copied().collect();
    arcs.extend((1..n).map(|v| (0, v)));
    arcs.retain(|&(u, v)| v != 0 || u < 1 + d);
    arcs.extend((1..=d).map(|u| (u, 0)));
    Digraph::from_arcs(n, arcs).unwrap()
}

#[test]
fn criterion_01_bound_on_extremal_family() {
    let config = EngineConfig {
        epsilon: 0.02,
        seed: 1,
        ..EngineConfig::default()
    };
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut worst_margin = f64::INFINITY;
    for d in 1..=3 {
        for k in [10, 30, 100] {
            let family = extremal_family(d, k).unwrap();
            let start = Instant::now();
            let outcome = optimal_bisect(&family.digraph, &config).unwrap();
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            let target = d as f64 / (2.0 * (2 * d + 1) as f64) - 0.02;
            let ratio = outcome.bisection.stats.min_dir as f64 / family.digraph.m() as f64;
            worst_margin = worst_margin.min(ratio - target);
            if ratio < target || elapsed >= Duration::from_secs(10) {
                failures.push(format!("d={d} k={k}: ratio {ratio:.4} target {target:.4} in {elapsed:?}"));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        1,
        pass,
        &format!("9 instances, worst margin {worst_margin:.4}, slowest {slowest:.2?} {failures:?}"),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_02_extremal_upper_bound() {
    let config = EngineConfig {
        epsilon: 0.02,
        seed: 1,
        ..EngineConfig::default()
    };
    let mut failures = Vec::new();
    let mut at_bound = 0;
    for d in 1..=3 {
        for k in [10, 30, 100] {
            let family = extremal_family(d, k).unwrap();
            let outcome = optimal_bisect(&family.digraph, &config).unwrap();
            let bound = ExtremalLayout::cut_upper_bound(d, k);
            let min_dir = outcome.bisection.stats.min_dir;
            at_bound += usize::from(min_dir == bound);
            if min_dir > bound {
                failures.push(format!("d={d} k={k}: minDir {min_dir} > {bound}"));
            }
        }
    }
    let pass = failures.is_empty();
    report(2, pass, &format!("9 instances, {at_bound} reach the bound exactly {failures:?}"));
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_03_oracle_dominance() {
    let mut violations = Vec::new();
    let (mut equal, mut equal_without_x) = (0, 0);
    for seed in 1..=200u64 {
        let n = 2 + (seed as usize % 11);
        let p = [0.1, 0.25, 0.4][seed as usize % 3];
        let d = random_min_semidegree(n, 1, p, seed).unwrap();
        assert!(d.min_semidegree() >= 1);
        let oracle = exact_best_bisection(&d).unwrap().value;
        // default threshold, then one above every degree so X is empty
        for threshold in [None, Some(2 * n)] {
            let config = EngineConfig {
                trials: Some(2000),
                seed,
                threshold,
                ..EngineConfig::default()
            };
            let engine = optimal_bisect(&d, &config).unwrap().bisection.stats.min_dir;
            if engine > oracle {
                violations.push(seed);
            }
            if engine == oracle {
                *if threshold.is_none() { &mut equal } else { &mut equal_without_x } += 1;
            }
        }
    }
    let rate = equal as f64 / 200.0;
    let pass = violations.is_empty();
    let quality = if rate >= 0.6 { "meets" } else { "below" };
    report(
        3,
        pass,
        &format!(
            "{} dominance violations; equality on {equal}/200 ({:.1}%), {quality} the 60% floor (report only); with X empty {equal_without_x}/200",
            violations.len(),
            100.0 * rate
        ),
    );
    assert!(pass, "dominance violated for seeds {violations:?}");
}

#[test]
fn criterion_04_expected_cut_matches_samples() {
    const SAMPLES: u64 = 10_000;
    let mut failures = Vec::new();
    let mut worst_z: f64 = 0.0;
    for i in 0..20u64 {
        let n = 30 + 5 * i as usize;
        let d = 1 + (i as usize % 3);
        let digraph = hub_instance(n, d, (i % 3) as usize, 0.02, 500 + i);
        let config = EngineConfig {
            seed: i,
            ..EngineConfig::default()
        };
        let prep = prepare_pipeline(&digraph, &config).unwrap();
        let expected = expected_cut(&digraph, &prep.ctx, &prep.decomposition);
        let (mut s12, mut q12, mut s21, mut q21) = (0f64, 0f64, 0f64, 0f64);
        for t in 0..SAMPLES {
            let (e12, e21) = unbalanced_sample(&digraph, &prep.ctx, &prep.decomposition, 1000 + i, t);
            s12 += e12 as f64;
            q12 += (e12 * e12) as f64;
            s21 += e21 as f64;
            q21 += (e21 * e21) as f64;
        }
        let count = SAMPLES as f64;
        for (label, sum, sq, exact) in [("e12", s12, q12, expected.e12()), ("e21", s21, q21, expected.e21())] {
            let mean = sum / count;
            let var = (sq - sum * sum / count) / (count - 1.0);
            let se = (var.max(0.0) / count).sqrt();
            let diff = (mean - exact).abs();
            let ok = if se == 0.0 { diff < 1e-9 } else { diff <= 3.0 * se };
            if se > 0.0 {
                worst_z = worst_z.max(diff / se);
            }
            if !ok {
                failures.push(format!("instance {i} {label}: mean {mean:.3} expected {exact:.3} se {se:.4}"));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        4,
        pass,
        &format!("20 instances x 2 directions, 10^4 samples each, worst |z| = {worst_z:.2} {failures:?}"),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_05_matching_oracle() {
    let mut size_mismatch = Vec::new();
    let mut regressions = Vec::new();
    let (mut refined_total, mut refined_optimal) = (0, 0);
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed as usize % 12);
        let p = [0.12, 0.2, 0.3, 0.45][seed as usize % 4];
        let d = random_digraph(n, p, &mut rng);
        let g = d.underlying_graph();
        let oracle = exact_matching_profile(&g, Some(&d)).unwrap().value;
        let start = maximum_matching_in(&g, Some(&d)).unwrap();
        if maximum_matching_size(&g) != oracle.size || start.size() != oracle.size {
            size_mismatch.push(seed);
        }
        if n <= 10 {
            let refined = refine_matching(&g, Some(&d), &start).unwrap();
            refined_total += 1;
            let (size, free, special) = refined.objective();
            if size < oracle.size || free < start.free.len() {
                regressions.push(seed);
            }
            refined_optimal += usize::from((size, free, special) == (oracle.size, oracle.free, oracle.special));
        }
    }
    let rate = refined_optimal as f64 / refined_total as f64;
    let pass = size_mismatch.is_empty() && regressions.is_empty();
    let quality = if rate >= 0.9 { "meets" } else { "below" };
    report(
        5,
        pass,
        &format!(
            "size agrees on {}/300; refinement optimal on {refined_optimal}/{refined_total} ({:.1}%), {quality} the 90% floor (report only); {} regressions",
            300 - size_mismatch.len(),
            100.0 * rate,
            regressions.len()
        ),
    );
    assert!(size_mismatch.is_empty(), "size mismatch for seeds {size_mismatch:?}");
    assert!(regressions.is_empty(), "refinement regressed for seeds {regressions:?}");
}

/// Every connected graph on `n <= 7` vertices up to isomorphism: a labeled
/// graph is visited only if its degrees are non-increasing in the label,
/// which every isomorphism class admits.
fn sorted_degree_graphs(n: usize, mut visit: impl FnMut(&UndirectedGraph)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut degree = vec![0usize; n];
    for mask in 0u32..(1u32 << pairs.len()) {
        degree.fill(0);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        if degree.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        let g = UndirectedGraph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            visit(&g);
        }
    }
}

#[test]
fn criterion_06_tight_oracle_and_count_identity() {
    let mut disagreements = 0;
    let mut exhaustive = 0;
    let mut tight_found = 0;
    for n in 1..=7 {
        sorted_degree_graphs(n, |g| {
            exhaustive += 1;
            let fast = is_tight(g).unwrap();
            tight_found += usize::from(fast);
            if fast != exact_tight_check(g).unwrap() {
                disagreements += 1;
            }
        });
    }
    let mut random = 0;
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 10);
        let p = [0.15, 0.3, 0.5][seed as usize % 3];
        let g = random_connected_graph(n, p, seed).unwrap();
        random += 1;
        if is_tight(&g).unwrap() != exact_tight_check(&g).unwrap() {
            disagreements += 1;
        }
    }

    let (mut identity_checked, mut identity_failed) = (0, 0);
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let n = 1 + (seed as usize % 10);
        let d = random_digraph(n, [0.1, 0.2, 0.3][seed as usize % 3], &mut rng);
        let g = d.underlying_graph();
        let oracle = exact_matching_profile(&g, Some(&d)).unwrap().value;
        let start = maximum_matching_in(&g, Some(&d)).unwrap();
        let refined = refine_matching(&g, Some(&d), &start).unwrap();
        if (refined.size(), refined.free.len()) == (oracle.size, oracle.free) {
            identity_checked += 1;
            if refined.nonfree.len() != tight_component_count(&g) {
                identity_failed += 1;
            }
        }
    }
    let pass = disagreements == 0 && identity_failed == 0;
    report(
        6,
        pass,
        &format!(
            "{exhaustive} small connected graphs ({tight_found} tight) and {random} random ones, {disagreements} disagreements; count identity held on {}/{identity_checked}",
            identity_checked - identity_failed
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_certificate_assertions() {
    let mut failures = Vec::new();
    let mut big_cases = 0;
    let mut nonempty_x = 0;
    for i in 0..1000u64 {
        let n = 10 + (i as usize * 37) % 191;
        let d = 1 + (i as usize % 3);
        let hubs = (i % 5) as usize;
        let extra = [0.0, 0.005, 0.02][(i / 5) as usize % 3];
        let digraph = if i % 4 == 3 {
            lopsided_instance(n, d, i)
        } else {
            hub_instance(n, d, hubs, extra, i)
        };
        let config = EngineConfig {
            seed: i,
            refine_restarts: 4,
            ..EngineConfig::default()
        };
        let prep = prepare_pipeline(&digraph, &config).unwrap();
        assert_eq!(prep.ctx.gap_mode, GapMode::Exact);
        nonempty_x += usize::from(!prep.ctx.x.is_empty());
        big_cases += usize::from(prep.ctx.theta * (2 * prep.ctx.d as i64 + 1) > prep.ctx.m as i64);
        for record in verify_claims(&prep.ctx) {
            if record.kind == RecordKind::Assertion && record.status == RecordStatus::Fail {
                failures.push(format!("instance {i}: {}", record.name));
            }
        }
    }
    let pass = failures.is_empty();
    report(
        7,
        pass,
        &format!(
            "1000 instances ({nonempty_x} with X non-empty, {big_cases} with theta > m/(2d+1)), {} failed assertions",
            failures.len()
        ),
    );
    assert!(pass, "{:?}", &failures[..failures.len().min(10)]);
}

#[test]
fn criterion_08_dense_tournament() {
    let t = random_tournament(500, 8);
    let eps = 0.2;
    let hypothesis = t.max_degree() as f64 <= eps * eps * t.m() as f64 / 8.0;
    let (bisection, warnings) = dense_random_bisection(&t, eps, 2000, 1).unwrap();
    let min_dir = bisection.stats.min_dir;
    let floor = (0.25 - eps) * t.m() as f64;
    let pass = hypothesis && warnings.is_empty() && bisection.is_balanced() && min_dir as f64 >= floor;
    report(
        8,
        pass,
        &format!("m = {}, minDir = {min_dir}, floor {floor:.1}, max degree hypothesis holds: {hypothesis}", t.m()),
    );
    assert!(pass);
}

#[test]
fn criterion_09_generator_degrees() {
    let mut failures = Vec::new();
    for t in [3, 5, 7, 9] {
        let d = eulerian_complete_odd(t).unwrap();
        if (0..t).any(|v| d.out_degree(v) != (t - 1) / 2 || d.in_degree(v) != (t - 1) / 2) {
            failures.push(format!("eulerian t={t}"));
        }
    }
    for d in 1..=3 {
        for k in 1..=10 {
            let g = extremal_family(d, k).unwrap().digraph;
            let min_out = (0..g.n()).map(|v| g.out_degree(v)).min().unwrap();
            if min_out != d + 1 || g.min_semidegree() != d {
                failures.push(format!("extremal d={d} k={k}: min out {min_out}, semidegree {}", g.min_semidegree()));
            }
        }
    }
    let pass = failures.is_empty();
    report(9, pass, &format!("4 Eulerian and 30 extremal digraphs checked {failures:?}"));
    assert!(pass);
}

#[test]
fn criterion_10_determinism() {
    let inputs = [
        extremal_family(2, 10).unwrap().digraph,
        hub_instance(120, 2, 3, 0.02, 77),
        random_tournament(60, 5),
    ];
    let mut mismatches = 0;
    for d in &inputs {
        let run = |threads| {
            let config = EngineConfig {
                seed: 9,
                trials: Some(5000),
                threads: Some(threads),
                ..EngineConfig::default()
            };
            ResultDocument::new(d, &optimal_bisect(d, &config).unwrap()).to_json()
        };
        let first = run(1);
        if first != run(1) || first != run(3) {
            mismatches += 1;
        }
    }
    let pass = mismatches == 0;
    report(10, pass, &format!("3 inputs, repeated runs and thread counts 1 and 3, {mismatches} mismatches"));
    assert!(pass);
}
