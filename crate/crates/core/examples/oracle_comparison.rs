//! Engine against exhaustive search on small random digraphs, with the
//! default degree threshold and with one high enough to leave `X` empty.
//! On inputs this small the default threshold puts most vertices in `X`,
//! whose sides are chosen for balance of imbalances rather than cut size.
//!
//! cargo run --example oracle_comparison

use disect::constructions::random_min_semidegree;
use disect::oracle::exact_best_bisection;
use disect::{optimal_bisect, EngineConfig};

fn main() {
    let (mut equal, mut equal_without_x) = (0, 0);
    let count = 30;
    for seed in 0..count {
        let n = 6 + (seed as usize % 7);
        let d = random_min_semidegree(n, 1, 0.25, seed).unwrap();
        let run = |threshold| {
            let config = EngineConfig {
                trials: Some(2000),
                seed,
                threshold,
                ..EngineConfig::default()
            };
            optimal_bisect(&d, &config).unwrap().bisection.stats.min_dir
        };
        let (engine, without_x) = (run(None), run(Some(2 * n)));
        let oracle = exact_best_bisection(&d).unwrap();
        equal += usize::from(engine == oracle.value);
        equal_without_x += usize::from(without_x == oracle.value);
        println!(
            "seed {seed:2}: n = {n:2}, m = {:2}, engine {engine} / {without_x} without X, optimum {} ({} bisections)",
            d.m(),
            oracle.value,
            oracle.explored
        );
    }
    println!("engine optimal on {equal}/{count}, {equal_without_x}/{count} without X");
}
