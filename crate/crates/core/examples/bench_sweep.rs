//! Ratio of minDir to m against d/(2(2d+1)) on the extremal family.
//!
//! cargo run --example bench_sweep

use disect::constructions::extremal_family;
use disect::{optimal_bisect, EngineConfig};

fn main() {
    let config = EngineConfig {
        trials: Some(20_000),
        seed: 1,
        ..EngineConfig::default()
    };
    println!("{:>2} {:>4} {:>6} {:>7} {:>8} {:>7}", "d", "k", "m", "minDir", "ratio", "bound");
    for d in 1..=3 {
        for k in [5, 20, 80] {
            let g = extremal_family(d, k).unwrap().digraph;
            let out = optimal_bisect(&g, &config).unwrap();
            let ratio = out.bisection.stats.min_dir as f64 / g.m() as f64;
            let bound = d as f64 / (2.0 * (2 * d + 1) as f64);
            println!("{d:>2} {k:>4} {:>6} {:>7} {ratio:>8.4} {bound:>7.4}", g.m(), out.bisection.stats.min_dir);
        }
    }
}
