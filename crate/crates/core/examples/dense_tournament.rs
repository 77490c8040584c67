//! Uniform random bisections of a tournament.
//!
//! cargo run --example dense_tournament -- [n] [trials]

use disect::constructions::random_tournament;
use disect::engine::dense_random_bisection;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let n = args.first().copied().unwrap_or(500);
    let trials = args.get(1).copied().unwrap_or(2000);
    let t = random_tournament(n, 8);
    let eps = 0.2;
    let (b, warnings) = dense_random_bisection(&t, eps, trials, 1).unwrap();
    let m = t.m() as f64;
    println!("n = {n}, m = {}, max degree {}", t.m(), t.max_degree());
    println!(
        "e12 = {}, e21 = {}, minDir / m = {:.4}, floor 1/4 - eps = {:.2}",
        b.stats.e12,
        b.stats.e21,
        b.stats.min_dir as f64 / m,
        0.25 - eps
    );
    for w in warnings {
        println!("warning: {w}");
    }
}
