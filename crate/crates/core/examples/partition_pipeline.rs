//! Runs the full engine on an extremal instance and prints the certificate.
//!
//! cargo run --example partition_pipeline -- [d] [k] [seed]

use std::time::Instant;

use disect::constructions::extremal_family;
use disect::engine::{optimal_bisect, EngineConfig, RecordStatus};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let d = args.first().copied().unwrap_or(2) as usize;
    let k = args.get(1).copied().unwrap_or(30) as usize;
    let seed = args.get(2).copied().unwrap_or(1);

    let family = extremal_family(d, k).expect("d, k >= 1");
    let digraph = family.digraph;
    let config = EngineConfig {
        seed,
        ..EngineConfig::default()
    };
    let start = Instant::now();
    let outcome = optimal_bisect(&digraph, &config).expect("engine run");
    let elapsed = start.elapsed();

    let stats = outcome.bisection.stats;
    let cert = &outcome.certificate;
    println!("n = {}, m = {}, d = {}", digraph.n(), digraph.m(), cert.d);
    println!(
        "e12 = {}, e21 = {}, minDir = {}, ratio = {:.4} (target {:.4})",
        stats.e12, stats.e21, stats.min_dir, cert.achieved_ratio_original, cert.target_ratio
    );
    if let Some(split) = &cert.split {
        println!(
            "|X| = {}, theta = {}, tau = {}, alpha = {}, beta = {}, gap mode {:?}",
            split.x.len(),
            split.theta,
            split.tau,
            split.alpha,
            split.beta,
            split.gap_mode
        );
    }
    for r in &cert.records {
        let status = match r.status {
            RecordStatus::Pass => "pass",
            RecordStatus::Fail => "FAIL",
            RecordStatus::NotApplicable => "n/a",
        };
        println!("  [{status:>4}] {}: {} {} {}", r.name, r.lhs, r.relation, r.rhs);
    }
    for w in &cert.warnings {
        println!("  warning: {w}");
    }
    println!("{} trials in {:.2?}", cert.trials, elapsed);
}
