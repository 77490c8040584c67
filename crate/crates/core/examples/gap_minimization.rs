//! Splits signed imbalances into two sides with the smallest gap.
//!
//! cargo run --example gap_minimization

use disect::engine::{min_gap_partition, min_gap_partition_with, prepare_split, GapBudget};
use disect::oracle::exact_min_gap;
use disect::Digraph;

fn main() {
    let splus = [17, -9, 4, 12, -30, 8, 3];
    let part = min_gap_partition(&splus);
    println!("s+ = {splus:?}");
    println!("table: x1 {:?}, x2 {:?}, theta {} ({:?})", part.x1, part.x2, part.theta, part.mode);
    let mitm = min_gap_partition_with(&splus, &GapBudget { max_sum: 0, ..GapBudget::default() });
    println!("meet in the middle: theta {}", mitm.theta);
    let local = min_gap_partition_with(&splus, &GapBudget { max_sum: 0, max_split_len: 0, ..GapBudget::default() });
    println!("local descent: theta {} ({:?})", local.theta, local.mode);
    println!("oracle: theta {}", exact_min_gap(&splus).unwrap().value);

    // two hubs in a small digraph
    let mut arcs: Vec<(usize, usize)> = (2..12).map(|v| (0, v)).collect();
    arcs.extend((2..12).map(|v| (v, 1)));
    arcs.extend((2..12).map(|v| (v, if v == 11 { 2 } else { v + 1 })));
    let d = Digraph::from_arcs(12, arcs).unwrap();
    let mut ctx = prepare_split(&d, None);
    ctx.minimize_gap(&GapBudget::default());
    println!(
        "digraph: threshold {}, X = {:?}, s+ = {:?}, X1 = {:?}, X2 = {:?}, theta = {}",
        ctx.threshold, ctx.x, ctx.splus, ctx.x1, ctx.x2, ctx.theta
    );
}
