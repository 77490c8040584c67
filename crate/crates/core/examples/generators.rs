//! Builds each generator family and prints its basic shape.
//!
//! cargo run --example generators

use disect::constructions::{eulerian_complete_odd, extremal_family, random_min_semidegree, random_tournament, ExtremalLayout};

fn main() {
    for t in [3, 5, 7, 9] {
        let k = eulerian_complete_odd(t).unwrap();
        println!("Eulerian K_{t}: m = {}, every vertex has in = out = {}", k.m(), k.out_degree(0));
    }

    let (d, k) = (2, 4);
    let family = extremal_family(d, k).unwrap();
    let g = &family.digraph;
    let min_out = (0..g.n()).map(|v| g.out_degree(v)).min().unwrap();
    println!(
        "extremal d = {d}, k = {k}: n = {}, m = {}, min outdegree {min_out}, min semidegree {}, apex {}",
        g.n(),
        g.m(),
        g.min_semidegree(),
        family.layout.apex
    );
    println!("  no bisection has minDir above {}", ExtremalLayout::cut_upper_bound(d, k));

    let r = random_min_semidegree(40, 3, 0.05, 7).unwrap();
    println!("random: n = {}, m = {}, min semidegree {}", r.n(), r.m(), r.min_semidegree());

    let t = random_tournament(11, 7);
    println!("tournament: n = {}, m = {}, antiparallel pairs {}", t.n(), t.m(), t.antiparallel_pair_count());
    print!("{}", eulerian_complete_odd(3).unwrap());
}
