//! Maximum matching of a small graph, before and after refinement.
//!
//! cargo run --example blossom_matching

use disect::matching::{maximum_matching_in, refine_matching};
use disect::oracle::exact_matching_profile;
use disect::Digraph;

fn main() {
    // two triangles joined through a path, with one antiparallel pair
    let arcs = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (1, 0)];
    let d = Digraph::from_arcs(7, arcs).unwrap();
    let g = d.underlying_graph();

    let start = maximum_matching_in(&g, Some(&d)).unwrap();
    println!("blossom: edges {:?}", start.edges);
    println!("  free {:?}, non-free {:?}, special {:?}", start.free, start.nonfree, start.special);

    let refined = refine_matching(&g, Some(&d), &start).unwrap();
    println!("refined: edges {:?}", refined.edges);
    println!("  (size, #free, #special) = {:?}", refined.objective());

    let oracle = exact_matching_profile(&g, Some(&d)).unwrap();
    println!("exhaustive optimum {:?} after {} matchings", oracle.value, oracle.explored);
}
