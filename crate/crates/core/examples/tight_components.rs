//! Classifies the components of a digraph's underlying graph.
//!
//! cargo run --example tight_components

use disect::tight::{essential_components, is_factor_critical, is_tight};
use disect::{Digraph, UndirectedGraph};

fn main() {
    let c5 = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    println!("C5: factor-critical {}, tight {}", is_factor_critical(&c5).unwrap(), is_tight(&c5).unwrap());
    let bowtie = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
    println!("bowtie: factor-critical {}, tight {}", is_factor_critical(&bowtie).unwrap(), is_tight(&bowtie).unwrap());

    // a directed triangle, a triangle with an antiparallel pair, and a path
    let arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (4, 3), (6, 7), (7, 8)];
    let d = Digraph::from_arcs(9, arcs).unwrap();
    let report = essential_components(&d);
    for (i, comp) in report.components.iter().enumerate() {
        println!(
            "component {comp:?}: tight {}, antiparallel {}, essential {}",
            report.is_tight[i], report.has_antiparallel[i], report.is_essential[i]
        );
    }
    println!("tau* = {}, sigma = {}, tau = {}", report.tau_star, report.sigma, report.tau);
}
