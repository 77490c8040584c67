//! Star decomposition of an instance and the exact expected cut of a
//! star-respecting sample, checked against the empirical mean.
//!
//! cargo run --example star_decomposition

use disect::constructions::random_min_semidegree;
use disect::engine::{expected_cut, unbalanced_sample};
use disect::{prepare_pipeline, EngineConfig};

fn main() {
    let d = random_min_semidegree(60, 2, 0.03, 11).unwrap();
    let prep = prepare_pipeline(&d, &EngineConfig::default()).unwrap();
    let dec = &prep.decomposition;
    println!("n = {}, m = {}, |X| = {}", d.n(), d.m(), prep.ctx.x.len());
    for star in dec.stars.iter().take(5) {
        println!("star center {} leaves {:?} edge {:?}", star.center, star.leaves, star.edge);
    }
    println!("{} stars, |U| = {}, tau* = {}", dec.stars.len(), dec.u.len(), prep.components.tau_star);

    let exact = expected_cut(&d, &prep.ctx, dec);
    let samples = 20_000;
    let (mut s12, mut s21) = (0usize, 0usize);
    for t in 0..samples {
        let (e12, e21) = unbalanced_sample(&d, &prep.ctx, dec, 5, t);
        s12 += e12;
        s21 += e21;
    }
    println!("E[e12] = {:.2}, sample mean {:.2}", exact.e12(), s12 as f64 / samples as f64);
    println!("E[e21] = {:.2}, sample mean {:.2}", exact.e21(), s21 as f64 / samples as f64);
}
