//! Instance generators.
//!
//! The extremal family takes `k` disjoint copies of `K_{2d+1}` and one copy
//! of `K_{2d+3}`, each oriented along an Eulerian circuit, fixes an apex `v0`
//! in the larger clique and adds an arc from every vertex of every
//! `K_{2d+1}` copy to `v0`. It has minimum outdegree `d + 1`, minimum
//! semidegree `d`, and no bisection beats `k·d(d+1)/2 + (d+1)(d+2)/2` arcs in
//! the weaker direction.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::UndirectedGraph;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConstructionError {
    #[error("complete graph order must be odd and at least 3, got {0}")]
    InvalidOrder(usize),
    #[error("extremal family needs d >= 1 and k >= 1, got d = {d}, k = {k}")]
    InvalidExtremalParams { d: usize, k: usize },
    #[error("need n >= 2d + 1 = {needed} vertices for semidegree {d}, got {n}")]
    TooFewVertices { n: usize, d: usize, needed: usize },
    #[error("probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
}

/// Arcs of `K_t` on `offset..offset + t`, oriented along an Eulerian circuit
/// found by Hierholzer's method with neighbors scanned in index order.
fn eulerian_arcs(t: usize, offset: usize) -> Vec<(usize, usize)> {
    let mut used = vec![vec![false; t]; t];
    let mut next = vec![0usize; t];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(t * (t - 1) / 2 + 1);
    while let Some(&v) = stack.last() {
        while next[v] < t && (next[v] == v || used[v][next[v]]) {
            next[v] += 1;
        }
        if next[v] < t {
            let w = next[v];
            used[v][w] = true;
            used[w][v] = true;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    circuit
        .windows(2)
        .map(|w| (w[0] + offset, w[1] + offset))
        .collect()
}

/// `K_t` (t odd, t >= 3) oriented so every vertex has in- and outdegree `(t-1)/2`.
pub fn eulerian_complete_odd(t: usize) -> Result<Digraph, ConstructionError> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(ConstructionError::InvalidOrder(t));
    }
    Ok(Digraph::from_arcs(t, eulerian_arcs(t, 0)).expect("Euler circuit arcs are simple"))
}

/// Where each part of an extremal instance sits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtremalLayout {
    pub d: usize,
    pub k: usize,
    /// Vertex sets of the `K_{2d+1}` copies.
    pub copies: Vec<Vec<usize>>,
    /// Vertex set of the `K_{2d+3}` copy, apex first.
    pub big_clique: Vec<usize>,
    pub apex: usize,
}

impl ExtremalLayout {
    pub fn vertex_count(d: usize, k: usize) -> usize {
        k * (2 * d + 1) + 2 * d + 3
    }

    pub fn arc_count(d: usize, k: usize) -> usize {
        k * (d + 1) * (2 * d + 1) + (d + 1) * (2 * d + 3)
    }

    /// Largest weaker-direction cut any bipartition can reach.
    pub fn cut_upper_bound(d: usize, k: usize) -> usize {
        k * d * (d + 1) / 2 + (d + 1) * (d + 2) / 2
    }
}

#[derive(Clone, Debug)]
pub struct ExtremalFamily {
    pub digraph: Digraph,
    pub layout: ExtremalLayout,
}

pub fn extremal_family(d: usize, k: usize) -> Result<ExtremalFamily, ConstructionError> {
    if d == 0 || k == 0 {
        return Err(ConstructionError::InvalidExtremalParams { d, k });
    }
    let small = 2 * d + 1;
    let big = 2 * d + 3;
    let n = ExtremalLayout::vertex_count(d, k);
    let mut arcs = Vec::with_capacity(ExtremalLayout::arc_count(d, k));
    let mut copies = Vec::with_capacity(k);
    for c in 0..k {
        let offset = c * small;
        arcs.extend(eulerian_arcs(small, offset));
        copies.push((offset..offset + small).collect::<Vec<_>>());
    }
    let big_offset = k * small;
    arcs.extend(eulerian_arcs(big, big_offset));
    let apex = big_offset;
    arcs.extend((0..big_offset).map(|v| (v, apex)));

    let digraph = Digraph::from_arcs(n, arcs).expect("extremal construction is simple");
    Ok(ExtremalFamily {
        digraph,
        layout: ExtremalLayout {
            d,
            k,
            copies,
            big_clique: (big_offset..n).collect(),
            apex,
        },
    })
}

fn check_probability(p: f64) -> Result<(), ConstructionError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ConstructionError::InvalidProbability(p))
    }
}

/// Random digraph with every in- and outdegree at least `d`.
///
/// Each vertex first picks `d` random out-neighbors; vertices still short of
/// indegree `d` then receive arcs from random non-in-neighbors. Finally every
/// absent arc is added independently with probability `extra_arc_prob`.
pub fn random_min_semidegree(n: usize, d: usize, extra_arc_prob: f64, seed: u64) -> Result<Digraph, ConstructionError> {
    check_probability(extra_arc_prob)?;
    if n < d + 1 {
        return Err(ConstructionError::TooFewVertices { n, d, needed: d + 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs: HashSet<(usize, usize)> = HashSet::new();
    let mut in_degree = vec![0usize; n];

    for v in 0..n {
        for i in sample(&mut rng, n - 1, d) {
            let u = if i >= v { i + 1 } else { i };
            arcs.insert((v, u));
            in_degree[u] += 1;
        }
    }
    for v in 0..n {
        while in_degree[v] < d {
            let candidates: Vec<usize> = (0..n).filter(|&u| u != v && !arcs.contains(&(u, v))).collect();
            // in_degree[v] < d <= n - 1 leaves at least one candidate
            let u = candidates[rng.random_range(0..candidates.len())];
            arcs.insert((u, v));
            in_degree[v] += 1;
        }
    }
    if extra_arc_prob > 0.0 {
        for u in 0..n {
            for v in 0..n {
                if u != v && !arcs.contains(&(u, v)) && rng.random_bool(extra_arc_prob) {
                    arcs.insert((u, v));
                }
            }
        }
    }
    let mut list: Vec<(usize, usize)> = arcs.into_iter().collect();
    list.sort_unstable();
    Ok(Digraph::from_arcs(n, list).expect("generated arcs are simple"))
}

/// Orients every pair `{u, v}` by a fair coin.
pub fn random_tournament(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            arcs.push(if rng.random_bool(0.5) { (u, v) } else { (v, u) });
        }
    }
    Digraph::from_arcs(n, arcs).expect("tournament arcs are simple")
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<UndirectedGraph, ConstructionError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(UndirectedGraph::from_edges(n, edges).expect("generated edges are simple"))
}

/// Connected random graph: a random spanning tree plus `G(n, p)` edges.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Result<UndirectedGraph, ConstructionError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(UndirectedGraph::from_edges(n, edges).expect("generated edges are simple"))
}
