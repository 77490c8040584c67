//! Tight and essential components.
//!
//! A connected graph `T` is *tight* when (i) `T - v` has a perfect matching
//! for every vertex `v`, and (ii) no perfect matching of any `T - v` contains
//! an edge with exactly one end adjacent to `v`. A component of a digraph is
//! tight when its underlying component is, and *essential* when it is tight
//! and contains no antiparallel pair.
//!
//! Condition (ii) is checked edge by edge: an edge `xy` with exactly one end
//! adjacent to `v` lies in some perfect matching of `T - v` iff
//! `T - {v, x, y}` has a perfect matching. Both conditions start from a
//! perfect matching of `T - v` and need at most one augmenting-path search
//! per test.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::UndirectedGraph;
use crate::matching::{BlossomSolver, NONE};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TightError {
    #[error("graph is not connected")]
    Disconnected,
}

fn require_connected(g: &UndirectedGraph) -> Result<(), TightError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(TightError::Disconnected)
    }
}

/// For each vertex `v`, the mate array of a perfect matching of `g - v`
/// (with `v` itself unmatched), or `None` if some `g - v` has none.
fn vertex_deleted_perfect_matchings(g: &UndirectedGraph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    if n.is_multiple_of(2) {
        return None;
    }
    let mut solver = BlossomSolver::new(g);
    solver.greedy();
    if 2 * solver.solve() + 1 != n {
        return None;
    }
    let base = solver.into_mate();
    let exposed = base.iter().position(|&m| m == NONE)?;

    let mut witnesses = Vec::with_capacity(n);
    for v in 0..n {
        if v == exposed {
            witnesses.push(base.clone());
            continue;
        }
        let mut mate = base.clone();
        let partner = mate[v];
        mate[v] = NONE;
        mate[partner] = NONE;
        let mut solver = BlossomSolver::new(g);
        solver.set_mate(&mate);
        solver.block(v);
        if !solver.augment_from(partner) {
            return None;
        }
        witnesses.push(solver.into_mate());
    }
    Some(witnesses)
}

/// Whether `g - v` has a perfect matching for every vertex `v`. The empty
/// graph is not a component and is reported as not factor-critical.
pub fn is_factor_critical(g: &UndirectedGraph) -> Result<bool, TightError> {
    require_connected(g)?;
    if g.n() == 0 {
        return Ok(false);
    }
    Ok(vertex_deleted_perfect_matchings(g).is_some())
}

pub fn is_tight(g: &UndirectedGraph) -> Result<bool, TightError> {
    require_connected(g)?;
    if g.n() == 0 {
        return Ok(false);
    }
    Ok(tight_unchecked(g))
}

fn tight_unchecked(g: &UndirectedGraph) -> bool {
    let Some(witnesses) = vertex_deleted_perfect_matchings(g) else {
        return false;
    };
    let n = g.n();
    let mut adjacent = vec![false; n];
    for v in 0..n {
        for &w in g.neighbors(v) {
            adjacent[w] = true;
        }
        let perfect = &witnesses[v];
        for (x, y) in g.edges() {
            if x == v || y == v || adjacent[x] == adjacent[y] {
                continue;
            }
            if perfect[x] == y || completes_without(g, perfect, v, x, y) {
                return false;
            }
        }
        for &w in g.neighbors(v) {
            adjacent[w] = false;
        }
    }
    true
}

/// Whether `g - {v, x, y}` has a perfect matching, given a perfect matching
/// of `g - v` that does not contain `xy`.
fn completes_without(g: &UndirectedGraph, perfect: &[usize], v: usize, x: usize, y: usize) -> bool {
    let mut mate = perfect.to_vec();
    let (px, py) = (mate[x], mate[y]);
    for w in [x, y, px, py] {
        mate[w] = NONE;
    }
    let mut solver = BlossomSolver::new(g);
    solver.set_mate(&mate);
    for w in [v, x, y] {
        solver.block(w);
    }
    solver.augment_from(px)
}

/// Classification of the connected components of a digraph's underlying graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<Vec<usize>>,
    pub is_tight: Vec<bool>,
    pub has_antiparallel: Vec<bool>,
    pub is_essential: Vec<bool>,
    /// Number of tight components.
    pub tau_star: usize,
    /// Tight components containing an antiparallel pair.
    pub sigma: usize,
    /// Essential components, `tau_star - sigma`.
    pub tau: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentSummary {
    pub sizes: Vec<usize>,
    pub tight: Vec<bool>,
    pub antiparallel: Vec<bool>,
    pub essential: Vec<bool>,
    pub tau: usize,
    pub tau_star: usize,
    pub sigma: usize,
}

impl ComponentReport {
    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            sizes: self.components.iter().map(Vec::len).collect(),
            tight: self.is_tight.clone(),
            antiparallel: self.has_antiparallel.clone(),
            essential: self.is_essential.clone(),
            tau: self.tau,
            tau_star: self.tau_star,
            sigma: self.sigma,
        }
    }
}

pub fn essential_components(d: &Digraph) -> ComponentReport {
    let g = d.underlying_graph();
    let components = g.connected_components();
    let flags: Vec<(bool, bool)> = components
        .par_iter()
        .map(|component| {
            let tight = component.len() % 2 == 1 && tight_unchecked(&g.induced(component));
            let antiparallel = component
                .iter()
                .any(|&u| d.out_neighbors(u).iter().any(|&v| d.has_arc(v, u)));
            (tight, antiparallel)
        })
        .collect();

    let is_tight: Vec<bool> = flags.iter().map(|f| f.0).collect();
    let has_antiparallel: Vec<bool> = flags.iter().map(|f| f.1).collect();
    let is_essential: Vec<bool> = flags.iter().map(|&(t, a)| t && !a).collect();
    for (component, &essential) in components.iter().zip(&is_essential) {
        if essential {
            let order = component.len();
            let arcs: usize = component.iter().map(|&u| d.out_degree(u)).sum();
            assert!(
                2 * arcs <= order * (order - 1),
                "essential component of order {order} has {arcs} arcs"
            );
        }
    }
    let tau_star = is_tight.iter().filter(|&&t| t).count();
    let tau = is_essential.iter().filter(|&&e| e).count();
    ComponentReport {
        components,
        is_tight,
        has_antiparallel,
        is_essential,
        tau_star,
        sigma: tau_star - tau,
        tau,
    }
}
