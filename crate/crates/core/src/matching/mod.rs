//! Maximum matchings in general graphs and the free / non-free vertex
//! classification used by the star decomposition.
//!
//! For a matching `M` and an unmatched vertex `w`, a matched vertex `v` is a
//! *free neighbor* of `w` when `w ~ v` but `w` is not adjacent to the mate of
//! `v`. Unmatched vertices with at least one free neighbor are *free*; the
//! others are *non-free*. A matched edge is *special* when its endpoints carry
//! an antiparallel pair in a companion digraph.

mod blossom;
mod refine;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::UndirectedGraph;

pub(crate) use blossom::{BlossomSolver, NONE};
pub use refine::{refine_matching, refine_matching_with, RefineOptions};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("edge {u}-{v} is not in the graph")]
    EdgeNotInGraph { u: usize, v: usize },
    #[error("vertex {vertex} is covered by more than one edge")]
    NotAMatching { vertex: usize },
    #[error("matching has {size} edges but the maximum is {maximum}")]
    NotMaximum { size: usize, maximum: usize },
    #[error("companion digraph has {found} vertices, graph has {expected}")]
    DigraphMismatch { expected: usize, found: usize },
}

/// A matching together with its free / non-free / special labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// Matched edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub free: Vec<usize>,
    pub nonfree: Vec<usize>,
    pub special: Vec<(usize, usize)>,
    #[serde(skip)]
    mate: Vec<Option<usize>>,
    #[serde(skip)]
    free_neighbors: BTreeMap<usize, Vec<usize>>,
}

impl Matching {
    pub(crate) fn from_mate(g: &UndirectedGraph, digraph: Option<&Digraph>, raw: &[usize]) -> Self {
        let mate: Vec<Option<usize>> = raw.iter().map(|&m| (m != NONE).then_some(m)).collect();
        let edges: Vec<(usize, usize)> = mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect();
        let special = match digraph {
            Some(d) => edges
                .iter()
                .copied()
                .filter(|&(u, v)| d.is_antiparallel(u, v))
                .collect(),
            None => Vec::new(),
        };
        let classes = classify_with_mate(g, &mate);
        Matching {
            edges,
            free: classes.free,
            nonfree: classes.nonfree,
            special,
            mate,
            free_neighbors: classes.free_neighbors,
        }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    /// Matched endpoints witnessing that `w` is free, sorted.
    pub fn free_neighbors(&self, w: usize) -> &[usize] {
        self.free_neighbors.get(&w).map_or(&[], Vec::as_slice)
    }

    /// `(size, #free, #special)`, compared lexicographically by refinement.
    pub fn objective(&self) -> (usize, usize, usize) {
        (self.size(), self.free.len(), self.special.len())
    }
}

/// Result of [`classify_free`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeClassification {
    pub free: Vec<usize>,
    pub nonfree: Vec<usize>,
    /// For each free vertex, every matched endpoint witnessing it.
    pub free_neighbors: BTreeMap<usize, Vec<usize>>,
}

fn classify_with_mate(g: &UndirectedGraph, mate: &[Option<usize>]) -> FreeClassification {
    let mut free = Vec::new();
    let mut nonfree = Vec::new();
    let mut free_neighbors = BTreeMap::new();
    for w in 0..g.n() {
        if mate[w].is_some() {
            continue;
        }
        let witnesses: Vec<usize> = g
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&v| matches!(mate[v], Some(p) if !g.has_edge(w, p)))
            .collect();
        if witnesses.is_empty() {
            nonfree.push(w);
        } else {
            free.push(w);
            free_neighbors.insert(w, witnesses);
        }
    }
    FreeClassification {
        free,
        nonfree,
        free_neighbors,
    }
}

pub(crate) fn mate_from_edges(g: &UndirectedGraph, edges: &[(usize, usize)]) -> Result<Vec<usize>, MatchingError> {
    let mut mate = vec![NONE; g.n()];
    for &(u, v) in edges {
        if u >= g.n() || v >= g.n() || u == v || !g.has_edge(u, v) {
            return Err(MatchingError::EdgeNotInGraph { u, v });
        }
        for w in [u, v] {
            if mate[w] != NONE {
                return Err(MatchingError::NotAMatching { vertex: w });
            }
        }
        mate[u] = v;
        mate[v] = u;
    }
    Ok(mate)
}

/// Splits the unmatched vertices of `g` into free and non-free with respect
/// to the matching `edges`.
pub fn classify_free(g: &UndirectedGraph, edges: &[(usize, usize)]) -> Result<FreeClassification, MatchingError> {
    let raw = mate_from_edges(g, edges)?;
    let mate: Vec<Option<usize>> = raw.iter().map(|&m| (m != NONE).then_some(m)).collect();
    Ok(classify_with_mate(g, &mate))
}

fn assert_no_adjacent_exposed(g: &UndirectedGraph, mate: &[usize]) {
    for (u, v) in g.edges() {
        assert!(
            mate[u] != NONE || mate[v] != NONE,
            "maximum matching left adjacent vertices {u} and {v} unmatched"
        );
    }
}

/// Maximum matching of `g`, classified without a companion digraph.
pub fn maximum_matching(g: &UndirectedGraph) -> Matching {
    let mate = blossom::maximum_mate(g);
    assert_no_adjacent_exposed(g, &mate);
    Matching::from_mate(g, None, &mate)
}

/// Maximum matching of `g` with special edges flagged against `digraph`,
/// whose underlying graph must be `g`.
pub fn maximum_matching_in(g: &UndirectedGraph, digraph: Option<&Digraph>) -> Result<Matching, MatchingError> {
    check_companion(g, digraph)?;
    let mate = blossom::maximum_mate(g);
    assert_no_adjacent_exposed(g, &mate);
    Ok(Matching::from_mate(g, digraph, &mate))
}

pub(crate) fn check_companion(g: &UndirectedGraph, digraph: Option<&Digraph>) -> Result<(), MatchingError> {
    match digraph {
        Some(d) if d.n() != g.n() => Err(MatchingError::DigraphMismatch {
            expected: g.n(),
            found: d.n(),
        }),
        _ => Ok(()),
    }
}

pub fn maximum_matching_size(g: &UndirectedGraph) -> usize {
    blossom::maximum_mate(g).iter().filter(|&&m| m != NONE).count() / 2
}

pub fn has_perfect_matching(g: &UndirectedGraph) -> bool {
    g.n().is_multiple_of(2) && 2 * maximum_matching_size(g) == g.n()
}
