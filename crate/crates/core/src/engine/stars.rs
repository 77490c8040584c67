//! Partition of a graph into stars, each containing one matching edge, and
//! an independent remainder `U`.
//!
//! Every free vertex joins the star of the matching edge through its lowest
//! free neighbor, which becomes the star's center; the center's mate is a
//! leaf. Stars with several leaves in a marked set `A` keep one of them and
//! push the rest to `U`. The result is checked before it is returned.

use serde::Serialize;
use thiserror::Error;

use crate::graph::UndirectedGraph;
use crate::matching::Matching;
use crate::tight::is_tight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub center: usize,
    /// Leaves ascending; the center's mate is always among them.
    pub leaves: Vec<usize>,
    /// The matching edge `(center, mate)`.
    pub edge: (usize, usize),
}

impl Star {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarDecomposition {
    pub stars: Vec<Star>,
    /// Ascending.
    pub u: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StarSummary {
    pub stars: usize,
    pub largest_star: usize,
    pub u_size: usize,
    pub a_size: usize,
    pub tau_star: usize,
}

impl StarDecomposition {
    pub fn summary(&self, a_size: usize, tau_star: usize) -> StarSummary {
        StarSummary {
            stars: self.stars.len(),
            largest_star: self.stars.iter().map(|s| s.leaves.len() + 1).max().unwrap_or(0),
            u_size: self.u.len(),
            a_size,
            tau_star,
        }
    }

    /// Relabels vertices through `map` (local label to global label).
    pub fn relabel(&self, map: &[usize]) -> StarDecomposition {
        let mut stars: Vec<Star> = self
            .stars
            .iter()
            .map(|s| {
                let mut leaves: Vec<usize> = s.leaves.iter().map(|&v| map[v]).collect();
                leaves.sort_unstable();
                Star {
                    center: map[s.center],
                    leaves,
                    edge: (map[s.edge.0], map[s.edge.1]),
                }
            })
            .collect();
        stars.sort_by_key(|s| s.center);
        let mut u: Vec<usize> = self.u.iter().map(|&v| map[v]).collect();
        u.sort_unstable();
        StarDecomposition { stars, u }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("invalid decomposition: {0}")]
    Invalid(String),
    #[error("|U| = {u} exceeds tau* + |A| = {tau_star} + {a}")]
    RemainderTooLarge {
        u: usize,
        tau_star: usize,
        a: usize,
        decomposition: Box<StarDecomposition>,
    },
}

/// Number of tight connected components of `g`.
pub fn tight_component_count(g: &UndirectedGraph) -> usize {
    g.connected_components()
        .iter()
        .filter(|c| c.len() % 2 == 1 && is_tight(&g.induced(c)).unwrap_or(false))
        .count()
}

pub fn star_decomposition(g: &UndirectedGraph, a: &[usize], m: &Matching) -> Result<StarDecomposition, DecompositionError> {
    star_decomposition_bounded(g, a, m, tight_component_count(g))
}

/// [`star_decomposition`] with the tight-component count supplied.
pub fn star_decomposition_bounded(
    g: &UndirectedGraph,
    a: &[usize],
    m: &Matching,
    tau_star: usize,
) -> Result<StarDecomposition, DecompositionError> {
    let n = g.n();
    let mut in_a = vec![false; n];
    for &v in a {
        in_a[v] = true;
    }

    // attached[x] lists free vertices hanging off matched vertex x
    let mut attached: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut u = m.nonfree.clone();
    for &w in &m.free {
        let x = m.free_neighbors(w)[0];
        attached[x].push(w);
    }

    let mut stars = Vec::with_capacity(m.edges.len());
    for &(p, q) in &m.edges {
        if !attached[p].is_empty() && !attached[q].is_empty() {
            return Err(DecompositionError::Invalid(format!(
                "free vertices {} and {} attach to both ends of matched edge {p}-{q}",
                attached[p][0], attached[q][0]
            )));
        }
        let (center, mate) = if attached[q].is_empty() { (p, q) } else { (q, p) };
        let mut leaves = vec![mate];
        leaves.extend(&attached[center]);

        // A-repair: keep the mate if it is in A, else the lowest A-leaf
        let mut a_leaves: Vec<usize> = leaves.iter().copied().filter(|&v| in_a[v]).collect();
        a_leaves.sort_unstable();
        if a_leaves.len() > 1 {
            let keep = if in_a[mate] { mate } else { a_leaves[0] };
            for &v in &a_leaves {
                if v != keep {
                    leaves.retain(|&l| l != v);
                    u.push(v);
                }
            }
        }
        leaves.sort_unstable();
        stars.push(Star {
            center,
            leaves,
            edge: (center, mate),
        });
    }
    u.sort_unstable();
    let dec = StarDecomposition { stars, u };
    validate(g, &in_a, &dec)?;
    let a_size = a.len();
    if dec.u.len() > tau_star + a_size {
        return Err(DecompositionError::RemainderTooLarge {
            u: dec.u.len(),
            tau_star,
            a: a_size,
            decomposition: Box::new(dec),
        });
    }
    Ok(dec)
}

fn validate(g: &UndirectedGraph, in_a: &[bool], dec: &StarDecomposition) -> Result<(), DecompositionError> {
    let invalid = |msg: String| Err(DecompositionError::Invalid(msg));
    let mut seen = vec![false; g.n()];
    let all = dec.stars.iter().flat_map(Star::vertices).chain(dec.u.iter().copied());
    for v in all {
        if v >= g.n() || seen[v] {
            return invalid(format!("vertex {v} is covered twice or out of range"));
        }
        seen[v] = true;
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return invalid(format!("vertex {v} is not covered"));
    }
    for star in &dec.stars {
        let (c, mate) = star.edge;
        if c != star.center || !star.leaves.contains(&mate) || !g.has_edge(c, mate) {
            return invalid(format!("star at {c} does not contain its matching edge"));
        }
        for (i, &l) in star.leaves.iter().enumerate() {
            if !g.has_edge(c, l) {
                return invalid(format!("leaf {l} is not adjacent to center {c}"));
            }
            if star.leaves[i + 1..].iter().any(|&k| g.has_edge(l, k)) {
                return invalid(format!("star at {c} has an edge between leaves"));
            }
        }
        if star.leaves.iter().filter(|&&l| in_a[l]).count() > 1 {
            return invalid(format!("star at {c} has more than one leaf in A"));
        }
    }
    for (i, &v) in dec.u.iter().enumerate() {
        if let Some(&w) = dec.u[i + 1..].iter().find(|&&w| g.has_edge(v, w)) {
            return invalid(format!("U contains the edge {v}-{w}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{maximum_matching, Matching};
    use crate::matching::NONE;

    fn graph(n: usize, edges: &[(usize, usize)]) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn path_becomes_one_star() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let m = Matching::from_mate(&g, None, &[NONE, 2, 1]);
        let dec = star_decomposition(&g, &[], &m).unwrap();
        assert_eq!(
            dec.stars,
            vec![Star {
                center: 1,
                leaves: vec![0, 2],
                edge: (1, 2)
            }]
        );
        assert!(dec.u.is_empty());
    }

    #[test]
    fn triangle_leaves_its_unmatched_vertex_in_u() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = maximum_matching(&g);
        let dec = star_decomposition(&g, &[], &m).unwrap();
        assert_eq!(dec.stars.len(), 1);
        assert_eq!(dec.u.len(), 1);
        assert_eq!(tight_component_count(&g), 1);
    }

    #[test]
    fn edgeless_graph_is_all_remainder() {
        let g = UndirectedGraph::empty(4);
        let m = maximum_matching(&g);
        let dec = star_decomposition(&g, &[], &m).unwrap();
        assert!(dec.stars.is_empty());
        assert_eq!(dec.u, vec![0, 1, 2, 3]);
    }

    #[test]
    fn surplus_a_leaves_move_to_u() {
        // center 0 matched to 1, free leaves 2 and 3
        let g = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let m = Matching::from_mate(&g, None, &[1, 0, NONE, NONE]);
        let dec = star_decomposition_bounded(&g, &[2, 3], &m, 0).unwrap();
        assert_eq!(dec.stars[0].leaves, vec![1, 2]);
        assert_eq!(dec.u, vec![3]);
        let dec = star_decomposition_bounded(&g, &[1, 2, 3], &m, 0).unwrap();
        assert_eq!(dec.stars[0].leaves, vec![1]);
        assert_eq!(dec.u, vec![2, 3]);
    }

    #[test]
    fn remainder_bound_is_enforced() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let m = maximum_matching(&g);
        let err = star_decomposition_bounded(&g, &[], &m, 0).unwrap_err();
        assert!(matches!(err, DecompositionError::RemainderTooLarge { u: 1, .. }));
    }
}
