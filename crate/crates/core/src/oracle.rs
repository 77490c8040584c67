//! Exhaustive ground truth for small instances.
//!
//! Every oracle enumerates its whole search space and refuses inputs above a
//! fixed size guard instead of truncating.

use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::graph::UndirectedGraph;

pub const BISECTION_GUARD: usize = 22;
pub const GAP_GUARD: usize = 24;
pub const MATCHING_GUARD: usize = 12;
pub const TIGHT_GUARD: usize = 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance size {size} exceeds the oracle guard {guard}")]
    TooLarge { size: usize, guard: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("companion digraph has {found} vertices, graph has {expected}")]
    DigraphMismatch { expected: usize, found: usize },
}

fn guard(size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        Err(OracleError::TooLarge { size, guard: limit })
    } else {
        Ok(())
    }
}

/// An exact optimum, a witness attaining it, and the number of candidates
/// enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult<V, W> {
    pub value: V,
    pub witness: W,
    pub explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BisectionWitness {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
}

fn mask_members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Next integer with the same number of set bits (Gosper's hack).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Best bisection of `d` by `min(e12, e21)`, over every split into parts of
/// sizes `ceil(n/2)` and `floor(n/2)`. Part 1 always contains vertex 0; the
/// witness is the smallest part-1 bitmask among optimal splits.
pub fn exact_best_bisection(d: &Digraph) -> Result<OracleResult<usize, BisectionWitness>, OracleError> {
    let n = d.n();
    guard(n, BISECTION_GUARD)?;
    if n == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: BisectionWitness {
                part1: vec![],
                part2: vec![],
            },
            explored: 1,
        });
    }
    let full = (1u64 << n) - 1;
    let out_mask: Vec<u64> = (0..n)
        .map(|u| d.out_neighbors(u).iter().fold(0u64, |acc, &v| acc | 1 << v))
        .collect();
    let score = |p1: u64| {
        let p2 = full & !p1;
        let (mut e12, mut e21) = (0u32, 0u32);
        for (u, &mask) in out_mask.iter().enumerate() {
            if p1 >> u & 1 == 1 {
                e12 += (mask & p2).count_ones();
            } else {
                e21 += (mask & p1).count_ones();
            }
        }
        e12.min(e21) as usize
    };

    let mut sizes = vec![n.div_ceil(2)];
    if n % 2 == 1 && n > 1 {
        sizes.push(n / 2);
    }
    let mut best: Option<(usize, u64)> = None;
    let mut explored = 0u64;
    for size in sizes {
        // choose the other size - 1 members among vertices 1..n
        let k = size - 1;
        let rest = n - 1;
        let mut comb: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
        loop {
            let p1 = comb << 1 | 1;
            explored += 1;
            let value = score(p1);
            let better = match best {
                None => true,
                Some((bv, bm)) => value > bv || (value == bv && p1 < bm),
            };
            if better {
                best = Some((value, p1));
            }
            if k == 0 {
                break;
            }
            comb = next_combination(comb);
            if comb >> rest != 0 {
                break;
            }
        }
    }
    let (value, mask) = best.expect("at least one bisection");
    Ok(OracleResult {
        value,
        witness: BisectionWitness {
            part1: mask_members(mask, n),
            part2: mask_members(full & !mask, n),
        },
        explored,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapWitness {
    /// Indices placed in the first part.
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    /// `sum(x1) - sum(x2)`, nonnegative.
    pub theta: i64,
}

/// Minimum of `|sum_i sign_i * splus_i|` over all sign patterns.
pub fn exact_min_gap(splus: &[i64]) -> Result<OracleResult<i64, GapWitness>, OracleError> {
    let len = splus.len();
    guard(len, GAP_GUARD)?;
    let mut best: Option<(i64, u64)> = None;
    for mask in 0..1u64 << len {
        let theta: i64 = splus
            .iter()
            .enumerate()
            .map(|(i, &s)| if mask >> i & 1 == 1 { s } else { -s })
            .sum();
        if best.is_none_or(|(b, _)| theta.abs() < b.abs()) {
            best = Some((theta, mask));
        }
    }
    let (theta, mut mask) = best.expect("at least the empty pattern");
    if theta < 0 {
        mask = !mask & ((1u64 << len) - 1);
    }
    Ok(OracleResult {
        value: theta.abs(),
        witness: GapWitness {
            x1: mask_members(mask, len),
            x2: mask_members(!mask, len),
            theta: theta.abs(),
        },
        explored: 1 << len,
    })
}

/// Lexicographic objective of a matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MatchingProfile {
    pub size: usize,
    pub free: usize,
    pub special: usize,
}

/// Lexicographically best `(size, #free, #special)` over every matching of
/// `g`. Special edges are counted against `digraph` when given.
pub fn exact_matching_profile(
    g: &UndirectedGraph,
    digraph: Option<&Digraph>,
) -> Result<OracleResult<MatchingProfile, Vec<(usize, usize)>>, OracleError> {
    let n = g.n();
    guard(n, MATCHING_GUARD)?;
    if let Some(d) = digraph {
        if d.n() != n {
            return Err(OracleError::DigraphMismatch {
                expected: n,
                found: d.n(),
            });
        }
    }
    let mut search = MatchingSearch {
        g,
        digraph,
        mate: vec![None; n],
        edges: Vec::new(),
        best: None,
        explored: 0,
    };
    search.enumerate(0);
    let (value, witness) = search.best.expect("the empty matching is enumerated");
    Ok(OracleResult {
        value,
        witness,
        explored: search.explored,
    })
}

struct MatchingSearch<'a> {
    g: &'a UndirectedGraph,
    digraph: Option<&'a Digraph>,
    mate: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    best: Option<(MatchingProfile, Vec<(usize, usize)>)>,
    explored: u64,
}

impl MatchingSearch<'_> {
    fn enumerate(&mut self, v: usize) {
        let n = self.g.n();
        if v == n {
            self.explored += 1;
            let profile = self.profile();
            if self.best.as_ref().is_none_or(|(b, _)| profile > *b) {
                self.best = Some((profile, self.edges.clone()));
            }
            return;
        }
        if self.mate[v].is_some() {
            self.enumerate(v + 1);
            return;
        }
        self.enumerate(v + 1);
        for &w in self.g.neighbors(v) {
            if w > v && self.mate[w].is_none() {
                self.mate[v] = Some(w);
                self.mate[w] = Some(v);
                self.edges.push((v, w));
                self.enumerate(v + 1);
                self.edges.pop();
                self.mate[v] = None;
                self.mate[w] = None;
            }
        }
    }

    fn profile(&self) -> MatchingProfile {
        let g = self.g;
        let free = (0..g.n())
            .filter(|&w| {
                self.mate[w].is_none()
                    && g
                        .neighbors(w)
                        .iter()
                        .any(|&v| self.mate[v].is_some_and(|p| !g.has_edge(w, p)))
            })
            .count();
        let special = match self.digraph {
            Some(d) => self.edges.iter().filter(|&&(u, v)| d.is_antiparallel(u, v)).count(),
            None => 0,
        };
        MatchingProfile {
            size: self.edges.len(),
            free,
            special,
        }
    }
}

/// Every perfect matching of `g` restricted to the vertices not in `removed`.
fn perfect_matchings(g: &UndirectedGraph, removed: &[bool]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        g: &UndirectedGraph,
        used: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(v) = (0..g.n()).find(|&v| !used[v]) else {
            out.push(current.clone());
            return;
        };
        used[v] = true;
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                current.push((v, w));
                go(g, used, current, out);
                current.pop();
                used[w] = false;
            }
        }
        used[v] = false;
    }
    let mut used = removed.to_vec();
    let mut out = Vec::new();
    go(g, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Tightness by the literal definition: every `g - v` has a perfect matching,
/// and none of those matchings uses an edge with exactly one end adjacent to
/// `v`. The empty graph is reported as not tight.
pub fn exact_tight_check(g: &UndirectedGraph) -> Result<bool, OracleError> {
    let n = g.n();
    guard(n, TIGHT_GUARD)?;
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    if n == 0 {
        return Ok(false);
    }
    for v in 0..n {
        let mut removed = vec![false; n];
        removed[v] = true;
        let matchings = perfect_matchings(g, &removed);
        if matchings.is_empty() {
            return Ok(false);
        }
        for m in &matchings {
            if m.iter().any(|&(x, y)| g.has_edge(v, x) != g.has_edge(v, y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
