//! Directed graphs without loops or repeated arcs.
//!
//! An arc `(u, v)` is read as `u -> v`. Antiparallel pairs `u -> v`, `v -> u`
//! are allowed and are treated as two distinct arcs. `e(A, B)` always counts
//! arcs with tail in `A` and head in `B`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::UndirectedGraph;

/// Errors raised while building or querying a [`Digraph`].
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate arc {u} -> {v}")]
    DuplicateArc { u: usize, v: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} listed more than once")]
    DuplicateVertex { vertex: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// Errors raised by [`parse_digraph`]. Each malformed input maps to its own variant.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed arc, expected \"u v\"")]
    MalformedArc { line: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arc {u} -> {v}")]
    DuplicateArc { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("header declares {expected} arcs but {found} were listed")]
    ArcCountMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arc_set: HashSet<(usize, usize)>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs == other.arcs
    }
}

impl Eq for Digraph {}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            arcs: Vec::new(),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            arc_set: HashSet::new(),
        }
    }

    /// Builds a digraph on vertices `0..n`, rejecting loops, repeated arcs and
    /// out-of-range endpoints.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut arc_set = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            if !arc_set.insert((u, v)) {
                return Err(GraphError::DuplicateArc { u, v });
            }
            list.push((u, v));
        }
        Ok(Self::from_checked(n, list, arc_set))
    }

    fn from_checked(n: usize, mut arcs: Vec<(usize, usize)>, arc_set: HashSet<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        // arcs are sorted by tail, so out_adj is sorted; in_adj needs a pass
        for list in &mut in_adj {
            list.sort_unstable();
        }
        Digraph {
            n,
            arcs,
            out_adj,
            in_adj,
            arc_set,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arc_set.contains(&(u, v))
    }

    /// True when both `u -> v` and `v -> u` are present.
    pub fn is_antiparallel(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    pub fn antiparallel_pair_count(&self) -> usize {
        self.arcs
            .iter()
            .filter(|&&(u, v)| u < v && self.has_arc(v, u))
            .count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Minimum over all vertices of `min(d+, d-)`; zero for the empty vertex set.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n)
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let out: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let inn: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let splus: Vec<i64> = out
            .iter()
            .zip(&inn)
            .map(|(&o, &i)| o as i64 - i as i64)
            .collect();
        let s = splus.iter().map(|x| x.unsigned_abs() as usize).collect();
        let semidegree = out.iter().zip(&inn).map(|(&o, &i)| o.min(i)).collect();
        DegreeProfile {
            out,
            inn,
            splus,
            s,
            semidegree,
        }
    }

    /// Directed cut sizes for an explicit two-part vertex partition.
    pub fn cut_sizes(&self, part1: &[usize], part2: &[usize]) -> Result<CutStats, GraphError> {
        let mut in_part1 = vec![None; self.n];
        for (parts, flag) in [(part1, true), (part2, false)] {
            for &v in parts {
                if v >= self.n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
                }
                if in_part1[v].is_some() {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} appears in both parts or twice"
                    )));
                }
                in_part1[v] = Some(flag);
            }
        }
        let sides: Option<Vec<bool>> = in_part1.into_iter().collect();
        match sides {
            Some(sides) => Ok(self.cut_stats_by_side(&sides)),
            None => Err(GraphError::InvalidPartition(
                "parts do not cover every vertex".into(),
            )),
        }
    }

    /// Cut sizes where `in_part1[v]` tells which side `v` is on.
    pub fn cut_stats_by_side(&self, in_part1: &[bool]) -> CutStats {
        debug_assert_eq!(in_part1.len(), self.n);
        let mut counts = [0usize; 4];
        for &(u, v) in &self.arcs {
            let idx = ((!in_part1[u]) as usize) << 1 | (!in_part1[v]) as usize;
            counts[idx] += 1;
        }
        CutStats::new(counts[1], counts[2], counts[0], counts[3])
    }

    /// Forgets orientations and collapses antiparallel pairs.
    pub fn underlying_graph(&self) -> UndirectedGraph {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            if u < v || !self.has_arc(v, u) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        UndirectedGraph::from_adjacency(adj)
    }

    /// Subdigraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order. The returned map sends new labels back to old ones.
    pub fn induced_subdigraph(&self, vertices: &[usize]) -> Result<(Digraph, Vec<usize>), GraphError> {
        let mut relabel = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
            if relabel[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex { vertex: v });
            }
            relabel[v] = i;
        }
        let mut arcs = Vec::new();
        let mut arc_set = HashSet::new();
        for &u in vertices {
            for &v in &self.out_adj[u] {
                if relabel[v] != usize::MAX {
                    arcs.push((relabel[u], relabel[v]));
                    arc_set.insert((relabel[u], relabel[v]));
                }
            }
        }
        let sub = Digraph::from_checked(vertices.len(), arcs, arc_set);
        Ok((sub, vertices.to_vec()))
    }

    /// Copy of the digraph with every arc joining two marked vertices removed.
    pub fn without_arcs_within(&self, marked: &[bool]) -> Digraph {
        let arcs: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .copied()
            .filter(|&(u, v)| !(marked[u] && marked[v]))
            .collect();
        let arc_set = arcs.iter().copied().collect();
        Digraph::from_checked(self.n, arcs, arc_set)
    }

    /// Serializes to the arc-list text format, arcs sorted lexicographically.
    pub fn to_arc_list(&self) -> String {
        let mut text = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.arcs {
            text.push_str(&format!("{u} {v}\n"));
        }
        text
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_arc_list())
    }
}

impl FromStr for Digraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_digraph(s)
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut tokens = line.split_whitespace();
    let a = tokens.next()?.parse().ok()?;
    let b = tokens.next()?.parse().ok()?;
    match tokens.next() {
        Some(_) => None,
        None => Some((a, b)),
    }
}

/// Parses the arc-list format: a header `n m` followed by exactly `m` lines
/// `u v`. Lines starting with `#` and blank lines are ignored.
pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, expected) =
        parse_pair(header).ok_or(ParseError::MalformedHeader { line: header_line })?;

    let mut arcs = Vec::with_capacity(expected.min(1 << 20));
    let mut arc_set = HashSet::with_capacity(expected.min(1 << 20));
    for (line, body) in lines {
        let (u, v) = parse_pair(body).ok_or(ParseError::MalformedArc { line })?;
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !arc_set.insert((u, v)) {
            return Err(ParseError::DuplicateArc { line, u, v });
        }
        arcs.push((u, v));
    }
    if arcs.len() != expected {
        return Err(ParseError::ArcCountMismatch {
            expected,
            found: arcs.len(),
        });
    }
    Ok(Digraph::from_checked(n, arcs, arc_set))
}

/// Per-vertex degree data. `splus[v] = d+(v) - d-(v)` and `s[v] = |splus[v]|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub out: Vec<usize>,
    #[serde(rename = "in")]
    pub inn: Vec<usize>,
    pub splus: Vec<i64>,
    pub s: Vec<usize>,
    pub semidegree: Vec<usize>,
}

impl DegreeProfile {
    pub fn min_semidegree(&self) -> usize {
        self.semidegree.iter().copied().min().unwrap_or(0)
    }

    pub fn min_out(&self) -> usize {
        self.out.iter().copied().min().unwrap_or(0)
    }

    pub fn min_in(&self) -> usize {
        self.inn.iter().copied().min().unwrap_or(0)
    }
}

/// Arc counts of a two-part vertex partition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CutStats {
    pub e12: usize,
    pub e21: usize,
    pub internal1: usize,
    pub internal2: usize,
    pub min_dir: usize,
}

impl CutStats {
    pub fn new(e12: usize, e21: usize, internal1: usize, internal2: usize) -> Self {
        CutStats {
            e12,
            e21,
            internal1,
            internal2,
            min_dir: e12.min(e21),
        }
    }

    pub fn total(&self) -> usize {
        self.e12 + self.e21 + self.internal1 + self.internal2
    }

    /// The same partition with the part labels exchanged.
    pub fn swapped(&self) -> Self {
        CutStats::new(self.e21, self.e12, self.internal2, self.internal1)
    }
}
