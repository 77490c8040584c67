//! Local search over maximum matchings for more free vertices, then more
//! special edges.
//!
//! Moves keep the matching size fixed. An exposed vertex `w` takes over a
//! neighbor `x`, and the old mate `y` of `x` either becomes exposed (a
//! rotation) or itself takes over a neighbor `x2`, exposing `y2` (an
//! alternating path of length four). The search runs per connected component,
//! since both counts are additive over components, and restarts from freshly
//! shuffled maximum matchings. It is a heuristic: it reaches a local optimum
//! under this move set, which need not be the global one.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::blossom::{maximum_mate, NONE};
use super::{check_companion, mate_from_edges, maximum_matching_size, Matching, MatchingError};
use crate::digraph::Digraph;
use crate::graph::UndirectedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefineOptions {
    /// Extra starting points per component besides the given matching.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            restarts: 20,
            seed: 0,
        }
    }
}

pub fn refine_matching(g: &UndirectedGraph, digraph: Option<&Digraph>, start: &Matching) -> Result<Matching, MatchingError> {
    refine_matching_with(g, digraph, start, &RefineOptions::default())
}

pub fn refine_matching_with(
    g: &UndirectedGraph,
    digraph: Option<&Digraph>,
    start: &Matching,
    options: &RefineOptions,
) -> Result<Matching, MatchingError> {
    check_companion(g, digraph)?;
    let mut mate = mate_from_edges(g, &start.edges)?;
    let maximum = maximum_matching_size(g);
    if start.size() != maximum {
        return Err(MatchingError::NotMaximum {
            size: start.size(),
            maximum,
        });
    }

    for (index, component) in g.connected_components().into_iter().enumerate() {
        if component.len() < 3 {
            continue;
        }
        let local_graph = g.induced(&component);
        let special = |a: usize, b: usize| digraph.is_some_and(|d| d.is_antiparallel(component[a], component[b]));
        let mut position = vec![NONE; g.n()];
        for (i, &v) in component.iter().enumerate() {
            position[v] = i;
        }
        let local_mate: Vec<usize> = component
            .iter()
            .map(|&v| if mate[v] == NONE { NONE } else { position[mate[v]] })
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        rng.set_stream(index as u64);
        let best = refine_component(&local_graph, &special, local_mate, options.restarts, &mut rng);
        for (i, &v) in component.iter().enumerate() {
            mate[v] = if best[i] == NONE { NONE } else { component[best[i]] };
        }
    }

    let refined = Matching::from_mate(g, digraph, &mate);
    debug_assert_eq!(refined.size(), start.size());
    Ok(refined)
}

fn refine_component(
    g: &UndirectedGraph,
    special: &dyn Fn(usize, usize) -> bool,
    start: Vec<usize>,
    restarts: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    let mut climber = Climber { g, special, mate: start };
    let exposed = climber.mate.iter().filter(|&&m| m == NONE).count();
    let ceiling = (exposed, (g.n() - exposed) / 2);

    climber.climb();
    let mut best = (climber.objective(), climber.mate.clone());
    let mut order: Vec<usize> = (0..g.n()).collect();
    for _ in 0..restarts {
        if best.0 == ceiling {
            break;
        }
        order.shuffle(rng);
        let shuffled = maximum_mate(&g.induced(&order));
        climber.mate = vec![NONE; g.n()];
        for (i, &m) in shuffled.iter().enumerate() {
            if m != NONE {
                climber.mate[order[i]] = order[m];
            }
        }
        climber.climb();
        let objective = climber.objective();
        if objective > best.0 {
            best = (objective, climber.mate.clone());
        }
    }
    best.1
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Rotate { w: usize, x: usize, y: usize },
    Shift { w: usize, x: usize, y: usize, x2: usize, y2: usize },
}

struct Climber<'a> {
    g: &'a UndirectedGraph,
    special: &'a dyn Fn(usize, usize) -> bool,
    mate: Vec<usize>,
}

impl Climber<'_> {
    fn is_free(&self, u: usize) -> bool {
        self.mate[u] == NONE
            && self
                .g
                .neighbors(u)
                .iter()
                .any(|&v| self.mate[v] != NONE && !self.g.has_edge(u, self.mate[v]))
    }

    fn objective(&self) -> (usize, usize) {
        let free = (0..self.g.n()).filter(|&u| self.is_free(u)).count();
        let special = (0..self.g.n())
            .filter(|&u| self.mate[u] != NONE && u < self.mate[u] && (self.special)(u, self.mate[u]))
            .count();
        (free, special)
    }

    fn apply(&mut self, mv: Move) {
        match mv {
            Move::Rotate { w, x, y } => {
                self.mate[w] = x;
                self.mate[x] = w;
                self.mate[y] = NONE;
            }
            Move::Shift { w, x, y, x2, y2 } => {
                self.mate[w] = x;
                self.mate[x] = w;
                self.mate[y] = x2;
                self.mate[x2] = y;
                self.mate[y2] = NONE;
            }
        }
    }

    fn undo(&mut self, mv: Move) {
        match mv {
            Move::Rotate { w, x, y } => {
                self.mate[w] = NONE;
                self.mate[x] = y;
                self.mate[y] = x;
            }
            Move::Shift { w, x, y, x2, y2 } => {
                self.mate[w] = NONE;
                self.mate[x] = y;
                self.mate[y] = x;
                self.mate[x2] = y2;
                self.mate[y2] = x2;
            }
        }
    }

    /// Change in `(#free, #special)` if `mv` were applied.
    fn delta(&mut self, mv: Move, scratch: &mut Vec<usize>) -> (i64, i64) {
        let (path, removed, added): (&[usize], [(usize, usize); 2], [(usize, usize); 2]) = match mv {
            Move::Rotate { w, x, y } => (&[w, x, y][..], [(x, y), (NONE, NONE)], [(w, x), (NONE, NONE)]),
            Move::Shift { w, x, y, x2, y2 } => (&[w, x, y, x2, y2][..], [(x, y), (x2, y2)], [(w, x), (y, x2)]),
        };
        scratch.clear();
        for &p in path {
            scratch.push(p);
            scratch.extend_from_slice(self.g.neighbors(p));
        }
        scratch.sort_unstable();
        scratch.dedup();

        let count = |c: &Climber, s: &[usize]| s.iter().filter(|&&u| c.is_free(u)).count() as i64;
        let before = count(self, scratch);
        self.apply(mv);
        let after = count(self, scratch);
        self.undo(mv);

        let specials = |edges: &[(usize, usize)]| {
            edges
                .iter()
                .filter(|&&(a, b)| a != NONE && (self.special)(a, b))
                .count() as i64
        };
        (after - before, specials(&added) - specials(&removed))
    }

    /// Best-improvement descent; ties go to the move found first in vertex
    /// order.
    fn climb(&mut self) {
        let g = self.g;
        let n = g.n();
        let mut scratch = Vec::new();
        loop {
            let mut best: Option<((i64, i64), Move)> = None;
            for w in 0..n {
                if self.mate[w] != NONE {
                    continue;
                }
                for &x in g.neighbors(w) {
                    let y = self.mate[x];
                    if y == NONE {
                        continue;
                    }
                    let mut consider = |c: &mut Self, mv: Move| {
                        let d = c.delta(mv, &mut scratch);
                        if d > (0, 0) && best.is_none_or(|(b, _)| d > b) {
                            best = Some((d, mv));
                        }
                    };
                    consider(self, Move::Rotate { w, x, y });
                    for &x2 in g.neighbors(y) {
                        let y2 = self.mate[x2];
                        if x2 == x || x2 == w || y2 == NONE {
                            continue;
                        }
                        consider(self, Move::Shift { w, x, y, x2, y2 });
                    }
                }
            }
            match best {
                Some((_, mv)) => self.apply(mv),
                None => break,
            }
        }
    }
}
