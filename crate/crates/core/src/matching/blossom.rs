//! Edmonds' blossom-contraction search for augmenting paths.
//!
//! The solver keeps its mate array between calls so callers can warm-start it
//! from a matching that is one or two augmentations short of maximum.

use std::collections::VecDeque;

use crate::graph::UndirectedGraph;

pub(crate) const NONE: usize = usize::MAX;

pub(crate) struct BlossomSolver<'g> {
    g: &'g UndirectedGraph,
    blocked: Vec<bool>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> BlossomSolver<'g> {
    pub(crate) fn new(g: &'g UndirectedGraph) -> Self {
        let n = g.n();
        BlossomSolver {
            g,
            blocked: vec![false; n],
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Excludes `v` from the search. A blocked vertex must be unmatched.
    pub(crate) fn block(&mut self, v: usize) {
        debug_assert_eq!(self.mate[v], NONE);
        self.blocked[v] = true;
    }

    /// Starts from an existing matching (`NONE` marks unmatched vertices).
    pub(crate) fn set_mate(&mut self, mate: &[usize]) {
        self.mate.copy_from_slice(mate);
    }

    pub(crate) fn into_mate(self) -> Vec<usize> {
        self.mate
    }

    pub(crate) fn size(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    /// Matches adjacent exposed vertices in index order.
    pub(crate) fn greedy(&mut self) {
        for v in 0..self.g.n() {
            if self.mate[v] != NONE || self.blocked[v] {
                continue;
            }
            let partner = self
                .g
                .neighbors(v)
                .iter()
                .copied()
                .find(|&w| self.mate[w] == NONE && !self.blocked[w]);
            if let Some(w) = partner {
                self.mate[v] = w;
                self.mate[w] = v;
            }
        }
    }

    /// Augments until maximum. One pass suffices: a vertex with no augmenting
    /// path never gains one after later augmentations.
    pub(crate) fn solve(&mut self) -> usize {
        for v in 0..self.g.n() {
            if self.mate[v] == NONE && !self.blocked[v] {
                self.augment_from(v);
            }
        }
        self.size()
    }

    /// Searches for an augmenting path rooted at the exposed vertex `root` and
    /// flips it if one exists.
    pub(crate) fn augment_from(&mut self, root: usize) -> bool {
        match self.find_path(root) {
            Some(end) => {
                let mut v = end;
                while v != NONE {
                    let pv = self.parent[v];
                    let next = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = next;
                }
                true
            }
            None => false,
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.lca_mark.fill(false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, blossom_base: usize, mut child: usize) {
        while self.base[v] != blossom_base {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.blocked[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let current = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, current, to);
                    self.mark_path(to, current, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = current;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// Mate array of a maximum matching of `g`.
pub(crate) fn maximum_mate(g: &UndirectedGraph) -> Vec<usize> {
    let mut solver = BlossomSolver::new(g);
    solver.greedy();
    solver.solve();
    solver.into_mate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size_of(n: usize, edges: &[(usize, usize)]) -> usize {
        let g = UndirectedGraph::from_edges(n, edges.iter().copied()).unwrap();
        maximum_mate(&g).iter().filter(|&&m| m != NONE).count() / 2
    }

    #[test]
    fn finds_augmenting_paths_through_blossoms() {
        // triangle 0-1-2 with pendant paths forcing a blossom contraction
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (4, 5)];
        assert_eq!(size_of(6, &edges), 3);
        // Petersen graph has a perfect matching
        let petersen = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        assert_eq!(size_of(10, &petersen), 5);
    }

    #[test]
    fn blocked_vertices_are_skipped() {
        let g = UndirectedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut solver = BlossomSolver::new(&g);
        solver.block(1);
        assert_eq!(solver.solve(), 0);
    }
}
