//! The split `V = X ∪ Y` into high- and low-degree vertices, with all arcs
//! inside `X` removed, and the quantities derived from a split of `X`.

use serde::Serialize;

use super::gap::{min_gap_partition_with, GapBudget, GapMode};
use crate::digraph::Digraph;

/// Smallest integer `t` with `t^4 >= n^3`, i.e. `ceil(n^(3/4))`.
pub fn default_threshold(n: usize) -> usize {
    let cube = (n as u128).pow(3);
    let mut t = (n as f64).powf(0.75).floor() as u128;
    while t > 0 && (t - 1).pow(4) >= cube {
        t -= 1;
    }
    while t.pow(4) < cube {
        t += 1;
    }
    t as usize
}

#[derive(Clone, Debug)]
pub struct SplitContext {
    /// High-degree vertices, ascending.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub in_x: Vec<bool>,
    pub threshold: usize,
    /// Input digraph without arcs inside `X`.
    pub stripped: Digraph,
    /// Arc count of `stripped`.
    pub m: usize,
    /// Minimum semidegree of the input digraph.
    pub d: usize,
    /// `s+(v)` in `stripped`, aligned with `x`.
    pub splus: Vec<i64>,
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub theta: i64,
    pub gap_mode: GapMode,
    /// Vertices of `X` with `|s+(v)| >= theta`, ascending.
    pub huge: Vec<usize>,
    pub alpha: usize,
    pub beta: usize,
    /// `|s+|` over `huge`, descending.
    pub deltas: Vec<i64>,
    /// Sum of `|s+|` over `X` minus `huge`.
    pub g: i64,
    /// Sum over `X` of `min(d+, d-)`.
    pub b: i64,
    /// Essential components of `D[Y]`, filled in by the engine.
    pub tau: usize,
}

impl SplitContext {
    pub fn delta1(&self) -> i64 {
        self.deltas.first().copied().unwrap_or(0)
    }

    /// `(e(X, Y), e(Y, X))` in the stripped digraph, counted arc by arc.
    pub fn xy_cuts(&self) -> (usize, usize) {
        let mut forward = 0;
        let mut backward = 0;
        for &(u, v) in self.stripped.arcs() {
            match (self.in_x[u], self.in_x[v]) {
                (true, false) => forward += 1,
                (false, true) => backward += 1,
                _ => {}
            }
        }
        (forward, backward)
    }

    /// Whether `v` in `X` is forward: in `X1` with `s+ > 0` or in `X2` with `s+ < 0`.
    pub fn is_forward(&self, v: usize) -> bool {
        let s = self.splus_of(v);
        (self.x1.binary_search(&v).is_ok() && s > 0) || (self.x2.binary_search(&v).is_ok() && s < 0)
    }

    pub fn splus_of(&self, v: usize) -> i64 {
        let i = self.x.binary_search(&v).expect("vertex of X");
        self.splus[i]
    }

    /// Side of every vertex of `X`: `Some(true)` for `X1`, `Some(false)` for `X2`.
    pub fn x_sides(&self) -> Vec<Option<bool>> {
        let mut sides = vec![None; self.in_x.len()];
        for &v in &self.x1 {
            sides[v] = Some(true);
        }
        for &v in &self.x2 {
            sides[v] = Some(false);
        }
        sides
    }

    /// Fixes `X1`, `X2` and recomputes every quantity that depends on them.
    pub fn set_partition(&mut self, mut x1: Vec<usize>, mut x2: Vec<usize>, mode: GapMode) {
        x1.sort_unstable();
        x2.sort_unstable();
        let theta = x1.iter().map(|&v| self.splus_of(v)).sum::<i64>() - x2.iter().map(|&v| self.splus_of(v)).sum::<i64>();
        assert!(theta >= 0, "gap must be oriented so that theta >= 0");
        self.x1 = x1;
        self.x2 = x2;
        self.theta = theta;
        self.gap_mode = mode;

        self.huge = self
            .x
            .iter()
            .zip(&self.splus)
            .filter(|&(_, &s)| s.abs() >= theta)
            .map(|(&v, _)| v)
            .collect();
        self.alpha = self.huge.len();
        self.beta = self.alpha.div_ceil(2);
        let mut deltas: Vec<i64> = self.huge.iter().map(|&v| self.splus_of(v).abs()).collect();
        deltas.sort_unstable_by(|a, b| b.cmp(a));
        self.deltas = deltas;
        self.g = self.splus.iter().map(|s| s.abs()).filter(|&s| s < theta).sum();
    }

    /// Splits `X` with [`min_gap_partition_with`].
    pub fn minimize_gap(&mut self, budget: &GapBudget) {
        let part = min_gap_partition_with(&self.splus, budget);
        let x1 = part.x1.iter().map(|&i| self.x[i]).collect();
        let x2 = part.x2.iter().map(|&i| self.x[i]).collect();
        self.set_partition(x1, x2, part.mode);
        debug_assert_eq!(self.theta, part.theta);
    }
}

/// Splits off `X = {v : d(v) >= threshold}` (default `ceil(n^(3/4))`) and
/// removes the arcs inside `X`. `X1`, `X2` start empty.
pub fn prepare_split(d: &Digraph, threshold: Option<usize>) -> SplitContext {
    let n = d.n();
    let threshold = threshold.unwrap_or_else(|| default_threshold(n));
    let in_x: Vec<bool> = (0..n).map(|v| d.degree(v) >= threshold).collect();
    let x: Vec<usize> = (0..n).filter(|&v| in_x[v]).collect();
    let y: Vec<usize> = (0..n).filter(|&v| !in_x[v]).collect();
    let stripped = d.without_arcs_within(&in_x);
    let splus: Vec<i64> = x
        .iter()
        .map(|&v| stripped.out_degree(v) as i64 - stripped.in_degree(v) as i64)
        .collect();
    let b = x
        .iter()
        .map(|&v| stripped.out_degree(v).min(stripped.in_degree(v)) as i64)
        .sum();
    let mut ctx = SplitContext {
        m: stripped.m(),
        d: d.min_semidegree(),
        x,
        y,
        in_x,
        threshold,
        stripped,
        splus,
        x1: Vec::new(),
        x2: Vec::new(),
        theta: 0,
        gap_mode: GapMode::Exact,
        huge: Vec::new(),
        alpha: 0,
        beta: 0,
        deltas: Vec::new(),
        g: 0,
        b,
        tau: 0,
    };
    let all = ctx.x.clone();
    // X in X1 and nothing in X2 is a placeholder until the gap is minimized
    let (pos, neg): (Vec<usize>, Vec<usize>) = all.into_iter().partition(|&v| ctx.splus_of(v) >= 0);
    ctx.set_partition(pos, neg, GapMode::Local);
    ctx
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitSummary {
    pub threshold: usize,
    pub x: Vec<usize>,
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub y_size: usize,
    pub m_stripped: usize,
    pub theta: i64,
    pub gap_mode: GapMode,
    pub alpha: usize,
    pub beta: usize,
    pub delta1: i64,
    pub g: i64,
    pub b: i64,
    pub tau: usize,
    pub e_xy: usize,
    pub e_yx: usize,
}

impl SplitContext {
    pub fn summary(&self) -> SplitSummary {
        let (e_xy, e_yx) = self.xy_cuts();
        SplitSummary {
            threshold: self.threshold,
            x: self.x.clone(),
            x1: self.x1.clone(),
            x2: self.x2.clone(),
            y_size: self.y.len(),
            m_stripped: self.m,
            theta: self.theta,
            gap_mode: self.gap_mode,
            alpha: self.alpha,
            beta: self.beta,
            delta1: self.delta1(),
            g: self.g,
            b: self.b,
            tau: self.tau,
            e_xy,
            e_yx,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_is_exact() {
        assert_eq!(default_threshold(16), 8);
        assert_eq!(default_threshold(81), 27);
        assert_eq!(default_threshold(82), 28);
        assert_eq!(default_threshold(1), 1);
        assert_eq!(default_threshold(0), 0);
    }

    #[test]
    fn hub_lands_in_x() {
        // vertex 0 has total degree 10, the rest stay below 8
        let mut arcs: Vec<(usize, usize)> = (1..6).map(|v| (0, v)).collect();
        arcs.extend((6..11).map(|v| (v, 0)));
        arcs.extend((1..15).map(|v| (v, v + 1)));
        let d = Digraph::from_arcs(16, arcs).unwrap();
        let ctx = prepare_split(&d, None);
        assert_eq!(ctx.threshold, 8);
        assert_eq!(ctx.x, vec![0]);
        assert_eq!(ctx.stripped.m(), d.m());
    }

    #[test]
    fn arcs_inside_x_are_removed() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let ctx = prepare_split(&d, Some(2));
        assert_eq!(ctx.x.len(), 3);
        assert_eq!(ctx.m, 0);
        let ctx = prepare_split(&d, None);
        assert!(ctx.x.is_empty());
        assert_eq!(ctx.stripped, d);
    }
}
