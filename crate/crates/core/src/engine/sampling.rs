//! Monte Carlo bisections.
//!
//! A sample fixes `X1` on side 1 and `X2` on side 2, flips a coin for the
//! center of every star (its leaves go to the other side) and for every
//! vertex of `U`, and is then rebalanced to an exact bisection. Each trial
//! draws from its own ChaCha stream keyed by `(seed, trial)`, so results do
//! not depend on thread count or scheduling.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::split::SplitContext;
use super::stars::StarDecomposition;
use super::{Bisection, EngineError};
use crate::digraph::Digraph;

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

struct Coins<'a> {
    rng: &'a mut ChaCha8Rng,
    word: u64,
    left: u32,
}

impl<'a> Coins<'a> {
    fn new(rng: &'a mut ChaCha8Rng) -> Self {
        Coins { rng, word: 0, left: 0 }
    }

    fn flip(&mut self) -> bool {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64;
        }
        let bit = self.word & 1 == 1;
        self.word >>= 1;
        self.left -= 1;
        bit
    }
}

/// Mean and standard deviation of both directed cuts over all samples,
/// taken before rebalancing.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialStats {
    pub trials: usize,
    pub mean_e12: f64,
    pub mean_e21: f64,
    pub std_e12: f64,
    pub std_e21: f64,
    /// Index of the returned sample.
    pub best_trial: usize,
    /// Samples whose rebalancing had to move a vertex of degree above `4C`.
    pub unrestricted_moves: usize,
    /// Samples whose rebalancing had to move a vertex of `X`.
    pub x_moves: usize,
}

/// Exact expected cut sizes, in quarter arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpectedCut {
    pub e12_quarters: u64,
    pub e21_quarters: u64,
}

impl ExpectedCut {
    pub fn e12(&self) -> f64 {
        self.e12_quarters as f64 / 4.0
    }

    pub fn e21(&self) -> f64 {
        self.e21_quarters as f64 / 4.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    Fixed(bool),
    Center(usize),
    Leaf(usize),
    Coin,
}

fn roles(n: usize, ctx: &SplitContext, dec: &StarDecomposition) -> Vec<Role> {
    let mut roles = vec![Role::Coin; n];
    for &v in &ctx.x1 {
        roles[v] = Role::Fixed(true);
    }
    for &v in &ctx.x2 {
        roles[v] = Role::Fixed(false);
    }
    for (i, star) in dec.stars.iter().enumerate() {
        roles[star.center] = Role::Center(i);
        for &l in &star.leaves {
            roles[l] = Role::Leaf(i);
        }
    }
    roles
}

/// `E[e12]` and `E[e21]` of an unbalanced sample. Arcs between fixed
/// vertices count fully, arcs touching exactly one fixed vertex count 1/2,
/// center-leaf arcs of one star count 1/2 in each direction, and every other
/// arc counts 1/4 in each direction.
pub fn expected_cut(d: &Digraph, ctx: &SplitContext, dec: &StarDecomposition) -> ExpectedCut {
    let roles = roles(d.n(), ctx, dec);
    let (mut e12, mut e21) = (0u64, 0u64);
    for &(u, v) in d.arcs() {
        match (roles[u], roles[v]) {
            (Role::Fixed(a), Role::Fixed(b)) => {
                if a && !b {
                    e12 += 4;
                } else if !a && b {
                    e21 += 4;
                }
            }
            (Role::Fixed(true), _) | (_, Role::Fixed(false)) => e12 += 2,
            (Role::Fixed(false), _) | (_, Role::Fixed(true)) => e21 += 2,
            (Role::Center(i), Role::Leaf(j)) | (Role::Leaf(i), Role::Center(j)) if i == j => {
                e12 += 2;
                e21 += 2;
            }
            (Role::Leaf(i), Role::Leaf(j)) if i == j => {}
            _ => {
                e12 += 1;
                e21 += 1;
            }
        }
    }
    ExpectedCut {
        e12_quarters: e12,
        e21_quarters: e21,
    }
}

/// Everything a trial needs, shared read-only between workers.
struct Plan<'a> {
    d: &'a Digraph,
    fixed: Vec<(usize, bool)>,
    stars: Vec<(usize, &'a [usize])>,
    coins: &'a [usize],
    /// Rebalancing tiers: low-degree `Y`, all of `Y`, everything.
    tiers: [Vec<usize>; 3],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
enum Fallback {
    #[default]
    None,
    Unrestricted,
    X,
}

#[derive(Clone, Copy, Debug)]
struct Outcome {
    trial: usize,
    e12_pre: usize,
    e21_pre: usize,
    min_dir: usize,
    fallback: Fallback,
}

struct Scratch {
    sides: Vec<bool>,
    out1: Vec<u32>,
    in1: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            sides: vec![false; n],
            out1: vec![0; n],
            in1: vec![0; n],
        }
    }
}

impl Plan<'_> {
    fn sample(&self, rng: &mut ChaCha8Rng, sides: &mut [bool]) {
        let mut coins = Coins::new(rng);
        for &(v, side) in &self.fixed {
            sides[v] = side;
        }
        for &(center, leaves) in &self.stars {
            let side = coins.flip();
            sides[center] = side;
            for &l in leaves {
                sides[l] = !side;
            }
        }
        for &v in self.coins {
            sides[v] = coins.flip();
        }
    }

    fn cuts(&self, sides: &[bool]) -> (usize, usize) {
        let (mut e12, mut e21) = (0, 0);
        for &(u, v) in self.d.arcs() {
            if sides[u] != sides[v] {
                if sides[u] {
                    e12 += 1;
                } else {
                    e21 += 1;
                }
            }
        }
        (e12, e21)
    }

    /// Cut sizes, and for every vertex the number of out- and in-neighbors
    /// on side 1.
    fn cuts_and_counts(&self, scratch: &mut Scratch) -> (usize, usize) {
        let sides = &scratch.sides;
        scratch.out1.fill(0);
        scratch.in1.fill(0);
        let (mut e12, mut e21) = (0, 0);
        for &(u, v) in self.d.arcs() {
            let (su, sv) = (sides[u], sides[v]);
            scratch.out1[u] += sv as u32;
            scratch.in1[v] += su as u32;
            if su != sv {
                if su {
                    e12 += 1;
                } else {
                    e21 += 1;
                }
            }
        }
        (e12, e21)
    }

    fn run(&self, seed: u64, trial: usize, scratch: &mut Scratch) -> Outcome {
        let mut rng = trial_rng(seed, trial as u64);
        self.sample(&mut rng, &mut scratch.sides);
        let (e12, e21) = self.cuts_and_counts(scratch);
        let (b12, b21, fallback) = self.rebalance(scratch, e12, e21);
        Outcome {
            trial,
            e12_pre: e12,
            e21_pre: e21,
            min_dir: b12.min(b21),
            fallback,
        }
    }

    /// Moves vertices off the larger side until the sizes differ by at most
    /// one, each time taking the vertex that leaves the largest
    /// `min(e12, e21)`, lowest index first among ties. Candidates come from
    /// the first tier that still has a vertex on the larger side. Expects the
    /// counts left by [`Plan::cuts_and_counts`].
    fn rebalance(&self, scratch: &mut Scratch, mut e12: usize, mut e21: usize) -> (usize, usize, Fallback) {
        let d = self.d;
        let sides = &mut scratch.sides;
        let n = sides.len();
        let ones = sides.iter().filter(|&&s| s).count();
        let mut excess = ones as i64 - (n - ones) as i64;
        if excess.abs() <= 1 {
            return (e12, e21, Fallback::None);
        }
        let mut fallback = Fallback::None;
        while excess.abs() > 1 {
            let from_one = excess > 0;
            let mut best: Option<(usize, usize, usize)> = None;
            for (tier, candidates) in self.tiers.iter().enumerate() {
                for &v in candidates {
                    if sides[v] != from_one {
                        continue;
                    }
                    let (out, inn) = (d.out_degree(v) as i64, d.in_degree(v) as i64);
                    let (o1, i1) = (scratch.out1[v] as i64, scratch.in1[v] as i64);
                    let (n12, n21) = if from_one {
                        (e12 as i64 + i1 - (out - o1), e21 as i64 + o1 - (inn - i1))
                    } else {
                        (e12 as i64 - i1 + (out - o1), e21 as i64 - o1 + (inn - i1))
                    };
                    let (n12, n21) = (n12 as usize, n21 as usize);
                    if best.is_none_or(|(_, b12, b21)| n12.min(n21) > b12.min(b21)) {
                        best = Some((v, n12, n21));
                    }
                }
                if best.is_some() {
                    fallback = fallback.max(match tier {
                        0 => Fallback::None,
                        1 => Fallback::Unrestricted,
                        _ => Fallback::X,
                    });
                    break;
                }
            }
            let (v, n12, n21) = best.expect("the larger side is nonempty");
            sides[v] = !from_one;
            e12 = n12;
            e21 = n21;
            for &w in d.out_neighbors(v) {
                if from_one {
                    scratch.in1[w] -= 1;
                } else {
                    scratch.in1[w] += 1;
                }
            }
            for &w in d.in_neighbors(v) {
                if from_one {
                    scratch.out1[w] -= 1;
                } else {
                    scratch.out1[w] += 1;
                }
            }
            excess += if from_one { -2 } else { 2 };
        }
        (e12, e21, fallback)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    sum12: u64,
    sum21: u64,
    sq12: u128,
    sq21: u128,
    best: Option<(usize, usize)>,
    unrestricted: usize,
    x_moves: usize,
}

impl Tally {
    fn add(mut self, o: Outcome) -> Self {
        self.sum12 += o.e12_pre as u64;
        self.sum21 += o.e21_pre as u64;
        self.sq12 += (o.e12_pre as u128).pow(2);
        self.sq21 += (o.e21_pre as u128).pow(2);
        match o.fallback {
            Fallback::None => {}
            Fallback::Unrestricted => self.unrestricted += 1,
            Fallback::X => self.x_moves += 1,
        }
        self.best = better(self.best, Some((o.min_dir, o.trial)));
        self
    }

    fn merge(self, other: Self) -> Self {
        Tally {
            sum12: self.sum12 + other.sum12,
            sum21: self.sum21 + other.sum21,
            sq12: self.sq12 + other.sq12,
            sq21: self.sq21 + other.sq21,
            best: better(self.best, other.best),
            unrestricted: self.unrestricted + other.unrestricted,
            x_moves: self.x_moves + other.x_moves,
        }
    }
}

/// Larger objective wins; equal objectives go to the lower trial index.
fn better(a: Option<(usize, usize)>, b: Option<(usize, usize)>) -> Option<(usize, usize)> {
    match (a, b) {
        (Some(x), Some(y)) => {
            if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
        (x, None) => x,
        (None, y) => y,
    }
}

fn mean_std(sum: u64, sq: u128, count: usize) -> (f64, f64) {
    let count = count as f64;
    let mean = sum as f64 / count;
    let var = (sq as f64 / count - mean * mean).max(0.0);
    (mean, var.sqrt())
}

/// Runs `trials` samples on `d` (the unstripped digraph) and returns the
/// best rebalanced one. `dec` must cover exactly `ctx.y`.
pub fn randomized_bisection(
    d: &Digraph,
    ctx: &SplitContext,
    dec: &StarDecomposition,
    trials: usize,
    seed: u64,
) -> Result<(Bisection, TrialStats), EngineError> {
    if trials == 0 {
        return Err(EngineError::ZeroTrials);
    }
    let n = d.n();
    let low_degree_cap = 4.0 * ctx.m as f64 / n.max(1) as f64;
    let low: Vec<usize> = ctx
        .y
        .iter()
        .copied()
        .filter(|&v| d.degree(v) as f64 <= low_degree_cap)
        .collect();
    let plan = Plan {
        d,
        fixed: ctx
            .x1
            .iter()
            .map(|&v| (v, true))
            .chain(ctx.x2.iter().map(|&v| (v, false)))
            .collect(),
        stars: dec.stars.iter().map(|s| (s.center, s.leaves.as_slice())).collect(),
        coins: &dec.u,
        tiers: [low, ctx.y.clone(), (0..n).collect()],
    };

    let tally = (0..trials)
        .into_par_iter()
        .map_init(|| Scratch::new(n), |scratch, t| plan.run(seed, t, scratch))
        .fold(Tally::default, Tally::add)
        .reduce(Tally::default, Tally::merge);

    let (_, best_trial) = tally.best.expect("at least one trial");
    let mut scratch = Scratch::new(n);
    plan.run(seed, best_trial, &mut scratch);
    let bisection = Bisection::from_sides(d, &scratch.sides);

    let (mean_e12, std_e12) = mean_std(tally.sum12, tally.sq12, trials);
    let (mean_e21, std_e21) = mean_std(tally.sum21, tally.sq21, trials);
    let stats = TrialStats {
        trials,
        mean_e12,
        mean_e21,
        std_e12,
        std_e21,
        best_trial,
        unrestricted_moves: tally.unrestricted,
        x_moves: tally.x_moves,
    };
    Ok((bisection, stats))
}

/// One unbalanced sample, for checking [`expected_cut`] empirically.
pub fn unbalanced_sample(d: &Digraph, ctx: &SplitContext, dec: &StarDecomposition, seed: u64, trial: u64) -> (usize, usize) {
    let plan = Plan {
        d,
        fixed: ctx
            .x1
            .iter()
            .map(|&v| (v, true))
            .chain(ctx.x2.iter().map(|&v| (v, false)))
            .collect(),
        stars: dec.stars.iter().map(|s| (s.center, s.leaves.as_slice())).collect(),
        coins: &dec.u,
        tiers: [Vec::new(), Vec::new(), Vec::new()],
    };
    let mut sides = vec![false; d.n()];
    plan.sample(&mut trial_rng(seed, trial), &mut sides);
    plan.cuts(&sides)
}

/// Best of `trials` uniformly random bisections, plus warnings when neither
/// `m >= 16n/eps^2` nor `max degree <= eps^2 m / 8` holds.
pub fn dense_random_bisection(
    d: &Digraph,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<(Bisection, Vec<String>), EngineError> {
    if trials == 0 {
        return Err(EngineError::ZeroTrials);
    }
    let n = d.n();
    let m = d.m() as f64;
    let mut warnings = Vec::new();
    let many_arcs = m >= 16.0 * n as f64 / (epsilon * epsilon);
    let low_degree = d.max_degree() as f64 <= epsilon * epsilon * m / 8.0;
    if !many_arcs && !low_degree {
        warnings.push(format!(
            "dense hypotheses not met: m = {} < 16n/eps^2 and max degree {} > eps^2 m/8",
            d.m(),
            d.max_degree()
        ));
    }

    let half = n.div_ceil(2);
    let draw = |trial: usize, order: &mut Vec<usize>, sides: &mut Vec<bool>| {
        let mut rng = trial_rng(seed, trial as u64);
        order.clear();
        order.extend(0..n);
        for i in 0..half {
            let j = rng.random_range(i..n);
            order.swap(i, j);
        }
        sides.fill(false);
        for &v in &order[..half] {
            sides[v] = true;
        }
    };
    let best = (0..trials)
        .into_par_iter()
        .map_init(
            || (Vec::with_capacity(n), vec![false; n]),
            |(order, sides), t| {
                draw(t, order, sides);
                Some((d.cut_stats_by_side(sides).min_dir, t))
            },
        )
        .reduce(|| None, better);
    let (_, trial) = best.expect("at least one trial");
    let mut order = Vec::with_capacity(n);
    let mut sides = vec![false; n];
    draw(trial, &mut order, &mut sides);
    Ok((Bisection::from_sides(d, &sides), warnings))
}
