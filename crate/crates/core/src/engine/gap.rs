//! Splitting the high-degree set so that the signed imbalance
//! `theta = sum_{X1} s+(v) - sum_{X2} s+(v)` is as small as possible.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GapMode {
    /// `|theta|` is the global minimum.
    Exact,
    /// `|theta|` cannot be lowered by moving a single vertex.
    Local,
}

/// Limits for the exact solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GapBudget {
    /// Largest `sum |s+|` handled by the subset-sum table.
    pub max_sum: u64,
    /// Largest set handled by meet-in-the-middle.
    pub max_split_len: usize,
    /// Starting points for local search.
    pub local_starts: usize,
}

impl Default for GapBudget {
    fn default() -> Self {
        GapBudget {
            max_sum: 10_000_000,
            max_split_len: 40,
            local_starts: 16,
        }
    }
}

/// A split of the input positions with `theta >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapPartition {
    pub x1: Vec<usize>,
    pub x2: Vec<usize>,
    pub theta: i64,
    pub mode: GapMode,
}

pub fn min_gap_partition(splus: &[i64]) -> GapPartition {
    min_gap_partition_with(splus, &GapBudget::default())
}

pub fn min_gap_partition_with(splus: &[i64], budget: &GapBudget) -> GapPartition {
    let weights: Vec<u64> = splus.iter().map(|s| s.unsigned_abs()).collect();
    let total: u64 = weights.iter().sum();
    let (forward, mode) = if total <= budget.max_sum {
        (subset_sum_table(&weights, total), GapMode::Exact)
    } else if weights.len() <= budget.max_split_len {
        (meet_in_the_middle(&weights, total), GapMode::Exact)
    } else {
        (local_search(&weights, budget.local_starts), GapMode::Local)
    };
    assemble(splus, &forward, mode)
}

/// Turns a choice of forward positions into parts. A forward vertex sits in
/// `X1` when `s+ > 0` and in `X2` when `s+ < 0`; zero entries alternate.
fn assemble(splus: &[i64], forward: &[bool], mode: GapMode) -> GapPartition {
    let mut x1 = Vec::new();
    let mut x2 = Vec::new();
    let mut zeros = 0usize;
    let mut theta = 0i64;
    for (i, &s) in splus.iter().enumerate() {
        let first = match s.signum() {
            0 => {
                zeros += 1;
                zeros % 2 == 1
            }
            1 => forward[i],
            _ => !forward[i],
        };
        if first {
            x1.push(i);
            theta += s;
        } else {
            x2.push(i);
            theta -= s;
        }
    }
    if theta < 0 {
        std::mem::swap(&mut x1, &mut x2);
        theta = -theta;
    }
    GapPartition { x1, x2, theta, mode }
}

/// Picks a subset whose weight is the smallest value `>= total / 2` that any
/// subset reaches, by finding the largest reachable sum `<= total / 2` and
/// taking the complement.
fn subset_sum_table(weights: &[u64], total: u64) -> Vec<bool> {
    let half = (total / 2) as usize;
    // first item that reached each sum; sums below `half` only
    let mut first = vec![u32::MAX; half + 1];
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for (i, &w) in weights.iter().enumerate() {
        let w = w as usize;
        if w == 0 || w > half {
            continue;
        }
        for s in (w..=half).rev() {
            if !reachable[s] && reachable[s - w] {
                reachable[s] = true;
                first[s] = i as u32;
            }
        }
    }
    let best = (0..=half).rev().find(|&s| reachable[s]).unwrap_or(0);
    let mut chosen = vec![false; weights.len()];
    let mut s = best;
    while s > 0 {
        let i = first[s] as usize;
        chosen[i] = true;
        s -= weights[i] as usize;
    }
    chosen.iter().map(|&c| !c).collect()
}

fn half_sums(weights: &[u64]) -> Vec<(u64, u64)> {
    let mut sums = Vec::with_capacity(1 << weights.len());
    for mask in 0..1u64 << weights.len() {
        let s = weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &w)| w)
            .sum();
        sums.push((s, mask));
    }
    sums
}

fn meet_in_the_middle(weights: &[u64], total: u64) -> Vec<bool> {
    let half = total / 2;
    let (left, right) = weights.split_at(weights.len() / 2);
    let left_sums = half_sums(left);
    let mut right_sums = half_sums(right);
    right_sums.sort_unstable();
    right_sums.dedup_by_key(|p| p.0);

    let mut best: Option<(u64, u64, u64)> = None;
    for &(a, mask_a) in &left_sums {
        if a > half {
            continue;
        }
        let idx = right_sums.partition_point(|&(b, _)| a + b <= half);
        if idx == 0 {
            continue;
        }
        let (b, mask_b) = right_sums[idx - 1];
        if best.is_none_or(|(s, _, _)| a + b > s) {
            best = Some((a + b, mask_a, mask_b));
        }
    }
    let (_, mask_a, mask_b) = best.expect("the empty subset always fits");
    let mut forward = vec![true; weights.len()];
    for i in 0..left.len() {
        if mask_a >> i & 1 == 1 {
            forward[i] = false;
        }
    }
    for i in 0..right.len() {
        if mask_b >> i & 1 == 1 {
            forward[left.len() + i] = false;
        }
    }
    forward
}

fn local_search(weights: &[u64], starts: usize) -> Vec<bool> {
    let n = weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weights[i]), i));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut best: Option<(u64, Vec<bool>)> = None;

    for start in 0..starts.max(1) {
        if start > 0 {
            order.shuffle(&mut rng);
        }
        // largest remaining weight goes to the lighter side
        let mut forward = vec![false; n];
        let mut gap: i64 = 0;
        for &i in &order {
            let w = weights[i] as i64;
            if gap <= 0 {
                forward[i] = true;
                gap += w;
            } else {
                gap -= w;
            }
        }
        loop {
            let mut improved = false;
            for i in 0..n {
                let w = weights[i] as i64;
                let moved = if forward[i] { gap - 2 * w } else { gap + 2 * w };
                if moved.abs() < gap.abs() {
                    forward[i] = !forward[i];
                    gap = moved;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
        let value = gap.unsigned_abs();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, forward));
        }
    }
    best.expect("at least one start").1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed_sum(splus: &[i64], p: &GapPartition) -> i64 {
        p.x1.iter().map(|&i| splus[i]).sum::<i64>() - p.x2.iter().map(|&i| splus[i]).sum::<i64>()
    }

    #[test]
    fn small_examples() {
        let p = min_gap_partition(&[5, -3, 2]);
        assert_eq!((p.theta, p.mode), (0, GapMode::Exact));
        let p = min_gap_partition(&[7]);
        assert_eq!((p.theta, p.x1.clone()), (7, vec![0]));
        let p = min_gap_partition(&[-7]);
        assert_eq!((p.theta, p.x2.clone()), (7, vec![0]));
        let p = min_gap_partition(&[]);
        assert_eq!(p.theta, 0);
        assert!(p.x1.is_empty() && p.x2.is_empty());
    }

    #[test]
    fn all_solvers_agree_on_a_hard_instance() {
        let splus = [31, -17, 12, 9, -44, 5, 28, -3, 60, -21];
        let exact = min_gap_partition(&splus);
        assert_eq!(signed_sum(&splus, &exact), exact.theta);
        let budget = GapBudget {
            max_sum: 0,
            ..GapBudget::default()
        };
        let split = min_gap_partition_with(&splus, &budget);
        assert_eq!(split.theta, exact.theta);
        assert_eq!(signed_sum(&splus, &split), split.theta);
        let local = min_gap_partition_with(
            &splus,
            &GapBudget {
                max_sum: 0,
                max_split_len: 0,
                local_starts: 8,
            },
        );
        assert_eq!(local.mode, GapMode::Local);
        assert!(local.theta >= exact.theta);
        assert_eq!(signed_sum(&splus, &local), local.theta);
    }
}
