//! Inequality records evaluated on a concrete split.
//!
//! Branch records say which case applies; assertion records are facts that
//! must hold whenever they are applicable, so a failing assertion signals a
//! bug or a violated precondition.

use serde::Serialize;

use super::gap::GapMode;
use super::sampling::{ExpectedCut, TrialStats};
use super::split::{SplitContext, SplitSummary};
use super::stars::StarSummary;
use crate::tight::ComponentSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Branch,
    Assertion,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityRecord {
    pub name: String,
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub status: RecordStatus,
    pub kind: RecordKind,
}

impl InequalityRecord {
    fn new(name: &str, relation: &str, lhs: f64, rhs: f64, status: RecordStatus, kind: RecordKind) -> Self {
        InequalityRecord {
            name: name.to_string(),
            relation: relation.to_string(),
            lhs,
            rhs,
            status,
            kind,
        }
    }

    fn assertion(name: &str, relation: &str, lhs: i64, rhs: i64, applicable: bool, holds: bool) -> Self {
        let status = match (applicable, holds) {
            (false, _) => RecordStatus::NotApplicable,
            (true, true) => RecordStatus::Pass,
            (true, false) => RecordStatus::Fail,
        };
        InequalityRecord::new(name, relation, lhs as f64, rhs as f64, status, RecordKind::Assertion)
    }

    pub fn is_failed_assertion(&self) -> bool {
        self.kind == RecordKind::Assertion && self.status == RecordStatus::Fail
    }
}

pub const SHORTCUT: &str = "theta <= m/(2d+1)";
pub const FORWARD_HUGE: &str = "forward vertices are huge";
pub const FORWARD_SURPLUS: &str = "forward vertices have s >= theta + g";
pub const TAU_BOUND: &str = "(2d+1) tau <= |Y| + 2 min(e(X,Y), e(Y,X))";
pub const MAX_CUT_FLOOR: &str = "max(e(X,Y), e(Y,X)) >= beta theta + b";
pub const MIN_CUT_CEILING: &str = "min(e(X,Y), e(Y,X)) <= 2 beta Delta1 - (beta+1) theta + b";
pub const IDENTITY: &str = "e(X,Y) + e(Y,X) = sum Delta + g + 2b";
pub const ARC_FLOOR: &str = "m >= beta theta + b + d|Y|";
pub const ALPHA: &str = "1 <= alpha <= m/theta < 2d+1";
pub const MAIN: &str = "2m + (2d+1)n - 2(2d+1) theta - (2d+1) tau >= 0";
pub const CHAIN: &str = "4d|Y| - 4 beta Delta1 - 4(d-beta) theta >= 0";

/// Every record for a split whose `X1`, `X2` and `tau` are set.
///
/// Records that rely on a globally minimal gap are marked not applicable in
/// local gap mode, and those that rely on `theta > m/(2d+1)` are marked not
/// applicable otherwise.
pub fn verify_claims(ctx: &SplitContext) -> Vec<InequalityRecord> {
    let n = ctx.in_x.len() as i64;
    let m = ctx.m as i64;
    let d = ctx.d as i64;
    let k = 2 * d + 1;
    let y = ctx.y.len() as i64;
    let tau = ctx.tau as i64;
    let (theta, b, g) = (ctx.theta, ctx.b, ctx.g);
    let alpha = ctx.alpha as i64;
    let beta = ctx.beta as i64;
    let delta1 = ctx.delta1();
    let (exy, eyx) = ctx.xy_cuts();
    let (exy, eyx) = (exy as i64, eyx as i64);
    let (lo, hi) = (exy.min(eyx), exy.max(eyx));

    let big = theta * k > m;
    let exact = ctx.gap_mode == GapMode::Exact;
    let forward_min = ctx
        .x
        .iter()
        .filter(|&&v| ctx.is_forward(v))
        .map(|&v| ctx.splus_of(v).abs())
        .min();

    let mut records = vec![InequalityRecord::new(
        SHORTCUT,
        "<=",
        theta as f64,
        m as f64 / k as f64,
        if big { RecordStatus::Fail } else { RecordStatus::Pass },
        RecordKind::Branch,
    )];
    let forward = forward_min.unwrap_or(0);
    records.push(InequalityRecord::assertion(
        FORWARD_HUGE,
        ">=",
        forward,
        theta,
        exact && big,
        forward_min.is_some() && forward >= theta,
    ));
    records.push(InequalityRecord::assertion(
        FORWARD_SURPLUS,
        ">=",
        forward,
        theta + g,
        exact && big,
        forward_min.is_some() && forward >= theta + g,
    ));
    let rhs3 = y + 2 * lo;
    records.push(InequalityRecord::assertion(TAU_BOUND, "<=", k * tau, rhs3, true, k * tau <= rhs3));
    let rhs4 = beta * theta + b;
    records.push(InequalityRecord::assertion(MAX_CUT_FLOOR, ">=", hi, rhs4, true, hi >= rhs4));
    let rhs5 = 2 * beta * delta1 - (beta + 1) * theta + b;
    records.push(InequalityRecord::assertion(MIN_CUT_CEILING, "<=", lo, rhs5, exact, lo <= rhs5));
    let sum_delta: i64 = ctx.deltas.iter().sum();
    let rhs_id = sum_delta + g + 2 * b;
    records.push(InequalityRecord::assertion(IDENTITY, "=", exy + eyx, rhs_id, true, exy + eyx == rhs_id));
    let floor = beta * theta + b + d * y;
    records.push(InequalityRecord::assertion(ARC_FLOOR, ">=", m, floor, true, m >= floor));

    let alpha_holds = alpha >= 1 && alpha * theta <= m && m < k * theta;
    let mut alpha_record = InequalityRecord::assertion(ALPHA, "in", alpha, 0, exact && big, alpha_holds);
    alpha_record.rhs = if theta > 0 { m as f64 / theta as f64 } else { 0.0 };
    records.push(alpha_record);

    let main = 2 * m + k * n - 2 * k * theta - k * tau;
    records.push(InequalityRecord::assertion(MAIN, ">=", main, 0, exact || !big, main >= 0));
    let chain = 4 * d * y - 4 * beta * delta1 - 4 * (d - beta) * theta;
    records.push(InequalityRecord::assertion(CHAIN, ">=", chain, 0, exact && big, chain >= 0));
    records
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dense,
    Pipeline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundStatus {
    Met,
    Missed,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MatchingSummary {
    pub size: usize,
    pub free: usize,
    pub nonfree: usize,
    pub special: usize,
    pub refinement_mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub mode: Mode,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub d: usize,
    pub n: usize,
    pub m_original: usize,
    pub m_stripped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<ComponentSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<MatchingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stars: Option<StarSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_cut: Option<ExpectedCut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial_stats: Option<TrialStats>,
    pub records: Vec<InequalityRecord>,
    /// `d / (2(2d+1))`.
    pub bound_ratio: f64,
    /// `bound_ratio - epsilon`, the floor checked against the original arc count.
    pub target_ratio: f64,
    /// `minDir / m` with `m` after removing arcs inside `X`.
    pub achieved_ratio: f64,
    pub achieved_ratio_original: f64,
    pub bound_status: BoundStatus,
    pub warnings: Vec<String>,
}

impl Certificate {
    pub fn failed_assertions(&self) -> Vec<&InequalityRecord> {
        self.records.iter().filter(|r| r.is_failed_assertion()).collect()
    }

    pub fn record(&self, name: &str) -> Option<&InequalityRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Digraph;
    use crate::engine::split::prepare_split;

    fn status(records: &[InequalityRecord], name: &str) -> RecordStatus {
        records.iter().find(|r| r.name == name).unwrap().status
    }

    #[test]
    fn empty_x_passes_the_shortcut() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let mut ctx = prepare_split(&d, None);
        ctx.minimize_gap(&Default::default());
        ctx.tau = 1;
        let records = verify_claims(&ctx);
        assert_eq!(status(&records, SHORTCUT), RecordStatus::Pass);
        assert_eq!(status(&records, FORWARD_HUGE), RecordStatus::NotApplicable);
        assert_eq!(status(&records, CHAIN), RecordStatus::NotApplicable);
        assert!(records.iter().all(|r| !r.is_failed_assertion()));
    }

    #[test]
    fn single_huge_vertex_makes_min_cut_ceiling_equal_b() {
        // hub 0 sends arcs to 1..=4 and receives one from 5
        let arcs = [(0, 1), (0, 2), (0, 3), (0, 4), (5, 0), (1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
        let d = Digraph::from_arcs(6, arcs).unwrap();
        let mut ctx = prepare_split(&d, Some(5));
        ctx.minimize_gap(&Default::default());
        assert_eq!(ctx.x, vec![0]);
        assert_eq!((ctx.alpha, ctx.beta, ctx.g), (1, 1, 0));
        assert_eq!(ctx.delta1(), ctx.theta);
        let records = verify_claims(&ctx);
        let ceiling = records.iter().find(|r| r.name == MIN_CUT_CEILING).unwrap();
        assert_eq!(ceiling.rhs, ctx.b as f64);
        assert_eq!(ctx.b, 1);
    }
}
