//! Bisection engine.
//!
//! Very dense inputs go straight to uniform random sampling. Everything else
//! runs the pipeline: split off the high-degree set `X`, split `X` with the
//! smallest gap, decompose `D[Y]` into stars around a refined maximum
//! matching, and sample star-respecting bisections. Each run carries a
//! [`Certificate`] of the inequalities the analysis relies on, evaluated on
//! the realized split.

pub mod certificate;
pub mod gap;
pub mod sampling;
pub mod split;
pub mod stars;

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{CutStats, Digraph, GraphError};
use crate::matching::{maximum_matching_in, refine_matching_with, Matching, RefineOptions};
use crate::tight::{essential_components, ComponentReport};

pub use certificate::{verify_claims, BoundStatus, Certificate, InequalityRecord, MatchingSummary, Mode, RecordKind, RecordStatus};
pub use gap::{min_gap_partition, min_gap_partition_with, GapBudget, GapMode, GapPartition};
pub use sampling::{dense_random_bisection, expected_cut, randomized_bisection, unbalanced_sample, ExpectedCut, TrialStats};
pub use split::{default_threshold, prepare_split, SplitContext, SplitSummary};
pub use stars::{star_decomposition, star_decomposition_bounded, DecompositionError, Star, StarDecomposition};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("digraph has no vertices")]
    EmptyDigraph,
    #[error("trial count must be at least 1")]
    ZeroTrials,
    #[error("epsilon must lie in (0, 1/4), got {0}")]
    InvalidEpsilon(f64),
    #[error("could not build a thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cut verification failed: sampled {sampled:?}, recomputed {recomputed:?}")]
    CutMismatch { sampled: CutStats, recomputed: CutStats },
}

/// A vertex bipartition with part sizes differing by at most one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bisection {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    pub stats: CutStats,
}

impl Bisection {
    pub fn from_sides(d: &Digraph, in_part1: &[bool]) -> Self {
        let part1 = (0..d.n()).filter(|&v| in_part1[v]).collect();
        let part2 = (0..d.n()).filter(|&v| !in_part1[v]).collect();
        Bisection {
            part1,
            part2,
            stats: d.cut_stats_by_side(in_part1),
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.part1.len().abs_diff(self.part2.len()) <= 1
    }
}

/// `max(200, ceil(8 ln(1000) / eps^2))`.
pub fn default_trials(epsilon: f64) -> usize {
    let auto = (8.0 * 1000f64.ln() / (epsilon * epsilon)).ceil() as usize;
    auto.max(200)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EngineConfig {
    pub epsilon: f64,
    /// `None` picks [`default_trials`].
    pub trials: Option<usize>,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Degree cutoff for `X`; `None` uses `ceil(n^(3/4))`.
    pub threshold: Option<usize>,
    /// The dense branch runs when `m >= dense_constant * (2d+1)^2 * n`.
    pub dense_constant: u64,
    pub gap_budget: GapBudget,
    pub refine_restarts: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            epsilon: 0.02,
            trials: None,
            seed: 0,
            threads: None,
            threshold: None,
            dense_constant: 256,
            gap_budget: GapBudget::default(),
            refine_restarts: 20,
        }
    }
}

impl EngineConfig {
    pub fn resolved_trials(&self) -> usize {
        self.trials.unwrap_or_else(|| default_trials(self.epsilon))
    }

    fn validate(&self) -> Result<(), EngineError> {
        if !(self.epsilon > 0.0 && self.epsilon < 0.25) {
            return Err(EngineError::InvalidEpsilon(self.epsilon));
        }
        if self.trials == Some(0) {
            return Err(EngineError::ZeroTrials);
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct BisectOutcome {
    pub bisection: Bisection,
    pub certificate: Certificate,
}

/// Whether `m >= c (2d+1)^2 n`.
pub fn is_dense(d: &Digraph, dense_constant: u64) -> bool {
    let k = 2 * d.min_semidegree() as u128 + 1;
    d.m() as u128 >= dense_constant as u128 * k * k * d.n() as u128
}

pub fn optimal_bisect(d: &Digraph, config: &EngineConfig) -> Result<BisectOutcome, EngineError> {
    config.validate()?;
    if d.n() == 0 {
        return Err(EngineError::EmptyDigraph);
    }
    match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| EngineError::ThreadPool(e.to_string()))?
            .install(|| bisect_inner(d, config)),
        None => bisect_inner(d, config),
    }
}

fn bisect_inner(d: &Digraph, config: &EngineConfig) -> Result<BisectOutcome, EngineError> {
    let trials = config.resolved_trials();
    let semidegree = d.min_semidegree();
    let mut warnings = Vec::new();
    if d.n() < 50 {
        warnings.push(format!("n = {} is below 50; the bound is asymptotic", d.n()));
    }
    if semidegree == 0 {
        warnings.push("minimum semidegree is 0, so the bound is vacuous".to_string());
    }

    let (bisection, mut certificate) = if is_dense(d, config.dense_constant) {
        let eps = 1.0 / (4.0 * (2 * semidegree + 1) as f64);
        let (bisection, dense_warnings) = dense_random_bisection(d, eps, trials, config.seed)?;
        warnings.extend(dense_warnings);
        let k = 2 * semidegree as u64 + 1;
        let record = InequalityRecord {
            name: format!("m >= {}(2d+1)^2 n", config.dense_constant),
            relation: ">=".into(),
            lhs: d.m() as f64,
            rhs: (config.dense_constant * k * k * d.n() as u64) as f64,
            status: RecordStatus::Pass,
            kind: RecordKind::Branch,
        };
        let certificate = blank_certificate(d, config, Mode::Dense, trials, d.m(), vec![record]);
        (bisection, certificate)
    } else {
        pipeline(d, config, trials, &mut warnings)?
    };

    let recomputed = d.cut_sizes(&bisection.part1, &bisection.part2)?;
    if recomputed != bisection.stats || recomputed.total() != d.m() || !bisection.is_balanced() {
        return Err(EngineError::CutMismatch {
            sampled: bisection.stats,
            recomputed,
        });
    }
    finish_certificate(&mut certificate, &bisection, warnings);
    Ok(BisectOutcome { bisection, certificate })
}

/// Everything the pipeline computes before sampling.
pub struct Prepared {
    pub ctx: SplitContext,
    pub matching: Matching,
    pub components: ComponentReport,
    /// Vertices of `Y` (local labels) with degree at least `2m/(n eps)`.
    pub a_local: Vec<usize>,
    /// Star decomposition of the underlying graph of `D[Y]`, local labels.
    pub local: StarDecomposition,
    /// The same decomposition with global vertex labels.
    pub decomposition: StarDecomposition,
    pub warnings: Vec<String>,
}

/// Split, gap minimization, matching refinement, component census and
/// star decomposition.
pub fn prepare_pipeline(d: &Digraph, config: &EngineConfig) -> Result<Prepared, EngineError> {
    config.validate()?;
    let n = d.n();
    if n == 0 {
        return Err(EngineError::EmptyDigraph);
    }
    let mut warnings = Vec::new();
    let mut ctx = prepare_split(d, config.threshold);
    ctx.minimize_gap(&config.gap_budget);

    let (dy, _) = ctx.stripped.induced_subdigraph(&ctx.y)?;
    let gy = dy.underlying_graph();
    let start = maximum_matching_in(&gy, Some(&dy)).expect("companion digraph matches");
    let options = RefineOptions {
        restarts: config.refine_restarts,
        seed: config.seed,
    };
    let matching = refine_matching_with(&gy, Some(&dy), &start, &options).expect("start matching is maximum");
    let components = essential_components(&dy);
    ctx.tau = components.tau;

    let c = ctx.m as f64 / n as f64;
    let a_floor = 2.0 * c / config.epsilon;
    let a_local: Vec<usize> = (0..ctx.y.len())
        .filter(|&i| d.degree(ctx.y[i]) as f64 >= a_floor)
        .collect();
    let local = match star_decomposition_bounded(&gy, &a_local, &matching, components.tau_star) {
        Ok(dec) => dec,
        Err(DecompositionError::RemainderTooLarge {
            u,
            tau_star,
            a,
            decomposition,
        }) => {
            warnings.push(format!(
                "star decomposition leaves |U| = {u} > tau* + |A| = {tau_star} + {a}; matching refinement missed the optimum"
            ));
            *decomposition
        }
        Err(e) => return Err(e.into()),
    };
    let decomposition = local.relabel(&ctx.y);
    Ok(Prepared {
        ctx,
        matching,
        components,
        a_local,
        local,
        decomposition,
        warnings,
    })
}

fn pipeline(
    d: &Digraph,
    config: &EngineConfig,
    trials: usize,
    warnings: &mut Vec<String>,
) -> Result<(Bisection, Certificate), EngineError> {
    let Prepared {
        ctx,
        matching,
        components,
        a_local,
        local,
        decomposition: dec,
        warnings: prep_warnings,
    } = prepare_pipeline(d, config)?;
    warnings.extend(prep_warnings);

    let (bisection, stats) = randomized_bisection(d, &ctx, &dec, trials, config.seed)?;
    if stats.x_moves > 0 {
        warnings.push(format!(
            "{} of {} samples moved a vertex of X while rebalancing",
            stats.x_moves, trials
        ));
    }
    if stats.unrestricted_moves > 0 {
        warnings.push(format!(
            "{} of {} samples moved a vertex of degree above 4m/n while rebalancing",
            stats.unrestricted_moves, trials
        ));
    }
    let keeps_x = ctx.x1.iter().all(|v| bisection.part1.binary_search(v).is_ok())
        && ctx.x2.iter().all(|v| bisection.part2.binary_search(v).is_ok());
    if !keeps_x {
        warnings.push("returned bisection moved a vertex of X off its side".to_string());
    }

    let mut certificate = blank_certificate(d, config, Mode::Pipeline, trials, ctx.m, verify_claims(&ctx));
    certificate.split = Some(ctx.summary());
    certificate.components = Some(components.summary());
    certificate.matching = Some(MatchingSummary {
        size: matching.size(),
        free: matching.free.len(),
        nonfree: matching.nonfree.len(),
        special: matching.special.len(),
        refinement_mode: "heuristic".into(),
    });
    certificate.stars = Some(local.summary(a_local.len(), components.tau_star));
    certificate.expected_cut = Some(expected_cut(d, &ctx, &dec));
    certificate.trial_stats = Some(stats);
    Ok((bisection, certificate))
}

fn blank_certificate(
    d: &Digraph,
    config: &EngineConfig,
    mode: Mode,
    trials: usize,
    m_stripped: usize,
    records: Vec<InequalityRecord>,
) -> Certificate {
    let semidegree = d.min_semidegree();
    let bound_ratio = semidegree as f64 / (2.0 * (2 * semidegree + 1) as f64);
    Certificate {
        mode,
        epsilon: config.epsilon,
        trials,
        seed: config.seed,
        d: semidegree,
        n: d.n(),
        m_original: d.m(),
        m_stripped,
        split: None,
        components: None,
        matching: None,
        stars: None,
        expected_cut: None,
        trial_stats: None,
        records,
        bound_ratio,
        target_ratio: bound_ratio - config.epsilon,
        achieved_ratio: 0.0,
        achieved_ratio_original: 0.0,
        bound_status: BoundStatus::Vacuous,
        warnings: Vec::new(),
    }
}

fn ratio(numerator: usize, denominator: usize) -> f64 {
    if denominator == 0 {
        0.0
    } else {
        numerator as f64 / denominator as f64
    }
}

fn finish_certificate(certificate: &mut Certificate, bisection: &Bisection, warnings: Vec<String>) {
    let min_dir = bisection.stats.min_dir;
    certificate.achieved_ratio = ratio(min_dir, certificate.m_stripped);
    certificate.achieved_ratio_original = ratio(min_dir, certificate.m_original);
    certificate.bound_status = if certificate.d == 0 || certificate.m_original == 0 {
        BoundStatus::Vacuous
    } else if certificate.achieved_ratio_original >= certificate.target_ratio {
        BoundStatus::Met
    } else {
        BoundStatus::Missed
    };
    certificate.warnings = warnings;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parts {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsSummary {
    pub e12: usize,
    pub e21: usize,
    pub min_dir: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RngSummary {
    pub seed: u64,
    pub trials: usize,
}

/// The JSON result document of one run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub input: InputSummary,
    pub mode: Mode,
    pub bisection: Parts,
    pub stats: StatsSummary,
    pub certificate: Certificate,
    pub rng: RngSummary,
}

impl ResultDocument {
    pub fn new(d: &Digraph, outcome: &BisectOutcome) -> Self {
        let b = &outcome.bisection;
        let c = &outcome.certificate;
        ResultDocument {
            input: InputSummary {
                n: d.n(),
                m: d.m(),
                d: c.d,
            },
            mode: c.mode,
            bisection: Parts {
                part1: b.part1.clone(),
                part2: b.part2.clone(),
            },
            stats: StatsSummary {
                e12: b.stats.e12,
                e21: b.stats.e21,
                min_dir: b.stats.min_dir,
                ratio: ratio(b.stats.min_dir, d.m()),
            },
            certificate: c.clone(),
            rng: RngSummary {
                seed: c.seed,
                trials: c.trials,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result document serializes")
    }
}
