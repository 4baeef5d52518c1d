//! U-type lattice designs and the threshold-accepting (TA) search over them.
//!
//! A U-type design `U(n, q^s)` has `q` levels per column, each appearing
//! `n/q` times; level `l` sits at `(l − 0.5)/q` in the unit cube. TA walks
//! the space of such designs by swapping two entries of one column and
//! accepts a move whenever it worsens CD² by no more than the current
//! threshold.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{cd2, DesignMatrix, DiscrepancyCache};
use crate::error::{Error, Result};
use crate::rng::{stream_rng, STREAM_TA, STREAM_UTYPE};

/// Balanced `n × s` design over levels `1..=q`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTypeDesign {
    n: usize,
    q: usize,
    s: usize,
    levels: Vec<usize>,
}

impl UTypeDesign {
    /// Validates shape, level range and column balance.
    pub fn new(n: usize, q: usize, s: usize, levels: Vec<usize>) -> Result<Self> {
        check_shape(n, q, s)?;
        if levels.len() != n * s {
            return Err(Error::Shape(format!(
                "expected {} levels for a {n}x{s} design, got {}",
                n * s,
                levels.len()
            )));
        }
        let per_level = n / q;
        for j in 0..s {
            let mut counts = vec![0usize; q];
            for i in 0..n {
                let l = levels[i * s + j];
                if l == 0 || l > q {
                    return Err(Error::Shape(format!("level {l} at ({i}, {j}) outside 1..={q}")));
                }
                counts[l - 1] += 1;
            }
            if let Some(l) = counts.iter().position(|&c| c != per_level) {
                return Err(Error::Shape(format!(
                    "column {j} holds level {} {} times, expected {per_level}",
                    l + 1,
                    counts[l]
                )));
            }
        }
        Ok(Self { n, q, s, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn level(&self, i: usize, j: usize) -> usize {
        self.levels[i * self.s + j]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn column(&self, j: usize) -> Vec<usize> {
        (0..self.n).map(|i| self.level(i, j)).collect()
    }

    /// Unit-cube coordinate of level `l`.
    #[inline]
    pub fn level_value(&self, l: usize) -> f64 {
        (l as f64 - 0.5) / self.q as f64
    }

    fn swap(&mut self, j: usize, r1: usize, r2: usize) {
        self.levels.swap(r1 * self.s + j, r2 * self.s + j);
    }
}

fn check_shape(n: usize, q: usize, s: usize) -> Result<()> {
    if n == 0 || q == 0 || s == 0 {
        return Err(Error::Shape(format!("n, q and s must be positive (got {n}, {q}, {s})")));
    }
    if !n.is_multiple_of(q) {
        return Err(Error::NotDivisible { n, q });
    }
    Ok(())
}

/// Maps level `l` to `(l − 0.5)/q`.
pub fn embed(design: &UTypeDesign) -> DesignMatrix {
    let values = design.levels.iter().map(|&l| design.level_value(l)).collect();
    DesignMatrix::new(design.n, design.s, values).expect("lattice embedding lies in the unit cube")
}

/// Uniformly random balanced design; each column is an independent shuffle.
pub fn random_utype(n: usize, q: usize, s: usize, seed: u64) -> Result<UTypeDesign> {
    check_shape(n, q, s)?;
    let mut rng = stream_rng(seed, STREAM_UTYPE);
    let per_level = n / q;
    let mut levels = vec![0; n * s];
    let mut column: Vec<usize> = (1..=q).flat_map(|l| std::iter::repeat_n(l, per_level)).collect();
    for j in 0..s {
        column.shuffle(&mut rng);
        for (i, &l) in column.iter().enumerate() {
            levels[i * s + j] = l;
        }
    }
    Ok(UTypeDesign { n, q, s, levels })
}

/// Random column and two distinct rows. Requires `n ≥ 2`.
fn draw_swap<R: Rng + ?Sized>(n: usize, s: usize, rng: &mut R) -> (usize, usize, usize) {
    let j = rng.random_range(0..s);
    let r1 = rng.random_range(0..n);
    let mut r2 = rng.random_range(0..n - 1);
    if r2 >= r1 {
        r2 += 1;
    }
    (j, r1, r2)
}

/// Swaps the entries of two distinct random rows within one random column.
/// A one-run design has no neighbor other than itself.
pub fn ta_neighbor<R: Rng + ?Sized>(design: &UTypeDesign, rng: &mut R) -> UTypeDesign {
    let mut next = design.clone();
    if design.n >= 2 {
        let (j, r1, r2) = draw_swap(design.n, design.s, rng);
        next.swap(j, r1, r2);
    }
    next
}

/// Non-increasing thresholds `T_0, …, T_I` with `T_I = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSchedule {
    values: Vec<f64>,
}

impl ThresholdSchedule {
    /// `T_0 = alpha · range`, then `T_i = (I − i)/I · T_{i−1}`.
    pub fn from_range(range: f64, alpha: f64, stages: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if stages == 0 {
            return Err(Error::InvalidConfig("stage count must be at least 1".into()));
        }
        let total = stages as f64;
        let mut values = Vec::with_capacity(stages + 1);
        values.push(alpha * range.max(0.0));
        for i in 1..=stages {
            let prev = values[i - 1];
            values.push((stages - i) as f64 / total * prev);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of stages `I`.
    pub fn stages(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }
}

/// Builds the schedule from the CD² range (max − min) over `probes` fresh
/// neighbors of `design`.
pub fn threshold_sequence<R: Rng + ?Sized>(
    design: &UTypeDesign,
    alpha: f64,
    stages: usize,
    probes: usize,
    rng: &mut R,
) -> Result<ThresholdSchedule> {
    if probes == 0 {
        return Err(Error::InvalidConfig("probe count must be at least 1".into()));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for _ in 0..probes {
        let value = cd2(&embed(&ta_neighbor(design, rng)));
        lo = lo.min(value);
        hi = hi.max(value);
    }
    ThresholdSchedule::from_range(hi - lo, alpha, stages)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaConfig {
    pub n: usize,
    pub q: usize,
    pub s: usize,
    pub alpha: f64,
    pub stages: usize,
    pub probes: usize,
    pub iterations_per_stage: usize,
    pub seed: u64,
}

impl TaConfig {
    pub const DEFAULT_ALPHA: f64 = 0.1;
    pub const DEFAULT_STAGES: usize = 20;
    pub const DEFAULT_PROBES: usize = 100;
    pub const DEFAULT_ITERATIONS_PER_STAGE: usize = 2000;

    /// Default knobs for the given shape and seed.
    pub fn new(n: usize, q: usize, s: usize, seed: u64) -> Self {
        Self {
            n,
            q,
            s,
            alpha: Self::DEFAULT_ALPHA,
            stages: Self::DEFAULT_STAGES,
            probes: Self::DEFAULT_PROBES,
            iterations_per_stage: Self::DEFAULT_ITERATIONS_PER_STAGE,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_shape(self.n, self.q, self.s)?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.stages == 0 || self.probes == 0 || self.iterations_per_stage == 0 {
            return Err(Error::InvalidConfig(
                "stages, probes and iterations per stage must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaTracePoint {
    pub iteration: usize,
    /// CD² of the current (not best) design.
    pub cd2: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct TaResult {
    pub best: UTypeDesign,
    pub best_cd2: f64,
    pub initial_cd2: f64,
    pub schedule: ThresholdSchedule,
    pub accepted: usize,
    /// Current CD² at iteration 0 and at the end of every stage.
    pub trace: Vec<TaTracePoint>,
}

/// Runs TA from a freshly randomized U-type design.
pub fn ta_optimize(config: &TaConfig) -> Result<TaResult> {
    config.validate()?;
    let initial = random_utype(config.n, config.q, config.s, config.seed)?;
    ta_optimize_from(config, initial)
}

/// Runs TA from a caller-supplied design; the shape in `config` must match.
///
/// Stage `i = 1..=I` uses threshold `T_i`, so the last stage (`T_I = 0`) is
/// a plain descent. A candidate is accepted iff
/// `CD²(candidate) − CD²(current) ≤ T_i`.
pub fn ta_optimize_from(config: &TaConfig, initial: UTypeDesign) -> Result<TaResult> {
    config.validate()?;
    if (initial.n, initial.q, initial.s) != (config.n, config.q, config.s) {
        return Err(Error::Shape(format!(
            "initial design is U({}, {}^{}), config expects U({}, {}^{})",
            initial.n, initial.q, initial.s, config.n, config.q, config.s
        )));
    }
    let start = Instant::now();
    let mut rng = stream_rng(config.seed, STREAM_TA);
    let schedule = threshold_sequence(&initial, config.alpha, config.stages, config.probes, &mut rng)?;

    let mut current = initial;
    let mut cache = DiscrepancyCache::new(embed(&current));
    let initial_cd2 = cd2(cache.design());
    let mut best = current.clone();
    let mut best_cd2 = initial_cd2;
    let mut accepted = 0;
    let mut iteration = 0;
    let mut trace = vec![TaTracePoint { iteration: 0, cd2: initial_cd2, seconds: 0.0 }];

    if current.n >= 2 {
        for stage in 1..=schedule.stages() {
            let threshold = schedule.get(stage);
            // Drop round-off accumulated by the incremental sums.
            cache.rebuild();
            for _ in 0..config.iterations_per_stage {
                iteration += 1;
                let (j, r1, r2) = draw_swap(current.n, current.s, &mut rng);
                let (l1, l2) = (current.level(r1, j), current.level(r2, j));
                if l1 == l2 {
                    continue;
                }
                let before = cache.cd2();
                let (v1, v2) = (current.level_value(l1), current.level_value(l2));
                cache.update(r1, j, v2)?;
                let after = cache.update(r2, j, v1)?;
                if after - before <= threshold {
                    current.swap(j, r1, r2);
                    accepted += 1;
                    if after < best_cd2 {
                        best_cd2 = after;
                        best.clone_from(&current);
                    }
                } else {
                    cache.update(r2, j, v2)?;
                    cache.update(r1, j, v1)?;
                }
            }
            trace.push(TaTracePoint {
                iteration,
                cd2: cache.cd2(),
                seconds: start.elapsed().as_secs_f64(),
            });
        }
    }

    let best_cd2 = cd2(&embed(&best));
    Ok(TaResult { best, best_cd2, initial_cd2, schedule, accepted, trace })
}
