//! Coordinate-descent refiners for CD² over the continuous unit cube.
//!
//! Three sweeping refiners share one contract: they start from a design,
//! run at most `max_epochs` epochs, clamp every coordinate into `[0, 1]`
//! after each update, and return the lowest-CD² design seen at any epoch
//! boundary (including the start).
//!
//! - [`cgd`]: one gradient step `x_ij ← x_ij − δ·∂CD²/∂x_ij` per coordinate,
//!   Gauss–Seidel order (row-major, in place).
//! - [`czg`]: replaces each coordinate by the root of its coordinate
//!   gradient, see [`zero_gradient_solve`].
//! - [`cdfss`]: one global best `±δ_j` move per epoch, stopping when no move
//!   improves.
//!
//! [`gd`] is the full-gradient baseline (all coordinates stepped at once).

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::discrepancy::{cd2, cd2_gradient, coordinate_gradient, zero_gradient_solve, DesignMatrix, DiscrepancyCache};
use crate::error::{Error, Result};
use crate::lattice::{embed, ta_optimize, TaConfig, TaResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Gd,
    Cgd,
    Czg,
    Cdfss,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gd => "gd",
            Algorithm::Cgd => "cgd",
            Algorithm::Czg => "czg",
            Algorithm::Cdfss => "cdfss",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxEpochs,
    NoImprovingMove,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefinerConfig {
    /// Gradient step δ for CGD and GD. Zero is accepted and leaves the design unchanged.
    pub step_size: f64,
    /// Stop once consecutive epoch CD² values differ by less than this.
    pub epsilon: f64,
    pub max_epochs: usize,
    /// Recursion depth of the zero-gradient solve (CZG).
    pub t_max: usize,
    /// Per-column CDFSS steps; `None` means `1/(2q)` for every column, with
    /// `q = n` when the refiner is run on its own.
    pub column_steps: Option<Vec<f64>>,
    /// CZG only: skip coordinate updates that would raise CD².
    pub guarded: bool,
}

impl Default for RefinerConfig {
    fn default() -> Self {
        Self {
            step_size: 0.01,
            epsilon: 1e-9,
            max_epochs: 1000,
            t_max: 1,
            column_steps: None,
            guarded: false,
        }
    }
}

impl RefinerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_size >= 0.0 && self.step_size.is_finite()) {
            return Err(Error::InvalidConfig(format!("step size must be a finite non-negative number, got {}", self.step_size)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.max_epochs == 0 {
            return Err(Error::InvalidConfig("max_epochs must be at least 1".into()));
        }
        if self.t_max == 0 {
            return Err(Error::InvalidConfig("t_max must be at least 1".into()));
        }
        if let Some(steps) = &self.column_steps {
            if let Some(bad) = steps.iter().find(|&&d| !(d > 0.0 && d.is_finite())) {
                return Err(Error::InvalidConfig(format!("column steps must be positive, got {bad}")));
            }
        }
        Ok(())
    }

    fn steps_for(&self, design: &DesignMatrix, q: usize) -> Result<Vec<f64>> {
        match &self.column_steps {
            Some(steps) if steps.len() == design.s() => Ok(steps.clone()),
            Some(steps) => Err(Error::InvalidConfig(format!(
                "{} column steps given for a design with {} columns",
                steps.len(),
                design.s()
            ))),
            None => Ok(vec![1.0 / (2.0 * q as f64); design.s()]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub epoch: usize,
    pub cd2: f64,
    /// Wall time since the refiner started.
    pub seconds: f64,
}

/// CD² of the iterate at every epoch boundary; epoch 0 is the start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub algorithm: Algorithm,
    pub points: Vec<TracePoint>,
}

impl OptimizationTrace {
    fn new(algorithm: Algorithm, start_cd2: f64) -> Self {
        Self {
            algorithm,
            points: vec![TracePoint { epoch: 0, cd2: start_cd2, seconds: 0.0 }],
        }
    }

    fn push(&mut self, epoch: usize, cd2: f64, started: Instant) {
        self.points.push(TracePoint { epoch, cd2, seconds: started.elapsed().as_secs_f64() });
    }
}

#[derive(Debug, Clone)]
pub struct RefineResult {
    /// Lowest-CD² design visited.
    pub design: DesignMatrix,
    pub cd2: f64,
    /// Iterate at termination, which may be worse than `design` for CZG.
    pub final_iterate: DesignMatrix,
    pub trace: OptimizationTrace,
    pub termination: Termination,
}

/// Tracks the best epoch-boundary iterate.
struct Best {
    design: DesignMatrix,
    cd2: f64,
}

impl Best {
    fn offer(&mut self, design: &DesignMatrix, value: f64) {
        if value < self.cd2 {
            self.design.clone_from(design);
            self.cd2 = value;
        }
    }
}

fn finish(best: Best, final_iterate: DesignMatrix, trace: OptimizationTrace, termination: Termination) -> Result<RefineResult> {
    if !best.cd2.is_finite() {
        return Err(Error::Numerical(format!("{} produced a non-finite CD²", trace.algorithm.name())));
    }
    Ok(RefineResult { design: best.design, cd2: best.cd2, final_iterate, trace, termination })
}

/// Shared epoch loop for refiners whose stopping rule is `|ΔCD²| < ε`.
fn sweep_until_stable<F>(init: &DesignMatrix, config: &RefinerConfig, algorithm: Algorithm, mut epoch_step: F) -> Result<RefineResult>
where
    F: FnMut(&mut DesignMatrix) -> Result<()>,
{
    config.validate()?;
    let started = Instant::now();
    let mut x = init.clone();
    let mut current = cd2(&x);
    let mut best = Best { design: x.clone(), cd2: current };
    let mut trace = OptimizationTrace::new(algorithm, current);
    let mut termination = Termination::MaxEpochs;

    for epoch in 1..=config.max_epochs {
        epoch_step(&mut x)?;
        let next = cd2(&x);
        trace.push(epoch, next, started);
        best.offer(&x, next);
        let stable = (next - current).abs() < config.epsilon;
        current = next;
        if stable {
            termination = Termination::Converged;
            break;
        }
    }
    finish(best, x, trace, termination)
}

/// Coordinate gradient descent.
pub fn cgd(init: &DesignMatrix, config: &RefinerConfig) -> Result<RefineResult> {
    let step = config.step_size;
    sweep_until_stable(init, config, Algorithm::Cgd, |x| {
        for i in 0..x.n() {
            for j in 0..x.s() {
                let g = coordinate_gradient(x, i, j);
                x.set(i, j, (x.get(i, j) - step * g).clamp(0.0, 1.0));
            }
        }
        Ok(())
    })
}

/// Full-gradient descent: every coordinate moves against the gradient of
/// the epoch-start design.
pub fn gd(init: &DesignMatrix, config: &RefinerConfig) -> Result<RefineResult> {
    let step = config.step_size;
    sweep_until_stable(init, config, Algorithm::Gd, |x| {
        let grad = cd2_gradient(x);
        for i in 0..x.n() {
            for j in 0..x.s() {
                x.set(i, j, (x.get(i, j) - step * grad.get(i, j)).clamp(0.0, 1.0));
            }
        }
        Ok(())
    })
}

/// Coordinate zero-gradient descent.
///
/// Unguarded, CD² may rise within an epoch; the returned design is still the
/// best epoch-boundary iterate. Guarded, an update is kept only when it does
/// not raise CD², making the trace non-increasing.
pub fn czg(init: &DesignMatrix, config: &RefinerConfig) -> Result<RefineResult> {
    let t_max = config.t_max;
    if !config.guarded {
        return sweep_until_stable(init, config, Algorithm::Czg, |x| {
            for i in 0..x.n() {
                for j in 0..x.s() {
                    let root = zero_gradient_solve(x, i, j, t_max)?;
                    x.set(i, j, root);
                }
            }
            Ok(())
        });
    }

    let mut cache = DiscrepancyCache::new(init.clone());
    sweep_until_stable(init, config, Algorithm::Czg, |x| {
        for i in 0..x.n() {
            for j in 0..x.s() {
                let root = zero_gradient_solve(cache.design(), i, j, t_max)?;
                if cache.cd2_if(i, j, root)? <= cache.cd2() {
                    cache.update(i, j, root)?;
                }
            }
        }
        cache.rebuild();
        x.clone_from(cache.design());
        Ok(())
    })
}

/// Coordinate descent with fixed per-column steps.
///
/// Each epoch scores all `2·n·s` moves `x_ij ± δ_j` (clamped) and applies the
/// single best one if it strictly lowers CD².
pub fn cdfss(init: &DesignMatrix, config: &RefinerConfig) -> Result<RefineResult> {
    cdfss_with_levels(init, config, init.n())
}

fn cdfss_with_levels(init: &DesignMatrix, config: &RefinerConfig, q: usize) -> Result<RefineResult> {
    config.validate()?;
    let steps = config.steps_for(init, q)?;
    let started = Instant::now();
    let mut cache = DiscrepancyCache::new(init.clone());
    let start_cd2 = cd2(init);
    let mut best = Best { design: init.clone(), cd2: start_cd2 };
    let mut trace = OptimizationTrace::new(Algorithm::Cdfss, start_cd2);
    let mut termination = Termination::MaxEpochs;
    let mut current = start_cd2;

    for epoch in 1..=config.max_epochs {
        let mut winner: Option<(usize, usize, f64, f64)> = None;
        for i in 0..init.n() {
            for j in 0..init.s() {
                let x = cache.design().get(i, j);
                for dir in [-1.0, 1.0] {
                    let candidate = (x + dir * steps[j]).clamp(0.0, 1.0);
                    if candidate == x {
                        continue;
                    }
                    let value = cache.cd2_if(i, j, candidate)?;
                    if winner.is_none_or(|(_, _, _, v)| value < v) {
                        winner = Some((i, j, candidate, value));
                    }
                }
            }
        }
        // Demand more than round-off so the recorded trace strictly decreases.
        let improving = winner.filter(|&(_, _, _, v)| current - v > 4.0 * f64::EPSILON * current.abs().max(1.0));
        let Some((i, j, value, _)) = improving else {
            termination = Termination::NoImprovingMove;
            break;
        };
        cache.update(i, j, value)?;
        cache.rebuild();
        current = cd2(cache.design());
        trace.push(epoch, current, started);
        best.offer(cache.design(), current);
    }
    let final_iterate = cache.into_design();
    finish(best, final_iterate, trace, termination)
}

/// Dispatches to the named refiner.
pub fn refine(algorithm: Algorithm, init: &DesignMatrix, config: &RefinerConfig) -> Result<RefineResult> {
    match algorithm {
        Algorithm::Gd => gd(init, config),
        Algorithm::Cgd => cgd(init, config),
        Algorithm::Czg => czg(init, config),
        Algorithm::Cdfss => cdfss(init, config),
    }
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub ta: TaResult,
    pub refined: RefineResult,
}

/// TA over the U-type lattice, then a continuous refiner started from the
/// embedded TA design. CDFSS steps default to `1/(2q)`.
pub fn refine_pipeline(ta_config: &TaConfig, algorithm: Algorithm, config: &RefinerConfig) -> Result<PipelineResult> {
    let ta = ta_optimize(ta_config)?;
    let init = embed(&ta.best);
    let refined = match algorithm {
        Algorithm::Cdfss => cdfss_with_levels(&init, config, ta_config.q)?,
        other => refine(other, &init, config)?,
    };
    Ok(PipelineResult { ta, refined })
}

/// Runs the pipeline for every seed in `seeds` (in parallel) and returns
/// the run with the lowest refined CD². Ties go to the earlier seed.
pub fn pipeline_best_of(
    ta_config: &TaConfig,
    seeds: impl IntoIterator<Item = u64>,
    algorithm: Algorithm,
    config: &RefinerConfig,
) -> Result<(u64, PipelineResult)> {
    let seeds: Vec<u64> = seeds.into_iter().collect();
    let runs = seeds
        .par_iter()
        .map(|&seed| {
            let ta = TaConfig { seed, ..ta_config.clone() };
            refine_pipeline(&ta, algorithm, config).map(|r| (seed, r))
        })
        .collect::<Result<Vec<_>>>()?;
    runs.into_iter()
        .reduce(|best, next| if next.1.refined.cd2 < best.1.refined.cd2 { next } else { best })
        .ok_or_else(|| Error::InvalidConfig("at least one seed is required".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(x: f64) -> DesignMatrix {
        DesignMatrix::from_rows(&[[x]]).unwrap()
    }

    #[test]
    fn zero_step_is_a_no_op() {
        let init = DesignMatrix::from_rows(&[[0.2, 0.9], [0.7, 0.4]]).unwrap();
        let config = RefinerConfig { step_size: 0.0, ..Default::default() };
        let r = cgd(&init, &config).unwrap();
        assert_eq!(r.design, init);
        assert_eq!(r.termination, Termination::Converged);
        assert_eq!(r.trace.points.len(), 2);
    }

    #[test]
    fn cgd_single_point_approaches_center() {
        // One-point CD² is 1/12 + (x − ½)², minimized at ½.
        let r = cgd(&single(0.3), &RefinerConfig::default()).unwrap();
        let values: Vec<f64> = r.trace.points.iter().map(|p| p.cd2).collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0]));
        assert!((r.design.get(0, 0) - 0.5).abs() < 0.01);
        assert!((r.cd2 - 1.0 / 12.0).abs() < 1e-4);
    }

    #[test]
    fn czg_center_is_fixed() {
        let r = czg(&single(0.5), &RefinerConfig::default()).unwrap();
        assert_eq!(r.design.get(0, 0), 0.5);
        assert_eq!(r.termination, Termination::Converged);
    }

    #[test]
    fn cdfss_single_point_walks_to_center() {
        let config = RefinerConfig { column_steps: Some(vec![0.1]), ..Default::default() };
        let r = cdfss(&single(0.3), &config).unwrap();
        assert_eq!(r.termination, Termination::NoImprovingMove);
        assert_eq!(r.trace.points.len(), 3, "two applied moves after the start point");
        assert!((r.design.get(0, 0) - 0.5).abs() < 1e-12);
        assert!((r.cd2 - 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn cdfss_stops_at_grid_minimum() {
        let init = single(0.5);
        let config = RefinerConfig { column_steps: Some(vec![0.1]), ..Default::default() };
        let r = cdfss(&init, &config).unwrap();
        assert_eq!(r.design, init);
        assert_eq!(r.termination, Termination::NoImprovingMove);
        assert_eq!(r.trace.points.len(), 1);
    }

    #[test]
    fn config_validation() {
        let init = single(0.3);
        let bad = [
            RefinerConfig { step_size: -1.0, ..Default::default() },
            RefinerConfig { epsilon: 0.0, ..Default::default() },
            RefinerConfig { max_epochs: 0, ..Default::default() },
            RefinerConfig { t_max: 0, ..Default::default() },
            RefinerConfig { column_steps: Some(vec![0.0]), ..Default::default() },
        ];
        for config in &bad {
            assert!(matches!(refine(Algorithm::Cdfss, &init, config), Err(Error::InvalidConfig(_))));
        }
        let wrong_len = RefinerConfig { column_steps: Some(vec![0.1, 0.1]), ..Default::default() };
        assert!(cdfss(&init, &wrong_len).is_err());
    }

    #[test]
    fn max_epochs_termination() {
        let config = RefinerConfig { max_epochs: 3, ..Default::default() };
        let r = cgd(&single(0.1), &config).unwrap();
        assert_eq!(r.termination, Termination::MaxEpochs);
        assert_eq!(r.trace.points.last().unwrap().epoch, 3);
    }

    #[test]
    fn gd_descends() {
        let init = DesignMatrix::from_rows(&[[0.1, 0.2], [0.15, 0.3], [0.8, 0.9]]).unwrap();
        let r = gd(&init, &RefinerConfig { step_size: 0.05, ..Default::default() }).unwrap();
        assert!(r.cd2 < cd2(&init));
    }
}
