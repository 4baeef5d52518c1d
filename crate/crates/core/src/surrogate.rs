//! Gaussian-correlation Kriging with polynomial trends, and the held-out
//! prediction error protocol used to compare designs.
//!
//! Inputs live in the unit cube. The correlation between two points is
//! `Π_k exp(−θ_k (x_k − x'_k)²)`, the trend is a constant, linear or full
//! quadratic polynomial, and `θ` maximizes the profiled log-likelihood
//! (trend coefficients and process variance concentrated out). A nugget is
//! added to the diagonal; prediction at a training row reuses it, so the
//! predictor reproduces the training outputs.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchfns::{scale_design, Bound, TestFunction};
use crate::discrepancy::DesignMatrix;
use crate::error::{Error, Result};
use crate::rng::{stream_rng, STREAM_TEST_POINTS};
use crate::sampling::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrendBasis {
    /// Constant mean (ordinary Kriging).
    Poly0,
    /// `1, x_1, …, x_s`.
    Poly1,
    /// `1, x_k, x_k·x_l (k ≤ l)`.
    Poly2,
}

impl TrendBasis {
    pub fn name(self) -> &'static str {
        match self {
            TrendBasis::Poly0 => "poly0",
            TrendBasis::Poly1 => "poly1",
            TrendBasis::Poly2 => "poly2",
        }
    }

    /// Number of basis functions in dimension `s`.
    pub fn len(self, s: usize) -> usize {
        match self {
            TrendBasis::Poly0 => 1,
            TrendBasis::Poly1 => 1 + s,
            TrendBasis::Poly2 => 1 + s + s * (s + 1) / 2,
        }
    }

    pub fn eval(self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len(x.len()));
        out.push(1.0);
        if self != TrendBasis::Poly0 {
            out.extend_from_slice(x);
        }
        if self == TrendBasis::Poly2 {
            for k in 0..x.len() {
                for l in k..x.len() {
                    out.push(x[k] * x[l]);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrigingOptions {
    pub theta_lower: f64,
    pub theta_upper: f64,
    pub nugget: f64,
    /// Log-spaced multi-start points for the θ search.
    pub starts: usize,
    /// Simplex iterations per start.
    pub max_iterations: usize,
}

impl Default for KrigingOptions {
    fn default() -> Self {
        Self { theta_lower: 1e-2, theta_upper: 1e2, nugget: 1e-10, starts: 8, max_iterations: 400 }
    }
}

impl KrigingOptions {
    fn validate(&self) -> Result<()> {
        if !(self.theta_lower > 0.0 && self.theta_lower < self.theta_upper && self.theta_upper.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "theta bounds must satisfy 0 < low < high, got ({}, {})",
                self.theta_lower, self.theta_upper
            )));
        }
        if !(self.nugget >= 0.0) {
            return Err(Error::InvalidConfig(format!("nugget must be non-negative, got {}", self.nugget)));
        }
        if self.starts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig("starts and max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Fitted Kriging predictor.
#[derive(Debug, Clone)]
pub struct KrigingModel {
    x: DesignMatrix,
    y: Vec<f64>,
    basis: TrendBasis,
    theta: Vec<f64>,
    beta: Vec<f64>,
    sigma2: f64,
    log_likelihood: f64,
    nugget: f64,
    chol: Cholesky<f64, Dyn>,
    /// `R⁻¹ (y − Fβ)`.
    weights: DVector<f64>,
}

/// Everything the likelihood evaluation produces for one θ.
struct Profile {
    log_likelihood: f64,
    beta: DVector<f64>,
    sigma2: f64,
    chol: Cholesky<f64, Dyn>,
    weights: DVector<f64>,
}

fn correlation(theta: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let d2: f64 = theta.iter().zip(a.iter().zip(b)).map(|(t, (u, v))| t * (u - v) * (u - v)).sum();
    (-d2).exp()
}

fn trend_matrix(x: &DesignMatrix, basis: TrendBasis) -> DMatrix<f64> {
    let p = basis.len(x.s());
    let mut f = DMatrix::zeros(x.n(), p);
    for (i, row) in x.rows().enumerate() {
        for (k, v) in basis.eval(row).into_iter().enumerate() {
            f[(i, k)] = v;
        }
    }
    f
}

fn profile(x: &DesignMatrix, y: &DVector<f64>, f: &DMatrix<f64>, theta: &[f64], nugget: f64) -> Option<Profile> {
    let n = x.n();
    let mut r = DMatrix::zeros(n, n);
    for a in 0..n {
        r[(a, a)] = 1.0 + nugget;
        for b in (a + 1)..n {
            let c = correlation(theta, x.row(a), x.row(b));
            r[(a, b)] = c;
            r[(b, a)] = c;
        }
    }
    let chol = Cholesky::new(r)?;
    let l = chol.l_dirty();
    let ft = l.solve_lower_triangular(f)?;
    let yt = l.solve_lower_triangular(y)?;

    let qr = ft.clone().qr();
    let rfac = qr.r();
    let scale = rfac.diagonal().amax().max(f64::MIN_POSITIVE);
    if rfac.diagonal().iter().any(|d| d.abs() <= 1e-12 * scale) {
        return None;
    }
    let beta = rfac.solve_upper_triangular(&(qr.q().transpose() * &yt))?;
    let resid = &yt - &ft * &beta;
    let sigma2 = (resid.norm_squared() / n as f64).max(1e-300);
    let log_det: f64 = 2.0 * l.diagonal().iter().map(|d| d.ln()).sum::<f64>();
    let log_likelihood = -0.5 * (n as f64 * sigma2.ln() + log_det);
    let weights = l.transpose().solve_upper_triangular(&resid)?;
    if !log_likelihood.is_finite() {
        return None;
    }
    Some(Profile { log_likelihood, beta, sigma2, chol, weights })
}

fn check_training(x: &DesignMatrix, y: &[f64], basis: TrendBasis) -> Result<()> {
    if y.len() != x.n() {
        return Err(Error::Shape(format!("{} outputs for {} training rows", y.len(), x.n())));
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!("training output {i} is not finite")));
    }
    let terms = basis.len(x.s());
    if x.n() <= terms {
        return Err(Error::Underdetermined { n: x.n(), terms });
    }
    for a in 0..x.n() {
        for b in (a + 1)..x.n() {
            if x.row(a) == x.row(b) {
                return Err(Error::DuplicateRows { first: a, second: b });
            }
        }
    }
    Ok(())
}

/// Profiled log-likelihood (up to an additive constant) at a given θ, or
/// `None` when the correlation or trend system is numerically singular.
pub fn profiled_log_likelihood(
    x: &DesignMatrix,
    y: &[f64],
    basis: TrendBasis,
    theta: &[f64],
    nugget: f64,
) -> Result<Option<f64>> {
    check_training(x, y, basis)?;
    if theta.len() != x.s() {
        return Err(Error::Shape(format!("{} correlation parameters for {} factors", theta.len(), x.s())));
    }
    let f = trend_matrix(x, basis);
    let yv = DVector::from_column_slice(y);
    Ok(profile(x, &yv, &f, theta, nugget).map(|p| p.log_likelihood))
}

/// Log-spaced multi-start points, each isotropic.
pub fn start_points(options: &KrigingOptions, s: usize) -> Vec<Vec<f64>> {
    let (lo, hi) = (options.theta_lower.ln(), options.theta_upper.ln());
    (0..options.starts)
        .map(|m| {
            let t = if options.starts == 1 { 0.5 } else { m as f64 / (options.starts - 1) as f64 };
            vec![(lo + t * (hi - lo)).exp(); s]
        })
        .collect()
}

/// Fits θ by a box-constrained Nelder–Mead search over `ln θ` from every
/// start point, keeping the highest likelihood found.
pub fn kriging_fit(x: &DesignMatrix, y: &[f64], basis: TrendBasis, options: &KrigingOptions) -> Result<KrigingModel> {
    options.validate()?;
    check_training(x, y, basis)?;
    let f = trend_matrix(x, basis);
    let yv = DVector::from_column_slice(y);
    let (lo, hi) = (options.theta_lower.ln(), options.theta_upper.ln());

    let objective = |u: &[f64]| -> f64 {
        let theta: Vec<f64> = u.iter().map(|v| v.exp()).collect();
        profile(x, &yv, &f, &theta, options.nugget).map_or(f64::INFINITY, |p| -p.log_likelihood)
    };

    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in start_points(options, x.s()) {
        let u0: Vec<f64> = start.iter().map(|t| t.ln()).collect();
        let (u, value) = nelder_mead_box(&objective, &u0, lo, hi, 0.5 * (hi - lo) / 4.0, options.max_iterations);
        if best.as_ref().is_none_or(|(_, v)| value < *v) {
            best = Some((u, value));
        }
    }
    let (u, value) = best.expect("at least one start");
    if !value.is_finite() {
        return Err(Error::Numerical("correlation matrix is singular for every θ tried".into()));
    }
    let theta: Vec<f64> = u.iter().map(|v| v.exp()).collect();
    let p = profile(x, &yv, &f, &theta, options.nugget)
        .ok_or_else(|| Error::Numerical("likelihood evaluation failed at the optimum".into()))?;
    Ok(KrigingModel {
        x: x.clone(),
        y: y.to_vec(),
        basis,
        theta,
        beta: p.beta.iter().copied().collect(),
        sigma2: p.sigma2,
        log_likelihood: p.log_likelihood,
        nugget: options.nugget,
        chol: p.chol,
        weights: p.weights,
    })
}

/// Minimizes `f` over the box `[lo, hi]^d`; points are clamped into the box.
fn nelder_mead_box<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], lo: f64, hi: f64, step: f64, max_iter: usize) -> (Vec<f64>, f64) {
    let d = x0.len();
    let clamp = |v: Vec<f64>| -> Vec<f64> { v.into_iter().map(|t| t.clamp(lo, hi)).collect() };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let p0 = clamp(x0.to_vec());
    let v0 = f(&p0);
    simplex.push((p0.clone(), v0));
    for k in 0..d {
        let mut p = p0.clone();
        // Step inward when the start sits on the upper face.
        p[k] = if p[k] + step <= hi { p[k] + step } else { p[k] - step };
        let p = clamp(p);
        let v = f(&p);
        simplex.push((p, v));
    }

    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    for _ in 0..max_iter {
        order(&mut simplex);
        let (best, worst) = (simplex[0].1, simplex[d].1);
        let size = simplex.iter().skip(1).map(|(p, _)| p.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)).fold(0.0, f64::max);
        if size < 1e-6 || (best.is_finite() && (worst - best).abs() <= 1e-10 * (1.0 + best.abs())) {
            break;
        }
        let centroid: Vec<f64> = (0..d).map(|k| simplex[..d].iter().map(|(p, _)| p[k]).sum::<f64>() / d as f64).collect();
        let along = |t: f64| -> Vec<f64> { clamp(centroid.iter().zip(&simplex[d].0).map(|(c, w)| c + t * (c - w)).collect()) };

        let reflected = along(1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(2.0);
            let fe = f(&expanded);
            simplex[d] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[d - 1].1 {
            simplex[d] = (reflected, fr);
            continue;
        }
        let contracted = if fr < simplex[d].1 { along(0.5) } else { along(-0.5) };
        let fc = f(&contracted);
        if fc < simplex[d].1.min(fr) {
            simplex[d] = (contracted, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let p = clamp(anchor.iter().zip(&vertex.0).map(|(a, v)| a + 0.5 * (v - a)).collect());
            let v = f(&p);
            *vertex = (p, v);
        }
    }
    order(&mut simplex);
    let (p, v) = simplex.swap_remove(0);
    if v <= v0 {
        (p, v)
    } else {
        (p0, v0)
    }
}

impl KrigingModel {
    pub fn basis(&self) -> TrendBasis {
        self.basis
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn log_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    pub fn nugget(&self) -> f64 {
        self.nugget
    }

    pub fn training_inputs(&self) -> &DesignMatrix {
        &self.x
    }

    pub fn training_outputs(&self) -> &[f64] {
        &self.y
    }

    /// Lower Cholesky factor of the regularized correlation matrix.
    pub fn cholesky_factor(&self) -> DMatrix<f64> {
        self.chol.l()
    }

    /// Predicts at one point in normalized coordinates. Points outside the
    /// unit cube are extrapolated.
    pub fn predict_point(&self, point: &[f64]) -> f64 {
        let trend: f64 = self.basis.eval(point).iter().zip(&self.beta).map(|(b, c)| b * c).sum();
        let mut local = 0.0;
        for (a, row) in self.x.rows().enumerate() {
            let mut c = correlation(&self.theta, point, row);
            if point == row {
                c += self.nugget;
            }
            local += c * self.weights[a];
        }
        trend + local
    }

    /// Trend part `b(x)ᵀβ` alone.
    pub fn trend_at(&self, point: &[f64]) -> f64 {
        self.basis.eval(point).iter().zip(&self.beta).map(|(b, c)| b * c).sum()
    }
}

/// Predicts at each row of `points` (normalized coordinates, `s` columns each).
pub fn kriging_predict(model: &KrigingModel, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    let s = model.x.s();
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if p.len() != s {
                return Err(Error::Shape(format!("point {i} has {} coordinates, expected {s}", p.len())));
            }
            Ok(model.predict_point(p))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub test_points: usize,
    pub test_seed: u64,
    pub kriging: KrigingOptions,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { test_points: 1000, test_seed: 0, kriging: KrigingOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MseReport {
    pub mse: f64,
    pub rmse: f64,
    /// Population standard deviation of the true response over the test set.
    pub test_std: f64,
    pub theta: Vec<f64>,
}

/// `M` i.i.d. uniform points in `bounds`.
pub fn uniform_test_points(bounds: &[Bound], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = stream_rng(seed, STREAM_TEST_POINTS);
    (0..count)
        .map(|_| bounds.iter().map(|b| b.lower + rng.random::<f64>() * b.width()).collect())
        .collect()
}

/// Fits on `design` (unit cube, scaled to the function's bounds for
/// evaluation) and scores predictions at `test` (points in the bounds).
pub fn evaluate_mse_at(
    design: &DesignMatrix,
    function: &TestFunction,
    basis: TrendBasis,
    kriging: &KrigingOptions,
    test: &[Vec<f64>],
) -> Result<MseReport> {
    if test.is_empty() {
        return Err(Error::InvalidConfig("at least one test point is required".into()));
    }
    let bounds = &function.bounds;
    let y: Vec<f64> = scale_design(design, bounds)?.iter().map(|p| function.eval(p)).collect();
    let model = kriging_fit(design, &y, basis, kriging)?;

    let mut sq = 0.0;
    let truth: Vec<f64> = test.iter().map(|p| function.eval(p)).collect();
    for (p, t) in test.iter().zip(&truth) {
        let unit: Vec<f64> = p.iter().zip(bounds).map(|(v, b)| (v - b.lower) / b.width()).collect();
        let e = t - model.predict_point(&unit);
        sq += e * e;
    }
    let m = test.len() as f64;
    let mean = truth.iter().sum::<f64>() / m;
    let var = truth.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / m;
    let mse = sq / m;
    if !mse.is_finite() {
        return Err(Error::Numerical("prediction error is not finite".into()));
    }
    Ok(MseReport { mse, rmse: mse.sqrt(), test_std: var.sqrt(), theta: model.theta.clone() })
}

/// Held-out mean squared prediction error on `options.test_points` seeded
/// uniform points.
pub fn evaluate_mse(
    design: &DesignMatrix,
    function: &TestFunction,
    basis: TrendBasis,
    options: &EvalOptions,
) -> Result<MseReport> {
    if options.test_points == 0 {
        return Err(Error::InvalidConfig("at least one test point is required".into()));
    }
    let test = uniform_test_points(&function.bounds, options.test_points, options.test_seed);
    evaluate_mse_at(design, function, basis, &options.kriging, &test)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageReport {
    pub mean_mse: f64,
    pub mean_rmse: f64,
    pub reports: Vec<MseReport>,
}

/// Averages [`evaluate_mse`] over `reps` sampled designs; rep `r` uses
/// sample seed `sample_seed + r` and every rep shares one test set.
pub fn average_mse_over_samples(
    sampler: Sampler,
    reps: usize,
    n: usize,
    function: &TestFunction,
    basis: TrendBasis,
    sample_seed: u64,
    options: &EvalOptions,
) -> Result<AverageReport> {
    if reps == 0 {
        return Err(Error::InvalidConfig("reps must be at least 1".into()));
    }
    if options.test_points == 0 {
        return Err(Error::InvalidConfig("at least one test point is required".into()));
    }
    let test = uniform_test_points(&function.bounds, options.test_points, options.test_seed);
    let reports = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let design = sampler.sample(n, function.dim(), sample_seed.wrapping_add(r))?;
            evaluate_mse_at(&design, function, basis, &options.kriging, &test)
        })
        .collect::<Result<Vec<_>>>()?;
    let count = reports.len() as f64;
    Ok(AverageReport {
        mean_mse: reports.iter().map(|r| r.mse).sum::<f64>() / count,
        mean_rmse: reports.iter().map(|r| r.rmse).sum::<f64>() / count,
        reports,
    })
}
