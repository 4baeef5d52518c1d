//! Squared centered L2-discrepancy (CD²) of a point set in the unit cube.
//!
//! For a design with rows `x_1, …, x_n` in `[0, 1]^s`,
//!
//! ```text
//! CD² = (13/12)^s − (2/n) Σ_i Π_k f1(x_ik) + (1/n²) Σ_i Σ_j Π_k f2(x_ik, x_jk)
//! f1(x)    = 1 + ½|x − ½| − ½|x − ½|²
//! f2(a, b) = 1 + ½|a − ½| + ½|b − ½| − ½|a − b|
//! ```
//!
//! Besides the closed form this module provides the analytic coordinate
//! gradient, the fixed-point solve of a zero coordinate gradient, and
//! [`DiscrepancyCache`] for O(n·s) re-evaluation after a single-coordinate
//! change.
//!
//! The derivative uses the ordinary sign function with `sgn(0) = 0`, so at
//! the kinks (`x_ij = ½` or `x_ij = x_kj`) the gradient is a fixed choice of
//! subgradient. The diagonal terms of the double sum contribute
//! `(1/n²) sgn(x_ij − ½) Π_{q≠j} (1 + |x_iq − ½|)`.

use crate::error::{Error, Result};

/// An `n × s` point set in the unit cube, stored row-major. Rows are runs.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    n: usize,
    s: usize,
    values: Vec<f64>,
}

impl DesignMatrix {
    /// Builds a design from row-major values, rejecting entries outside `[0, 1]`.
    pub fn new(n: usize, s: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 || s == 0 {
            return Err(Error::Shape(format!("design must be at least 1x1, got {n}x{s}")));
        }
        if values.len() != n * s {
            return Err(Error::Shape(format!(
                "expected {} values for a {n}x{s} design, got {}",
                n * s,
                values.len()
            )));
        }
        for (idx, &v) in values.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain { row: idx / s, col: idx % s, value: v });
            }
        }
        Ok(Self { n, s, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let s = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(n * s);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != s {
                return Err(Error::Shape(format!(
                    "row {i} has {} columns, expected {s}",
                    row.len()
                )));
            }
            values.extend_from_slice(row);
        }
        Self::new(n, s, values)
    }

    /// A design with every entry equal to `value`.
    pub fn filled(n: usize, s: usize, value: f64) -> Result<Self> {
        Self::new(n, s, vec![value; n * s])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.s + j]
    }

    /// Sets one coordinate. Panics on out-of-range indices; the value must
    /// already be known to lie in `[0, 1]`.
    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, value: f64) {
        debug_assert!((0.0..=1.0).contains(&value));
        self.values[i * self.s + j] = value;
    }

    /// Checked coordinate write.
    pub fn try_set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        self.check_index(i, j)?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain { row: i, col: j, value });
        }
        self.set(i, j, value);
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.s..(i + 1) * self.s]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.s)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entrywise `x → 1 − x`.
    pub fn reflected(&self) -> Self {
        Self {
            n: self.n,
            s: self.s,
            values: self.values.iter().map(|v| 1.0 - v).collect(),
        }
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.s {
            return Err(Error::IndexOutOfRange { row: i, col: j, n: self.n, s: self.s });
        }
        Ok(())
    }
}

/// `n × s` matrix of partial derivatives `∂CD²/∂x_ij`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientMatrix {
    pub n: usize,
    pub s: usize,
    pub values: Vec<f64>,
}

impl GradientMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.s + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.s..(i + 1) * self.s]
    }
}

/// Sign with `sgn(0) = 0`.
#[inline]
pub fn sgn(u: f64) -> f64 {
    if u > 0.0 {
        1.0
    } else if u < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[inline]
fn f1(x: f64) -> f64 {
    let d = (x - 0.5).abs();
    1.0 + 0.5 * d - 0.5 * d * d
}

#[inline]
fn f2(a: f64, b: f64) -> f64 {
    1.0 + 0.5 * (a - 0.5).abs() + 0.5 * (b - 0.5).abs() - 0.5 * (a - b).abs()
}

fn row_product(row: &[f64]) -> f64 {
    row.iter().map(|&x| f1(x)).product()
}

fn pair_product(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| f2(x, y)).product()
}

fn constant_term(s: usize) -> f64 {
    (13.0f64 / 12.0).powi(s as i32)
}

fn combine(n: usize, s: usize, row_sum: f64, kernel_sum: f64) -> f64 {
    let nf = n as f64;
    constant_term(s) - 2.0 / nf * row_sum + kernel_sum / (nf * nf)
}

/// Squared centered L2-discrepancy of `design`, without clamping round-off.
pub fn cd2(design: &DesignMatrix) -> f64 {
    let n = design.n();
    let mut row_sum = 0.0;
    let mut kernel_sum = 0.0;
    for i in 0..n {
        let xi = design.row(i);
        row_sum += row_product(xi);
        kernel_sum += pair_product(xi, xi);
        for k in (i + 1)..n {
            kernel_sum += 2.0 * pair_product(xi, design.row(k));
        }
    }
    combine(n, design.s(), row_sum, kernel_sum)
}

/// Coefficients of the coordinate gradient along `x_ij`, evaluated with the
/// sign pattern of the trial value `at`.
///
/// The gradient at `at` equals `a − b·(at − ½)`, so `a/b + ½` is the point
/// where it vanishes while the sign pattern stays fixed. `b < 0` always.
fn coordinate_coefficients(design: &DesignMatrix, i: usize, j: usize, at: f64) -> (f64, f64) {
    let n = design.n();
    let nf = n as f64;
    let xi = design.row(i);

    let mut p1 = 1.0;
    let mut pdiag = 1.0;
    for (q, &x) in xi.iter().enumerate() {
        if q != j {
            p1 *= f1(x);
            pdiag *= 1.0 + (x - 0.5).abs();
        }
    }

    let s_center = sgn(at - 0.5);
    let mut off = 0.0;
    for k in 0..n {
        if k == i {
            continue;
        }
        let xk = design.row(k);
        let mut pk = 1.0;
        for q in 0..xi.len() {
            if q != j {
                pk *= f2(xi[q], xk[q]);
            }
        }
        off += pk * (0.5 * s_center - 0.5 * sgn(at - xk[j]));
    }

    let b = -2.0 / nf * p1;
    let a = b * 0.5 * s_center + pdiag * s_center / (nf * nf) + 2.0 / (nf * nf) * off;
    (a, b)
}

/// `∂CD²/∂x_ij` at the current design.
pub fn coordinate_gradient(design: &DesignMatrix, i: usize, j: usize) -> f64 {
    let x = design.get(i, j);
    let (a, b) = coordinate_coefficients(design, i, j, x);
    a - b * (x - 0.5)
}

/// Full gradient of CD² with respect to every coordinate.
pub fn cd2_gradient(design: &DesignMatrix) -> GradientMatrix {
    let (n, s) = (design.n(), design.s());
    let mut values = Vec::with_capacity(n * s);
    for i in 0..n {
        for j in 0..s {
            values.push(coordinate_gradient(design, i, j));
        }
    }
    GradientMatrix { n, s, values }
}

/// Solves `∂CD²/∂x_ij = 0` for `x_ij` by `t_max` rounds of the recursion
/// `x ← A(x)/B + ½`, holding every other coordinate fixed. The sign terms in
/// `A` are taken at the previous iterate. Each iterate is clamped to `[0, 1]`.
pub fn zero_gradient_solve(design: &DesignMatrix, i: usize, j: usize, t_max: usize) -> Result<f64> {
    design.check_index(i, j)?;
    if t_max == 0 {
        return Err(Error::InvalidConfig("t_max must be at least 1".into()));
    }
    let mut x = design.get(i, j);
    for _ in 0..t_max {
        let (a, b) = coordinate_coefficients(design, i, j, x);
        x = (a / b + 0.5).clamp(0.0, 1.0);
    }
    Ok(x)
}

/// Cached factorization of CD² enabling O(n·s) updates of one coordinate.
///
/// Holds the per-row `f1` products and the symmetric `n × n` kernel of `f2`
/// products. Updates recompute the affected row and column of the kernel in
/// full rather than rescaling the old entries.
#[derive(Debug, Clone)]
pub struct DiscrepancyCache {
    design: DesignMatrix,
    row_products: Vec<f64>,
    kernel: Vec<f64>,
    row_sum: f64,
    kernel_sum: f64,
    cd2: f64,
    scratch: Vec<f64>,
}

impl DiscrepancyCache {
    pub fn new(design: DesignMatrix) -> Self {
        let n = design.n();
        let mut cache = Self {
            row_products: vec![0.0; n],
            kernel: vec![0.0; n * n],
            row_sum: 0.0,
            kernel_sum: 0.0,
            cd2: 0.0,
            scratch: vec![0.0; n],
            design,
        };
        cache.rebuild();
        cache
    }

    /// Recomputes every cached quantity from the design.
    pub fn rebuild(&mut self) {
        let n = self.design.n();
        for i in 0..n {
            let xi = self.design.row(i);
            self.row_products[i] = row_product(xi);
            for k in i..n {
                let v = pair_product(xi, self.design.row(k));
                self.kernel[i * n + k] = v;
                self.kernel[k * n + i] = v;
            }
        }
        self.row_sum = self.row_products.iter().sum();
        self.kernel_sum = self.kernel.iter().sum();
        self.cd2 = combine(n, self.design.s(), self.row_sum, self.kernel_sum);
    }

    pub fn cd2(&self) -> f64 {
        self.cd2
    }

    pub fn design(&self) -> &DesignMatrix {
        &self.design
    }

    pub fn into_design(self) -> DesignMatrix {
        self.design
    }

    pub fn row_products(&self) -> &[f64] {
        &self.row_products
    }

    /// Row-major `n × n` kernel matrix.
    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }

    fn validate(&self, i: usize, j: usize, value: f64) -> Result<()> {
        self.design.check_index(i, j)?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain { row: i, col: j, value });
        }
        Ok(())
    }

    /// Fills `scratch` with row `i` of the kernel as it would be after
    /// `x_ij := value`, and returns the new row product and the change in
    /// CD²'s two sums.
    fn trial_row(&mut self, i: usize, j: usize, value: f64) -> (f64, f64, f64) {
        let n = self.design.n();
        let xi = self.design.row(i);
        let at = |q: usize| if q == j { value } else { xi[q] };

        let new_rp: f64 = (0..xi.len()).map(|q| f1(at(q))).product();
        let mut kernel_delta = 0.0;
        for k in 0..n {
            let v = if k == i {
                (0..xi.len()).map(|q| f2(at(q), at(q))).product()
            } else {
                let xk = self.design.row(k);
                (0..xi.len()).map(|q| f2(at(q), xk[q])).product()
            };
            self.scratch[k] = v;
            let old = self.kernel[i * n + k];
            kernel_delta += if k == i { v - old } else { 2.0 * (v - old) };
        }
        (new_rp, new_rp - self.row_products[i], kernel_delta)
    }

    /// CD² the design would have after `x_ij := value`, leaving the cache untouched.
    pub fn cd2_if(&mut self, i: usize, j: usize, value: f64) -> Result<f64> {
        self.validate(i, j, value)?;
        let (_, row_delta, kernel_delta) = self.trial_row(i, j, value);
        Ok(combine(
            self.design.n(),
            self.design.s(),
            self.row_sum + row_delta,
            self.kernel_sum + kernel_delta,
        ))
    }

    /// Sets `x_ij := value` and returns the new CD².
    pub fn update(&mut self, i: usize, j: usize, value: f64) -> Result<f64> {
        self.validate(i, j, value)?;
        let n = self.design.n();
        let (new_rp, row_delta, kernel_delta) = self.trial_row(i, j, value);
        self.row_products[i] = new_rp;
        for k in 0..n {
            let v = self.scratch[k];
            self.kernel[i * n + k] = v;
            self.kernel[k * n + i] = v;
        }
        self.row_sum += row_delta;
        self.kernel_sum += kernel_delta;
        self.design.set(i, j, value);
        self.cd2 = combine(n, self.design.s(), self.row_sum, self.kernel_sum);
        Ok(self.cd2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(rows: &[&[f64]]) -> DesignMatrix {
        DesignMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn center_point() {
        let d = design(&[&[0.5]]);
        assert!((cd2(&d) - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(cd2_gradient(&d).values, vec![0.0]);
        assert_eq!(zero_gradient_solve(&d, 0, 0, 1).unwrap(), 0.5);
    }

    #[test]
    fn two_point_line() {
        // f1 = 1.09375 at both points; kernel 1.25 on the diagonal, 1.0 off it.
        let d = design(&[&[0.25], &[0.75]]);
        let expected = 13.0 / 12.0 - 2.0 / 2.0 * (2.0 * 1.09375) + (2.0 * 1.25 + 2.0 * 1.0) / 4.0;
        assert!((cd2(&d) - expected).abs() < 1e-15);
        assert!((cd2(&d) - 0.0208333).abs() < 1e-7);
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(matches!(
            DesignMatrix::from_rows(&[[0.2, 1.5]]),
            Err(Error::Domain { row: 0, col: 1, .. })
        ));
        assert!(DesignMatrix::from_rows(&[[0.2, -0.0001]]).is_err());
        assert!(DesignMatrix::from_rows(&[vec![0.2, 0.3], vec![0.1]]).is_err());
        assert!(DesignMatrix::new(0, 1, vec![]).is_err());
        assert!(DesignMatrix::new(1, 1, vec![f64::NAN]).is_err());
    }

    #[test]
    fn cache_center_point() {
        let cache = DiscrepancyCache::new(design(&[&[0.5]]));
        assert_eq!(cache.row_products(), &[1.0]);
        assert_eq!(cache.kernel(), &[1.0]);
        assert!((cache.cd2() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn cache_update_matches_full_recompute() {
        let mut cache = DiscrepancyCache::new(design(&[&[0.1, 0.7], &[0.4, 0.2], &[0.9, 0.55]]));
        let original = cache.cd2();
        let before = cache.design().get(1, 0);

        cache.update(1, 0, before).unwrap();
        assert!((cache.cd2() - original).abs() < 1e-12);

        let trial = cache.cd2_if(1, 0, 0.63).unwrap();
        assert!((cache.cd2() - original).abs() < 1e-15);
        let updated = cache.update(1, 0, 0.63).unwrap();
        assert_eq!(trial, updated);
        assert!((updated - cd2(cache.design())).abs() < 1e-12);

        cache.update(1, 0, before).unwrap();
        assert!((cache.cd2() - original).abs() < 1e-12);
    }

    #[test]
    fn cache_update_errors() {
        let mut cache = DiscrepancyCache::new(design(&[&[0.1, 0.7], &[0.4, 0.2]]));
        assert!(matches!(cache.update(2, 0, 0.5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(cache.update(0, 2, 0.5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(cache.update(0, 0, 1.1), Err(Error::Domain { .. })));
        assert!(matches!(cache.cd2_if(0, 0, -0.1), Err(Error::Domain { .. })));
    }

    #[test]
    fn zero_gradient_root_is_stationary() {
        let d = design(&[&[0.12, 0.81, 0.33], &[0.64, 0.27, 0.91], &[0.38, 0.58, 0.07], &[0.86, 0.02, 0.69]]);
        let (i, j) = (2, 1);
        let x0 = d.get(i, j);
        let root = zero_gradient_solve(&d, i, j, 1).unwrap();
        let same_pattern = sgn(root - 0.5) == sgn(x0 - 0.5)
            && (0..d.n()).filter(|&k| k != i).all(|k| sgn(root - d.get(k, j)) == sgn(x0 - d.get(k, j)));
        assert!(same_pattern, "fixture chosen so the root keeps its sign pattern");
        let mut moved = d.clone();
        moved.set(i, j, root);
        assert!(coordinate_gradient(&moved, i, j).abs() < 1e-10);
    }

    #[test]
    fn zero_gradient_clamps() {
        // Column-mates above x_i0 pull the root below 0; raw A/B + ½ ≈ −0.48.
        let d = design(&[&[0.6, 0.0, 0.0], &[0.9, 0.0, 0.0], &[0.95, 0.0, 0.0]]);
        assert_eq!(zero_gradient_solve(&d, 0, 0, 1).unwrap(), 0.0);
        assert!(zero_gradient_solve(&d, 0, 0, 0).is_err());
        assert!(zero_gradient_solve(&d, 3, 0, 1).is_err());
    }
}
