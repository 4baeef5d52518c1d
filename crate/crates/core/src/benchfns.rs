//! Benchmark responses for the modeling comparison and the maps between
//! the unit cube and experiment bounds.

use serde::{Deserialize, Serialize};

use crate::discrepancy::DesignMatrix;
use crate::error::{Error, Result};
use crate::lattice::UTypeDesign;

/// Wood function on `[−2, 2]^4`, global minimum 0 at `(1, 1, 1, 1)`.
pub fn wood(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    100.0 * (x1 * x1 - x2).powi(2)
        + (1.0 - x1).powi(2)
        + 90.0 * (x4 - x3 * x3).powi(2)
        + (1.0 - x3).powi(2)
        + 10.1 * ((x2 - 1.0).powi(2) + (x4 - 1.0).powi(2))
        + 19.8 * (x2 - 1.0) * (x4 - 1.0)
}

/// Six-hump camelback on `[−3, 3] × [−2, 2]`.
pub fn camelback(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let x1sq = x1 * x1;
    4.0 * x1sq - 2.1 * x1sq * x1sq + x1sq * x1sq * x1sq / 3.0 + x1 * x2 - 4.0 * x2 * x2 + 4.0 * x2.powi(4)
}

/// Closed interval `[lower, upper]` of one factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub lower: f64,
    pub upper: f64,
}

impl Bound {
    pub const UNIT: Bound = Bound { lower: 0.0, upper: 1.0 };

    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

fn check_bounds(bounds: &[Bound], s: usize) -> Result<()> {
    if bounds.len() != s {
        return Err(Error::Shape(format!("{} bounds given for {s} factors", bounds.len())));
    }
    for (k, b) in bounds.iter().enumerate() {
        if !(b.lower < b.upper) || !b.lower.is_finite() || !b.upper.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "bound {k} is degenerate: [{}, {}]",
                b.lower, b.upper
            )));
        }
    }
    Ok(())
}

/// Rows of a design mapped into experiment bounds.
pub type ScaledDesign = Vec<Vec<f64>>;

/// `x → a_k + x·(b_k − a_k)`, column by column.
pub fn scale_design(design: &DesignMatrix, bounds: &[Bound]) -> Result<ScaledDesign> {
    check_bounds(bounds, design.s())?;
    Ok(design
        .rows()
        .map(|row| row.iter().zip(bounds).map(|(&x, b)| b.lower + x * b.width()).collect())
        .collect())
}

/// Inverse of [`scale_design`]. Points outside the bounds are rejected.
pub fn unscale_points(points: &[Vec<f64>], bounds: &[Bound]) -> Result<DesignMatrix> {
    let s = bounds.len();
    check_bounds(bounds, s)?;
    let mut values = Vec::with_capacity(points.len() * s);
    for (i, p) in points.iter().enumerate() {
        if p.len() != s {
            return Err(Error::Shape(format!("point {i} has {} coordinates, expected {s}", p.len())));
        }
        values.extend(p.iter().zip(bounds).map(|(&y, b)| ((y - b.lower) / b.width()).clamp(0.0, 1.0)));
    }
    DesignMatrix::new(points.len(), s, values)
}

/// Level `l` of column `k` → `a_k + (l − 1)/(q − 1)·(b_k − a_k)`, so level 1
/// and level `q` land on the bounds. This differs from the `(l − 0.5)/q`
/// unit-cube embedding.
pub fn scale_lattice(design: &UTypeDesign, bounds: &[Bound]) -> Result<ScaledDesign> {
    check_bounds(bounds, design.s())?;
    if design.q() < 2 {
        return Err(Error::InvalidConfig("endpoint scaling needs at least two levels".into()));
    }
    let span = (design.q() - 1) as f64;
    Ok((0..design.n())
        .map(|i| {
            (0..design.s())
                .map(|k| {
                    let b = bounds[k];
                    b.lower + (design.level(i, k) - 1) as f64 / span * b.width()
                })
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestFunctionKind {
    Wood,
    Camelback,
    /// Constant response in the given dimension; a harness self-check.
    Constant { dim: usize, value: f64 },
}

/// A response surface with its natural bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub kind: TestFunctionKind,
    pub bounds: Vec<Bound>,
}

impl TestFunction {
    pub fn wood() -> Self {
        Self { kind: TestFunctionKind::Wood, bounds: vec![Bound::new(-2.0, 2.0); 4] }
    }

    pub fn camelback() -> Self {
        Self {
            kind: TestFunctionKind::Camelback,
            bounds: vec![Bound::new(-3.0, 3.0), Bound::new(-2.0, 2.0)],
        }
    }

    pub fn constant(dim: usize, value: f64) -> Self {
        Self { kind: TestFunctionKind::Constant { dim, value }, bounds: vec![Bound::UNIT; dim] }
    }

    /// Same function over different bounds.
    pub fn with_bounds(mut self, bounds: Vec<Bound>) -> Result<Self> {
        check_bounds(&bounds, self.dim())?;
        self.bounds = bounds;
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            TestFunctionKind::Wood => "wood",
            TestFunctionKind::Camelback => "camelback",
            TestFunctionKind::Constant { .. } => "const",
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            TestFunctionKind::Wood => 4,
            TestFunctionKind::Camelback => 2,
            TestFunctionKind::Constant { dim, .. } => dim,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self.kind {
            TestFunctionKind::Wood => wood(x),
            TestFunctionKind::Camelback => camelback(x),
            TestFunctionKind::Constant { value, .. } => value,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round4(x: f64) -> f64 {
        (x * 1e4).round() / 1e4
    }

    #[test]
    fn wood_values() {
        assert_eq!(wood(&[1.0, 1.0, 1.0, 1.0]), 0.0);
        // 0 + 1 + 0 + 1 + 20.2 + 19.8
        assert!((wood(&[0.0; 4]) - 42.0).abs() < 1e-12);
        // 0 + 4 + 0 + 4 + 0 + 0
        assert!((wood(&[-1.0, 1.0, -1.0, 1.0]) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn camelback_values() {
        assert_eq!(camelback(&[0.0, 0.0]), 0.0);
        assert!((camelback(&[0.09, -0.71]) + 1.03).abs() < 0.01);
        assert!((camelback(&[-0.09, 0.71]) + 1.03).abs() < 0.01);
        assert!(camelback(&[3.0, 0.0]) > 0.0 && camelback(&[-3.0, 0.0]) > 0.0);
        for &(a, b) in &[(0.3, -1.2), (2.5, 1.9), (-1.1, 0.4)] {
            assert!((camelback(&[a, b]) - camelback(&[-a, -b])).abs() < 1e-12);
        }
    }

    #[test]
    fn design_scaling() {
        let b = [Bound::new(-2.0, 2.0)];
        let d = DesignMatrix::from_rows(&[[0.3942], [0.5]]).unwrap();
        let scaled = scale_design(&d, &b).unwrap();
        assert_eq!(round4(scaled[0][0]), -0.4232);
        assert_eq!(scaled[1][0], 0.0);
        let unit = scale_design(&d, &[Bound::UNIT]).unwrap();
        assert_eq!(unit[0][0], 0.3942);
        assert!(scale_design(&d, &[Bound::new(1.0, 1.0)]).is_err());
        assert!(scale_design(&d, &[Bound::UNIT, Bound::UNIT]).is_err());
    }

    #[test]
    fn lattice_scaling() {
        let b = vec![Bound::new(-2.0, 2.0)];
        let u9 = UTypeDesign::new(9, 9, 1, (1..=9).collect()).unwrap();
        let scaled = scale_lattice(&u9, &b).unwrap();
        assert_eq!(scaled[3][0], -0.5);
        assert_eq!(scaled[0][0], -2.0);
        assert_eq!(scaled[8][0], 2.0);
        let u16 = UTypeDesign::new(16, 16, 1, (1..=16).collect()).unwrap();
        assert!((scale_lattice(&u16, &b).unwrap()[8][0] - 0.13).abs() < 0.005);
        let u1 = UTypeDesign::new(3, 1, 1, vec![1, 1, 1]).unwrap();
        assert!(scale_lattice(&u1, &b).is_err());
    }
}
