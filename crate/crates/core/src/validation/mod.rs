//! Numerical certificates that do not rely on the case classification:
//! quad planarity, isometry against the reference intrinsics, tip
//! collinearity and a from-scratch flexibility oracle for 3×3 complexes.

mod cross;
mod oracle;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

pub use cross::{cross_validate, cross_validate_with, restricted_linkage, BlockVerdict, CrossValidation};
pub use oracle::{kokotsakis_oracle, Complex3x3, Corner, DrivingHinge, HingeAxis, OracleResult, OracleSample};

use crate::error::{Error, Result};
use crate::kinematics::Point3;
use crate::net::{ConeNet, FlexionState, Grid, Intrinsics};
use crate::tol;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub max: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Labels such as `quad(1,2)`, `row(0,3)`, `col(2,0)` or `diag(1,1)`.
    pub offending: Vec<String>,
}

impl CheckResult {
    fn from_values(values: impl IntoIterator<Item = (String, f64)>, threshold: f64) -> Self {
        let mut max: f64 = 0.0;
        let mut offending = Vec::new();
        for (label, v) in values {
            // NaN counts as a failure.
            if !(v <= threshold) {
                offending.push(label);
            }
            max = if v.is_nan() { f64::INFINITY } else { max.max(v) };
        }
        CheckResult { max, threshold, passed: offending.is_empty(), offending }
    }
}

/// Combined report for one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub a: f64,
    pub planarity: CheckResult,
    pub isometry: CheckResult,
    pub collinearity: CheckResult,
    /// Whether every triple of the net classified as flexible.
    pub flexible: bool,
    /// 1-based sublinkage indices that match no flexible case.
    pub offending_sublinkages: Vec<usize>,
    pub passed: bool,
}

fn quad_defect(p: [Point3; 4]) -> f64 {
    let mean = (0..4).map(|i| (p[(i + 1) % 4] - p[i]).norm()).sum::<f64>() / 4.0;
    if mean == 0.0 {
        return 0.0;
    }
    // Plane through three of the vertices; the first three unless they are
    // (nearly) collinear, in which case the best-conditioned triple.
    let plane = |i: usize| {
        let (a, b, c) = (p[i], p[(i + 1) % 4], p[(i + 2) % 4]);
        let n = (b - a).cross(&(c - a));
        (n, a, p[(i + 3) % 4])
    };
    let mut best = plane(0);
    if best.0.norm() <= 1e-12 * mean * mean {
        best = (0..4).map(plane).max_by(|x, y| x.0.norm().total_cmp(&y.0.norm())).unwrap_or(best);
    }
    let (n, a, d) = best;
    let len = n.norm();
    if len <= 1e-300 {
        return 0.0;
    }
    (d - a).dot(&n).abs() / len / mean
}

/// Distance of each quad's fourth vertex to the plane of the other three,
/// divided by the quad's mean edge length.
pub fn check_planarity(g: &Grid) -> CheckResult {
    let mut values = Vec::new();
    for r in 0..g.rows().saturating_sub(1) {
        for c in 0..g.cols().saturating_sub(1) {
            let q = [g.get(r, c), g.get(r, c + 1), g.get(r + 1, c + 1), g.get(r + 1, c)];
            values.push((format!("quad({r},{c})"), quad_defect(q)));
        }
    }
    CheckResult::from_values(values, tol::PLANARITY)
}

/// Largest relative deviation of the row edges, column edges and one
/// diagonal per quad from the reference.
pub fn check_isometry(reference: &Intrinsics, g: &Grid) -> Result<CheckResult> {
    if (reference.rows, reference.cols) != (g.rows(), g.cols()) {
        return Err(Error::ShapeMismatch(format!(
            "reference is {}x{}, state is {}x{}",
            reference.rows,
            reference.cols,
            g.rows(),
            g.cols()
        )));
    }
    let now = Intrinsics::of(g);
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(tol::ABS_ZERO);
    let cols = g.cols();
    let mut values = Vec::new();
    let w = cols.saturating_sub(1);
    for (i, (x, y)) in now.row_edges.iter().zip(&reference.row_edges).enumerate() {
        values.push((format!("row({},{})", i / w.max(1), i % w.max(1)), rel(*x, *y)));
    }
    for (i, (x, y)) in now.col_edges.iter().zip(&reference.col_edges).enumerate() {
        values.push((format!("col({},{})", i / cols, i % cols), rel(*x, *y)));
    }
    for (i, (x, y)) in now.diagonals.iter().zip(&reference.diagonals).enumerate() {
        values.push((format!("diag({},{})", i / w.max(1), i % w.max(1)), rel(*x, *y)));
    }
    Ok(CheckResult::from_values(values, tol::ISOMETRY))
}

/// Largest distance of the points to their total-least-squares line.
/// Fewer than three points are trivially collinear.
pub fn check_tip_collinearity(points: &[Point3]) -> CheckResult {
    if points.len() < 3 {
        return CheckResult::from_values(std::iter::empty(), tol::COLLINEARITY);
    }
    let n = points.len() as f64;
    let centroid = points.iter().fold(Vector3::zeros(), |acc, p| acc + p.coords) / n;
    let mut cov = Matrix3::zeros();
    for p in points {
        let d = p.coords - centroid;
        cov += d * d.transpose();
    }
    let eig = cov.symmetric_eigen();
    let k = eig.eigenvalues.imax();
    let dir = eig.eigenvectors.column(k).into_owned();
    let values = points.iter().enumerate().map(|(i, p)| {
        let d = p.coords - centroid;
        (format!("tip({i})"), (d - dir * d.dot(&dir)).norm())
    });
    CheckResult::from_values(values, tol::COLLINEARITY)
}

/// All checks of a state against its net.
pub fn validate_state(net: &ConeNet, state: &FlexionState) -> Result<ValidationReport> {
    let planarity = check_planarity(&state.vertices);
    let isometry = check_isometry(&net.intrinsics, &state.vertices)?;
    let collinearity = check_tip_collinearity(&state.tip_points());
    let flexible = net.is_flexible();
    let offending_sublinkages = net
        .classification
        .first()
        .map(|c| c.offending.clone())
        .unwrap_or_default();
    let passed = planarity.passed && isometry.passed && collinearity.passed && flexible;
    Ok(ValidationReport {
        a: state.a,
        planarity,
        isometry,
        collinearity,
        flexible,
        offending_sublinkages,
        passed,
    })
}

/// Validates the state at `a`, or the reference state when `a` is `None`.
pub fn validate_net(net: &ConeNet, a: Option<f64>) -> Result<ValidationReport> {
    let state = match a {
        Some(a) => crate::net::flex(net, a)?,
        None => net.reference_state(),
    };
    validate_state(net, &state)
}
