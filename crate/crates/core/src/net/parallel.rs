use nalgebra::Vector3;

use super::{flex, ConeNet, FlexionState, Grid, Intrinsics, ParallelScales};
use crate::error::{Error, Result};
use crate::kinematics::Point3;

fn check_scales(g: &Grid, sc: &ParallelScales) -> Result<()> {
    if sc.row_scales.len() + 1 != g.cols() || sc.col_scales.len() + 1 != g.rows() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} grid needs {} row and {} column scales, got {} and {}",
            g.rows(),
            g.cols(),
            g.cols().saturating_sub(1),
            g.rows().saturating_sub(1),
            sc.row_scales.len(),
            sc.col_scales.len()
        )));
    }
    for (c, k) in sc.row_scales.iter().enumerate() {
        if !(*k > 0.0 && k.is_finite()) {
            return Err(Error::ClosureFailure { row: 0, col: c, reason: format!("row scale {k} is not positive") });
        }
    }
    for (r, k) in sc.col_scales.iter().enumerate() {
        if !(*k > 0.0 && k.is_finite()) {
            return Err(Error::ClosureFailure { row: r, col: 0, reason: format!("column scale {k} is not positive") });
        }
    }
    Ok(())
}

/// Meeting point of `p + s·d1` and `q + t·d2` in the least-squares sense.
fn close_quad(p: Point3, d1: Vector3<f64>, q: Point3, d2: Vector3<f64>, row: usize, col: usize) -> Result<Point3> {
    let (aa, bb, ab) = (d1.dot(&d1), d2.dot(&d2), d1.dot(&d2));
    let det = aa * bb - ab * ab;
    if !(det > 1e-20 * aa * bb) {
        return Err(Error::ClosureFailure { row, col, reason: "quad edges are parallel".into() });
    }
    let w = q - p;
    let (r1, r2) = (d1.dot(&w), d2.dot(&w));
    let s = (bb * r1 - ab * r2) / det;
    let t = (ab * r1 - aa * r2) / det;
    if s.abs() <= 1e-12 || t.abs() <= 1e-12 {
        return Err(Error::ClosureFailure { row, col, reason: "closed edge collapses".into() });
    }
    let x = p + d1 * s;
    let y = q + d2 * t;
    Ok(Point3::from((x.coords + y.coords) * 0.5))
}

/// Edge-parallel transfer of a grid: the first row and column are rebuilt
/// from scaled edges, every other vertex closes its quad with edges
/// parallel to the original ones.
pub fn transfer_grid(g: &Grid, sc: &ParallelScales) -> Result<Grid> {
    check_scales(g, sc)?;
    let mut out = g.clone();
    for c in 0..g.cols() - 1 {
        let e = g.get(0, c + 1) - g.get(0, c);
        out.set(0, c + 1, out.get(0, c) + e * sc.row_scales[c]);
    }
    for r in 0..g.rows() - 1 {
        let e = g.get(r + 1, 0) - g.get(r, 0);
        out.set(r + 1, 0, out.get(r, 0) + e * sc.col_scales[r]);
    }
    for r in 1..g.rows() {
        for c in 1..g.cols() {
            let down = g.get(r, c) - g.get(r - 1, c);
            let right = g.get(r, c) - g.get(r, c - 1);
            let p = close_quad(out.get(r - 1, c), down, out.get(r, c - 1), right, r, c)?;
            out.set(r, c, p);
        }
    }
    Ok(out)
}

pub(crate) fn transfer_state(st: &FlexionState, sc: &ParallelScales) -> Result<FlexionState> {
    Ok(FlexionState { a: st.a, vertices: transfer_grid(&st.vertices, sc)?, phis: st.phis.clone(), tips: Vec::new() })
}

/// The general P-net obtained from `net` by the edge-parallel transfer.
/// Transferring an already transferred net composes the scales.
pub fn parallel_transfer(net: &ConeNet, scales: &ParallelScales) -> Result<ConeNet> {
    let vertices = transfer_grid(&net.vertices, scales)?;
    let combined = match &net.transfer {
        None => scales.clone(),
        Some(prev) => ParallelScales {
            row_scales: prev.row_scales.iter().zip(&scales.row_scales).map(|(a, b)| a * b).collect(),
            col_scales: prev.col_scales.iter().zip(&scales.col_scales).map(|(a, b)| a * b).collect(),
        },
    };
    let mut spec = net.spec.clone();
    spec.parallel = Some(combined.clone());
    Ok(ConeNet {
        spec,
        intrinsics: Intrinsics::of(&vertices),
        vertices,
        tips: Vec::new(),
        classification: net.classification.clone(),
        transfer: Some(combined),
        model: net.model.clone(),
    })
}

/// State of the transferred net at `a`: the master's state, transferred.
pub fn flex_parallel(master: &ConeNet, scales: &ParallelScales, a: f64) -> Result<FlexionState> {
    transfer_state(&flex(master, a)?, scales)
}
