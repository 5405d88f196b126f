//! Discrete and semi-discrete axial nets, their flexion and the
//! edge-parallel transfer to general P-nets.
//!
//! Grid rows, top to bottom: the outer row `C`, the linkage rows
//! `R₀ … R_m` (one more than the number of chained triples) and the outer
//! row `D`. Columns follow the meridian planes `φ₀ = 0, φ₁, …, φ_p`.
//! Strip `r` (between grid rows `r` and `r + 1`) has tip `T_r`.

mod build;
mod parallel;
mod semidiscrete;

use serde::{Deserialize, Serialize};

pub use build::{build_net, build_patch, build_pnet, build_unchecked, flex, net_flexion_range, sweep};
pub use parallel::{flex_parallel, parallel_transfer, transfer_grid};
pub use semidiscrete::{sample_semidiscrete, CurveSample, CurveSampler};

use crate::error::{Error, Result};
use crate::kinematics::{AxisTip, Point3};
use crate::linkage::{check_fan, BranchSign, Classification, FlexCase};
use crate::tol;

pub(crate) use build::NetModel;

/// Index-0 data of the first triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialData {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
}

/// One column of the profile (indices 1..p; index 0 is [`InitialData`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ProfileEntry {
    /// Bar lengths; `t` is derived in case 3. Explicit `u` and `v` override
    /// the case formulas and may describe a non-flexible linkage.
    Lengths {
        s: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<f64>,
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        u: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        v: Option<f64>,
    },
    /// An explicit point of row `R₀` at `a_ref`: distance from the axis,
    /// meridian angle and height (forced to `z₀` in case 3).
    Point {
        d: f64,
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z: Option<f64>,
    },
}

impl ProfileEntry {
    pub fn lengths(s: f64, t: f64, phi: f64) -> Self {
        ProfileEntry::Lengths { s, t: Some(t), phi, u: None, v: None }
    }

    pub fn phi(&self) -> f64 {
        match *self {
            ProfileEntry::Lengths { phi, .. } | ProfileEntry::Point { phi, .. } => phi,
        }
    }

    fn values(&self) -> Vec<f64> {
        match *self {
            ProfileEntry::Lengths { s, t, phi, u, v } => {
                [Some(s), t, Some(phi), u, v].into_iter().flatten().collect()
            }
            ProfileEntry::Point { d, phi, z } => [Some(d), Some(phi), z].into_iter().flatten().collect(),
        }
    }
}

/// Placement of the outer rows along the rulings towards the outer tips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pub lambda_top: f64,
    pub lambda_bottom: f64,
}

impl Default for Boundary {
    fn default() -> Self {
        Boundary { lambda_top: 0.5, lambda_bottom: 0.5 }
    }
}

/// Data of a chained triple beyond the first. Only the ratio `v` is free;
/// the optional fields are checked against the values implied by the
/// previous triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainLink {
    pub v: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<BranchSign>,
}

impl ChainLink {
    pub fn ratio(v: f64) -> Self {
        ChainLink { v, s: None, t: None, u: None, branch: None }
    }
}

/// Scale factors of the edge-parallel transfer: one per edge of the first
/// row and one per edge of the first column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParallelScales {
    pub row_scales: Vec<f64>,
    pub col_scales: Vec<f64>,
}

impl ParallelScales {
    pub fn uniform(rows: usize, cols: usize, k: f64) -> Self {
        ParallelScales {
            row_scales: vec![k; cols.saturating_sub(1)],
            col_scales: vec![k; rows.saturating_sub(1)],
        }
    }
}

/// Everything needed to construct a net.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetSpec {
    pub a_ref: f64,
    pub branch: BranchSign,
    pub cases: Vec<FlexCase>,
    pub initial: InitialData,
    pub profile: Vec<ProfileEntry>,
    #[serde(default)]
    pub boundary: Boundary,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chain: Vec<ChainLink>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parallel: Option<ParallelScales>,
}

impl NetSpec {
    /// Grid rows: outer row, one row per triple plus one, outer row.
    pub fn rows(&self) -> usize {
        self.cases.len() + 3
    }

    pub fn cols(&self) -> usize {
        self.profile.len() + 1
    }

    pub fn phis(&self) -> Vec<f64> {
        std::iter::once(0.0).chain(self.profile.iter().map(|e| e.phi())).collect()
    }

    /// Structural invariants that do not need any geometry.
    pub fn validate(&self) -> Result<()> {
        let inv = |m: String| Err(Error::Invariant(m));
        if !(self.a_ref > 0.0 && self.a_ref.is_finite()) {
            return inv(format!("a_ref must be positive and finite, got {}", self.a_ref));
        }
        if self.cases.is_empty() {
            return inv("at least one case is required".into());
        }
        if self.cases.contains(&FlexCase::Perspectivity3) && self.cases.len() > 1 {
            return inv("case 3 forms a single block and cannot be chained".into());
        }
        if self.chain.len() + 1 != self.cases.len() {
            return inv(format!(
                "{} cases need {} chain links, got {}",
                self.cases.len(),
                self.cases.len() - 1,
                self.chain.len()
            ));
        }
        let InitialData { s, t, u, v } = self.initial;
        if ![s, t, u, v].iter().all(|x| x.is_finite()) || !(s > 0.0 && t > 0.0 && u > 0.0) {
            return inv("initial s, t, u must be positive and finite".into());
        }
        if v == 0.0 {
            return inv("initial ratio v must be nonzero".into());
        }
        for (j, e) in self.profile.iter().enumerate() {
            if !e.values().iter().all(|x| x.is_finite()) {
                return inv(format!("profile entry {} has non-finite values", j + 1));
            }
            let ok = match *e {
                ProfileEntry::Lengths { s, t, u, v, .. } => {
                    s > 0.0 && t.is_none_or(|t| t > 0.0) && u.is_none_or(|u| u > 0.0) && v.is_none_or(|v| v != 0.0)
                }
                ProfileEntry::Point { d, .. } => d > 0.0,
            };
            if !ok {
                return inv(format!("profile entry {} has invalid lengths", j + 1));
            }
        }
        for (k, link) in self.chain.iter().enumerate() {
            if !link.v.is_finite() || link.v == 0.0 {
                return inv(format!("chain link {} needs a finite nonzero v", k + 1));
            }
        }
        let Boundary { lambda_top, lambda_bottom } = self.boundary;
        for l in [lambda_top, lambda_bottom] {
            if !(l > 0.0 && l <= 1.0) {
                return inv(format!("boundary ratios must lie in (0, 1], got {l}"));
            }
        }
        if let Some(p) = &self.parallel {
            if p.row_scales.len() + 1 != self.cols() || p.col_scales.len() + 1 != self.rows() {
                return inv(format!(
                    "parallel scales need {} row and {} column factors",
                    self.cols() - 1,
                    self.rows() - 1
                ));
            }
            if !p.row_scales.iter().chain(&p.col_scales).all(|x| x.is_finite()) {
                return inv("parallel scales must be finite".into());
            }
        }
        check_fan(self.phis().into_iter())
    }
}

/// A rectangular grid of vertices, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    points: Vec<Point3>,
}

impl Grid {
    pub fn new(rows: usize, cols: usize, points: Vec<Point3>) -> Result<Self> {
        if points.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} points for a {rows}x{cols} grid",
                points.len()
            )));
        }
        Ok(Grid { rows, cols, points })
    }

    pub fn from_rows(rows: Vec<Vec<Point3>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("rows of different length".into()));
        }
        let n = rows.len();
        Grid::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Point3 {
        self.points[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Point3) {
        self.points[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[Point3] {
        &self.points[r * self.cols..(r + 1) * self.cols]
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The `nr × nc` window with top-left corner `(r0, c0)`.
    pub fn window(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Grid {
        let points = (r0..r0 + nr)
            .flat_map(|r| (c0..c0 + nc).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        Grid { rows: nr, cols: nc, points }
    }

    pub fn map(&self, f: impl Fn(&Point3) -> Point3) -> Grid {
        Grid { rows: self.rows, cols: self.cols, points: self.points.iter().map(f).collect() }
    }

    /// Largest vertex distance to another grid of the same shape.
    pub fn max_deviation(&self, other: &Grid) -> Result<f64> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("grids differ in shape".into()));
        }
        Ok(self
            .points
            .iter()
            .zip(&other.points)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max))
    }

    /// Mean length over all row and column edges.
    pub fn mean_edge(&self) -> f64 {
        let i = Intrinsics::of(self);
        let all: Vec<f64> = i.row_edges.iter().chain(&i.col_edges).copied().collect();
        if all.is_empty() {
            0.0
        } else {
            all.iter().sum::<f64>() / all.len() as f64
        }
    }

    pub fn to_nested(&self) -> Vec<Vec<[f64; 3]>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|p| [p.x, p.y, p.z]).collect())
            .collect()
    }
}

impl Serialize for Grid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 3]>>::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[x, y, z]| Point3::new(x, y, z)).collect())
            .collect();
        Grid::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Edge lengths and one diagonal per quad.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intrinsics {
    pub rows: usize,
    pub cols: usize,
    /// `rows × (cols − 1)`, edge `(r, c)–(r, c + 1)`.
    pub row_edges: Vec<f64>,
    /// `(rows − 1) × cols`, edge `(r, c)–(r + 1, c)`.
    pub col_edges: Vec<f64>,
    /// `(rows − 1) × (cols − 1)`, diagonal `(r, c)–(r + 1, c + 1)`.
    pub diagonals: Vec<f64>,
}

impl Intrinsics {
    pub fn of(g: &Grid) -> Self {
        let (rows, cols) = (g.rows(), g.cols());
        let dist = |a: (usize, usize), b: (usize, usize)| (g.get(a.0, a.1) - g.get(b.0, b.1)).norm();
        let mut row_edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols.saturating_sub(1) {
                row_edges.push(dist((r, c), (r, c + 1)));
            }
        }
        let mut col_edges = Vec::new();
        let mut diagonals = Vec::new();
        for r in 0..rows.saturating_sub(1) {
            for c in 0..cols {
                col_edges.push(dist((r, c), (r + 1, c)));
            }
            for c in 0..cols.saturating_sub(1) {
                diagonals.push(dist((r, c), (r + 1, c + 1)));
            }
        }
        Intrinsics { rows, cols, row_edges, col_edges, diagonals }
    }
}

/// A built net with its reference geometry.
#[derive(Debug, Clone)]
pub struct ConeNet {
    pub spec: NetSpec,
    pub vertices: Grid,
    /// Tips `T₀ … T_{m+1}`, one per strip; empty for transferred nets.
    pub tips: Vec<AxisTip>,
    pub intrinsics: Intrinsics,
    /// One classification per triple.
    pub classification: Vec<Classification>,
    /// Scales when this net is the parallel transfer of an axial master.
    pub transfer: Option<ParallelScales>,
    pub(crate) model: NetModel,
}

impl ConeNet {
    pub fn a_ref(&self) -> f64 {
        self.spec.a_ref
    }

    pub fn rows(&self) -> usize {
        self.vertices.rows()
    }

    pub fn cols(&self) -> usize {
        self.vertices.cols()
    }

    /// True when every triple classified as flexible.
    pub fn is_flexible(&self) -> bool {
        self.classification.iter().all(|c| c.label.is_flexible())
    }

    /// The reference state.
    pub fn reference_state(&self) -> FlexionState {
        FlexionState {
            a: self.spec.a_ref,
            vertices: self.vertices.clone(),
            phis: self.spec.phis(),
            tips: self.tips.clone(),
        }
    }
}

/// A snapshot of the motion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlexionState {
    pub a: f64,
    pub vertices: Grid,
    /// Realized meridian angles.
    pub phis: Vec<f64>,
    pub tips: Vec<AxisTip>,
}

impl FlexionState {
    pub fn tip_points(&self) -> Vec<Point3> {
        self.tips.iter().filter_map(AxisTip::point).collect()
    }
}

pub(crate) fn same_length(x: f64, y: f64) -> bool {
    (x - y).abs() <= tol::LENGTH_REL * x.abs().max(y.abs()).max(1.0)
}
