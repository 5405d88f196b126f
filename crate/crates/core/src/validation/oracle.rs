//! Rigid-foldability test for a 3×3 complex of quads.
//!
//! The corner panel `F₀₀` stays fixed while the hinge it shares with `F₀₁`
//! turns by `θ`. Every interior vertex is a spherical four-bar: once three
//! of its edge directions are placed the fourth follows from two cone
//! intersections on the unit sphere. Going round the four interior vertices
//! places every panel except `F₂₂`, which must still fit the angle between
//! its two placed edges at the last vertex. The mismatch is the closure
//! residual.

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::Point3;
use crate::net::Grid;

type V3 = Vector3<f64>;

/// Corner panel that stays fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Corner {
    #[default]
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

/// Which neighbour of the corner panel is driven: the one in the same row
/// or the one in the same column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum HingeAxis {
    #[default]
    Row,
    Column,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DrivingHinge {
    pub corner: Corner,
    pub along: HingeAxis,
}

/// Nine quads on a 4×4 vertex grid plus the driving hinge.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex3x3 {
    pub vertices: Grid,
    pub hinge: DrivingHinge,
}

impl Complex3x3 {
    pub fn new(vertices: Grid, hinge: DrivingHinge) -> Result<Self> {
        if (vertices.rows(), vertices.cols()) != (4, 4) {
            return Err(Error::ShapeMismatch(format!(
                "a 3x3 complex needs 4x4 vertices, got {}x{}",
                vertices.rows(),
                vertices.cols()
            )));
        }
        Ok(Complex3x3 { vertices, hinge })
    }

    /// The window of `g` with top-left vertex `(r0, c0)`.
    pub fn from_window(g: &Grid, r0: usize, c0: usize) -> Result<Self> {
        if r0 + 4 > g.rows() || c0 + 4 > g.cols() {
            return Err(Error::ShapeMismatch(format!("no 4x4 window at ({r0}, {c0})")));
        }
        Complex3x3::new(g.window(r0, c0, 4, 4), DrivingHinge::default())
    }

    /// Vertices reordered so the driving hinge is `F₀₀ | F₀₁`.
    fn normalized(&self) -> [[Point3; 4]; 4] {
        let g = &self.vertices;
        let (flip_r, flip_c) = match self.hinge.corner {
            Corner::TopLeft => (false, false),
            Corner::TopRight => (false, true),
            Corner::BottomLeft => (true, false),
            Corner::BottomRight => (true, true),
        };
        let at = |r: usize, c: usize| {
            let (r, c) = match self.hinge.along {
                HingeAxis::Row => (r, c),
                HingeAxis::Column => (c, r),
            };
            g.get(if flip_r { 3 - r } else { r }, if flip_c { 3 - c } else { c })
        };
        std::array::from_fn(|r| std::array::from_fn(|c| at(r, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSample {
    pub theta: f64,
    pub residual: f64,
    /// Placed vertices (normalized orientation); absent where the chain of
    /// vertex solves breaks.
    pub vertices: Option<Grid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub flexible: bool,
    /// Length of the run of samples around `θ = 0` that close.
    pub witness: f64,
    /// Largest residual inside that run.
    pub run_residual: f64,
    pub samples: Vec<OracleSample>,
    /// Set when two known edges at an interior vertex are collinear, so the
    /// vertex solve has no unique answer and the test is inconclusive.
    pub degenerate: bool,
}

/// Samples on each side of `θ = 0` and their spacing.
const HALF: usize = 20;
const STEP: f64 = 1e-3;
const CLOSURE: f64 = 1e-8;
const WITNESS: f64 = 1e-2;

fn angle(a: &V3, b: &V3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Why a vertex solve stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stop {
    /// The two cones do not meet.
    Unreal,
    /// The two known edges are collinear.
    Indeterminate,
}

/// The unit vector at angles `alpha` from `a` and `beta` from `b` nearest
/// to `near`.
fn two_cones(a: &V3, alpha: f64, b: &V3, beta: f64, near: &V3) -> Result<V3, Stop> {
    let g = a.dot(b);
    let k = 1.0 - g * g;
    if k <= 1e-14 {
        return Err(Stop::Indeterminate);
    }
    let (ca, cb) = (alpha.cos(), beta.cos());
    let l = (ca - g * cb) / k;
    let m = (cb - g * ca) / k;
    let base = a * l + b * m;
    let n = a.cross(b);
    let nu2 = (1.0 - base.norm_squared()) / n.norm_squared();
    if nu2 < -1e-12 {
        return Err(Stop::Unreal);
    }
    let nu = nu2.max(0.0).sqrt();
    let (x, y) = (base + n * nu, base - n * nu);
    Ok(if (x - near).norm() <= (y - near).norm() { x } else { y })
}

/// Rotation taking the reference edge pair `(r1, r2)` to `(c1, c2)`.
fn frame_rotation(r1: &V3, r2: &V3, c1: &V3, c2: &V3) -> Matrix3<f64> {
    let frame = |e1: &V3, e2: &V3| {
        let x = e1.normalize();
        let z = e1.cross(e2).normalize();
        Matrix3::from_columns(&[x, z.cross(&x), z])
    };
    frame(c1, c2) * frame(r1, r2).transpose()
}

struct Placement {
    /// Panel rotations `R[r][c]`; `F₂₂` from its edges at `V₂₂`.
    rot: [[Matrix3<f64>; 3]; 3],
    residual: f64,
}

struct Reference {
    v: [[Point3; 4]; 4],
}

impl Reference {
    fn e(&self, from: (usize, usize), to: (usize, usize)) -> V3 {
        (self.v[to.0][to.1] - self.v[from.0][from.1]).normalize()
    }

    fn sector(&self, at: (usize, usize), p: (usize, usize), q: (usize, usize)) -> f64 {
        angle(&self.e(at, p), &self.e(at, q))
    }
}

/// Places all panels for hinge angle `theta`, choosing at each vertex the
/// root nearest to `prev` (or the reference).
fn place(rf: &Reference, theta: f64, prev: Option<&Placement>) -> Result<Placement, Stop> {
    let id = Matrix3::identity();
    let mut rot = [[id; 3]; 3];
    let hinge = Unit::new_normalize(rf.v[1][1] - rf.v[0][1]);
    rot[0][1] = *Rotation3::from_axis_angle(&hinge, theta).matrix();

    let near = |r: usize, c: usize, e: V3| -> V3 { prev.map_or(e, |p| p.rot[r][c] * e) };

    // V₁₁: left on F₀₀, right on F₀₁; solve down.
    let (at, left, right, down) = ((1, 1), (1, 0), (1, 2), (2, 1));
    let cl = rot[0][0] * rf.e(at, left);
    let cr = rot[0][1] * rf.e(at, right);
    let cd = two_cones(
        &cr,
        rf.sector(at, right, down),
        &cl,
        rf.sector(at, left, down),
        &near(1, 0, rf.e(at, down)),
    )?;
    rot[1][0] = frame_rotation(&rf.e(at, left), &rf.e(at, down), &cl, &cd);
    rot[1][1] = frame_rotation(&rf.e(at, right), &rf.e(at, down), &cr, &cd);

    // V₁₂: up on F₀₁, down on F₁₁; solve right.
    let (at, up, right, down) = ((1, 2), (0, 2), (1, 3), (2, 2));
    let cu = rot[0][1] * rf.e(at, up);
    let cd = rot[1][1] * rf.e(at, down);
    let cr = two_cones(
        &cu,
        rf.sector(at, up, right),
        &cd,
        rf.sector(at, down, right),
        &near(0, 2, rf.e(at, right)),
    )?;
    rot[0][2] = frame_rotation(&rf.e(at, up), &rf.e(at, right), &cu, &cr);
    rot[1][2] = frame_rotation(&rf.e(at, right), &rf.e(at, down), &cr, &cd);

    // V₂₁: left on F₁₀, right on F₁₁; solve down.
    let (at, left, right, down) = ((2, 1), (2, 0), (2, 2), (3, 1));
    let cl = rot[1][0] * rf.e(at, left);
    let cr = rot[1][1] * rf.e(at, right);
    let cd = two_cones(
        &cl,
        rf.sector(at, left, down),
        &cr,
        rf.sector(at, right, down),
        &near(2, 0, rf.e(at, down)),
    )?;
    rot[2][0] = frame_rotation(&rf.e(at, left), &rf.e(at, down), &cl, &cd);
    rot[2][1] = frame_rotation(&rf.e(at, right), &rf.e(at, down), &cr, &cd);

    // V₂₂: right from F₁₂, down from F₂₁; F₂₂ must fit between them.
    let (at, right, down) = ((2, 2), (2, 3), (3, 2));
    let cr = rot[1][2] * rf.e(at, right);
    let cd = rot[2][1] * rf.e(at, down);
    let residual = (angle(&cr, &cd) - rf.sector(at, right, down)).abs();
    rot[2][2] = frame_rotation(&rf.e(at, right), &rf.e(at, down), &cr, &cd);
    Ok(Placement { rot, residual })
}

/// Vertex positions of a placement, propagating from the fixed panel.
fn positions(rf: &Reference, p: &Placement) -> Grid {
    let mut pos: [[Option<Point3>; 4]; 4] = [[None; 4]; 4];
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        pos[r][c] = Some(rf.v[r][c]);
    }
    // Panel order such that every panel has a placed corner.
    let order = [(0, 1), (1, 0), (1, 1), (0, 2), (1, 2), (2, 0), (2, 1), (2, 2)];
    for (r, c) in order {
        let corners = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)];
        let anchor = corners.iter().copied().find(|&(i, j)| pos[i][j].is_some());
        if let Some((ai, aj)) = anchor {
            let base = pos[ai][aj].unwrap_or(rf.v[ai][aj]);
            for (i, j) in corners {
                if pos[i][j].is_none() {
                    pos[i][j] = Some(base + p.rot[r][c] * (rf.v[i][j] - rf.v[ai][aj]));
                }
            }
        }
    }
    let pts = pos.iter().flatten().enumerate().map(|(k, q)| q.unwrap_or(rf.v[k / 4][k % 4])).collect();
    Grid::new(4, 4, pts).unwrap_or_else(|_| unreachable!("4x4 positions"))
}

/// Decides whether the complex admits a finite motion: the closure residual
/// must stay below `1e-8` on a run of hinge angles of length at least
/// `1e-2` around the reference.
pub fn kokotsakis_oracle(c: &Complex3x3) -> OracleResult {
    let rf = Reference { v: c.normalized() };
    let at0 = place(&rf, 0.0, None);
    let mut degenerate = at0.as_ref().err() == Some(&Stop::Indeterminate);
    let sample = |theta: f64, p: &Result<Placement, Stop>| match p {
        Ok(p) => OracleSample { theta, residual: p.residual, vertices: Some(positions(&rf, p)) },
        Err(_) => OracleSample { theta, residual: f64::INFINITY, vertices: None },
    };
    let mut side = |dir: f64| -> Vec<OracleSample> {
        let mut out = Vec::with_capacity(HALF);
        let mut prev = at0.as_ref().ok().map(|p| Placement { rot: p.rot, residual: p.residual });
        for i in 1..=HALF {
            let theta = dir * i as f64 * STEP;
            let placed = match &prev {
                Some(p) => place(&rf, theta, Some(p)),
                None => Err(Stop::Unreal),
            };
            degenerate |= placed.as_ref().err() == Some(&Stop::Indeterminate);
            out.push(sample(theta, &placed));
            prev = placed.ok();
        }
        out
    };
    let neg = side(-1.0);
    let pos = side(1.0);
    let mut samples: Vec<OracleSample> = Vec::with_capacity(2 * HALF + 1);
    samples.extend(neg.into_iter().rev());
    samples.push(sample(0.0, &at0));
    samples.extend(pos);

    let mid = HALF;
    let closes = |s: &OracleSample| s.residual < CLOSURE;
    let (mut lo, mut hi) = (mid, mid);
    if closes(&samples[mid]) {
        while lo > 0 && closes(&samples[lo - 1]) {
            lo -= 1;
        }
        while hi + 1 < samples.len() && closes(&samples[hi + 1]) {
            hi += 1;
        }
    }
    let witness = if closes(&samples[mid]) { samples[hi].theta - samples[lo].theta } else { 0.0 };
    let run_residual = samples[lo..=hi].iter().map(|s| s.residual).fold(0.0, f64::max);
    OracleResult { flexible: witness >= WITNESS - 1e-12, witness, run_residual, samples, degenerate }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Planar quads from a skew first row and column, each further vertex a
    /// fixed combination inside the plane of its three predecessors.
    fn generic_pq() -> Grid {
        let mut g = Grid::new(4, 4, vec![Point3::origin(); 16]).unwrap();
        for c in 0..4 {
            let c = c as f64;
            g.set(0, c as usize, Point3::new(c, 0.2 * c * c, 0.1 * c));
        }
        for r in 1..4 {
            let rf = r as f64;
            g.set(r, 0, Point3::new(0.15 * rf * rf, rf, -0.1 * rf));
        }
        for r in 1..4 {
            for c in 1..4 {
                let (p, q, s) = (g.get(r - 1, c - 1), g.get(r - 1, c), g.get(r, c - 1));
                let w = 0.9 + 0.05 * (r * c) as f64;
                g.set(r, c, p + (q - p) * w + (s - p) * (1.1 - 0.03 * r as f64));
            }
        }
        g
    }

    fn e1_block() -> Grid {
        use crate::linkage::{BranchSign, FlexCase};
        use crate::net::{build_patch, Boundary, InitialData, NetSpec, ProfileEntry};
        let r2 = std::f64::consts::SQRT_2;
        let spec = NetSpec {
            a_ref: 2.0,
            branch: BranchSign::Plus,
            cases: vec![FlexCase::Scaling1a],
            initial: InitialData { s: r2, t: r2, u: 2.0, v: r2 },
            profile: vec![
                ProfileEntry::lengths(2.0, 2.0, 0.4),
                ProfileEntry::lengths(1.8, 1.5, 0.8),
                ProfileEntry::lengths(1.6, 1.9, 1.2),
            ],
            boundary: Boundary::default(),
            chain: Vec::new(),
            parallel: None,
        };
        build_patch(&spec).unwrap().vertices
    }

    #[test]
    fn flexible_block_closes_for_every_hinge() {
        let g = e1_block();
        for corner in [Corner::TopLeft, Corner::TopRight, Corner::BottomLeft, Corner::BottomRight] {
            for along in [HingeAxis::Row, HingeAxis::Column] {
                let r = kokotsakis_oracle(&Complex3x3::new(g.clone(), DrivingHinge { corner, along }).unwrap());
                assert!(r.flexible, "{corner:?} {along:?}: witness {}", r.witness);
                assert!(r.run_residual < 1e-10);
                assert_eq!(r.samples.len(), 41);
            }
        }
    }

    #[test]
    fn generic_pq_complex_is_rigid() {
        let g = generic_pq();
        assert!(crate::validation::check_planarity(&g).passed);
        let r = kokotsakis_oracle(&Complex3x3::new(g, DrivingHinge::default()).unwrap());
        assert!(!r.flexible, "witness {} residual {}", r.witness, r.run_residual);
        assert!(r.samples[20].residual < 1e-14);
    }

    #[test]
    fn reference_sample_reproduces_the_complex() {
        let g = generic_pq();
        let r = kokotsakis_oracle(&Complex3x3::new(g.clone(), DrivingHinge::default()).unwrap());
        let placed = r.samples[20].vertices.as_ref().unwrap();
        assert!(placed.max_deviation(&g).unwrap() < 1e-12);
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let g = Grid::new(1, 1, vec![Point3::origin()]).unwrap();
        assert!(Complex3x3::new(g, DrivingHinge::default()).is_err());
    }
}
