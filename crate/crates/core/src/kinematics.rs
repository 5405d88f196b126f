//! Geometric primitives: profile points, rotations about the axis and the
//! axial projective maps.
//!
//! The axis `q` is the z-axis. The middle tip of a linkage sits at the
//! origin, the upper tip at `(0, 0, a)` and the lower tip at `(0, 0, b)`.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub type Point3 = nalgebra::Point3<f64>;

/// Position of a vertex inside its meridian plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    /// Distance from the axis.
    pub d: f64,
    /// Height along the axis.
    pub z: f64,
    /// Set when the triangle is degenerate (the point lies on the axis or
    /// the three lengths are collinear).
    pub on_boundary: bool,
}

impl ProfilePoint {
    /// Recovers `(s, t)`, the distances to the origin and to `(0, 0, a)`.
    pub fn lengths(&self, a: f64) -> (f64, f64) {
        (self.d.hypot(self.z), self.d.hypot(self.z - a))
    }
}

/// `2a²s² + 2a²t² + 2s²t² − a⁴ − s⁴ − t⁴`, evaluated in Heron's factored form
/// so that it stays accurate near the triangle boundary.
pub fn triangle_discriminant(a: f64, s: f64, t: f64) -> f64 {
    (a + s + t) * (s + t - a) * (a - s + t) * (a + s - t)
}

fn discriminant_slack(a: f64, s: f64, t: f64) -> f64 {
    tol::DISCRIMINANT_REL * (a.powi(4) + s.powi(4) + t.powi(4))
}

/// Vertex with `|S₂A| = s` and `|S₁A| = t` for the upper tip at height `a`.
pub fn profile_point(a: f64, s: f64, t: f64) -> Result<ProfilePoint> {
    profile_point_indexed(a, s, t, 0)
}

pub(crate) fn profile_point_indexed(a: f64, s: f64, t: f64, index: usize) -> Result<ProfilePoint> {
    if !(a > 0.0 && s > 0.0 && t > 0.0) || !(a.is_finite() && s.is_finite() && t.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "profile point needs positive finite lengths, got a={a}, s={s}, t={t}"
        )));
    }
    let disc = triangle_discriminant(a, s, t);
    let slack = discriminant_slack(a, s, t);
    if disc < -slack {
        return Err(Error::DiscriminantNegative { index, a });
    }
    Ok(ProfilePoint {
        d: disc.max(0.0).sqrt() / (2.0 * a),
        z: (a * a + s * s - t * t) / (2.0 * a),
        on_boundary: disc <= slack,
    })
}

/// Rotation about the z-axis by `phi` radians.
pub fn rotate_about_axis(p: &Point3, phi: f64) -> Point3 {
    let (s, c) = phi.sin_cos();
    Point3::new(c * p.x - s * p.y, s * p.x + c * p.y, p.z)
}

/// Point of the meridian plane at angle `phi` with signed radial coordinate
/// `x` and height `z`.
pub fn meridian_point(x: f64, z: f64, phi: f64) -> Point3 {
    let (s, c) = phi.sin_cos();
    Point3::new(x * c, x * s, z)
}

/// A cone tip on the axis, possibly at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AxisTip {
    Finite(f64),
    Ideal,
}

impl Default for AxisTip {
    fn default() -> Self {
        AxisTip::Finite(0.0)
    }
}

impl AxisTip {
    pub fn is_ideal(&self) -> bool {
        matches!(self, AxisTip::Ideal)
    }

    pub fn height(&self) -> Option<f64> {
        match *self {
            AxisTip::Finite(z) => Some(z),
            AxisTip::Ideal => None,
        }
    }

    pub fn point(&self) -> Option<Point3> {
        self.height().map(|z| Point3::new(0.0, 0.0, z))
    }

    pub fn homogeneous(&self) -> Vector4<f64> {
        match *self {
            AxisTip::Finite(z) => Vector4::new(0.0, 0.0, z, 1.0),
            AxisTip::Ideal => Vector4::new(0.0, 0.0, 1.0, 0.0),
        }
    }
}

/// The concrete projective transformation realized by an [`AxialMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapKind {
    CentralScaling,
    PerspectiveCollineation,
    CentralPerspectivity,
    Translation,
    Reflection,
}

/// Which of the three row maps is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapFamily {
    /// Central scaling about the center (cases 1a, 1b).
    Scaling,
    /// Perspective collineation with an axis plane (cases 2a, 2b).
    Collineation,
    /// Central perspectivity between two parallel planes (case 3).
    Perspectivity,
}

/// Input data for [`make_axial_map`]. Fields not used by a family are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MapParams {
    pub center: AxisTip,
    pub source: Option<AxisTip>,
    pub target: Option<AxisTip>,
    /// Scaling factor; required when source and target are both ideal.
    pub ratio: Option<f64>,
    /// `(z_α, z_β)` for the perspectivity.
    pub planes: Option<(f64, f64)>,
}

/// A projective map of 3-space preserving the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct AxialMap {
    pub kind: MapKind,
    pub matrix: Matrix4<f64>,
    pub center: AxisTip,
    pub source: Option<AxisTip>,
    pub target: Option<AxisTip>,
    /// Height `M` of the fixed plane of a collineation or reflection.
    pub axis_plane: Option<f64>,
    pub planes: Option<(f64, f64)>,
}

impl AxialMap {
    fn new(kind: MapKind, matrix: Matrix4<f64>, p: &MapParams) -> Self {
        AxialMap {
            kind,
            matrix,
            center: p.center,
            source: p.source,
            target: p.target,
            axis_plane: None,
            planes: None,
        }
    }

    /// Image of an axis point (possibly ideal).
    pub fn map_tip(&self, tip: AxisTip) -> AxisTip {
        let v = self.matrix * tip.homogeneous();
        if v[3].abs() <= tol::ABS_ZERO * v[2].abs().max(1.0) {
            AxisTip::Ideal
        } else {
            AxisTip::Finite(v[2] / v[3])
        }
    }

    /// Action on homogeneous coordinates.
    pub fn apply_homogeneous(&self, v: &Vector4<f64>) -> Vector4<f64> {
        self.matrix * v
    }
}

fn scaling_matrix(center: f64, k: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(0, 0)] = k;
    m[(1, 1)] = k;
    m[(2, 2)] = k;
    m[(2, 3)] = (1.0 - k) * center;
    m
}

fn translation_matrix(dz: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(2, 3)] = dz;
    m
}

fn reflection_matrix(m_plane: f64) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m[(2, 2)] = -1.0;
    m[(2, 3)] = 2.0 * m_plane;
    m
}

/// Harmonic homology with center `(0,0,c)` and fixed plane `z = m_plane`
/// sending `(0,0,s)` to `(0,0,t)`: `X ↦ X + k (z − M w) C`.
fn homology_matrix(c: f64, m_plane: f64, k: f64) -> Matrix4<f64> {
    let cvec = Vector4::new(0.0, 0.0, c, 1.0);
    let plane = Vector4::new(0.0, 0.0, 1.0, -m_plane);
    Matrix4::identity() + k * cvec * plane.transpose()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidTipConfiguration(msg.into())
}

fn distinct(x: f64, y: f64) -> bool {
    (x - y).abs() > tol::ABS_ZERO * x.abs().max(y.abs()).max(1.0)
}

/// Builds the projective matrix of a row map, including all ideal-tip limits.
pub fn make_axial_map(family: MapFamily, p: MapParams) -> Result<AxialMap> {
    let map = match family {
        MapFamily::Scaling => scaling(&p)?,
        MapFamily::Collineation => collineation(&p)?,
        MapFamily::Perspectivity => perspectivity(&p)?,
    };
    if map.matrix.determinant().abs() <= tol::ABS_ZERO {
        return Err(bad("map matrix is singular"));
    }
    Ok(map)
}

fn scaling(p: &MapParams) -> Result<AxialMap> {
    match (p.center, p.source, p.target) {
        (AxisTip::Finite(c), src, tgt) => {
            let from_tips = match (src, tgt) {
                (Some(AxisTip::Finite(s)), Some(AxisTip::Finite(t))) => {
                    if !distinct(s, c) || !distinct(t, c) {
                        return Err(bad("source and target must differ from the center"));
                    }
                    if !distinct(s, t) {
                        return Err(bad("finite source equals target: the adjacent cones coincide"));
                    }
                    Some((t - c) / (s - c))
                }
                (Some(AxisTip::Ideal), Some(AxisTip::Ideal)) | (None, None) => None,
                (Some(_), Some(_)) => {
                    return Err(bad("exactly one of source and target is ideal"));
                }
                _ => return Err(bad("source and target must be given together")),
            };
            let k = match (from_tips, p.ratio) {
                (Some(k), Some(r)) if !tol::close(k, r, tol::LENGTH_REL) => {
                    return Err(bad(format!("ratio {r} disagrees with tip ratio {k}")));
                }
                (Some(k), _) => k,
                (None, Some(r)) => r,
                (None, None) => return Err(bad("scaling needs a ratio or two finite tips")),
            };
            if !(k.is_finite() && k != 0.0) {
                return Err(bad("scaling ratio must be finite and nonzero"));
            }
            Ok(AxialMap::new(MapKind::CentralScaling, scaling_matrix(c, k), p))
        }
        (AxisTip::Ideal, Some(AxisTip::Finite(s)), Some(AxisTip::Finite(t))) => {
            if !distinct(s, t) {
                return Err(bad("translation with equal source and target"));
            }
            Ok(AxialMap::new(MapKind::Translation, translation_matrix(t - s), p))
        }
        (AxisTip::Ideal, _, _) => Err(bad("ideal center needs finite source and target")),
    }
}

fn collineation(p: &MapParams) -> Result<AxialMap> {
    let (src, tgt) = match (p.source, p.target) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(bad("collineation needs source and target")),
    };
    match (p.center, src, tgt) {
        (AxisTip::Finite(c), AxisTip::Finite(s), AxisTip::Finite(t)) => {
            if !distinct(s, c) || !distinct(t, c) {
                return Err(bad("source and target must differ from the center"));
            }
            if !distinct(s, t) {
                return Err(bad("finite source equals target: the adjacent cones coincide"));
            }
            let m_plane = 0.5 * (s + t);
            let mut map = AxialMap::new(
                MapKind::PerspectiveCollineation,
                homology_matrix(c, m_plane, 2.0 / (t - c)),
                p,
            );
            map.axis_plane = Some(m_plane);
            Ok(map)
        }
        (AxisTip::Finite(_), AxisTip::Ideal, AxisTip::Ideal) => {
            // With both outer tips at infinity the map is pinned by A₀ ↦ B₀ only.
            let mut q = *p;
            q.source = None;
            q.target = None;
            let mut map = scaling(&q)?;
            map.source = p.source;
            map.target = p.target;
            Ok(map)
        }
        (AxisTip::Ideal, AxisTip::Finite(s), AxisTip::Finite(t)) => {
            if !distinct(s, t) {
                return Err(bad("reflection with equal source and target"));
            }
            let m_plane = 0.5 * (s + t);
            let mut map = AxialMap::new(MapKind::Reflection, reflection_matrix(m_plane), p);
            map.axis_plane = Some(m_plane);
            Ok(map)
        }
        (AxisTip::Ideal, _, _) => Err(bad("ideal center with an ideal source")),
        _ => Err(bad("exactly one of source and target is ideal")),
    }
}

fn perspectivity(p: &MapParams) -> Result<AxialMap> {
    let (za, zb) = p
        .planes
        .ok_or_else(|| bad("perspectivity needs plane heights"))?;
    let mut map = match p.center {
        AxisTip::Finite(c) => {
            if !distinct(za, c) || !distinct(zb, c) {
                return Err(bad("planes must not pass through the center"));
            }
            AxialMap::new(
                MapKind::CentralPerspectivity,
                scaling_matrix(c, (zb - c) / (za - c)),
                p,
            )
        }
        AxisTip::Ideal => AxialMap::new(MapKind::Translation, translation_matrix(zb - za), p),
    };
    map.planes = Some((za, zb));
    Ok(map)
}

/// Projective action on an affine point.
pub fn apply_map(m: &AxialMap, p: &Point3) -> Result<Point3> {
    let v = m.matrix * p.to_homogeneous();
    let scale = v.xyz().amax().max(1.0);
    if v[3].abs() <= tol::ABS_ZERO * scale {
        return Err(Error::IdealImage);
    }
    Ok(Point3::new(v[0] / v[3], v[1] / v[3], v[2] / v[3]))
}
