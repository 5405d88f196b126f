//! The planar linkage living in the meridian planes of an axial net.
//!
//! Index 0 carries the initial sublinkage `L₀`; it fixes the lower tip
//! `S₃ = (0, 0, b)` as a function of the driving parameter `a`. Every
//! further sublinkage must keep `|B_j S₃| = u_j` along the whole motion,
//! which happens only for the five families returned by [`classify`].

mod classify;
mod coeffs;
mod monomials;
mod range;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use classify::{classify, classify_with, CaseLabel, Classification};
pub use coeffs::{coeffs_fgh, CoeffTriple};
pub(crate) use range::scan_interval;
pub use range::{flexion_range, interval_containing, FlexInterval, LimitKind};

use crate::error::{Error, Result};
use crate::kinematics::{
    make_axial_map, profile_point_indexed, AxialMap, AxisTip, MapFamily, MapParams, ProfilePoint,
};
use crate::tol;

/// Intrinsic data of one meridian cut: bar lengths `s = |S₂A|`,
/// `t = |S₁A|`, `u = |S₃B|`, ratio `v` with `B = v·A`, and the meridian angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sublinkage {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub phi: f64,
}

impl Sublinkage {
    pub fn new(s: f64, t: f64, u: f64, v: f64, phi: f64) -> Result<Self> {
        let l = Sublinkage { s, t, u, v, phi };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        let Sublinkage { s, t, u, v, phi } = *self;
        if ![s, t, u, v, phi].iter().all(|x| x.is_finite()) {
            return Err(Error::Invariant("sublinkage values must be finite".into()));
        }
        if !(s > 0.0 && t > 0.0 && u > 0.0) {
            return Err(Error::Invariant(format!(
                "bar lengths must be positive (s={s}, t={t}, u={u})"
            )));
        }
        if v == 0.0 {
            return Err(Error::Invariant("ratio v must be nonzero".into()));
        }
        Ok(())
    }

    /// Profile point of `A` for the upper tip at height `a`.
    pub fn profile(&self, a: f64) -> Result<ProfilePoint> {
        profile_point_indexed(a, self.s, self.t, 0)
    }
}

/// Which root of the tip equation is followed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl BranchSign {
    pub fn sign(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            BranchSign::Plus => BranchSign::Minus,
            BranchSign::Minus => BranchSign::Plus,
        }
    }
}

impl fmt::Display for BranchSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchSign::Plus => "+",
            BranchSign::Minus => "-",
        })
    }
}

impl FromStr for BranchSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(BranchSign::Plus),
            "-" => Ok(BranchSign::Minus),
            _ => Err(Error::Schema(format!("branch must be \"+\" or \"-\", got {s:?}"))),
        }
    }
}

/// The five flexible families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlexCase {
    #[serde(rename = "1a")]
    Scaling1a,
    #[serde(rename = "1b")]
    Scaling1b,
    #[serde(rename = "2a")]
    Collineation2a,
    #[serde(rename = "2b")]
    Collineation2b,
    #[serde(rename = "3")]
    Perspectivity3,
}

impl FlexCase {
    pub const ALL: [FlexCase; 5] = [
        FlexCase::Scaling1a,
        FlexCase::Scaling1b,
        FlexCase::Collineation2a,
        FlexCase::Collineation2b,
        FlexCase::Perspectivity3,
    ];

    /// Short code used in documents: `1a`, `1b`, `2a`, `2b`, `3`.
    pub fn code(self) -> &'static str {
        match self {
            FlexCase::Scaling1a => "1a",
            FlexCase::Scaling1b => "1b",
            FlexCase::Collineation2a => "2a",
            FlexCase::Collineation2b => "2b",
            FlexCase::Perspectivity3 => "3",
        }
    }

    /// Display name, e.g. `Scaling_1a`.
    pub fn name(self) -> &'static str {
        match self {
            FlexCase::Scaling1a => "Scaling_1a",
            FlexCase::Scaling1b => "Scaling_1b",
            FlexCase::Collineation2a => "Collineation_2a",
            FlexCase::Collineation2b => "Collineation_2b",
            FlexCase::Perspectivity3 => "Perspectivity_3",
        }
    }

    pub fn family(self) -> MapFamily {
        match self {
            FlexCase::Scaling1a | FlexCase::Scaling1b => MapFamily::Scaling,
            FlexCase::Collineation2a | FlexCase::Collineation2b => MapFamily::Collineation,
            FlexCase::Perspectivity3 => MapFamily::Perspectivity,
        }
    }

    /// Sign `σ` of the intercept proportion `v₀ = σ·u₀/t₀`; `None` for case 3.
    pub fn proportion_sign(self) -> Option<f64> {
        match self {
            FlexCase::Scaling1a | FlexCase::Collineation2b => Some(1.0),
            FlexCase::Scaling1b | FlexCase::Collineation2a => Some(-1.0),
            FlexCase::Perspectivity3 => None,
        }
    }

    /// P-net cases are the ones built on the intercept proportion.
    pub fn is_pnet(self) -> bool {
        self.proportion_sign().is_some()
    }
}

impl fmt::Display for FlexCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FlexCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FlexCase::ALL
            .into_iter()
            .find(|c| c.code() == s || c.name() == s)
            .ok_or_else(|| Error::Schema(format!("unknown case {s:?}")))
    }
}

/// The full planar linkage: `L₀`, further sublinkages, branch and the
/// reference value of the driving parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkageSpec {
    pub initial: Sublinkage,
    pub others: Vec<Sublinkage>,
    pub branch: BranchSign,
    pub a_ref: f64,
}

impl LinkageSpec {
    pub fn new(
        initial: Sublinkage,
        others: Vec<Sublinkage>,
        branch: BranchSign,
        a_ref: f64,
    ) -> Result<Self> {
        let spec = LinkageSpec { initial: Sublinkage { phi: 0.0, ..initial }, others, branch, a_ref };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.others.is_empty() {
            return Err(Error::Invariant("a linkage needs at least one further sublinkage".into()));
        }
        if !(self.a_ref > 0.0 && self.a_ref.is_finite()) {
            return Err(Error::Invariant(format!("a_ref must be positive, got {}", self.a_ref)));
        }
        self.initial.validate()?;
        for l in &self.others {
            l.validate()?;
        }
        check_fan(self.all().map(|l| l.phi))?;
        self.check_admissible(self.a_ref)?;
        Ok(())
    }

    /// `L₀` followed by the others.
    pub fn all(&self) -> impl Iterator<Item = &Sublinkage> + '_ {
        std::iter::once(&self.initial).chain(self.others.iter())
    }

    /// Checks every triangle and the tip at `a`, returning the tip.
    pub fn check_admissible(&self, a: f64) -> Result<f64> {
        for (j, l) in self.all().enumerate() {
            profile_point_indexed(a, l.s, l.t, j)?;
        }
        tip_b(a, &self.initial, self.branch)
    }

    /// Largest `s_j + t_j`: no triangle closes beyond it.
    pub fn a_max(&self) -> f64 {
        self.all().map(|l| l.s + l.t).fold(0.0, f64::max)
    }
}

/// Meridian angles must be strictly monotone with steps below π.
pub(crate) fn check_fan(phis: impl Iterator<Item = f64>) -> Result<()> {
    let phis: Vec<f64> = phis.collect();
    if phis.first().is_some_and(|p| *p != 0.0) {
        return Err(Error::NonSimpleFan { index: 0 });
    }
    let mut dir = 0.0;
    for (j, w) in phis.windows(2).enumerate() {
        let step = w[1] - w[0];
        if !step.is_finite() || step.abs() <= tol::ABS_ZERO || step.abs() >= std::f64::consts::PI {
            return Err(Error::NonSimpleFan { index: j + 1 });
        }
        if dir != 0.0 && step.signum() != dir {
            return Err(Error::NonSimpleFan { index: j + 1 });
        }
        dir = step.signum();
    }
    if let (Some(first), Some(last)) = (phis.first(), phis.last()) {
        if (last - first).abs() >= std::f64::consts::TAU {
            return Err(Error::NonSimpleFan { index: phis.len() - 1 });
        }
    }
    Ok(())
}

/// Both roots `(b₊, b₋)` of the tip equation.
///
/// The radicand `[a⁴ − 2(s₀²+t₀²)a² + (s₀−t₀)²(s₀+t₀)²]v₀² + 4u₀²a²` is
/// evaluated as `v₀²(a² − s₀² + t₀²)² + 4a²(u₀² − v₀²t₀²)`, which makes the
/// intercept-proportion defect explicit: for proportional data it vanishes
/// and the radicand is an exact square. The larger root is formed without
/// cancellation and the smaller one from the product `b₊b₋ = v₀²s₀² − u₀²`.
pub fn tip_pair(a: f64, l0: &Sublinkage) -> Result<(f64, f64)> {
    profile_point_indexed(a, l0.s, l0.t, 0)?;
    let Sublinkage { s, t, u, v, .. } = *l0;
    let x = (s - t) * (s + t);
    let defect = (u - v.abs() * t) * (u + v.abs() * t);
    let a2 = a * a;
    let rad = v * v * (a2 - x).powi(2) + 4.0 * a2 * defect;
    let scale = v * v * (a2 + x.abs()).powi(2) + 4.0 * a2 * u * u;
    if rad < -tol::DISCRIMINANT_REL * scale {
        return Err(Error::RadicandNegative(format!("tip radicand {rad:e} at a = {a}")));
    }
    // Everything below is scaled by 2a.
    let root = rad.max(0.0).sqrt();
    let mid = v * (a2 + x);
    let prod = 2.0 * a * (v * v * x - defect);
    let (plus, minus) = if mid >= 0.0 {
        let big = mid + root;
        (big / (2.0 * a), if big != 0.0 { prod / big } else { 0.0 })
    } else {
        let big = mid - root;
        (if big != 0.0 { prod / big } else { 0.0 }, big / (2.0 * a))
    };
    Ok((plus, minus))
}

/// Height `b` of the lower tip: `|v₀A₀ − (0,0,b)| = u₀`.
pub fn tip_b(a: f64, l0: &Sublinkage, branch: BranchSign) -> Result<f64> {
    let (plus, minus) = tip_pair(a, l0)?;
    let b = match branch {
        BranchSign::Plus => plus,
        BranchSign::Minus => minus,
    };
    let scale = a.max(l0.s).max(l0.t).max(l0.u);
    if b.abs() <= tol::ABS_ZERO * scale {
        return Err(Error::DegenerateTip { a });
    }
    Ok(b)
}

/// `|B_j − S₃|² − u_j²` on the given branch.
pub fn residual_w(a: f64, l0: &Sublinkage, lj: &Sublinkage, branch: BranchSign) -> Result<f64> {
    let b = tip_b(a, l0, branch)?;
    let p = profile_point_indexed(a, lj.s, lj.t, 1)?;
    let x = lj.v * p.d;
    let dz = lj.v * p.z - b;
    Ok(x * x + dz * dz - lj.u * lj.u)
}

/// Free data for [`extend_sublinkage`]. Cases 1 and 2 need `t`; case 3
/// derives it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeData {
    pub s: f64,
    pub t: Option<f64>,
}

impl FreeData {
    pub fn st(s: f64, t: f64) -> Self {
        FreeData { s, t: Some(t) }
    }

    pub fn s(s: f64) -> Self {
        FreeData { s, t: None }
    }
}

/// Completes `(t, u, v)` from the case formulas.
pub(crate) fn predict(l0: &Sublinkage, case: FlexCase, s: f64, t: Option<f64>) -> Result<(f64, f64, f64)> {
    let Sublinkage { s: s0, t: t0, u: u0, v: v0, .. } = *l0;
    let need_t = || {
        t.filter(|t| *t > 0.0 && t.is_finite())
            .ok_or_else(|| Error::InvalidInput(format!("case {} needs a positive t_j", case.code())))
    };
    match case {
        FlexCase::Scaling1a | FlexCase::Scaling1b => {
            let t = need_t()?;
            let sigma = case.proportion_sign().unwrap_or(1.0);
            Ok((t, u0 * t / t0, sigma * u0 / t0))
        }
        FlexCase::Collineation2a | FlexCase::Collineation2b => {
            let t = need_t()?;
            let gap = s * s - t * t;
            if gap.abs() <= tol::ABS_ZERO * (s * s + t * t) {
                return Err(Error::SingularDenominator(format!("s_j = t_j = {s} in case {}", case.code())));
            }
            // 2a: v = −u₀(s₀²−t₀²)/(t₀(s²−t²)); 2b flips the sign.
            let sigma = case.proportion_sign().unwrap_or(1.0);
            let v = sigma * u0 * (s0 * s0 - t0 * t0) / (t0 * gap);
            if v == 0.0 || !v.is_finite() {
                return Err(Error::SingularDenominator("s₀ = t₀ leaves v_j undefined".into()));
            }
            let rad = t0 * v * (s * s * t0 * v - sigma * (s0 * s0 - t0 * t0) * u0);
            if !(rad > 0.0) {
                return Err(Error::RadicandNegative(format!("case {} u_j radicand {rad:e}", case.code())));
            }
            Ok((t, rad.sqrt() / t0, v))
        }
        FlexCase::Perspectivity3 => {
            let t2 = s * s - s0 * s0 + t0 * t0;
            if !(t2 > 0.0) {
                return Err(Error::RadicandNegative(format!("case 3 t_j² = {t2:e}")));
            }
            let u2 = (s * s - s0 * s0) * v0 * v0 + u0 * u0;
            if !(u2 > 0.0) {
                return Err(Error::RadicandNegative(format!("case 3 u_j² = {u2:e}")));
            }
            Ok((t2.sqrt(), u2.sqrt(), v0))
        }
    }
}

/// The unique sublinkage of the given case through the free data.
pub fn extend_sublinkage(l0: &Sublinkage, case: FlexCase, free: FreeData, phi: f64) -> Result<Sublinkage> {
    if !(free.s > 0.0 && free.s.is_finite()) {
        return Err(Error::InvalidInput(format!("s_j must be positive, got {}", free.s)));
    }
    let (t, u, v) = predict(l0, case, free.s, free.t)?;
    Sublinkage::new(free.s, t, u, v, phi)
}

/// Closed-form tip of a flexible case, when one exists: `v₀a` for case 1,
/// `v₀(s₀² − t₀²)/a` for case 2.
pub fn case_tip(l0: &Sublinkage, case: FlexCase, a: f64) -> Option<f64> {
    match case.family() {
        MapFamily::Scaling => Some(l0.v * a),
        MapFamily::Collineation => Some(l0.v * (l0.s * l0.s - l0.t * l0.t) / a),
        MapFamily::Perspectivity => None,
    }
}

/// Branch carrying the motion of a flexible case at parameter `a`.
///
/// The flexible root is selected by the sign of `a − z₀`, which equals the
/// sign of `a² + t₀² − s₀²`; ties go to `+`. Case 3 flexes on both roots and
/// keeps `+` unless that tip degenerates.
pub fn select_branch(l0: &Sublinkage, case: FlexCase, a: f64) -> BranchSign {
    let upper = a * a + l0.t * l0.t - l0.s * l0.s >= 0.0;
    let first = match case {
        FlexCase::Scaling1a | FlexCase::Collineation2a => BranchSign::Plus,
        FlexCase::Scaling1b | FlexCase::Collineation2b => BranchSign::Minus,
        FlexCase::Perspectivity3 => {
            return match tip_b(a, l0, BranchSign::Plus) {
                Err(Error::DegenerateTip { .. }) => BranchSign::Minus,
                _ => BranchSign::Plus,
            };
        }
    };
    if upper {
        first
    } else {
        first.flip()
    }
}

/// The row map `σ` carrying row A to row B at parameter `a`.
pub fn row_map(l0: &Sublinkage, case: FlexCase, a: f64, branch: BranchSign) -> Result<AxialMap> {
    let b = tip_b(a, l0, branch)?;
    let params = match case.family() {
        MapFamily::Perspectivity => {
            let z0 = l0.profile(a)?.z;
            MapParams { planes: Some((z0, l0.v * z0)), ..Default::default() }
        }
        _ => MapParams {
            center: AxisTip::Finite(0.0),
            source: Some(AxisTip::Finite(a)),
            target: Some(AxisTip::Finite(b)),
            ..Default::default()
        },
    };
    make_axial_map(case.family(), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{apply_map, Point3};
    use std::f64::consts::SQRT_2;

    fn e1() -> Sublinkage {
        Sublinkage::new(SQRT_2, SQRT_2, 2.0, SQRT_2, 0.0).unwrap()
    }

    fn e2() -> Sublinkage {
        Sublinkage::new(2.0, 1.0, 1.0, -1.0, 0.0).unwrap()
    }

    fn e3() -> Sublinkage {
        Sublinkage::new(1.0, 2.0, 1.0, 3.0, 0.0).unwrap()
    }

    fn distance_check(a: f64, l0: &Sublinkage, b: f64) {
        let p = l0.profile(a).unwrap();
        let bx = l0.v * p.d;
        let bz = l0.v * p.z;
        assert!((bx.hypot(bz - b) - l0.u).abs() < 1e-12 * l0.u);
    }

    #[test]
    fn tip_examples() {
        let b = tip_b(2.0, &e1(), BranchSign::Plus).unwrap();
        assert!((b - 2.0 * SQRT_2).abs() < 1e-14);
        distance_check(2.0, &e1(), b);

        let b = tip_b(2.0, &e2(), BranchSign::Plus).unwrap();
        assert!((b + 1.5).abs() < 1e-14);
        distance_check(2.0, &e2(), b);

        let sym = Sublinkage::new(2.0, 2.0, 2.0, 1.0, 0.0).unwrap();
        assert!((tip_b(3.0, &sym, BranchSign::Plus).unwrap() - 3.0).abs() < 1e-14);
        assert_eq!(tip_b(3.0, &sym, BranchSign::Minus), Err(Error::DegenerateTip { a: 3.0 }));
    }

    #[test]
    fn tip_pair_matches_direct_formula() {
        let l0 = Sublinkage::new(1.3, 0.8, 1.7, -0.6, 0.0).unwrap();
        for a in [0.7f64, 1.0, 1.5, 2.0] {
            let Sublinkage { s, t, u, v, .. } = l0;
            let rad = (a.powi(4) - 2.0 * (s * s + t * t) * a * a + (s - t).powi(2) * (s + t).powi(2)) * v * v
                + 4.0 * u * u * a * a;
            let direct_p = ((a * a + s * s - t * t) * v + rad.sqrt()) / (2.0 * a);
            let direct_m = ((a * a + s * s - t * t) * v - rad.sqrt()) / (2.0 * a);
            let (p, m) = tip_pair(a, &l0).unwrap();
            assert!((p - direct_p).abs() < 1e-13 && (m - direct_m).abs() < 1e-13);
        }
    }

    #[test]
    fn residual_examples() {
        let l0 = e1();
        assert!(residual_w(1.7, &l0, &l0, BranchSign::Plus).unwrap().abs() < 1e-13);
        let lj = Sublinkage::new(2.0, 2.0, 2.0 * SQRT_2, SQRT_2, 0.3).unwrap();
        for a in [1.5, 2.0, 2.5] {
            assert!(residual_w(a, &l0, &lj, BranchSign::Plus).unwrap().abs() < 1e-12);
        }
        let bumped = Sublinkage { u: 2.0 * SQRT_2 + 1e-3, ..lj };
        assert!(residual_w(2.0, &l0, &bumped, BranchSign::Plus).unwrap().abs() > 1e-3);
    }

    #[test]
    fn extend_examples() {
        let l = extend_sublinkage(&e1(), FlexCase::Scaling1a, FreeData::st(2.0, 2.0), 0.5).unwrap();
        assert!((l.u - 2.0 * SQRT_2).abs() < 1e-14 && (l.v - SQRT_2).abs() < 1e-14);

        let l = extend_sublinkage(&e2(), FlexCase::Collineation2a, FreeData::st(3.0, 6f64.sqrt()), 0.5).unwrap();
        assert!((l.v + 1.0).abs() < 1e-14 && (l.u - 6f64.sqrt()).abs() < 1e-14);
        for a in [1.9, 2.0, 2.3] {
            assert!(residual_w(a, &e2(), &l, BranchSign::Plus).unwrap().abs() < 1e-12);
        }

        let l = extend_sublinkage(&e3(), FlexCase::Perspectivity3, FreeData::s(2.0), 0.5).unwrap();
        assert!((l.t - 7f64.sqrt()).abs() < 1e-14);
        assert!((l.u - 2.0 * 7f64.sqrt()).abs() < 1e-14);
        assert_eq!(l.v, 3.0);
    }

    #[test]
    fn extend_errors() {
        assert!(matches!(
            extend_sublinkage(&e2(), FlexCase::Collineation2a, FreeData::st(2.0, 2.0), 0.1),
            Err(Error::SingularDenominator(_))
        ));
        assert!(matches!(
            extend_sublinkage(&e3(), FlexCase::Perspectivity3, FreeData::s(0.1), 0.1),
            Err(Error::RadicandNegative(_))
        ));
        // Case 2a radicand: s_j < t_j flips the sign of v_j and the product.
        let l0 = Sublinkage::new(2.0, 1.0, 1.0, -1.0, 0.0).unwrap();
        assert!(extend_sublinkage(&l0, FlexCase::Collineation2a, FreeData::st(1.0, 2.0), 0.1).is_ok());
    }

    #[test]
    fn branch_examples() {
        assert_eq!(select_branch(&e1(), FlexCase::Scaling1a, 2.0), BranchSign::Plus);
        assert_eq!(select_branch(&e2(), FlexCase::Collineation2a, 2.0), BranchSign::Plus);
        // z₀ < 0 in case 1a: a − z₀ > 0 still selects the + root, which is v₀a.
        let l0 = Sublinkage::new(1.0, 2.0, 1.0, 0.5, 0.0).unwrap();
        let a = 1.5;
        assert!(l0.profile(a).unwrap().z < 0.0);
        assert_eq!(select_branch(&l0, FlexCase::Scaling1a, a), BranchSign::Plus);
        assert!((tip_b(a, &l0, BranchSign::Plus).unwrap() - l0.v * a).abs() < 1e-14);
        // Below the switch point the flexible root becomes b₋.
        let l0 = Sublinkage::new(3.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(select_branch(&l0, FlexCase::Scaling1a, 2.5), BranchSign::Minus);
        assert!((tip_b(2.5, &l0, BranchSign::Minus).unwrap() - 2.5).abs() < 1e-14);
    }

    #[test]
    fn selected_root_is_closed_form() {
        let cases = [
            (Sublinkage::new(2.0, 1.5, 1.5 * 0.8, 0.8, 0.0).unwrap(), FlexCase::Scaling1a),
            (Sublinkage::new(2.0, 1.5, 1.5 * 0.8, -0.8, 0.0).unwrap(), FlexCase::Scaling1b),
            (Sublinkage::new(2.0, 1.5, 1.5 * 0.8, -0.8, 0.0).unwrap(), FlexCase::Collineation2a),
            (Sublinkage::new(2.0, 1.5, 1.5 * 0.8, 0.8, 0.0).unwrap(), FlexCase::Collineation2b),
        ];
        for (l0, case) in cases {
            for a in [0.6, 1.0, 1.3, 1.5, 2.0, 3.0] {
                let br = select_branch(&l0, case, a);
                let b = tip_b(a, &l0, br).unwrap();
                let want = case_tip(&l0, case, a).unwrap();
                assert!((b - want).abs() < 1e-12 * want.abs().max(1.0), "{case:?} a={a}: {b} vs {want}");
            }
        }
    }

    #[test]
    fn row_maps_send_a0_to_b0() {
        for (l0, case, a) in [
            (e1(), FlexCase::Scaling1a, 2.0),
            (e2(), FlexCase::Collineation2a, 2.0),
            (e3(), FlexCase::Perspectivity3, 2.95),
        ] {
            let br = select_branch(&l0, case, a);
            let m = row_map(&l0, case, a, br).unwrap();
            let p = l0.profile(a).unwrap();
            let a0 = Point3::new(p.d, 0.0, p.z);
            let b0 = apply_map(&m, &a0).unwrap();
            assert!((b0.coords - a0.coords * l0.v).norm() < 1e-12, "{case:?}");
        }
        // The collineation also carries S₁ to S₃.
        let m = row_map(&e2(), FlexCase::Collineation2a, 2.0, BranchSign::Plus).unwrap();
        assert_eq!(m.map_tip(AxisTip::Finite(2.0)), AxisTip::Finite(-1.5));
    }

    #[test]
    fn fan_checks() {
        assert!(check_fan([0.0, 0.1, 0.3].into_iter()).is_ok());
        assert!(check_fan([0.0, -0.1, -0.3].into_iter()).is_ok());
        assert_eq!(check_fan([0.0, 0.0].into_iter()), Err(Error::NonSimpleFan { index: 1 }));
        assert_eq!(check_fan([0.0, 0.2, 0.1].into_iter()), Err(Error::NonSimpleFan { index: 2 }));
    }
}
