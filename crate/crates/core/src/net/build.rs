use super::{same_length, ConeNet, FlexionState, Grid, Intrinsics, NetSpec, ProfileEntry};
use crate::error::{Error, Result};
use crate::exec::{map_slice, Execution};
use crate::kinematics::{meridian_point, profile_point_indexed, AxisTip};
use crate::linkage::{
    classify_with, predict, scan_interval, select_branch, tip_b, BranchSign, CaseLabel, Classification, FlexCase,
    FlexInterval, LinkageSpec, Sublinkage,
};
use crate::tol;

/// One strip triple in its own frame: middle tip at the origin, upper tip
/// at `+a`. `eps` orients that frame against the global axis.
#[derive(Debug, Clone)]
pub(crate) struct Triple {
    pub case: FlexCase,
    pub branch: BranchSign,
    pub linkage: LinkageSpec,
    pub eps: f64,
    /// Enforce that the flexible root stays on `branch`.
    pub guard_branch: bool,
}

/// Resolved construction data of a net.
#[derive(Debug, Clone)]
pub(crate) struct NetModel {
    pub triples: Vec<Triple>,
    /// Reference edge lengths of row `R₀`, which drive the meridian angles.
    pub edge_lengths: Vec<f64>,
    pub ref_phis: Vec<f64>,
    pub lambda: (f64, f64),
}

impl NetModel {
    pub fn a_max(&self) -> f64 {
        self.triples[0].linkage.a_max()
    }
}

/// Rows `R₀ … R_m` in signed meridian coordinates `(x, z)` plus tip heights.
struct Meridian {
    rows: Vec<Vec<(f64, f64)>>,
    tips: Vec<f64>,
}

fn check_branch(tr: &Triple, a: f64) -> Result<()> {
    if tr.guard_branch && tr.case.is_pnet() && select_branch(&tr.linkage.initial, tr.case, a) != tr.branch {
        return Err(Error::BranchSwitch { a });
    }
    Ok(())
}

/// The first triple at parameter `a`: rows A and B plus tips `a, 0, b`.
fn first_step(tr: &Triple, a: f64, m: &mut Meridian) -> Result<()> {
    let b = tip_b(a, &tr.linkage.initial, tr.branch)?;
    check_branch(tr, a)?;
    let mut row_a = Vec::with_capacity(tr.linkage.others.len() + 1);
    for (j, l) in tr.linkage.all().enumerate() {
        let p = profile_point_indexed(a, l.s, l.t, j)?;
        row_a.push((p.d, p.z));
    }
    let row_b = row_a.iter().zip(tr.linkage.all()).map(|(&(x, z), l)| (l.v * x, l.v * z)).collect();
    m.rows.push(row_a);
    m.rows.push(row_b);
    m.tips.extend([a, 0.0, b]);
    Ok(())
}

/// A chained triple: its A row is the last row built, its upper and middle
/// tips are the last two tips.
fn chained_step(tr: &Triple, m: &mut Meridian) -> Result<()> {
    let n = m.tips.len();
    let (upper, mid) = (m.tips[n - 2], m.tips[n - 1]);
    let a = (upper - mid).abs();
    let scale = upper.abs().max(mid.abs()).max(tr.linkage.initial.s);
    if a <= tol::ABS_ZERO * scale || (upper - mid).signum() != tr.eps {
        return Err(Error::DegenerateTip { a });
    }
    let b = tip_b(a, &tr.linkage.initial, tr.branch)?;
    check_branch(tr, a)?;
    let last = m.rows.last().cloned().unwrap_or_default();
    let row_b = last
        .iter()
        .zip(tr.linkage.all())
        .map(|(&(x, z), l)| (l.v * x, mid + l.v * (z - mid)))
        .collect();
    m.rows.push(row_b);
    m.tips.push(mid + tr.eps * b);
    Ok(())
}

fn meridian(model: &NetModel, a: f64) -> Result<Meridian> {
    let mut m = Meridian { rows: Vec::new(), tips: Vec::new() };
    first_step(&model.triples[0], a, &mut m)?;
    for tr in &model.triples[1..] {
        chained_step(tr, &mut m)?;
    }
    Ok(m)
}

/// Grid rows `C, R₀ … R_m, D` placed on the given meridian angles.
fn assemble(m: &Meridian, lambda: (f64, f64), phis: &[f64]) -> Result<Grid> {
    let first = &m.rows[0];
    let last = &m.rows[m.rows.len() - 1];
    let (top, bottom) = (m.tips[0], m.tips[m.tips.len() - 1]);
    let toward = |row: &[(f64, f64)], tip: f64, l: f64| -> Vec<(f64, f64)> {
        row.iter().map(|&(x, z)| ((1.0 - l) * x, z + l * (tip - z))).collect()
    };
    let mut rows = vec![toward(first, top, lambda.0)];
    rows.extend(m.rows.iter().cloned());
    rows.push(toward(last, bottom, lambda.1));
    let grid = rows
        .iter()
        .map(|r| r.iter().zip(phis).map(|(&(x, z), &phi)| meridian_point(x, z, phi)).collect())
        .collect();
    Grid::from_rows(grid)
}

/// Meridian angles that keep the reference edge lengths of row `R₀`.
///
/// Uses `sin²(Δφ/2) = (ℓ − e)(ℓ + e) / (4 x_j x_{j+1})`, where `e` is the
/// edge length at `Δφ = 0`; the sign of each step follows the reference.
fn solve_phis(model: &NetModel, row: &[(f64, f64)], a: f64) -> Result<Vec<f64>> {
    let mut phis = Vec::with_capacity(row.len());
    phis.push(0.0);
    for (j, w) in row.windows(2).enumerate() {
        let ((x0, z0), (x1, z1)) = (w[0], w[1]);
        let l = model.edge_lengths[j];
        let e = (x0 - x1).hypot(z0 - z1);
        let den = 4.0 * x0 * x1;
        if !(den > tol::ABS_ZERO * l * l) {
            return Err(Error::AngleUnsolvable { index: j, a });
        }
        let q = (l - e) * (l + e) / den;
        let slack = 1e-12;
        if !(-slack..=1.0 + slack).contains(&q) {
            return Err(Error::AngleUnsolvable { index: j, a });
        }
        let step = model.ref_phis[j + 1] - model.ref_phis[j];
        let dphi = 2.0 * q.clamp(0.0, 1.0).sqrt().asin();
        phis.push(phis[j] + step.signum() * dphi);
    }
    Ok(phis)
}

fn state(model: &NetModel, a: f64) -> Result<FlexionState> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidInput(format!("driving parameter must be positive, got {a}")));
    }
    let m = meridian(model, a)?;
    let phis = solve_phis(model, &m.rows[0], a)?;
    let vertices = assemble(&m, model.lambda, &phis)?;
    let tips = m.tips.iter().map(|&z| AxisTip::Finite(z)).collect();
    Ok(FlexionState { a, vertices, phis, tips })
}

/// Triangle lengths `(s, t)` of a profile entry at `a_ref`, plus any
/// explicit `(u, v)` overrides.
fn entry_lengths(
    e: &ProfileEntry,
    j: usize,
    case: FlexCase,
    l0: &Sublinkage,
    a_ref: f64,
) -> Result<(f64, Option<f64>, Option<f64>, Option<f64>)> {
    match *e {
        ProfileEntry::Lengths { s, t, u, v, .. } => Ok((s, t, u, v)),
        ProfileEntry::Point { d, z, .. } => {
            if case == FlexCase::Perspectivity3 {
                let z0 = l0.profile(a_ref)?.z;
                if let Some(z) = z {
                    if !same_length(z, z0) {
                        return Err(Error::Invariant(format!(
                            "profile point {j} must lie at the row height {z0} in case 3, got {z}"
                        )));
                    }
                }
                Ok((d.hypot(z0), None, None, None))
            } else {
                let z = z.ok_or_else(|| Error::Invariant(format!("profile point {j} needs a height z")))?;
                Ok((d.hypot(z), Some(d.hypot(z - a_ref)), None, None))
            }
        }
    }
}

fn first_triple(spec: &NetSpec, strict: bool) -> Result<(Triple, Classification)> {
    let case = spec.cases[0];
    let i = spec.initial;
    let l0 = Sublinkage::new(i.s, i.t, i.u, i.v, 0.0)?;
    if strict && case.is_pnet() {
        let want = select_branch(&l0, case, spec.a_ref);
        if want != spec.branch {
            return Err(Error::Invariant(format!(
                "case {case} moves on branch {want} at a_ref = {}, not {}",
                spec.a_ref, spec.branch
            )));
        }
    }
    let mut others = Vec::with_capacity(spec.profile.len());
    for (k, e) in spec.profile.iter().enumerate() {
        let j = k + 1;
        let (s, t, u, v) = entry_lengths(e, j, case, &l0, spec.a_ref)?;
        let (pt, pu, pv) = match (t, u, v) {
            (Some(t), Some(u), Some(v)) => (t, u, v),
            _ => predict(&l0, case, s, t)?,
        };
        others.push(Sublinkage::new(s, t.unwrap_or(pt), u.unwrap_or(pu), v.unwrap_or(pv), e.phi())?);
    }
    let linkage = LinkageSpec::new(l0, others, spec.branch, spec.a_ref)?;
    let c = classify_with(&linkage, tol::from_env())?;
    if strict {
        let ok = c.label == CaseLabel::Flexible(case) || (case == FlexCase::Perspectivity3 && c.also_case3);
        if !ok {
            if c.label == CaseLabel::NotFlexible {
                return Err(Error::NotFlexible { residual: c.residual, offending: c.offending });
            }
            return Err(Error::Invariant(format!("data classify as {}, not {}", c.label, case.name())));
        }
    }
    let guard = c.label == CaseLabel::Flexible(case);
    Ok((Triple { case, branch: spec.branch, linkage, eps: 1.0, guard_branch: guard }, c))
}

/// Re-normalizes the last row of `m` to the frame of triple `k` and extends
/// it with the chain data.
fn chained_triple(spec: &NetSpec, k: usize, m: &Meridian) -> Result<(Triple, Classification)> {
    let case = spec.cases[k];
    let link = spec.chain[k - 1];
    let fail = |reason: String| Error::IncompatibleChaining { triple: k, reason };
    let n = m.tips.len();
    let (upper, mid) = (m.tips[n - 2], m.tips[n - 1]);
    let a = (upper - mid).abs();
    if a <= tol::ABS_ZERO * upper.abs().max(mid.abs()).max(1.0) {
        return Err(fail("upper and middle tips coincide".into()));
    }
    let eps = (upper - mid).signum();
    let row = m.rows.last().ok_or_else(|| fail("no shared row".into()))?;
    let st = |&(x, z): &(f64, f64)| (x.hypot(z - mid), x.hypot(z - upper));

    let (s0, t0) = st(&row[0]);
    let u0 = link.v.abs() * t0;
    for (name, given, derived) in [("s", link.s, s0), ("t", link.t, t0), ("u", link.u, u0)] {
        if let Some(g) = given {
            if !same_length(g, derived) {
                return Err(fail(format!("{name} = {g} but the shared row implies {derived}")));
            }
        }
    }
    let l0 = Sublinkage::new(s0, t0, u0, link.v, 0.0).map_err(|e| fail(e.to_string()))?;
    let branch = select_branch(&l0, case, a);
    if let Some(b) = link.branch {
        if b != branch {
            return Err(fail(format!("branch {b} given, case {case} moves on {branch}")));
        }
    }
    let phis = spec.phis();
    let mut others = Vec::with_capacity(row.len() - 1);
    for (j, p) in row.iter().enumerate().skip(1) {
        let (s, t) = st(p);
        let (_, u, v) = predict(&l0, case, s, Some(t)).map_err(|e| fail(e.to_string()))?;
        others.push(Sublinkage::new(s, t, u, v, phis[j]).map_err(|e| fail(e.to_string()))?);
    }
    let linkage = LinkageSpec::new(l0, others, branch, a).map_err(|e| fail(e.to_string()))?;
    let c = classify_with(&linkage, tol::from_env()).map_err(|e| fail(e.to_string()))?;
    if c.label != CaseLabel::Flexible(case) {
        return Err(fail(format!("re-normalized data classify as {}", c.label)));
    }
    Ok((Triple { case, branch, linkage, eps, guard_branch: true }, c))
}

/// Builds a net. `strict` demands that every triple classifies as its case;
/// otherwise explicit non-flexible data is accepted as is.
pub fn build_net(spec: &NetSpec, strict: bool) -> Result<ConeNet> {
    spec.validate()?;
    let a = spec.a_ref;
    let (first, c0) = first_triple(spec, strict)?;
    let mut classification = vec![c0];
    let mut m = Meridian { rows: Vec::new(), tips: Vec::new() };
    first_step(&first, a, &mut m)?;
    let mut triples = vec![first];
    for k in 1..spec.cases.len() {
        let (tr, c) = chained_triple(spec, k, &m)?;
        chained_step(&tr, &mut m)?;
        triples.push(tr);
        classification.push(c);
    }
    let phis = spec.phis();
    let lambda = (spec.boundary.lambda_top, spec.boundary.lambda_bottom);
    let vertices = assemble(&m, lambda, &phis)?;
    let edge_lengths = (0..vertices.cols() - 1)
        .map(|j| (vertices.get(1, j) - vertices.get(1, j + 1)).norm())
        .collect();
    let model = NetModel { triples, edge_lengths, ref_phis: phis, lambda };
    let tips = m.tips.iter().map(|&z| AxisTip::Finite(z)).collect();
    let intrinsics = Intrinsics::of(&vertices);
    let net = ConeNet { spec: spec.clone(), vertices, tips, intrinsics, classification, transfer: None, model };
    match &spec.parallel {
        Some(scales) => super::parallel_transfer(&net, scales),
        None => Ok(net),
    }
}

/// A single-triple flexible patch.
pub fn build_patch(spec: &NetSpec) -> Result<ConeNet> {
    if spec.cases.len() != 1 {
        return Err(Error::InvalidInput(format!("a patch has one triple, got {}", spec.cases.len())));
    }
    build_net(spec, true)
}

/// A flexible multi-strip P-net from chained case-1/2 triples.
pub fn build_pnet(spec: &NetSpec) -> Result<ConeNet> {
    if let Some(c) = spec.cases.iter().find(|c| !c.is_pnet()) {
        return Err(Error::InvalidInput(format!("case {c} cannot be chained into a P-net")));
    }
    build_net(spec, true)
}

/// Builds without requiring flexibility; used to study perturbed designs.
pub fn build_unchecked(spec: &NetSpec) -> Result<ConeNet> {
    build_net(spec, false)
}

/// The state of the net at driving parameter `a`.
pub fn flex(net: &ConeNet, a: f64) -> Result<FlexionState> {
    let st = state(&net.model, a)?;
    match &net.transfer {
        Some(scales) => super::parallel::transfer_state(&st, scales),
        None => Ok(st),
    }
}

/// Maximal interval around `a_ref` on which the whole net flexes.
pub fn net_flexion_range(net: &ConeNet) -> Vec<FlexInterval> {
    net_flexion_range_with(net, Execution::default())
}

pub(crate) fn net_flexion_range_with(net: &ConeNet, exec: Execution) -> Vec<FlexInterval> {
    scan_interval(net.model.a_max(), net.a_ref(), exec, |a| flex(net, a).map(|_| ()))
        .into_iter()
        .collect()
}

/// States at the given parameter values.
pub fn sweep(net: &ConeNet, values: &[f64], exec: Execution) -> Vec<Result<FlexionState>> {
    map_slice(exec, values, |&a| flex(net, a))
}

impl ConeNet {
    /// Chain data for every triple: upper tip, middle tip and the local
    /// linkage. Exposed for diagnostics and tests.
    pub fn triple_linkages(&self) -> Vec<(FlexCase, BranchSign, LinkageSpec)> {
        self.model.triples.iter().map(|t| (t.case, t.branch, t.linkage.clone())).collect()
    }

    /// Flexion range of this net.
    pub fn flexion_range(&self) -> Vec<FlexInterval> {
        net_flexion_range(self)
    }
}

