//! Seeded random instances of flexible linkages and nets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chedra_core::kinematics::profile_point;
use chedra_core::linkage::{extend_sublinkage, select_branch, tip_b, BranchSign, FlexCase, FreeData, LinkageSpec, Sublinkage};
use chedra_core::net::{build_net, Boundary, InitialData, NetSpec, ProfileEntry};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A valid `L₀` of the given case with its reference parameter and branch.
#[derive(Debug, Clone, Copy)]
pub struct Seed {
    pub case: FlexCase,
    pub l0: Sublinkage,
    pub a_ref: f64,
    pub branch: BranchSign,
}

/// Triangle `(a, s, t)` closes with some room to spare.
pub fn roomy(a: f64, s: f64, t: f64) -> bool {
    profile_point(a, s, t).is_ok_and(|p| p.d > 0.05 * a.max(s).max(t))
}

pub fn seed(r: &mut ChaCha8Rng, case: FlexCase) -> Seed {
    loop {
        let s0: f64 = r.random_range(1.0..3.0);
        let t0: f64 = r.random_range(1.0..3.0);
        let (lo, hi) = ((s0 - t0).abs() + 0.2, s0 + t0 - 0.2);
        if lo >= hi {
            continue;
        }
        let a_ref = r.random_range(lo..hi);
        let (u0, v0) = match case.proportion_sign() {
            Some(sigma) => {
                let m = r.random_range(0.5..2.0);
                (m * t0, sigma * m)
            }
            None => {
                let sign = if r.random_bool(0.5) { 1.0 } else { -1.0 };
                (r.random_range(0.5..3.0), sign * r.random_range(0.5..3.0))
            }
        };
        let Ok(l0) = Sublinkage::new(s0, t0, u0, v0, 0.0) else { continue };
        // Stay clear of the branch switch.
        if case.is_pnet() && (a_ref * a_ref + t0 * t0 - s0 * s0).abs() < 0.3 {
            continue;
        }
        if !roomy(a_ref, s0, t0) {
            continue;
        }
        let branch = select_branch(&l0, case, a_ref);
        if tip_b(a_ref, &l0, branch).is_ok_and(|b| b.abs() > 0.1) {
            return Seed { case, l0, a_ref, branch };
        }
    }
}

/// Up to `n` further sublinkages of the seed's case at `φ = step·j`.
pub fn others(r: &mut ChaCha8Rng, sd: &Seed, n: usize, step: f64) -> Option<Vec<Sublinkage>> {
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let mut found = None;
        for _ in 0..200 {
            let s = r.random_range(0.8..3.5);
            let t = r.random_range(0.8..3.5);
            let free = if sd.case.is_pnet() { FreeData::st(s, t) } else { FreeData::s(s) };
            if let Ok(l) = extend_sublinkage(&sd.l0, sd.case, free, step * j as f64) {
                if roomy(sd.a_ref, l.s, l.t) && l.u < 20.0 && l.v.abs() < 20.0 {
                    found = Some(l);
                    break;
                }
            }
        }
        out.push(found?);
    }
    Some(out)
}

pub fn linkage(r: &mut ChaCha8Rng, case: FlexCase, n: usize) -> LinkageSpec {
    loop {
        let sd = seed(r, case);
        if let Some(o) = others(r, &sd, n, 0.3) {
            if let Ok(spec) = LinkageSpec::new(sd.l0, o, sd.branch, sd.a_ref) {
                return spec;
            }
        }
    }
}

/// Net document for a linkage (single triple).
pub fn net_spec(lk: &LinkageSpec, case: FlexCase) -> NetSpec {
    let i = lk.initial;
    NetSpec {
        a_ref: lk.a_ref,
        branch: lk.branch,
        cases: vec![case],
        initial: InitialData { s: i.s, t: i.t, u: i.u, v: i.v },
        profile: lk
            .others
            .iter()
            .map(|l| ProfileEntry::Lengths {
                s: l.s,
                t: if case.is_pnet() { Some(l.t) } else { None },
                phi: l.phi,
                u: None,
                v: None,
            })
            .collect(),
        boundary: Boundary::default(),
        chain: Vec::new(),
        parallel: None,
    }
}

/// A buildable single-triple net with `cols` profile entries.
pub fn net(r: &mut ChaCha8Rng, case: FlexCase, cols: usize) -> NetSpec {
    loop {
        let spec = net_spec(&linkage(r, case, cols), case);
        if let Ok(net) = build_net(&spec, true) {
            if net.flexion_range().first().is_some_and(|iv| iv.width() > 1e-2) {
                return spec;
            }
        }
    }
}

/// Replaces profile entry `k` by explicit lengths with `v` scaled by
/// `1 + rel` and `u` set to the distance it then has from the lower tip,
/// so the reference state stays a consistent (but rigid) configuration.
pub fn perturb_v(spec: &NetSpec, k: usize, rel: f64) -> Option<NetSpec> {
    let i = spec.initial;
    let l0 = Sublinkage::new(i.s, i.t, i.u, i.v, 0.0).ok()?;
    let lk = chedra_core::net::build_unchecked(spec).ok()?.triple_linkages().remove(0).2;
    let l = lk.others[k];
    let b = tip_b(spec.a_ref, &l0, spec.branch).ok()?;
    let p = profile_point(spec.a_ref, l.s, l.t).ok()?;
    let v = l.v * (1.0 + rel);
    let u = (v * p.d).hypot(v * p.z - b);
    let mut out = spec.clone();
    out.profile[k] = ProfileEntry::Lengths { s: l.s, t: Some(l.t), phi: l.phi, u: Some(u), v: Some(v) };
    Some(out)
}
