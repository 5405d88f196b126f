#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, SQRT_2};

use chedra_core::kinematics::profile_point;
use chedra_core::linkage::{BranchSign, FlexCase};
use chedra_core::net::{Boundary, InitialData, NetSpec, ProfileEntry};

pub mod random;

pub fn spec(a_ref: f64, case: FlexCase, branch: BranchSign, init: (f64, f64, f64, f64), profile: Vec<ProfileEntry>) -> NetSpec {
    NetSpec {
        a_ref,
        branch,
        cases: vec![case],
        initial: InitialData { s: init.0, t: init.1, u: init.2, v: init.3 },
        profile,
        boundary: Boundary::default(),
        chain: Vec::new(),
        parallel: None,
    }
}

/// Case 1a around `(√2, √2, 2, √2)` at `a = 2`.
pub fn e1() -> NetSpec {
    let profile = [(2.0, 2.0, 0.4), (1.8, 1.5, 0.8), (1.6, 1.9, 1.2)]
        .iter()
        .map(|&(s, t, phi)| ProfileEntry::lengths(s, t, phi))
        .collect();
    spec(2.0, FlexCase::Scaling1a, BranchSign::Plus, (SQRT_2, SQRT_2, 2.0, SQRT_2), profile)
}

/// E1 with five quads per row.
pub fn e1_wide() -> NetSpec {
    let profile = [(2.0, 2.0, 0.3), (1.8, 1.5, 0.6), (1.6, 1.9, 0.9), (1.9, 1.7, 1.2), (1.7, 1.6, 1.5)]
        .iter()
        .map(|&(s, t, phi)| ProfileEntry::lengths(s, t, phi))
        .collect();
    spec(2.0, FlexCase::Scaling1a, BranchSign::Plus, (SQRT_2, SQRT_2, 2.0, SQRT_2), profile)
}

/// Case 2a around `(2, 1, 1, −1)` at `a = 2`.
pub fn e2() -> NetSpec {
    let profile = [(3.0, 6f64.sqrt(), 0.5), (2.5, 1.5, 1.0)]
        .iter()
        .map(|&(s, t, phi)| ProfileEntry::lengths(s, t, phi))
        .collect();
    spec(2.0, FlexCase::Collineation2a, BranchSign::Plus, (2.0, 1.0, 1.0, -1.0), profile)
}

/// E2 with five quads per row.
pub fn e2_wide() -> NetSpec {
    let profile = [(3.0, 6f64.sqrt(), 0.3), (2.5, 1.5, 0.6), (2.8, 2.0, 0.9), (2.6, 1.8, 1.2), (2.9, 2.2, 1.5)]
        .iter()
        .map(|&(s, t, phi)| ProfileEntry::lengths(s, t, phi))
        .collect();
    spec(2.0, FlexCase::Collineation2a, BranchSign::Plus, (2.0, 1.0, 1.0, -1.0), profile)
}

pub const E3_A: f64 = 2.95;

/// Case 3 around `(1, 2, 1, 3)` on a square profile.
pub fn e3() -> NetSpec {
    let d0 = profile_point(E3_A, 1.0, 2.0).unwrap().d;
    let profile = [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2]
        .iter()
        .map(|&phi| ProfileEntry::Point { d: d0 / (phi.cos() + phi.sin()), phi, z: None })
        .collect();
    spec(E3_A, FlexCase::Perspectivity3, BranchSign::Plus, (1.0, 2.0, 1.0, 3.0), profile)
}

/// Case 3 with five quads per row.
pub fn e3_wide() -> NetSpec {
    let d0 = profile_point(E3_A, 1.0, 2.0).unwrap().d;
    let profile = (1..=5)
        .map(|j| {
            let phi = j as f64 * 0.3;
            ProfileEntry::Point { d: d0 * (1.0 + 0.15 * (j as f64).sin()), phi, z: None }
        })
        .collect();
    spec(E3_A, FlexCase::Perspectivity3, BranchSign::Plus, (1.0, 2.0, 1.0, 3.0), profile)
}

/// A case-1a patch whose columns all have `s ≠ t`, so case-2 triples can
/// be chained below it.
pub fn p1a() -> NetSpec {
    let profile = [(2.2, 1.6, 0.3), (1.9, 1.2, 0.6), (2.4, 1.9, 0.9), (2.1, 1.4, 1.2), (2.3, 1.7, 1.5)]
        .iter()
        .map(|&(s, t, phi)| ProfileEntry::lengths(s, t, phi))
        .collect();
    spec(2.0, FlexCase::Scaling1a, BranchSign::Plus, (2.0, 1.5, 1.2, 0.8), profile)
}

pub fn chained(mut base: NetSpec, links: &[(FlexCase, f64)]) -> NetSpec {
    for &(c, v) in links {
        base.cases.push(c);
        base.chain.push(chedra_core::net::ChainLink::ratio(v));
    }
    base
}
