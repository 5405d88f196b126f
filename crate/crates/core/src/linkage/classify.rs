use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{coeffs_fgh, predict, select_branch, BranchSign, FlexCase, LinkageSpec, Sublinkage};
use crate::error::{Error, Result};
use crate::tol;

/// Outcome label of [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    Flexible(FlexCase),
    NotFlexible,
}

impl CaseLabel {
    pub fn case(self) -> Option<FlexCase> {
        match self {
            CaseLabel::Flexible(c) => Some(c),
            CaseLabel::NotFlexible => None,
        }
    }

    pub fn is_flexible(self) -> bool {
        matches!(self, CaseLabel::Flexible(_))
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::Flexible(c) => f.write_str(c.name()),
            CaseLabel::NotFlexible => f.write_str("NotFlexible"),
        }
    }
}

impl Serialize for CaseLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CaseLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "NotFlexible" {
            return Ok(CaseLabel::NotFlexible);
        }
        s.parse::<FlexCase>().map(CaseLabel::Flexible).map_err(serde::de::Error::custom)
    }
}

/// Full result of a classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: CaseLabel,
    /// Branch implied by the label at `a_ref`.
    pub branch: Option<BranchSign>,
    /// A P-net label whose data also satisfies the case-3 formulas.
    pub also_case3: bool,
    /// Relative residual of the matched case formulas; for rejected inputs
    /// the distance to the nearest case.
    pub residual: f64,
    /// Largest normalized quartic coefficient over all pairs `(L₀, L_j)`.
    pub coefficient_residual: f64,
    /// Sublinkage indices (1-based) that match no case.
    pub offending: Vec<usize>,
}

impl Classification {
    /// Flexible labels must come with vanishing quartic coefficients.
    pub fn is_consistent(&self, tol: f64) -> bool {
        !self.label.is_flexible() || self.coefficient_residual <= tol
    }
}

fn rel(x: f64, want: f64) -> f64 {
    (x - want).abs() / want.abs().max(tol::ABS_ZERO)
}

/// Relative distance of `L_j` from the case formulas driven by `(s_j, t_j)`.
pub(crate) fn case_residual(l0: &Sublinkage, case: FlexCase, lj: &Sublinkage) -> f64 {
    match predict(l0, case, lj.s, Some(lj.t)) {
        Ok((t, u, v)) => {
            let r = rel(lj.v, v).max(rel(lj.u, u));
            if case == FlexCase::Perspectivity3 {
                r.max(rel(lj.t, t))
            } else {
                r
            }
        }
        Err(_) => f64::INFINITY,
    }
}

/// Residual of the index-0 conditions: intercept proportion and branch.
fn gate_residual(spec: &LinkageSpec, case: FlexCase) -> f64 {
    let l0 = &spec.initial;
    match case.proportion_sign() {
        Some(sigma) => {
            if select_branch(l0, case, spec.a_ref) != spec.branch {
                return f64::INFINITY;
            }
            rel(l0.v, sigma * l0.u / l0.t)
        }
        None => 0.0,
    }
}

/// Describes the per-index matches when every index matches some case but
/// no case is shared by all of them.
fn mixed_report(matches_j: &[Vec<FlexCase>]) -> Option<String> {
    if matches_j.len() < 2 || matches_j.iter().any(|m| m.is_empty()) {
        return None;
    }
    let common = FlexCase::ALL
        .iter()
        .any(|c| matches_j.iter().all(|m| m.contains(c)));
    if common {
        return None;
    }
    let desc: Vec<String> = matches_j
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let names: Vec<&str> = m.iter().map(|c| c.code()).collect();
            format!("{}: {}", j + 1, names.join("/"))
        })
        .collect();
    Some(desc.join(", "))
}

/// Classification with the default tolerance.
pub fn classify(spec: &LinkageSpec) -> Result<Classification> {
    classify_with(spec, tol::CLASSIFY)
}

/// Matches the linkage against the five flexible families.
///
/// Case-1/2 labels win over case 3 when both hold; the overlap is reported
/// through `also_case3`.
pub fn classify_with(spec: &LinkageSpec, tol: f64) -> Result<Classification> {
    let l0 = &spec.initial;
    let gates: Vec<f64> = FlexCase::ALL.iter().map(|&c| gate_residual(spec, c)).collect();
    // per_j[j][c]
    let per_j: Vec<Vec<f64>> = spec
        .others
        .iter()
        .map(|lj| FlexCase::ALL.iter().map(|&c| case_residual(l0, c, lj)).collect())
        .collect();
    let totals: Vec<f64> = (0..FlexCase::ALL.len())
        .map(|c| per_j.iter().fold(gates[c], |acc, r| acc.max(r[c])))
        .collect();
    let coefficient_residual = spec
        .others
        .iter()
        .map(|lj| coeffs_fgh(l0, lj).normalized())
        .fold(0.0, f64::max);

    let matched: Vec<FlexCase> = FlexCase::ALL
        .iter()
        .zip(&totals)
        .filter(|(_, r)| **r <= tol)
        .map(|(c, _)| *c)
        .collect();
    let also_case3 = matched.contains(&FlexCase::Perspectivity3);
    let chosen = matched
        .iter()
        .copied()
        .find(|c| c.is_pnet())
        .or_else(|| also_case3.then_some(FlexCase::Perspectivity3));

    if let Some(case) = chosen {
        let idx = FlexCase::ALL.iter().position(|c| *c == case).unwrap_or(0);
        return Ok(Classification {
            label: CaseLabel::Flexible(case),
            branch: Some(if case.is_pnet() { spec.branch } else { select_branch(l0, case, spec.a_ref) }),
            also_case3: case.is_pnet() && also_case3,
            residual: totals[idx],
            coefficient_residual,
            offending: Vec::new(),
        });
    }

    let matches_j: Vec<Vec<FlexCase>> = per_j
        .iter()
        .map(|r| {
            FlexCase::ALL
                .iter()
                .enumerate()
                .filter(|(c, _)| gates[*c].max(r[*c]) <= tol)
                .map(|(_, case)| *case)
                .collect()
        })
        .collect();
    if let Some(desc) = mixed_report(&matches_j) {
        return Err(Error::MixedCases(desc));
    }

    let offending = matches_j
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_empty())
        .map(|(j, _)| j + 1)
        .collect();
    Ok(Classification {
        label: CaseLabel::NotFlexible,
        branch: None,
        also_case3: false,
        residual: totals.iter().copied().fold(f64::INFINITY, f64::min),
        coefficient_residual,
        offending,
    })
}
