use serde::{Deserialize, Serialize};

use super::{classify, select_branch, LinkageSpec};
use crate::error::{Error, Result};
use crate::exec::{map_indices, Execution};

/// Why an interval of the driving parameter ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LimitKind {
    /// The parameter reaches zero.
    Origin,
    /// Sublinkage `index` stops forming a triangle.
    Discriminant { index: usize },
    /// The tip equation loses its real roots.
    Radicand,
    /// The lower tip hits the middle tip.
    DegenerateTip,
    /// The flexible root changes from one branch to the other.
    BranchSwitch,
    /// A meridian angle between columns `index` and `index + 1` has no solution.
    AngleLimit { index: usize },
    /// Anything else (reported for completeness).
    Other,
}

impl LimitKind {
    pub fn from_error(err: &Error) -> Self {
        match err {
            Error::DiscriminantNegative { index, .. } => LimitKind::Discriminant { index: *index },
            Error::RadicandNegative(_) => LimitKind::Radicand,
            Error::DegenerateTip { .. } => LimitKind::DegenerateTip,
            Error::BranchSwitch { .. } => LimitKind::BranchSwitch,
            Error::AngleUnsolvable { index, .. } => LimitKind::AngleLimit { index: *index },
            _ => LimitKind::Other,
        }
    }
}

/// A closed interval of admissible parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlexInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_limit: LimitKind,
    pub hi_limit: LimitKind,
}

impl FlexInterval {
    pub fn contains(&self, a: f64) -> bool {
        a >= self.lo && a <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Nearest point of the interval.
    pub fn clamp(&self, a: f64) -> f64 {
        a.clamp(self.lo, self.hi)
    }

    /// `n` points strictly inside the interval at `(i + 1/2)/n` of its width.
    pub fn interior_samples(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|i| self.lo + (i as f64 + 0.5) / n as f64 * self.width())
            .collect()
    }
}

pub fn interval_containing(intervals: &[FlexInterval], a: f64) -> Option<&FlexInterval> {
    intervals.iter().find(|iv| iv.contains(a))
}

const GRID: usize = 256;

/// Largest `x` between `good` and `bad` that still passes, plus the reason
/// the other side fails.
fn bisect<F: Fn(f64) -> Result<()>>(mut good: f64, mut bad: f64, pred: &F) -> (f64, LimitKind) {
    let mut kind = match pred(bad) {
        Err(e) => LimitKind::from_error(&e),
        Ok(()) => LimitKind::Other,
    };
    for _ in 0..200 {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        match pred(mid) {
            Ok(()) => good = mid,
            Err(e) => {
                kind = LimitKind::from_error(&e);
                bad = mid;
            }
        }
    }
    (good, kind)
}

/// The maximal interval around `a_ref` on which `pred` holds, bracketed on a
/// uniform grid over `(0, a_max]` and refined by bisection.
pub(crate) fn scan_interval<F>(a_max: f64, a_ref: f64, exec: Execution, pred: F) -> Option<FlexInterval>
where
    F: Fn(f64) -> Result<()> + Sync + Send,
{
    if pred(a_ref).is_err() {
        return None;
    }
    let a_max = a_max.max(a_ref);
    let grid: Vec<f64> = (1..=GRID).map(|i| a_max * i as f64 / GRID as f64).collect();
    let ok = map_indices(exec, GRID, |i| pred(grid[i]).is_ok());

    // Downwards from a_ref.
    let mut good = a_ref;
    let mut lower = None;
    for i in (0..GRID).rev().filter(|&i| grid[i] < a_ref) {
        if ok[i] {
            good = grid[i];
        } else {
            lower = Some(bisect(good, grid[i], &pred));
            break;
        }
    }
    let (lo, lo_limit) = lower.unwrap_or_else(|| {
        let tiny = good * 1e-9;
        if pred(tiny).is_ok() {
            (0.0, LimitKind::Origin)
        } else {
            bisect(good, tiny, &pred)
        }
    });

    // Upwards from a_ref.
    let mut good = a_ref;
    let mut upper = None;
    for i in (0..GRID).filter(|&i| grid[i] > a_ref) {
        if ok[i] {
            good = grid[i];
        } else {
            upper = Some(bisect(good, grid[i], &pred));
            break;
        }
    }
    let (hi, hi_limit) = upper.unwrap_or_else(|| {
        let beyond = good * (1.0 + 1e-9);
        match pred(beyond) {
            Err(_) => bisect(good, beyond, &pred),
            Ok(()) => (good, LimitKind::Other),
        }
    });
    Some(FlexInterval { lo, hi, lo_limit, hi_limit })
}

/// Maximal interval of the driving parameter around `a_ref` on which every
/// triangle closes, the tip is real and nonzero and, for P-net cases, the
/// flexible root stays on the spec's branch. Empty if `a_ref` is inadmissible.
pub fn flexion_range(spec: &LinkageSpec) -> Vec<FlexInterval> {
    let case = classify(spec).ok().and_then(|c| c.label.case()).filter(|c| c.is_pnet());
    let pred = |a: f64| -> Result<()> {
        spec.check_admissible(a)?;
        if let Some(case) = case {
            if select_branch(&spec.initial, case, a) != spec.branch {
                return Err(Error::BranchSwitch { a });
            }
        }
        Ok(())
    };
    scan_interval(spec.a_max(), spec.a_ref, Execution::default(), pred)
        .into_iter()
        .collect()
}
