use super::ProfileEntry;
use crate::error::{Error, Result};
use crate::linkage::FlexCase;

/// Value of a profile curve at `r ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub d: f64,
    pub phi: f64,
    /// Height, needed for cases 1 and 2.
    pub z: Option<f64>,
}

/// A profile curve sampled at `n` uniform parameters; `r = 0` is `A₀`.
pub struct CurveSampler<'a> {
    pub curve: Box<dyn Fn(f64) -> CurveSample + Send + Sync + 'a>,
    pub n: usize,
}

impl<'a> CurveSampler<'a> {
    pub fn new(n: usize, curve: impl Fn(f64) -> CurveSample + Send + Sync + 'a) -> Self {
        CurveSampler { curve: Box::new(curve), n }
    }

    /// Parameters `r_i = i / (n − 1)`.
    pub fn params(&self) -> Vec<f64> {
        let last = (self.n.max(2) - 1) as f64;
        (0..self.n).map(|i| i as f64 / last).collect()
    }
}

/// Samples the curve into `n` point entries, the first one being `A₀`.
/// Case 3 places every sample at the height `z0` of row `A`.
pub fn sample_semidiscrete(c: &CurveSampler<'_>, case: FlexCase, z0: f64) -> Result<Vec<ProfileEntry>> {
    if c.n < 2 {
        return Err(Error::InvalidInput(format!("a sampled profile needs n >= 2, got {}", c.n)));
    }
    let mut out = Vec::with_capacity(c.n);
    let mut dir = 0.0;
    let mut prev_phi = 0.0;
    for (i, r) in c.params().into_iter().enumerate() {
        let s = (c.curve)(r);
        let bad = |reason: &str| Error::InadmissibleSample { index: i, reason: reason.into() };
        if !(s.d > 0.0 && s.d.is_finite()) {
            return Err(bad("distance to the axis must be positive"));
        }
        if !s.phi.is_finite() {
            return Err(bad("meridian angle is not finite"));
        }
        if i == 0 && s.phi != 0.0 {
            return Err(bad("the curve must start in the meridian plane phi = 0"));
        }
        if i > 0 {
            let step = s.phi - prev_phi;
            if step == 0.0 || (dir != 0.0 && step.signum() != dir) {
                return Err(bad("meridian angle is not strictly monotone"));
            }
            dir = step.signum();
        }
        prev_phi = s.phi;
        let z = match case {
            FlexCase::Perspectivity3 => z0,
            _ => match s.z {
                Some(z) if z.is_finite() => z,
                _ => return Err(bad("cases 1 and 2 need a finite height z(r)")),
            },
        };
        out.push(ProfileEntry::Point { d: s.d, phi: s.phi, z: Some(z) });
    }
    Ok(out)
}
