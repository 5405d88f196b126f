use serde::{Deserialize, Serialize};

use super::monomials::{F_TERMS, G_TERMS, H_TERMS};
use super::Sublinkage;

/// Coefficients of the compatibility quartic `f·a⁴ + g·a² + h`, which equals
/// `−a²·W₊·W₋` and vanishes identically exactly for compatible pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoeffTriple {
    pub f: f64,
    pub g: f64,
    pub h: f64,
    /// Largest absolute monomial of each expanded coefficient.
    pub scale: [f64; 3],
}

impl CoeffTriple {
    /// `max(|f|, |g|, |h|)`, each divided by its largest monomial.
    pub fn normalized(&self) -> f64 {
        [self.f, self.g, self.h]
            .iter()
            .zip(self.scale)
            .map(|(c, s)| if s > 0.0 { c.abs() / s } else { c.abs() })
            .fold(0.0, f64::max)
    }

    /// Value of the quartic at `a`.
    pub fn eval(&self, a: f64) -> f64 {
        let a2 = a * a;
        (self.f * a2 + self.g) * a2 + self.h
    }
}

fn largest_monomial(terms: &[(f64, [u8; 8])], x: &[f64; 8]) -> f64 {
    terms
        .iter()
        .map(|(c, e)| {
            e.iter()
                .zip(x)
                .fold(c.abs(), |acc, (&k, &xi)| acc * xi.abs().powi(k as i32))
        })
        .fold(0.0, f64::max)
}

/// Evaluates `f`, `g`, `h` for the pair `(L₀, L_j)` from their factored forms.
pub fn coeffs_fgh(l0: &Sublinkage, lj: &Sublinkage) -> CoeffTriple {
    let (s0, t0, u0, v0) = (l0.s, l0.t, l0.u, l0.v);
    let (sj, tj, uj, vj) = (lj.s, lj.t, lj.u, lj.v);
    let (s02, t02, u02, v02) = (s0 * s0, t0 * t0, u0 * u0, v0 * v0);
    let (sj2, tj2, uj2, vj2) = (sj * sj, tj * tj, uj * uj, vj * vj);

    let f = (v0 - vj) * (s02 * vj * v02 - u02 * vj + (uj2 - sj2 * vj2) * v0);

    let sum = s02 + sj2 - t02 - tj2;
    let g = sum * v0 * sj2 * vj2 * vj + 2.0 * (s02 * u02 - t02 * uj2) * v02
        - ((u0 - uj) * (u0 + uj)).powi(2)
        - sj2 * sj2 * vj2 * vj2
        - s02 * s02 * v02 * v02
        + 2.0 * ((t02 - s02) * sj2 + s02 * tj2) * v02 * vj2
        + 2.0 * (sj2 * uj2 - tj2 * u02) * vj2
        + (s02 * v02 - u02 - uj2) * sum * v0 * vj;

    let d0 = s02 - t02;
    let h = (d0 * v0 * uj2 - d0 * v0 * sj2 * vj2 + s02 * (sj2 - tj2) * v02 * vj + (tj2 - sj2) * u02 * vj)
        * ((tj2 - sj2) * vj + v0 * d0);

    let x = [s0, t0, u0, v0, sj, tj, uj, vj];
    CoeffTriple {
        f,
        g,
        h,
        scale: [
            largest_monomial(F_TERMS, &x),
            largest_monomial(G_TERMS, &x),
            largest_monomial(H_TERMS, &x),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkage::{residual_w, BranchSign};

    fn expanded(terms: &[(f64, [u8; 8])], x: &[f64; 8]) -> f64 {
        terms
            .iter()
            .map(|(c, e)| e.iter().zip(x).fold(*c, |acc, (&k, &xi)| acc * xi.powi(k as i32)))
            .sum()
    }

    #[test]
    fn expansion_matches_factored_form() {
        let l0 = Sublinkage::new(1.3, 0.9, 1.7, -0.7, 0.0).unwrap();
        let lj = Sublinkage::new(1.1, 1.6, 0.8, 1.9, 0.2).unwrap();
        let c = coeffs_fgh(&l0, &lj);
        let x = [l0.s, l0.t, l0.u, l0.v, lj.s, lj.t, lj.u, lj.v];
        for (val, terms) in [(c.f, F_TERMS), (c.g, G_TERMS), (c.h, H_TERMS)] {
            let e = expanded(terms, &x);
            assert!((val - e).abs() < 1e-12 * (1.0 + e.abs()), "{val} vs {e}");
        }
    }

    #[test]
    fn quartic_is_product_of_residuals() {
        let l0 = Sublinkage::new(1.3, 0.9, 1.7, -0.7, 0.0).unwrap();
        let lj = Sublinkage::new(1.1, 1.6, 0.8, 1.9, 0.2).unwrap();
        let c = coeffs_fgh(&l0, &lj);
        for a in [0.8, 1.0, 1.4, 2.0] {
            let wp = residual_w(a, &l0, &lj, BranchSign::Plus).unwrap();
            let wm = residual_w(a, &l0, &lj, BranchSign::Minus).unwrap();
            let lhs = c.eval(a);
            let rhs = -a * a * wp * wm;
            assert!((lhs - rhs).abs() < 1e-11 * (1.0 + rhs.abs()), "a={a}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn copy_vanishes() {
        let l0 = Sublinkage::new(1.3, 0.9, 1.7, -0.7, 0.0).unwrap();
        assert!(coeffs_fgh(&l0, &l0).normalized() < 1e-15);
    }

    #[test]
    fn e3_pair_vanishes() {
        let l0 = Sublinkage::new(1.0, 2.0, 1.0, 3.0, 0.0).unwrap();
        let lj = Sublinkage::new(2.0, 7f64.sqrt(), 2.0 * 7f64.sqrt(), 3.0, 0.5).unwrap();
        assert!(coeffs_fgh(&l0, &lj).normalized() < 1e-14);
    }

    #[test]
    fn homogeneous_under_length_scaling() {
        let l0 = Sublinkage::new(1.3, 0.9, 1.7, -0.7, 0.0).unwrap();
        let lj = Sublinkage::new(1.1, 1.6, 0.8, 1.9, 0.2).unwrap();
        let k = 2.5;
        let sc = |l: &Sublinkage| Sublinkage { s: k * l.s, t: k * l.t, u: k * l.u, ..*l };
        let c = coeffs_fgh(&l0, &lj);
        let d = coeffs_fgh(&sc(&l0), &sc(&lj));
        assert!((d.f - k.powi(2) * c.f).abs() < 1e-12 * d.f.abs().max(1.0));
        assert!((d.g - k.powi(4) * c.g).abs() < 1e-12 * d.g.abs().max(1.0));
        assert!((d.h - k.powi(6) * c.h).abs() < 1e-12 * d.h.abs().max(1.0));
        assert!((d.normalized() - c.normalized()).abs() < 1e-12);
    }
}
