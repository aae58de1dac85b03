use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::ComplexValue;
use crate::{Error, Result};

/// Controls for the beta-integral behind [`bessel_k_complex_order`] and the
/// Fourier quadratures of the spectral kernels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub max_abscissa: f64,
    pub node_count: usize,
    pub target_abs_tol: f64,
}

impl QuadratureSpec {
    pub fn new(max_abscissa: f64, node_count: usize, target_abs_tol: f64) -> Result<Self> {
        let q = QuadratureSpec { max_abscissa, node_count, target_abs_tol };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_count < 16 {
            return Err(Error::Domain(format!("node_count {} < 16", self.node_count)));
        }
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::Domain("target_abs_tol must be positive".into()));
        }
        if !(self.max_abscissa > 0.0) {
            return Err(Error::Domain("max_abscissa must be positive".into()));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { max_abscissa: 40.0, node_count: 64, target_abs_tol: 1e-12 }
    }
}

// e-folds below the peak at which the integrand is dropped
const TAIL_DROP: f64 = 45.0;
const MAX_LEVELS: usize = 18;

/// K_nu(z) for complex order and real positive argument.
///
/// Integrates (1/2) * int exp(-z cosh(beta) + nu beta) d beta with the trapezoid
/// rule on the line Im beta = alpha, alpha chosen near the saddle so the
/// oscillating integrand does not cancel catastrophically.
pub fn bessel_k_complex_order(nu: ComplexValue, z: f64, q: QuadratureSpec) -> Result<ComplexValue> {
    q.validate()?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("bessel K needs z > 0, got {z}")));
    }
    if !(nu.re.is_finite() && nu.im.is_finite()) {
        return Err(Error::Domain("bessel K order is not finite".into()));
    }
    let mut nu = nu;
    if nu.re < 0.0 || (nu.re == 0.0 && nu.im < 0.0) {
        nu = -nu;
    }
    let flip = nu.im < 0.0;
    if flip {
        nu = nu.conj();
    }
    let (a, b) = (nu.re, nu.im);

    let alpha = if b == 0.0 {
        0.0
    } else {
        let delta = (9.0 / b).min(0.5);
        (nu / z).asinh().im.clamp(0.0, FRAC_PI_2 - delta)
    };
    let (sa, ca) = alpha.sin_cos();

    let logmag = |u: f64| -z * ca * u.cosh() + a * u;
    let peak_u = (a / (z * ca)).asinh();
    let peak = logmag(peak_u);
    let edge = |dir: f64| {
        let mut step = 0.25;
        let mut u = peak_u;
        while peak - logmag(u) < TAIL_DROP && u.abs() < q.max_abscissa {
            u += dir * step;
            step *= 1.5;
        }
        u.clamp(-q.max_abscissa, q.max_abscissa)
    };
    let (lo, hi) = (edge(-1.0), edge(1.0));
    for u in [lo, hi] {
        if peak - logmag(u) < TAIL_DROP - 15.0 {
            return Err(Error::ToleranceNotMet(format!(
                "K_{nu}({z}): integrand not negligible at |beta| = {}",
                q.max_abscissa
            )));
        }
    }

    let f = |u: f64| {
        let re = -z * u.cosh() * ca + a * u - b * alpha;
        let im = -z * u.sinh() * sa + b * u + a * alpha;
        ComplexValue::from_polar(re.exp(), im)
    };

    let mut n = q.node_count;
    let mut h = (hi - lo) / n as f64;
    let mut sum = (f(lo) + f(hi)) * 0.5;
    let mut l1 = sum.norm();
    for k in 1..n {
        let v = f(lo + k as f64 * h);
        sum += v;
        l1 += v.norm();
    }
    let mut prev = sum * h;
    for level in 1..=MAX_LEVELS {
        for k in 0..n {
            let v = f(lo + (k as f64 + 0.5) * h);
            sum += v;
            l1 += v.norm();
        }
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        let diff = (cur - prev).norm();
        let scale = l1 * h;
        if level >= 2 && diff <= 1e-13 * scale {
            let err = diff + 1e-15 * scale;
            if err > q.target_abs_tol {
                return Err(Error::ToleranceNotMet(format!(
                    "K_{nu}({z}): error estimate {err:e} above {}",
                    q.target_abs_tol
                )));
            }
            let v = cur * 0.5;
            return Ok(if flip { v.conj() } else { v });
        }
        prev = cur;
    }
    Err(Error::ToleranceNotMet(format!("K_{nu}({z}): trapezoid refinement stalled")))
}

/// sqrt(pi/(2z)) e^{-z}, the closed form of K_{1/2}.
#[cfg(test)]
fn k_half(z: f64) -> f64 {
    (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::c;
    use std::f64::consts::PI;

    fn k(nu: ComplexValue, z: f64) -> ComplexValue {
        bessel_k_complex_order(nu, z, QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn half_order_closed_form() {
        for z in [0.1, 1.0, 2.0 * PI, 30.0] {
            let v = k(c(0.5, 0.0), z);
            assert!((v.re - k_half(z)).abs() < 1e-14 * (1.0 + k_half(z)), "{z}");
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn oracle_complex_order() {
        let v = k(c(0.5, 7.0), 2.0 * PI);
        let want = c(1.393_587_105_854_997_563e-5, 1.047_314_941_200_354_465_4e-5);
        assert!((v - want).norm() < 1e-10 * want.norm());
    }

    #[test]
    fn order_reflection() {
        let v = k(c(0.5, 7.0), 2.0 * PI);
        let w = k(c(-0.5, -7.0), 2.0 * PI);
        assert_eq!(v, w);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(10.0, 8, 1e-12).is_err());
        assert!(QuadratureSpec::new(10.0, 16, 0.0).is_err());
        assert!(bessel_k_complex_order(c(0.5, 0.0), 0.0, QuadratureSpec::default()).is_err());
    }

    #[test]
    fn large_order_keeps_relative_accuracy() {
        // K_{1/2+100i}(2pi), modulus near e^{-50 pi}
        let v = k(c(0.5, 100.0), 2.0 * PI);
        let env = (PI / 200.0).sqrt() * (200.0 / (2.0 * PI) / 2.0).sqrt() * (-50.0 * PI).exp();
        assert!(v.norm() / env > 0.3 && v.norm() / env < 3.0, "{}", v.norm() / env);
    }
}
