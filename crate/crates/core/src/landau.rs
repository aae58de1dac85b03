//! Landau-level realization: lowest-sector wavefunctions, the box
//! quantization condition and its counting function.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::n_average;
use crate::roots::{brent, sample};
use crate::specfun::{c, kummer_m, ComplexValue};
use crate::zeta::theta_rs;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandauGeometry {
    pub magnetic_length: f64,
    pub box_size: f64,
}

impl LandauGeometry {
    pub fn new(magnetic_length: f64, box_size: f64) -> Result<Self> {
        if !(magnetic_length > 0.0 && box_size > 0.0) {
            return Err(Error::Domain("Landau lengths must be positive".into()));
        }
        Ok(LandauGeometry { magnetic_length, box_size })
    }

    /// log(L^2 / 2 pi l^2).
    pub fn log_ratio(&self) -> f64 {
        (self.box_size * self.box_size / (2.0 * PI * self.magnetic_length.powi(2))).ln()
    }
}

fn kummer_arg(x: f64, y: f64, g: &LandauGeometry) -> ComplexValue {
    let w = c(x, -y);
    w * w / (2.0 * g.magnetic_length.powi(2))
}

fn gauss(x: f64, g: &LandauGeometry) -> f64 {
    (-x * x / (2.0 * g.magnetic_length.powi(2))).exp()
}

/// Even solution e^{-x^2/2l^2} M(1/4 + iE/2, 1/2, (x-iy)^2/2l^2).
pub fn psi_plus(e: f64, x: f64, y: f64, g: &LandauGeometry) -> Result<ComplexValue> {
    Ok(gauss(x, g) * kummer_m(c(0.25, 0.5 * e), c(0.5, 0.0), kummer_arg(x, y, g))?)
}

/// Odd solution (x-iy) e^{-x^2/2l^2} M(3/4 + iE/2, 3/2, (x-iy)^2/2l^2).
pub fn psi_minus(e: f64, x: f64, y: f64, g: &LandauGeometry) -> Result<ComplexValue> {
    let m = kummer_m(c(0.75, 0.5 * e), c(1.5, 0.0), kummer_arg(x, y, g))?;
    Ok(c(x, -y) * gauss(x, g) * m)
}

/// 2 theta(E) - E log(L^2/2 pi l^2), continuous in E.
pub fn quantization_phase(e: f64, g: &LandauGeometry) -> f64 {
    2.0 * theta_rs(e) - e * g.log_ratio()
}

/// [`quantization_phase`] reduced to (-pi, pi]; eigenvalues are its zeros.
pub fn quantization_residual(e: f64, g: &LandauGeometry) -> f64 {
    let v = quantization_phase(e, g);
    let r = v - 2.0 * PI * (v / (2.0 * PI)).round();
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// E/2pi log(L^2/2pi l^2) + 1 - <n(E)>.
pub fn n_landau(e: f64, g: &LandauGeometry) -> Result<f64> {
    Ok(e / (2.0 * PI) * g.log_ratio() + 1.0 - n_average(e)?)
}

const LEVEL_SCAN_STEP: f64 = 0.05;

/// Positive roots E <= e_max of the quantization condition, found by tracking
/// the continuous phase across multiples of 2 pi.
pub fn landau_levels(e_max: f64, g: &LandauGeometry) -> Result<Vec<f64>> {
    if !(e_max > 0.0 && e_max <= 500.0) {
        return Err(Error::Domain(format!("e_max = {e_max} outside (0, 500]")));
    }
    let phase = |e: f64| Ok(quantization_phase(e, g));
    let grid = sample(&phase, 0.0, e_max, LEVEL_SCAN_STEP)?;
    let mut brackets = Vec::new();
    for w in grid.windows(2) {
        let ((a, fa), (b, fb)) = (w[0], w[1]);
        let (lo, hi) = (fa.min(fb), fa.max(fb));
        let mut k = (lo / (2.0 * PI)).floor() as i64;
        while 2.0 * PI * (k as f64) <= hi {
            let target = 2.0 * PI * k as f64;
            if target > lo || (target == lo && a > 0.0 && lo == fb) {
                brackets.push((a, b, target));
            }
            k += 1;
        }
    }
    let mut roots: Vec<f64> = brackets
        .into_par_iter()
        .map(|(a, b, target)| brent(|e| Ok(quantization_phase(e, g) - target), a, b, 1e-11))
        .collect::<Result<_>>()?;
    roots.retain(|&e| e > 0.0);
    roots.sort_by(f64::total_cmp);
    let n = n_landau(e_max, g)?;
    if (roots.len() as f64 - n).abs() > 1.0 + 1e-9 && (roots.len() as f64 - n.round()).abs() > 1.0 {
        return Err(Error::MissedZero(format!("{} levels below {e_max}, n_landau gives {n:.3}", roots.len())));
    }
    Ok(roots)
}

/// |psi_plus| on the square [-half_width, half_width]^2 with n x n points,
/// row-major in y then x.
pub fn psi_plus_grid(e: f64, g: &LandauGeometry, half_width: f64, n: usize) -> Result<Vec<(f64, f64, f64)>> {
    if n < 2 {
        return Err(Error::Domain("grid needs at least 2 points per side".into()));
    }
    let h = 2.0 * half_width / (n - 1) as f64;
    (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % n, k / n);
            let (x, y) = (-half_width + i as f64 * h, -half_width + j as f64 * h);
            psi_plus(e, x, y, g).map(|v| (x, y, v.norm()))
        })
        .collect()
}

/// Grid point of largest |psi|.
pub fn ridge_argmax(grid: &[(f64, f64, f64)]) -> Option<(f64, f64, f64)> {
    grid.iter().copied().max_by(|a, b| a.2.total_cmp(&b.2))
}

/// Euclidean distance from (x0, y0) to the hyperbola x y = e.
pub fn hyperbola_distance(x0: f64, y0: f64, e: f64) -> f64 {
    let d = |u: f64| ((u - x0).powi(2) + (e / u - y0).powi(2)).sqrt();
    let mut best = f64::INFINITY;
    for sign in [-1.0, 1.0] {
        // coarse log-spaced sweep, then golden-section polish around the best node
        let nodes: Vec<f64> = (0..=4000).map(|k| sign * 10f64.powf(-3.0 + 6.0 * k as f64 / 4000.0)).collect();
        let (mut ib, mut db) = (0, f64::INFINITY);
        for (i, &u) in nodes.iter().enumerate() {
            if d(u) < db {
                db = d(u);
                ib = i;
            }
        }
        let (mut a, mut b) = (nodes[ib.saturating_sub(1)], nodes[(ib + 1).min(nodes.len() - 1)]);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..100 {
            let (u1, u2) = (b - r * (b - a), a + r * (b - a));
            if d(u1) < d(u2) {
                b = u2;
            } else {
                a = u1;
            }
        }
        best = best.min(db).min(d(0.5 * (a + b)));
    }
    best
}
