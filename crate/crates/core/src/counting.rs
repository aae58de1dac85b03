//! Smooth and exact zero-counting formulas, and the classical orbit of the
//! modified xp Hamiltonian H = x (p + l_p^2/p).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::zeta::{theta_rs, zero_count_formula, ZeroDatabase};
use crate::{Error, Result};

/// Half-width of the window around a known zero where n_exact refuses to answer.
pub const ON_ZERO_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelScales {
    pub l_x: f64,
    pub l_p: f64,
    pub hbar: f64,
    pub cutoff_lambda: Option<f64>,
}

impl ModelScales {
    pub fn new(l_x: f64, l_p: f64) -> Result<Self> {
        let s = ModelScales { l_x, l_p, hbar: 1.0, cutoff_lambda: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        self.hbar = hbar;
        self.validate()?;
        Ok(self)
    }

    pub fn with_cutoff(mut self, lambda: f64) -> Result<Self> {
        self.cutoff_lambda = Some(lambda);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if !(ok(self.l_x) && ok(self.l_p) && ok(self.hbar)) {
            return Err(Error::Domain(format!("scales must be positive: {self:?}")));
        }
        if let Some(l) = self.cutoff_lambda {
            if !ok(l) {
                return Err(Error::Domain(format!("cutoff must be positive, got {l}")));
            }
        }
        Ok(())
    }

    fn area(&self) -> f64 {
        self.l_x * self.l_p
    }
}

fn positive(e: f64) -> Result<()> {
    if e > 0.0 && e.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("energy must be positive, got {e}")))
    }
}

/// Berry-Keating smooth count E/(2 pi hbar) (log(E/l_x l_p) - 1) + 7/8.
pub fn n_berry_keating(e: f64, s: &ModelScales) -> Result<f64> {
    positive(e)?;
    Ok(e / (2.0 * PI * s.hbar) * ((e / s.area()).ln() - 1.0) + 7.0 / 8.0)
}

/// Connes' count with cutoff Lambda.
pub fn n_connes(e: f64, s: &ModelScales) -> Result<f64> {
    positive(e)?;
    let lambda = s
        .cutoff_lambda
        .ok_or_else(|| Error::Domain("Connes count needs a cutoff".into()))?;
    let u = e / (2.0 * PI);
    Ok(u * (lambda * lambda / (2.0 * PI)).ln() - u * (u.ln() - 1.0))
}

/// Smooth Riemann-von Mangoldt count theta(t)/pi + 1.
pub fn n_average(t: f64) -> Result<f64> {
    positive(t)?;
    Ok(theta_rs(t) / PI + 1.0)
}

/// Exact count theta/pi + 1 + Im log zeta/pi. Integral between zeros.
pub fn n_exact(t: f64) -> Result<f64> {
    positive(t)?;
    zero_count_formula(t)
}

/// As [`n_exact`], refusing t within [`ON_ZERO_WINDOW`] of a database ordinate.
pub fn n_exact_with(t: f64, db: &ZeroDatabase) -> Result<f64> {
    if db.find_near(t, ON_ZERO_WINDOW).is_some() {
        return Err(Error::OnZero(t));
    }
    n_exact(t)
}

/// Dirac/modified-xp smooth count, constant -1/2.
pub fn n_dirac_smooth(e: f64, s: &ModelScales) -> Result<f64> {
    Ok(n_berry_keating(e, s)? - 7.0 / 8.0 - 0.5)
}

/// Berry-Keating 2011 count t/2pi (log t/2pi - 1) - (8 pi/t) log(t/2pi).
pub fn n_bk2011(t: f64) -> Result<f64> {
    if !(t > 2.0 * PI) {
        return Err(Error::Domain(format!("n_bk2011 needs t > 2 pi, got {t}")));
    }
    let l = (t / (2.0 * PI)).ln();
    Ok(t / (2.0 * PI) * (l - 1.0) - 8.0 * PI / t * l)
}

/// Period T_E = acosh(E / 2 l_x l_p) of the closed orbit.
pub fn classical_period(e: f64, s: &ModelScales) -> Result<f64> {
    let critical = 2.0 * s.area();
    if !(e > critical) {
        return Err(Error::SubcriticalEnergy { energy: e, critical });
    }
    Ok((e / critical).acosh())
}

/// Momentum at which the orbit leaves the wall x = l_x.
pub fn launch_momentum(e: f64, s: &ModelScales) -> Result<f64> {
    let t = classical_period(e, s)?;
    Ok(s.l_p * t.exp())
}

/// H(x, p) = x (p + l_p^2/p).
pub fn hamiltonian(x: f64, p: f64, s: &ModelScales) -> f64 {
    x * (p + s.l_p * s.l_p / p)
}

/// Point (x, p) of the orbit of energy E a time t after leaving the wall at
/// (l_x, p0). At t = T_E the orbit is back at the wall and bounces to (l_x, p0).
pub fn classical_trajectory(e: f64, t: f64, p0: f64, s: &ModelScales) -> Result<(f64, f64)> {
    let period = classical_period(e, s)?;
    if (hamiltonian(s.l_x, p0, s) - e).abs() > 1e-10 * e {
        return Err(Error::Domain(format!("p0 = {p0} does not lie on the energy shell E = {e}")));
    }
    if !(0.0..=period * (1.0 + 1e-12)).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [0, T_E = {period}]")));
    }
    if (t - period).abs() <= 1e-12 * period {
        return Ok((s.l_x, p0));
    }
    let lp2 = s.l_p * s.l_p;
    let p = p0.signum() * ((p0 * p0 + lp2) * (-2.0 * t).exp() - lp2).sqrt();
    let x = e * p / (p * p + lp2);
    Ok((x, p))
}
