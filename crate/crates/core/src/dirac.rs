//! Spectral functions of the massive Dirac / modified xp model: the
//! eigenvalue condition, xi_H, Polya's xi*, Riemann's xi, their Fourier
//! kernels, eigenfunctions and real-axis zero finding.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::counting::{n_dirac_smooth, ModelScales};
use crate::roots::scan_roots;
use crate::specfun::{bessel_k_complex_order, c, log_gamma, ComplexValue, QuadratureSpec};
use crate::zeta::{zero_count_below, zeta};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralFunctionKind {
    XiRiemann,
    XiPolyaStar,
    XiDiracH,
}

/// Self-adjoint extension phase and the product m l_x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData {
    pub vartheta: f64,
    pub m_lx: f64,
}

impl BoundaryData {
    pub fn new(vartheta: f64, m_lx: f64) -> Result<Self> {
        if !(0.0..2.0 * PI).contains(&vartheta) {
            return Err(Error::Domain(format!("vartheta {vartheta} outside [0, 2pi)")));
        }
        if !(m_lx > 0.0 && m_lx.is_finite()) {
            return Err(Error::Domain(format!("m l_x must be positive, got {m_lx}")));
        }
        Ok(BoundaryData { vartheta, m_lx })
    }
}

/// What [`find_dirac_zeros`] scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiracTarget {
    Kind(SpectralFunctionKind),
    Boundary(BoundaryData),
}

/// Largest |t| the zero scan accepts.
pub const DIRAC_SCAN_BUDGET: f64 = 200.0;
/// Largest |t| accepted by [`xi_via_fourier`].
pub const FOURIER_BUDGET: f64 = 100.0;

fn k_pair(a: f64, t: f64, z: f64) -> Result<ComplexValue> {
    let q = QuadratureSpec::default();
    Ok(bessel_k_complex_order(c(a, 0.5 * t), z, q)? + bessel_k_complex_order(c(a, -0.5 * t), z, q)?)
}

/// xi_H(t) together with the imaginary residue of the Bessel pair.
pub fn xi_h_parts(t: f64) -> Result<(f64, f64)> {
    let v = k_pair(0.5, t, 2.0 * PI)?;
    Ok((v.re, v.im))
}

/// xi_H(t) = K_{1/2+it/2}(2 pi) + K_{1/2-it/2}(2 pi).
pub fn xi_h(t: f64) -> Result<f64> {
    Ok(xi_h_parts(t)?.0)
}

pub fn polya_xi_star_parts(t: f64) -> Result<(f64, f64)> {
    let v = k_pair(2.25, t, 2.0 * PI)? * (4.0 * PI * PI);
    Ok((v.re, v.im))
}

/// Polya's xi*(t) = 4 pi^2 (K_{9/4+it/2}(2 pi) + K_{9/4-it/2}(2 pi)).
pub fn polya_xi_star(t: f64) -> Result<f64> {
    Ok(polya_xi_star_parts(t)?.0)
}

/// Large-t envelope 2^{3/4} pi^{1/4} t^{7/4} e^{-pi t/4} of xi*, i.e.
/// 8 pi^2 times the large-order modulus of K_{9/4+it/2}(2 pi).
pub fn polya_envelope(t: f64) -> f64 {
    2f64.powf(0.75) * PI.powf(0.25) * t.powf(1.75) * (-PI * t / 4.0).exp()
}

/// Exact envelope 8 pi^2 |K_{9/4+it/2}(2 pi)|, of which xi* is the real part.
pub fn polya_analytic_envelope(t: f64) -> Result<f64> {
    Ok(8.0 * PI * PI * bessel_k_complex_order(c(2.25, 0.5 * t), 2.0 * PI, QuadratureSpec::default())?.norm())
}

/// Asymptotic phase t/2 log(t/2 pi e) + 7 pi/8 of xi*.
pub fn polya_phase(t: f64) -> f64 {
    0.5 * t * (t / (2.0 * PI * std::f64::consts::E)).ln() + 7.0 * PI / 8.0
}

pub fn riemann_xi_parts(t: f64) -> Result<(f64, f64)> {
    let s = c(0.5, t);
    let g = (log_gamma(s * 0.5)? - s * 0.5 * PI.ln()).exp();
    let v = s * (s - 1.0) * g * zeta(s)? * 0.25;
    Ok((v.re, v.im))
}

/// Riemann's xi(t) = 1/4 s (s-1) Gamma(s/2) pi^{-s/2} zeta(s), s = 1/2 + it.
pub fn riemann_xi(t: f64) -> Result<f64> {
    Ok(riemann_xi_parts(t)?.0)
}

/// Closed-form evaluation of the spectral function of a given kind.
pub fn spectral_function(kind: SpectralFunctionKind, t: f64) -> Result<f64> {
    match kind {
        SpectralFunctionKind::XiRiemann => riemann_xi(t),
        SpectralFunctionKind::XiPolyaStar => polya_xi_star(t),
        SpectralFunctionKind::XiDiracH => xi_h(t),
    }
}

/// Fourier kernel Phi(beta) of each spectral function.
pub fn phi_kernel(kind: SpectralFunctionKind, beta: f64) -> f64 {
    match kind {
        SpectralFunctionKind::XiDiracH => (0.5 * beta).cosh() * 2.0 * (-2.0 * PI * beta.cosh()).exp(),
        SpectralFunctionKind::XiPolyaStar => {
            4.0 * PI * PI * (2.25 * beta).cosh() * 2.0 * (-2.0 * PI * beta.cosh()).exp()
        }
        SpectralFunctionKind::XiRiemann => {
            // even in beta; the series at -|beta| cancels badly
            let beta = beta.abs();
            let eb = beta.exp();
            let mut sum = 0.0;
            let mut n = 1.0f64;
            loop {
                let n2 = n * n;
                let term = (2.0 * PI * eb * n2 - 3.0) * n2 * (-PI * n2 * eb).exp();
                sum += term;
                let past_peak = PI * n2 * eb > 2.0;
                if past_peak && term.abs() <= 1e-16 * sum.abs() || n > 1e6 {
                    break;
                }
                n += 1.0;
            }
            2.0 * PI * (1.25 * beta).exp() * sum
        }
    }
}

const FOURIER_CUT: f64 = 5.0;

/// int_0^inf Phi(beta) cos(t beta/2) d beta by the trapezoid rule, which
/// converges geometrically because Phi is even. For the Riemann kind the
/// integral is halved to match the 1/4 s(s-1) normalization of [`riemann_xi`].
pub fn xi_via_fourier(kind: SpectralFunctionKind, t: f64, q: QuadratureSpec) -> Result<f64> {
    q.validate()?;
    if !(t.abs() <= FOURIER_BUDGET) {
        return Err(Error::ToleranceNotMet(format!("|t| = {t} beyond the Fourier budget")));
    }
    let b = q.max_abscissa.min(FOURIER_CUT);
    let f = |beta: f64| phi_kernel(kind, beta) * (0.5 * t * beta).cos();
    if phi_kernel(kind, b).abs() > 1e-18 * phi_kernel(kind, 0.0).abs().max(1e-300) {
        return Err(Error::ToleranceNotMet(format!("kernel not negligible at beta = {b}")));
    }
    let mut n = q.node_count;
    let mut h = b / n as f64;
    let mut sum = 0.5 * f(0.0) + 0.5 * f(b);
    for k in 1..n {
        sum += f(k as f64 * h);
    }
    let mut prev = sum * h;
    for level in 1..=20 {
        for k in 0..n {
            sum += f((k as f64 + 0.5) * h);
        }
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        if level >= 2 && (cur - prev).abs() <= 0.1 * q.target_abs_tol {
            let scale = if kind == SpectralFunctionKind::XiRiemann { 0.5 } else { 1.0 };
            return Ok(cur * scale);
        }
        prev = cur;
    }
    Err(Error::ToleranceNotMet(format!("Fourier quadrature at t = {t} did not settle")))
}

/// e^{i vartheta} K_{1/2-iE/2}(m l_x) - K_{1/2+iE/2}(m l_x).
pub fn eigen_residual(e: f64, b: &BoundaryData) -> Result<ComplexValue> {
    let q = QuadratureSpec::default();
    let kp = bessel_k_complex_order(c(0.5, 0.5 * e), b.m_lx, q)?;
    let km = bessel_k_complex_order(c(0.5, -0.5 * e), b.m_lx, q)?;
    Ok(c(0.0, b.vartheta).exp() * km - kp)
}

/// Real function with the same zeros as [`eigen_residual`]:
/// Im(e^{-i vartheta/2} K_{1/2+iE/2}(m l_x)), so that the residual equals
/// -2i e^{i vartheta/2} times it.
pub fn eigen_condition(e: f64, b: &BoundaryData) -> Result<f64> {
    let kp = bessel_k_complex_order(c(0.5, 0.5 * e), b.m_lx, QuadratureSpec::default())?;
    Ok((c(0.0, -0.5 * b.vartheta).exp() * kp).im)
}

/// Smooth eigenvalue count E/2pi (log(E/m l_x) - 1) - vartheta/2pi; at
/// vartheta = pi, m l_x = 2 pi it is the -1/2 Dirac count.
pub fn n_boundary_smooth(e: f64, b: &BoundaryData) -> f64 {
    if e <= 0.0 {
        return 0.0;
    }
    e / (2.0 * PI) * ((e / b.m_lx).ln() - 1.0) - b.vartheta / (2.0 * PI)
}

/// Smooth count t/2pi (log(t/2pi) - 1) + 3/8 of xi* zeros, from the cosine phase.
pub fn n_polya_smooth(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    (polya_phase(t) - 0.5 * PI) / PI
}

/// xp eigenfunction x^{iE/2 hbar} K_{1/2-iE/2 hbar}(l_p x/hbar).
pub fn eigenfunction_xp(e: f64, x: f64, s: &ModelScales) -> Result<ComplexValue> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("eigenfunction needs x > 0, got {x}")));
    }
    let w = e / (2.0 * s.hbar);
    let k = bessel_k_complex_order(c(0.5, -w), s.l_p * x / s.hbar, QuadratureSpec::default())?;
    Ok(c(0.0, w * x.ln()).exp() * k)
}

/// Real zeros in (t_min, t_max) of a spectral function or boundary condition.
pub fn find_dirac_zeros(target: DiracTarget, t_min: f64, t_max: f64) -> Result<Vec<f64>> {
    if !(0.0 <= t_min && t_min < t_max && t_max <= DIRAC_SCAN_BUDGET) {
        return Err(Error::Domain(format!(
            "find_dirac_zeros needs 0 <= t_min < t_max <= {DIRAC_SCAN_BUDGET}"
        )));
    }
    let step = match target {
        DiracTarget::Kind(SpectralFunctionKind::XiRiemann) => 0.05,
        _ => 0.1,
    };
    let zeros = match target {
        DiracTarget::Kind(kind) => scan_roots(|t| spectral_function(kind, t), t_min, t_max, step, 1e-10)?,
        DiracTarget::Boundary(b) => scan_roots(|e| eigen_condition(e, &b), t_min, t_max, step, 1e-10)?,
    };
    let zeros: Vec<f64> = zeros.into_iter().filter(|&t| t > t_min && t < t_max).collect();
    let found = zeros.len() as f64;
    let smooth = |n: &dyn Fn(f64) -> f64| n(t_max).max(0.0) - n(t_min).max(0.0);
    let (expected, slack) = match target {
        DiracTarget::Kind(SpectralFunctionKind::XiRiemann) => {
            let n = zero_count_below(t_max)? - zero_count_below(t_min)?;
            (n as f64, 0.0)
        }
        DiracTarget::Kind(SpectralFunctionKind::XiDiracH) => {
            let s = ModelScales::new(1.0, 2.0 * PI)?;
            (smooth(&|t| if t > 0.0 { n_dirac_smooth(t, &s).unwrap_or(0.0) } else { 0.0 }), 2.0)
        }
        DiracTarget::Kind(SpectralFunctionKind::XiPolyaStar) => (smooth(&n_polya_smooth), 2.0),
        DiracTarget::Boundary(b) => (smooth(&|e| n_boundary_smooth(e, &b)), 2.0),
    };
    if (found - expected).abs() > slack + 1e-9 {
        return Err(Error::MissedZero(format!(
            "{found} zeros in ({t_min}, {t_max}), smooth count predicts {expected:.3}"
        )));
    }
    Ok(zeros)
}
