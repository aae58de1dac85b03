//! Riemann zeta on and off the critical line, theta, Hardy's Z, derivatives,
//! zero finding and the zero database.

mod db;

pub use db::{
    find_zeros, ingest_zeros, parse_zero_table, persist_zeros, zeta_prime_at_zero, ZeroDatabase,
    ZeroRecord, ZeroSource, ZERO_SCAN_STEP,
};

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use crate::specfun::{c, log_gamma, log_sin_pi, ComplexValue};
use crate::{Error, Result};

const EM_TERMS: usize = 40;

// B_{2k}/(2k)! for k = 1..=EM_TERMS. Past k = 5 from
// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k)/(2 pi)^{2k}, with zeta(2k) summed directly.
fn bernoulli_ratios() -> &'static [f64; EM_TERMS] {
    static TABLE: OnceLock<[f64; EM_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [0.0; EM_TERMS];
        out[..5].copy_from_slice(&[
            1.0 / 12.0,
            -1.0 / 720.0,
            1.0 / 30_240.0,
            -1.0 / 1_209_600.0,
            1.0 / 47_900_160.0,
        ]);
        for (i, slot) in out.iter_mut().enumerate().skip(5) {
            let k = (i + 1) as i32;
            let mut z2k = 0.0;
            for n in (1..=60).rev() {
                z2k += (n as f64).powi(-2 * k);
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * z2k * (2.0 * PI).powi(-2 * k);
        }
        out
    })
}

fn zeta_em(s: ComplexValue) -> ComplexValue {
    let n = 30 + (s.im.abs() / PI).ceil() as usize;
    let nf = n as f64;
    let mut sum = c(0.0, 0.0);
    for k in (1..n).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_s = (-s * nf.ln()).exp();
    sum += n_s * nf / (s - 1.0) + n_s * 0.5;
    let b = bernoulli_ratios();
    // T_1 = B2/2! s N^{-s-1}
    let mut poch = s;
    let mut pw = n_s / nf;
    let mut prev = f64::INFINITY;
    for k in 0..EM_TERMS {
        let term = b[k] * poch * pw;
        let mag = term.norm();
        sum += term;
        if mag <= 1e-17 * sum.norm() || mag > prev {
            break;
        }
        prev = mag;
        let j = 2.0 * k as f64;
        poch *= (s + j + 1.0) * (s + j + 2.0);
        pw /= nf * nf;
    }
    sum
}

/// Riemann zeta. Euler-Maclaurin for Re s >= 0, functional equation otherwise.
pub fn zeta(s: ComplexValue) -> Result<ComplexValue> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain(format!("zeta of non-finite {s}")));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    Ok(zeta_unchecked(s))
}

pub(crate) fn zeta_unchecked(s: ComplexValue) -> ComplexValue {
    if s.re >= 0.0 {
        return zeta_em(s);
    }
    if s.im == 0.0 && (s.re / 2.0).fract() == 0.0 {
        return c(0.0, 0.0);
    }
    // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    let one_minus = c(1.0, 0.0) - s;
    let lg = log_gamma(one_minus).expect("1 - s has positive real part");
    let lf = s * LN_2 + (s - 1.0) * PI.ln() + log_sin_pi(s * 0.5) + lg;
    lf.exp() * zeta_em(one_minus)
}

fn check_pole(s: ComplexValue) -> Result<()> {
    if (s - 1.0).norm() <= 0.01 {
        return Err(Error::Pole(format!("{s} is within 0.01 of the pole at s = 1")));
    }
    Ok(())
}

// Neville-style Richardson on step halving for even error expansions.
fn richardson(mut d: Vec<ComplexValue>) -> ComplexValue {
    let levels = d.len();
    for j in 1..levels {
        let f = 4f64.powi(j as i32);
        for i in (j..levels).rev() {
            d[i] = (f * d[i] - d[i - 1]) / (f - 1.0);
        }
    }
    d[levels - 1]
}

fn step_for(s: ComplexValue) -> f64 {
    0.02f64.min((s - 1.0).norm() / 4.0)
}

/// zeta'(s) by Richardson-extrapolated central differences.
pub fn zeta_prime(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let h0 = step_for(s);
    let d: Vec<_> = (0..3)
        .map(|j| {
            let h = h0 / 2f64.powi(j);
            (zeta_unchecked(s + h) - zeta_unchecked(s - h)) / (2.0 * h)
        })
        .collect();
    Ok(richardson(d))
}

/// zeta''(s) by Richardson-extrapolated second differences.
pub fn zeta_second(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let h0 = step_for(s);
    let z0 = zeta_unchecked(s);
    let d: Vec<_> = (0..3)
        .map(|j| {
            let h = h0 / 2f64.powi(j);
            (zeta_unchecked(s + h) - 2.0 * z0 + zeta_unchecked(s - h)) / (h * h)
        })
        .collect();
    Ok(richardson(d))
}

/// Riemann-Siegel theta, continuous with theta(0) = 0.
pub fn theta_rs(t: f64) -> f64 {
    if t < 0.0 {
        return -theta_rs(-t);
    }
    let lg = log_gamma(c(0.25, 0.5 * t)).expect("1/4 + it/2 is never a pole");
    lg.im - 0.5 * t * PI.ln()
}

/// Real and imaginary parts of e^{i theta(t)} zeta(1/2 + it).
pub fn z_function_parts(t: f64) -> (f64, f64) {
    let v = c(0.0, theta_rs(t)).exp() * zeta_unchecked(c(0.5, t));
    (v.re, v.im)
}

/// Hardy's Z function.
pub fn z_function(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Domain("Z of non-finite t".into()));
    }
    let (re, im) = z_function_parts(t);
    if im.abs() > 1e-6 {
        return Err(Error::Consistency(format!("Z({t}) has imaginary residue {im:e}")));
    }
    Ok(re)
}

/// Z'(t) by the 5-point central stencil with h = 1e-4.
pub fn z_prime(t: f64) -> f64 {
    let h = 1e-4;
    let z = |x: f64| z_function_parts(x).0;
    (z(t - 2.0 * h) - 8.0 * z(t - h) + 8.0 * z(t + h) - z(t + 2.0 * h)) / (12.0 * h)
}

/// zeta'(1/2 + it) at a zero, from Z'(t): -i e^{-i theta(t)} Z'(t).
pub fn zeta_prime_from_z_prime(t: f64, z_prime: f64) -> ComplexValue {
    c(0.0, -1.0) * c(0.0, -theta_rs(t)).exp() * z_prime
}

/// Im log zeta(1/2 + it), continued from 2 + it along the horizontal segment.
pub fn im_log_zeta_critical(t: f64) -> Result<f64> {
    let mut sigma = 2.0;
    let mut prev = zeta_unchecked(c(sigma, t));
    let mut arg = prev.arg();
    let mut ds: f64 = 0.05;
    while sigma > 0.5 {
        let step = ds.min(sigma - 0.5);
        let next_sigma = if step == sigma - 0.5 { 0.5 } else { sigma - step };
        let next = zeta_unchecked(c(next_sigma, t));
        if next.norm() == 0.0 {
            return Err(Error::OnZero(t));
        }
        let d = (next / prev).arg();
        if d.abs() > 0.3 {
            ds = step / 2.0;
            if ds < 1e-9 {
                return Err(Error::OnZero(t));
            }
            continue;
        }
        arg += d;
        prev = next;
        sigma = next_sigma;
        ds = (ds * 1.5).min(0.05);
    }
    Ok(arg)
}

/// theta(t)/pi + 1 + Im log zeta(1/2 + it)/pi, unrounded. Errors within about
/// 1e-6 of a zero, where |Z(t)| falls below 1e-6.
pub fn zero_count_formula(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("zero count needs t > 0, got {t}")));
    }
    if z_function_parts(t).0.abs() < 1e-6 {
        return Err(Error::OnZero(t));
    }
    Ok(theta_rs(t) / PI + 1.0 + im_log_zeta_critical(t)? / PI)
}

/// Number of zeros with ordinate in (0, t), from the exact counting formula.
pub fn zero_count_below(t: f64) -> Result<usize> {
    if t <= 0.0 {
        return Ok(0);
    }
    let v = zero_count_formula(t)?;
    if (v - v.round()).abs() > 1e-3 {
        return Err(Error::Consistency(format!("zero count {v} at t = {t} is not integral")));
    }
    Ok(v.round().max(0.0) as usize)
}
