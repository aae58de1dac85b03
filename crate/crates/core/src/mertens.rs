//! Moebius and Mertens functions, the Dirichlet partial sums M_z(x) and
//! their Perron residue expansions over trivial and nontrivial zeros.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::specfun::{c, log_gamma, ComplexValue};
use crate::zeta::{z_function_parts, zeta, zeta_prime, zeta_second, ZeroDatabase, ZeroRecord};
use crate::{Error, Result};

/// Largest argument accepted by [`moebius`].
pub const MOEBIUS_BUDGET: u64 = 1_000_000_000;
/// Largest x for the sieved sums.
pub const SIEVE_BUDGET: u64 = 100_000_000;

/// mu(n) by trial factorization. mu(0) is reported as 0.
pub fn moebius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// mu(0..=n_max) by a linear sieve; entry 0 is 0.
pub fn moebius_table(n_max: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n_max + 1];
    let mut composite = vec![false; n_max + 1];
    let mut primes: Vec<usize> = Vec::new();
    mu[0] = 0;
    for i in 2..=n_max {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n_max {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

fn floor_arg(x: f64) -> Result<usize> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("x must be >= 1, got {x}")));
    }
    if x > SIEVE_BUDGET as f64 {
        return Err(Error::Domain(format!("x = {x} beyond sieve budget {SIEVE_BUDGET}")));
    }
    Ok(x.floor() as usize)
}

/// Mertens function M(x) = sum of mu(n) for n <= x.
pub fn mertens(x: f64) -> Result<i64> {
    let n = floor_arg(x)?;
    Ok(moebius_table(n).iter().map(|&m| m as i64).sum())
}

fn n_pow_minus_z(n: usize, e: f64) -> ComplexValue {
    let l = (n as f64).ln();
    ComplexValue::from_polar((-0.5 * l).exp(), -e * l)
}

/// M_z(x) = sum_{n <= x} mu(n) n^{-z}, z = 1/2 + iE. With `primed`, the last
/// term is halved when x is an integer.
pub fn m_z_direct(x: f64, e: f64, primed: bool) -> Result<ComplexValue> {
    let n = floor_arg(x)?;
    let mu = moebius_table(n);
    let mut sum = c(0.0, 0.0);
    for (k, &m) in mu.iter().enumerate().skip(1) {
        if m != 0 {
            sum += n_pow_minus_z(k, e) * m as f64;
        }
    }
    if primed && x == x.floor() && mu[n] != 0 {
        sum -= n_pow_minus_z(n, e) * (0.5 * mu[n] as f64);
    }
    Ok(sum)
}

/// Unprimed partial sums M_z(1), ..., M_z(n_max).
pub fn m_z_partials(n_max: usize, e: f64) -> Vec<ComplexValue> {
    let mu = moebius_table(n_max);
    let mut out = Vec::with_capacity(n_max);
    let mut sum = c(0.0, 0.0);
    for (k, &m) in mu.iter().enumerate().skip(1) {
        if m != 0 {
            sum += n_pow_minus_z(k, e) * m as f64;
        }
        out.push(sum);
    }
    out
}

/// log|zeta'(-2n)| and its sign, from
/// zeta'(-2n) = (-1)^n zeta(2n+1) (2n)! / (2^{2n+1} pi^{2n}).
pub fn zeta_prime_negative_even_log(n: u32) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::Domain("trivial zeros start at n = 1".into()));
    }
    let m = 2.0 * n as f64;
    let z = zeta(c(m + 1.0, 0.0))?.re;
    let lf = log_gamma(c(m + 1.0, 0.0))?.re;
    let log_abs = z.ln() + lf - (m + 1.0) * std::f64::consts::LN_2 - m * PI.ln();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok((log_abs, sign))
}

/// zeta'(-2n) in closed form.
pub fn zeta_prime_negative_even(n: u32) -> Result<f64> {
    let (l, s) = zeta_prime_negative_even_log(n)?;
    Ok(s * l.exp())
}

/// Residue x^{-2n-z} / (-(2n+z) zeta'(-2n)) at the trivial zero -2n.
pub fn trivial_zero_term(x: f64, e: f64, n: u32) -> Result<ComplexValue> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("trivial zero term needs x > 1, got {x}")));
    }
    let (log_abs, sign) = zeta_prime_negative_even_log(n)?;
    let m = 2.0 * n as f64;
    let lx = x.ln();
    let num = ComplexValue::from_polar((-(m + 0.5) * lx - log_abs).exp(), -e * lx);
    Ok(num / (-(c(m + 0.5, e)) * sign))
}

/// Truncation of the Perron residue sums.
#[derive(Debug, Clone, Copy)]
pub struct ResidueExpansionConfig<'a> {
    pub zero_db: &'a ZeroDatabase,
    pub n_nontrivial: usize,
    pub n_trivial: u32,
    pub at_zero_mode: bool,
}

impl<'a> ResidueExpansionConfig<'a> {
    pub fn new(zero_db: &'a ZeroDatabase, n_nontrivial: usize, n_trivial: u32, at_zero_mode: bool) -> Result<Self> {
        if n_nontrivial > zero_db.len() {
            return Err(Error::Domain(format!(
                "{n_nontrivial} nontrivial zeros requested, database holds {}",
                zero_db.len()
            )));
        }
        Ok(ResidueExpansionConfig { zero_db, n_nontrivial, n_trivial, at_zero_mode })
    }

    fn zeros(&self) -> &'a [ZeroRecord] {
        &self.zero_db.records[..self.n_nontrivial]
    }
}

/// Tolerance for matching E to a database ordinate in at-zero mode.
pub const AT_ZERO_TOL: f64 = 1e-6;

/// Perron expansion of M_z(x): the residue at s = z plus conjugate pairs of
/// nontrivial zeros (ascending |t|) and the first trivial zeros.
pub fn m_z_perron(x: f64, e: f64, cfg: &ResidueExpansionConfig) -> Result<ComplexValue> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("Perron expansion needs x > 1, got {x}")));
    }
    let z = c(0.5, e);
    let lx = x.ln();
    let mut skip = None;
    let mut sum = if cfg.at_zero_mode {
        let rec = cfg
            .zero_db
            .find_near(e, AT_ZERO_TOL)
            .ok_or_else(|| Error::NotAZero(e, z_function_parts(e).0.abs()))?;
        skip = Some(rec.index);
        let zp = zeta_prime(z)?;
        if zp.norm() < 1e-10 {
            return Err(Error::NoSimpleZero(e));
        }
        lx / zp - zeta_second(z)? / (2.0 * zp * zp)
    } else {
        let zz = zeta(z)?;
        if zz.norm() < 1e-8 {
            return Err(Error::OnZeroAmbiguity(e));
        }
        1.0 / zz
    };
    for rec in cfg.zeros() {
        let zp = rec.zeta_prime_at_rho();
        let lower_gap = c(0.0, -(rec.t + e));
        sum += ComplexValue::from_polar(1.0, -(rec.t + e) * lx) / (lower_gap * zp.conj());
        if Some(rec.index) != skip {
            let upper_gap = c(0.0, rec.t - e);
            sum += ComplexValue::from_polar(1.0, (rec.t - e) * lx) / (upper_gap * zp);
        }
    }
    for n in 1..=cfg.n_trivial {
        sum += trivial_zero_term(x, e, n)?;
    }
    Ok(sum)
}

/// Real value of a residue expansion and the imaginary part left over.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueValue {
    pub value: f64,
    pub imaginary_residue: f64,
}

/// Perron expansion of M(x): 1/zeta(0) + sum x^rho/(rho zeta'(rho)) + trivial terms.
pub fn mertens_residue(x: f64, cfg: &ResidueExpansionConfig) -> Result<ResidueValue> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("Mertens expansion needs x > 1, got {x}")));
    }
    let lx = x.ln();
    let mut sum = 1.0 / zeta(c(0.0, 0.0))?;
    for rec in cfg.zeros() {
        let rho = rec.rho();
        let zp = rec.zeta_prime_at_rho();
        let xr = ComplexValue::from_polar(x.sqrt(), rec.t * lx);
        sum += xr / (rho * zp) + xr.conj() / (rho.conj() * zp.conj());
    }
    for n in 1..=cfg.n_trivial {
        let (log_abs, sign) = zeta_prime_negative_even_log(n)?;
        let m = 2.0 * n as f64;
        sum += (-m * lx - log_abs).exp() / (-m * sign);
    }
    Ok(ResidueValue { value: sum.re, imaginary_residue: sum.im })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthClass {
    BoundedLike,
    LogGrowthLike,
    PowerGrowthLike,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub bin_centers: Vec<f64>,
    pub bin_means: Vec<f64>,
    /// exponent p of mean |M_z| ~ n^p
    pub power_exponent: f64,
    pub power_r2: f64,
    /// slope of mean |M_z| against log n
    pub log_slope: f64,
    pub log_intercept: f64,
    pub log_r2: f64,
    pub mean_abs: f64,
    pub classification: GrowthClass,
}

/// Exponent above which growth is called power-like.
pub const POWER_THRESHOLD: f64 = 0.18;
/// Log-slope above which growth is called logarithmic.
pub const LOG_SLOPE_THRESHOLD: f64 = 0.3;
const GROWTH_BINS: usize = 30;

fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (slope, my - slope * mx, r2)
}

/// Fits binned means of |M_z(n)| sampled at `ns`; bins are geometric.
pub fn fit_growth(ns: &[f64], magnitudes: &[f64]) -> Result<GrowthReport> {
    if ns.len() != magnitudes.len() || ns.len() < 2 * GROWTH_BINS {
        return Err(Error::Domain("growth fit needs matching samples, at least 60".into()));
    }
    let (lo, hi) = (ns[0].ln(), ns[ns.len() - 1].ln());
    let width = (hi - lo) / GROWTH_BINS as f64;
    let mut sums = vec![(0.0, 0.0, 0usize); GROWTH_BINS];
    for (&n, &m) in ns.iter().zip(magnitudes) {
        let b = (((n.ln() - lo) / width) as usize).min(GROWTH_BINS - 1);
        sums[b].0 += n.ln();
        sums[b].1 += m;
        sums[b].2 += 1;
    }
    let (mut centers, mut means) = (Vec::new(), Vec::new());
    for (sl, sm, k) in sums {
        if k > 0 {
            centers.push((sl / k as f64).exp());
            means.push(sm / k as f64);
        }
    }
    let logs: Vec<f64> = centers.iter().map(|n| n.ln()).collect();
    let log_means: Vec<f64> = means.iter().map(|m| m.max(1e-300).ln()).collect();
    let (power_exponent, _, power_r2) = linear_fit(&logs, &log_means);
    let (log_slope, log_intercept, log_r2) = linear_fit(&logs, &means);
    let mean_abs = magnitudes.iter().sum::<f64>() / magnitudes.len() as f64;
    let classification = if power_exponent > POWER_THRESHOLD {
        GrowthClass::PowerGrowthLike
    } else if log_slope > LOG_SLOPE_THRESHOLD && log_r2 > 0.5 {
        GrowthClass::LogGrowthLike
    } else {
        GrowthClass::BoundedLike
    };
    Ok(GrowthReport {
        bin_centers: centers,
        bin_means: means,
        power_exponent,
        power_r2,
        log_slope,
        log_intercept,
        log_r2,
        mean_abs,
        classification,
    })
}

/// Growth fit of |M_z(n)| over n in [n_lo, n_hi].
pub fn growth_fit(e: f64, n_range: (usize, usize)) -> Result<GrowthReport> {
    let (n_lo, n_hi) = n_range;
    if !(1 <= n_lo && n_lo < n_hi && n_hi as u64 <= SIEVE_BUDGET) {
        return Err(Error::Domain(format!("bad growth range {n_range:?}")));
    }
    let partials = m_z_partials(n_hi, e);
    let ns: Vec<f64> = (n_lo..=n_hi).map(|n| n as f64).collect();
    let mags: Vec<f64> = partials[n_lo - 1..].iter().map(|v| v.norm()).collect();
    fit_growth(&ns, &mags)
}
