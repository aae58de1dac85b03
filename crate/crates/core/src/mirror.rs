//! Moebius-mirror model of a massless Dirac fermion: transfer matrices,
//! exact and first-order Magnus propagation of the interval amplitudes, the
//! phase Phi_z, vartheta tuning, the normalizability diagnostic and the
//! interferometer layout.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::mertens::{m_z_partials, moebius_table};
use crate::specfun::{c, ComplexValue};
use crate::zeta::{theta_rs, z_function_parts, z_prime, zeta};
use crate::{Error, Result};

/// 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferMatrix(pub [[ComplexValue; 2]; 2]);

impl TransferMatrix {
    pub fn identity() -> Self {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        TransferMatrix([[o, z], [z, o]])
    }

    pub fn det(&self) -> ComplexValue {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Inverse of a unit-determinant matrix: [[d, -b], [-c, a]].
    pub fn inverse_unimodular(&self) -> Self {
        let m = &self.0;
        TransferMatrix([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        TransferMatrix([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        let mut r = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        TransferMatrix(r)
    }

    pub fn apply(&self, v: [ComplexValue; 2]) -> [ComplexValue; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    pub fn scale(&self, s: ComplexValue) -> Self {
        let m = &self.0;
        TransferMatrix([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// Largest entrywise modulus of self - o.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        d
    }

    /// exp of an off-diagonal matrix [[0, a], [b, 0]].
    pub fn exp_off_diagonal(a: ComplexValue, b: ComplexValue) -> Self {
        let w = (a * b).sqrt();
        if w.norm() == 0.0 {
            return TransferMatrix([[c(1.0, 0.0), a], [b, c(1.0, 0.0)]]);
        }
        let (ch, sh) = (w.cosh(), w.sinh());
        TransferMatrix([[ch, a / w * sh], [b / w * sh, ch]])
    }
}

fn check_rho(rho: ComplexValue) -> Result<f64> {
    let m2 = rho.norm_sqr();
    if (m2 - 1.0).abs() < 1e-15 || !m2.is_finite() {
        return Err(Error::UnimodularReflection);
    }
    Ok(m2)
}

/// Transfer matrix of a mirror with reflection amplitude rho at position ell.
pub fn transfer_matrix(rho: ComplexValue, ell: f64, e: f64) -> Result<TransferMatrix> {
    let m2 = check_rho(rho)?;
    let ph = ComplexValue::from_polar(1.0, -2.0 * e * ell.ln());
    let k = 1.0 / (1.0 - m2);
    let d = c((1.0 + m2) * k, 0.0);
    Ok(TransferMatrix([[d, rho * ph * (2.0 * k)], [rho.conj() * ph.conj() * (2.0 * k), d]]))
}

/// Scattering matrix at an interior mirror.
pub fn scattering_matrix(rho: ComplexValue) -> Result<TransferMatrix> {
    let m2 = check_rho(rho)?;
    let k = 1.0 / (1.0 + m2);
    let d = c((1.0 - m2) * k, 0.0);
    let i2 = c(0.0, -2.0 * k);
    Ok(TransferMatrix([[d, i2 * rho], [i2 * rho.conj(), d]]))
}

/// Matching matrix L(rho) of the boundary conditions.
pub fn l_matrix(rho: ComplexValue) -> Result<TransferMatrix> {
    let m2 = check_rho(rho)?;
    let k = 1.0 / (1.0 - m2);
    let d = c((1.0 + m2) * k, 0.0);
    Ok(TransferMatrix([[d, c(0.0, 2.0 * k) * rho], [c(0.0, -2.0 * k) * rho.conj(), d]]))
}

/// Hermitian generator tau with T = exp(tau).
pub fn tau_generator(r: ComplexValue, ell: f64, e: f64) -> TransferMatrix {
    let ph = ComplexValue::from_polar(1.0, -2.0 * e * ell.ln());
    let z = c(0.0, 0.0);
    TransferMatrix([[z, r * ph], [r.conj() * ph.conj(), z]])
}

/// rho = (r/|r|) tanh(|r|/2).
pub fn rho_from_generator(r: ComplexValue) -> ComplexValue {
    let m = r.norm();
    if m == 0.0 {
        return c(0.0, 0.0);
    }
    r / m * (0.5 * m).tanh()
}

/// r = (rho/|rho|) log((1+|rho|)/(1-|rho|)), for |rho| < 1.
pub fn generator_from_rho(rho: ComplexValue) -> Result<ComplexValue> {
    let m = rho.norm();
    if m >= 1.0 {
        return Err(Error::UnimodularReflection);
    }
    if m == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    Ok(rho / m * (2.0 * m.atanh()))
}

/// Mirror positions l_n, generators r_n (already scaled by epsilon) and the
/// derived reflection amplitudes, indexed by n = 1..=len. Mirror 1 is the
/// boundary with rho_1 = -e^{-i vartheta}.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorArray {
    positions: Vec<f64>,
    generators: Vec<ComplexValue>,
    reflections: Vec<ComplexValue>,
    boundary_phase: f64,
    epsilon: f64,
}

impl MirrorArray {
    /// Array from bare generators r_n for n >= 2; the scale epsilon multiplies them.
    pub fn from_generators(
        positions: Vec<f64>,
        generators: Vec<ComplexValue>,
        boundary_phase: f64,
        epsilon: f64,
    ) -> Result<Self> {
        if positions.len() < 2 || generators.len() + 1 != positions.len() {
            return Err(Error::Domain("need positions for n = 1..N and generators for n = 2..N".into()));
        }
        if positions[0] != 1.0 {
            return Err(Error::Domain("the boundary mirror must sit at l_1 = 1".into()));
        }
        if positions.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("mirror positions must increase strictly".into()));
        }
        if !(0.0..2.0 * PI).contains(&boundary_phase) {
            return Err(Error::Domain(format!("vartheta {boundary_phase} outside [0, 2pi)")));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::Domain(format!("epsilon must be >= 0, got {epsilon}")));
        }
        let mut gens = Vec::with_capacity(positions.len());
        let mut refl = Vec::with_capacity(positions.len());
        gens.push(c(0.0, 0.0));
        refl.push(-ComplexValue::from_polar(1.0, -boundary_phase));
        for g in generators {
            let r = g * epsilon;
            let rho = rho_from_generator(r);
            if rho.norm() >= 1.0 {
                return Err(Error::UnimodularReflection);
            }
            gens.push(r);
            refl.push(rho);
        }
        Ok(MirrorArray { positions, generators: gens, reflections: refl, boundary_phase, epsilon })
    }

    /// Array from bare reflection amplitudes rho_n (n >= 2), |rho_n| < 1.
    pub fn from_reflections(
        positions: Vec<f64>,
        reflections: Vec<ComplexValue>,
        boundary_phase: f64,
        epsilon: f64,
    ) -> Result<Self> {
        let gens = reflections.into_iter().map(generator_from_rho).collect::<Result<Vec<_>>>()?;
        Self::from_generators(positions, gens, boundary_phase, epsilon)
    }

    pub fn with_boundary_phase(mut self, vartheta: f64) -> Result<Self> {
        if !(0.0..2.0 * PI).contains(&vartheta) {
            return Err(Error::Domain(format!("vartheta {vartheta} outside [0, 2pi)")));
        }
        self.boundary_phase = vartheta;
        self.reflections[0] = -ComplexValue::from_polar(1.0, -vartheta);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, n: usize) -> f64 {
        self.positions[n - 1]
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// Scaled generator r_n (zero for n = 1).
    pub fn generator(&self, n: usize) -> ComplexValue {
        self.generators[n - 1]
    }

    pub fn reflection(&self, n: usize) -> ComplexValue {
        self.reflections[n - 1]
    }

    pub fn boundary_phase(&self) -> f64 {
        self.boundary_phase
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// T_n for n >= 2, in the exponential form.
    pub fn transfer(&self, n: usize, e: f64) -> TransferMatrix {
        let t = tau_generator(self.generator(n), self.position(n), e);
        TransferMatrix::exp_off_diagonal(t.0[0][1], t.0[1][0])
    }
}

/// Mirrors at l_n = sqrt(n) with generators epsilon mu(n)/sqrt(n); square-full
/// n keep a transparent placeholder.
pub fn moebius_mirrors(n_max: usize, epsilon: f64) -> Result<MirrorArray> {
    if n_max < 2 {
        return Err(Error::Domain("a mirror array needs n_max >= 2".into()));
    }
    let mu = moebius_table(n_max);
    let positions = (1..=n_max).map(|n| (n as f64).sqrt()).collect();
    let gens = (2..=n_max).map(|n| c(mu[n] as f64 / (n as f64).sqrt(), 0.0)).collect();
    MirrorArray::from_generators(positions, gens, 0.0, epsilon)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSequence {
    /// A_n = (A_-, A_+) for n = 1..=N
    pub amplitudes: Vec<[ComplexValue; 2]>,
    /// sum_{k<=n} log(l_{k+1}/l_k) <A_k|A_k>, for the n whose l_{n+1} is known
    pub norm_partials: Vec<f64>,
    /// sum_{k<=n} <A_k|A_k>/k
    pub compact_norm_partials: Vec<f64>,
    /// entries where the Magnus phase is undefined (M = 0)
    pub zero_modulus: Vec<usize>,
}

fn a1(vartheta: f64) -> [ComplexValue; 2] {
    [c(1.0, 0.0), ComplexValue::from_polar(1.0, vartheta)]
}

fn with_norms(m: &MirrorArray, amplitudes: Vec<[ComplexValue; 2]>, zero_modulus: Vec<usize>) -> AmplitudeSequence {
    let mut norm_partials = Vec::new();
    let mut compact = Vec::with_capacity(amplitudes.len());
    let (mut s, mut sc) = (0.0, 0.0);
    for (k, a) in amplitudes.iter().enumerate() {
        let w = a[0].norm_sqr() + a[1].norm_sqr();
        sc += w / (k + 1) as f64;
        compact.push(sc);
        if k + 1 < m.len() {
            s += (m.positions[k + 1] / m.positions[k]).ln() * w;
            norm_partials.push(s);
        }
    }
    AmplitudeSequence { amplitudes, norm_partials, compact_norm_partials: compact, zero_modulus }
}

fn check_n(m: &MirrorArray, n: usize) -> Result<()> {
    if n == 0 || n > m.len() {
        return Err(Error::Domain(format!("N = {n} outside 1..={}", m.len())));
    }
    Ok(())
}

/// A_n = T_n^{-1} ... T_2^{-1} A_1(vartheta), applied mirror by mirror.
pub fn propagate_exact(m: &MirrorArray, e: f64, n: usize) -> Result<AmplitudeSequence> {
    check_n(m, n)?;
    let mut a = a1(m.boundary_phase);
    let mut out = Vec::with_capacity(n);
    out.push(a);
    for k in 2..=n {
        if m.generator(k).norm() != 0.0 {
            a = m.transfer(k, e).inverse_unimodular().apply(a);
        }
        out.push(a);
    }
    Ok(with_norms(m, out, Vec::new()))
}

/// Which partial sum enters the first-order Magnus exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MagnusConvention {
    /// sum_{m=2}^n r_m l_m^{-2iE}: the genuine first Magnus term
    Strict,
    /// the same sum plus epsilon, i.e. epsilon M_z(n) for the Moebius array
    WithUnitTerm,
}

/// Closed form of exp([[0, -a], [-a*, 0]]) A_1 written with |a| and the
/// phase Phi, a = |a| e^{-i Phi}.
pub fn magnus_amplitudes(abs_a: f64, phi: f64, vartheta: f64) -> [ComplexValue; 2] {
    let d = vartheta - phi;
    let (s, co) = (0.5 * d).sin_cos();
    let (em, ep) = ((-abs_a).exp(), abs_a.exp());
    let minus = ComplexValue::from_polar(1.0, 0.5 * d) * c(em * co, -ep * s);
    let plus = ComplexValue::from_polar(1.0, 0.5 * (vartheta + phi)) * c(em * co, ep * s);
    [minus, plus]
}

/// First-order Magnus amplitudes.
pub fn propagate_magnus(m: &MirrorArray, e: f64, n: usize, conv: MagnusConvention) -> Result<AmplitudeSequence> {
    check_n(m, n)?;
    let mut sum = match conv {
        MagnusConvention::Strict => c(0.0, 0.0),
        MagnusConvention::WithUnitTerm => c(m.epsilon, 0.0),
    };
    let mut out = Vec::with_capacity(n);
    let mut zero = Vec::new();
    for k in 1..=n {
        if k >= 2 {
            sum += m.generator(k) * ComplexValue::from_polar(1.0, -2.0 * e * m.position(k).ln());
        }
        if sum.norm() == 0.0 {
            zero.push(k);
            out.push(a1(m.boundary_phase));
        } else {
            out.push(magnus_amplitudes(sum.norm(), -sum.arg(), m.boundary_phase));
        }
    }
    Ok(with_norms(m, out, zero))
}

/// (chi_-, chi_+) at rho inside an interval with amplitudes A.
pub fn wavefunction(a: [ComplexValue; 2], rho: f64, e: f64) -> [ComplexValue; 2] {
    let lr = rho.ln();
    let minus = ComplexValue::from_polar(1.0, FRAC_PI_4) * a[0] / ComplexValue::from_polar((0.5 * lr).exp(), -e * lr);
    let plus = ComplexValue::from_polar(1.0, -FRAC_PI_4) * a[1] / ComplexValue::from_polar((0.5 * lr).exp(), e * lr);
    [minus, plus]
}

fn wrap(x: f64) -> f64 {
    let r = x - 2.0 * PI * (x / (2.0 * PI)).round();
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// Phi_z(k) = -arg M_z(k) for k = 1..=n, continued by minimal jumps.
pub fn phase_sequence(partials: &[ComplexValue]) -> Vec<f64> {
    let mut out = Vec::with_capacity(partials.len());
    let mut prev = 0.0;
    for v in partials {
        if v.norm() != 0.0 {
            prev += wrap(-v.arg() - prev);
        }
        out.push(prev);
    }
    out
}

/// Continuity-tracked Phi_z(n).
pub fn phase_phi_z(n: usize, e: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let p = m_z_partials(n, e);
    if p[n - 1].norm() == 0.0 {
        return Err(Error::Domain(format!("M_z({n}) vanishes; phase undefined")));
    }
    Ok(*phase_sequence(&p).last().expect("n >= 1"))
}

/// Principal value in (-pi, pi] of an angle.
pub fn principal_angle(x: f64) -> f64 {
    wrap(x)
}

fn check_zero(e: f64) -> Result<()> {
    let z = z_function_parts(e).0;
    if !(z.abs() <= 1e-6) {
        return Err(Error::NotAZero(e, z.abs()));
    }
    Ok(())
}

/// -(theta + pi/2 sign z') reduced to [0, 2 pi).
pub fn tuned_theta_from(theta: f64, z_prime: f64) -> f64 {
    (-(theta + FRAC_PI_2 * z_prime.signum())).rem_euclid(2.0 * PI)
}

/// Boundary phase that cancels the growing component at a zero ordinate E.
pub fn tuned_theta(e: f64) -> Result<f64> {
    check_zero(e)?;
    Ok(tuned_theta_from(theta_rs(e), z_prime(e)))
}

/// Predicted compact norm 2 zeta(1 + 2 epsilon/|Z'(E)|) for the tuned state.
pub fn norm_limit(e: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    check_zero(e)?;
    Ok(2.0 * zeta(c(1.0 + 2.0 * epsilon / z_prime(e).abs(), 0.0))?.re)
}

/// dE_n/d epsilon at 0: 2 e^{i(vartheta* + theta(E_n))}/Z'(E_n).
pub fn zero_sensitivity(e: f64) -> Result<ComplexValue> {
    let vt = tuned_theta(e)?;
    Ok(ComplexValue::from_polar(2.0, vt + theta_rs(e)) / z_prime(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormClass {
    Tuned,
    Detuned,
    ScatteringLike,
}

/// Calibration constants used by the diagnostic, echoed into the report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticCalibration {
    pub cos_floor: f64,
    pub cos_window_start: usize,
    pub bounded_ratio: f64,
    pub divergent_ratio: f64,
}

pub const CALIBRATION: DiagnosticCalibration =
    DiagnosticCalibration { cos_floor: 0.9, cos_window_start: 1000, bounded_ratio: 0.6, divergent_ratio: 1.6 };

pub const DIAGNOSTIC_MAX_N: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizabilityReport {
    pub energy: f64,
    pub epsilon: f64,
    pub vartheta: f64,
    pub n_max: usize,
    pub checkpoints: Vec<usize>,
    /// compact-norm partial sums at the checkpoints
    pub partials: Vec<f64>,
    /// 2 H_n, the scattering reference
    pub harmonic_reference: Vec<f64>,
    /// weight 1 - cos(vartheta - Phi_z(n)) of the growing component
    pub divergent_weight: Vec<f64>,
    /// min of cos(vartheta - Phi_z(n)) for n in [cos_window_start, N]
    pub cos_running_min: Option<f64>,
    /// slope of 2 epsilon |M_z(n)| against log n
    pub growth_exponent: f64,
    pub max_growth_factor: f64,
    pub min_decay_factor: f64,
    pub ratio_to_harmonic: f64,
    /// 2 zeta(1 + 2 eps/|Z'|) when E is a zero ordinate
    pub tuned_norm_prediction: Option<f64>,
    pub classification: NormClass,
    pub calibration: DiagnosticCalibration,
}

/// Compact norm partials of the first-order Magnus state at energy E with
/// boundary phase vartheta, and their classification.
pub fn normalizability_diagnostic(e: f64, epsilon: f64, n: usize, vartheta: f64) -> NormalizabilityReport {
    let n = n.clamp(2, DIAGNOSTIC_MAX_N);
    let partials_m = m_z_partials(n, e);
    let phases = phase_sequence(&partials_m);
    let mut checkpoints: Vec<usize> = std::iter::successors(Some(10usize), |k| Some(k * 10)).take_while(|&k| k < n).collect();
    checkpoints.push(n);
    let (mut sum, mut harm) = (0.0, 0.0);
    let mut cos_min: Option<f64> = None;
    let (mut partials, mut refs, mut weights) = (Vec::new(), Vec::new(), Vec::new());
    let (mut gmax, mut dmin): (f64, f64) = (1.0, 1.0);
    let (mut sx, mut sy, mut sxx, mut sxy, mut cnt) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut next = 0;
    for k in 1..=n {
        let a = epsilon * partials_m[k - 1].norm();
        let cs = (vartheta - phases[k - 1]).cos();
        let (grow, decay) = ((2.0 * a).exp(), (-2.0 * a).exp());
        gmax = gmax.max(grow);
        dmin = dmin.min(decay);
        sum += (decay * (1.0 + cs) + grow * (1.0 - cs)) / k as f64;
        harm += 2.0 / k as f64;
        if k >= CALIBRATION.cos_window_start {
            cos_min = Some(cos_min.map_or(cs, |m: f64| m.min(cs)));
        }
        if k >= 10 {
            let x = (k as f64).ln();
            sx += x;
            sy += 2.0 * a;
            sxx += x * x;
            sxy += x * 2.0 * a;
            cnt += 1.0;
        }
        if k == checkpoints[next] {
            partials.push(sum);
            refs.push(harm);
            weights.push(1.0 - cs);
            next += 1;
        }
    }
    let growth_exponent = if cnt > 1.0 { (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) } else { 0.0 };
    let ratio = sum / harm;
    let classification = if ratio < CALIBRATION.bounded_ratio {
        NormClass::Tuned
    } else if ratio > CALIBRATION.divergent_ratio {
        NormClass::Detuned
    } else {
        NormClass::ScatteringLike
    };
    let tuned_norm_prediction = if epsilon > 0.0 { norm_limit(e, epsilon).ok() } else { None };
    NormalizabilityReport {
        energy: e,
        epsilon,
        vartheta,
        n_max: n,
        checkpoints,
        partials,
        harmonic_reference: refs,
        divergent_weight: weights,
        cos_running_min: cos_min,
        growth_exponent,
        max_growth_factor: gmax,
        min_decay_factor: dmin,
        ratio_to_harmonic: ratio,
        tuned_norm_prediction,
        classification,
        calibration: CALIBRATION,
    }
}

/// A Dirichlet character given by its values on residues 0..q.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub values: Vec<ComplexValue>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl DirichletCharacter {
    /// Validates complete multiplicativity, chi(1) = 1, unit modulus on units
    /// and vanishing off them.
    pub fn new(modulus: u64, values: Vec<ComplexValue>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err(Error::BadCharacter(format!(
                "{} values given for modulus {modulus}",
                values.len()
            )));
        }
        let q = modulus as usize;
        let tol = 1e-12;
        if modulus == 1 {
            if (values[0] - 1.0).norm() > tol {
                return Err(Error::BadCharacter("the character mod 1 is identically 1".into()));
            }
            return Ok(DirichletCharacter { modulus, values });
        }
        if (values[1] - 1.0).norm() > tol {
            return Err(Error::BadCharacter("chi(1) must be 1".into()));
        }
        for (a, v) in values.iter().enumerate() {
            let unit = gcd(a as u64, modulus) == 1;
            if unit && (v.norm() - 1.0).abs() > tol {
                return Err(Error::BadCharacter(format!("|chi({a})| != 1")));
            }
            if !unit && v.norm() > tol {
                return Err(Error::BadCharacter(format!("chi({a}) must vanish, gcd > 1")));
            }
        }
        for a in 0..q {
            for b in a..q {
                if (values[a * b % q] - values[a] * values[b]).norm() > tol {
                    return Err(Error::BadCharacter(format!("chi({a} * {b}) != chi({a}) chi({b})")));
                }
            }
        }
        Ok(DirichletCharacter { modulus, values })
    }

    /// Real-valued table.
    pub fn from_real(modulus: u64, values: &[f64]) -> Result<Self> {
        Self::new(modulus, values.iter().map(|&v| c(v, 0.0)).collect())
    }

    /// The principal character mod q.
    pub fn principal(modulus: u64) -> Result<Self> {
        let values = (0..modulus).map(|a| c(if gcd(a, modulus) == 1 { 1.0 } else { 0.0 }, 0.0)).collect();
        Self::new(modulus, values)
    }

    pub fn value(&self, n: u64) -> ComplexValue {
        self.values[(n % self.modulus) as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferometerMirror {
    pub n: u64,
    pub position: f64,
    pub reflection_re: f64,
    pub reflection_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferometerLayout {
    pub boundary_phase: f64,
    pub mirrors: Vec<InterferometerMirror>,
}

/// Mirrors at d_n = log(n)/2 with r_n = mu(n) chi(n)/sqrt(n) for square-free
/// n >= 2 with chi(n) != 0; the boundary sits at x = 0.
pub fn interferometer_layout(n_max: u64, character: Option<&DirichletCharacter>) -> Result<InterferometerLayout> {
    if n_max < 2 {
        return Err(Error::Domain("n_max must be >= 2".into()));
    }
    let mu = moebius_table(n_max as usize);
    let mut mirrors = Vec::new();
    for n in 2..=n_max {
        let chi = character.map_or(c(1.0, 0.0), |ch| ch.value(n));
        if mu[n as usize] == 0 || chi.norm() == 0.0 {
            continue;
        }
        let r = chi * (mu[n as usize] as f64 / (n as f64).sqrt());
        mirrors.push(InterferometerMirror { n, position: 0.5 * (n as f64).ln(), reflection_re: r.re + 0.0, reflection_im: r.im + 0.0 });
    }
    Ok(InterferometerLayout { boundary_phase: 0.0, mirrors })
}

impl InterferometerLayout {
    pub fn with_boundary_phase(mut self, vartheta: f64) -> Self {
        self.boundary_phase = vartheta;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layout serializes")
    }
}
