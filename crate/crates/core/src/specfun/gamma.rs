use std::f64::consts::{LN_2, PI};

use super::{c, ComplexValue};
use crate::{Error, Result};

// Godfrey's coefficients, g = 607/128.
const G: f64 = 607.0 / 128.0;
const COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

fn lanczos(z: ComplexValue) -> ComplexValue {
    let x = z - 1.0;
    let mut a = c(COEF[0], 0.0);
    for (k, &ck) in COEF.iter().enumerate().skip(1) {
        a += ck / (x + k as f64);
    }
    let t = x + G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

/// log sin(pi z), continued analytically off the real axis.
///
/// For real z the branch matches `ln|sin(pi z)| + i pi k` with k picked so that
/// the imaginary part is continuous from the upper half plane.
pub fn log_sin_pi(z: ComplexValue) -> ComplexValue {
    if z.im < 0.0 {
        return log_sin_pi(z.conj()).conj();
    }
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
    let w = (c(0.0, 2.0 * PI) * z).exp();
    c(0.0, -PI) * z + c(-LN_2, PI / 2.0) + (c(1.0, 0.0) - w).ln()
}

/// Analytic log-gamma (the branch continuous off the negative real axis).
///
/// Agrees with the principal log of Gamma up to a multiple of 2 pi i, and
/// satisfies log_gamma(z + 1) = log_gamma(z) + log z exactly in branch.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(format!("Gamma has a pole at {}", z.re)));
    }
    if z.im < 0.0 {
        return log_gamma(z.conj()).map(|v| v.conj());
    }
    let v = if z.re >= 0.5 {
        lanczos(z)
    } else {
        // on the real axis this is the limit from the upper half plane
        PI.ln() - log_sin_pi(z) - lanczos(c(1.0, 0.0) - z)
    };
    if z.im == 0.0 {
        return Ok(c(v.re, (v.im / PI).round() * PI));
    }
    Ok(v)
}
