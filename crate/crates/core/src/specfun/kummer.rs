use num_bigint::BigInt;
use num_traits::{Float, ToPrimitive, Zero};

use super::{c, ComplexValue};
use crate::{Error, Result};

/// Largest |z| accepted by [`kummer_m`].
pub const KUMMER_MAX_ABS_Z: f64 = 200.0;

const MAX_TERMS: usize = 5000;

/// Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).
///
/// Power series with term-ratio stopping. For Re z < 0 the Kummer transform
/// M(a,b,z) = e^z M(b-a,b,-z) is used. When the terms cancel too much for
/// double precision the series is resummed in wide fixed point.
pub fn kummer_m(a: ComplexValue, b: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    for (v, n) in [(a, "a"), (b, "b"), (z, "z")] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Domain(format!("kummer_m: {n} is not finite")));
        }
    }
    if b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round() {
        return Err(Error::Pole(format!("kummer_m: b = {} is a non-positive integer", b.re)));
    }
    if z == c(0.0, 0.0) {
        return Ok(c(1.0, 0.0));
    }
    if z.norm() > KUMMER_MAX_ABS_Z {
        return Err(Error::ToleranceNotMet(format!(
            "kummer_m: |z| = {} beyond series budget {KUMMER_MAX_ABS_Z}",
            z.norm()
        )));
    }
    if z.re < 0.0 {
        let v = series(b - a, b, -z)?;
        return super::finite(z.exp() * v, "kummer_m");
    }
    super::finite(series(a, b, z)?, "kummer_m")
}

fn series(a: ComplexValue, b: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut peak = 1.0f64;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        peak = peak.max(term.norm());
        k += 1;
        if term.norm() <= 1e-17 * sum.norm() && ratio.norm() < 0.5 || term == c(0.0, 0.0) {
            break;
        }
        if k > MAX_TERMS {
            return Err(Error::ToleranceNotMet("kummer_m: series did not settle".into()));
        }
    }
    let rounding = peak * f64::EPSILON * (k as f64).sqrt();
    if rounding <= 1e-14 * sum.norm() {
        return Ok(sum);
    }
    Ok(series_wide(a, b, z, peak, k))
}

struct Fixed {
    frac: i64,
}

impl Fixed {
    fn from_f64(&self, x: f64) -> BigInt {
        if x == 0.0 {
            return BigInt::zero();
        }
        let (mant, exp, sign) = x.integer_decode();
        let m = BigInt::from(mant) * sign as i64;
        let shift = exp as i64 + self.frac;
        if shift >= 0 {
            m << shift as usize
        } else {
            m >> (-shift) as usize
        }
    }

    fn to_f64(&self, v: &BigInt) -> f64 {
        let bits = v.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (v >> drop as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powi((drop - self.frac) as i32)
    }

    fn mul(&self, x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let re = (&x.0 * &y.0 - &x.1 * &y.1) >> self.frac as usize;
        let im = (&x.0 * &y.1 + &x.1 * &y.0) >> self.frac as usize;
        (re, im)
    }
}

// Series in fixed point with enough fraction bits to absorb the cancellation.
fn series_wide(a: ComplexValue, b: ComplexValue, z: ComplexValue, peak: f64, n_terms: usize) -> ComplexValue {
    let frac = peak.log2().ceil().max(0.0) as i64 + 128;
    let fx = Fixed { frac };
    let one = BigInt::from(1) << frac as usize;
    let zf = (fx.from_f64(z.re), fx.from_f64(z.im));
    let (are, aim) = (fx.from_f64(a.re), fx.from_f64(a.im));
    let (bre, bim) = (fx.from_f64(b.re), fx.from_f64(b.im));
    let mut term = (one.clone(), BigInt::zero());
    let mut sum = term.clone();
    let mut k = 0usize;
    loop {
        let kf = BigInt::from(k) << frac as usize;
        let ak = (&are + &kf, aim.clone());
        term = fx.mul(&fx.mul(&term, &ak), &zf);
        // divide by (b + k)(k + 1)
        let k1 = BigInt::from(k + 1);
        let d = ((&bre + &kf) * &k1, &bim * &k1);
        let num = fx.mul(&term, &(d.0.clone(), -d.1.clone()));
        let den = (&d.0 * &d.0 + &d.1 * &d.1) >> frac as usize;
        term = ((num.0 << frac as usize) / &den, (num.1 << frac as usize) / &den);
        sum = (&sum.0 + &term.0, &sum.1 + &term.1);
        k += 1;
        if k >= n_terms {
            let t = c(fx.to_f64(&term.0), fx.to_f64(&term.1));
            let s = c(fx.to_f64(&sum.0), fx.to_f64(&sum.1));
            if t.norm() <= 1e-18 * s.norm() || t.norm() < 1e-300 || k > MAX_TERMS {
                return s;
            }
        }
    }
}
