//! Complex special functions: log-gamma, K with complex order, Kummer M.

mod bessel;
mod gamma;
mod kummer;

pub use bessel::{bessel_k_complex_order, QuadratureSpec};
pub use gamma::{log_gamma, log_sin_pi};
pub use kummer::{kummer_m, KUMMER_MAX_ABS_Z};

/// Double-precision complex number used throughout the crate.
pub type ComplexValue = num_complex::Complex64;

pub(crate) fn c(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

pub(crate) fn finite(z: ComplexValue, what: &str) -> crate::Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(crate::Error::Domain(format!("{what} overflowed")))
    }
}
