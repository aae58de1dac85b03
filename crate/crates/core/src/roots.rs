//! Sign-change scanning and Brent refinement for real functions of one variable.

use rayon::prelude::*;

use crate::{Error, Result};

/// Brent's method on a bracket with f(a) f(b) <= 0.
pub fn brent<F>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!("brent: [{a}, {b}] is not a bracket")));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::ToleranceNotMet("brent: no convergence in 200 iterations".into()))
}

/// Values of `f` on the grid a, a + step, ..., b (b always included).
pub fn sample<F>(f: &F, a: f64, b: f64, step: f64) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    (0..=n)
        .into_par_iter()
        .map(|k| {
            let t = if k == n { b } else { a + k as f64 * step };
            f(t).map(|v| (t, v))
        })
        .collect()
}

/// All sign changes of `f` on a grid of the given step, refined to `xtol`.
pub fn scan_roots<F>(f: F, a: f64, b: f64, step: f64, xtol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let grid = sample(&f, a, b, step)?;
    let brackets: Vec<(f64, f64)> = grid
        .windows(2)
        .filter(|w| w[0].1 != 0.0 && w[0].1.signum() != w[1].1.signum())
        .map(|w| (w[0].0, w[1].0))
        .collect();
    brackets
        .into_par_iter()
        .map(|(lo, hi)| brent(&f, lo, hi, xtol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_roots() {
        let r = scan_roots(|x: f64| Ok(x.cos()), 0.0, 10.0, 0.1, 1e-12).unwrap();
        assert_eq!(r.len(), 3);
        for (k, x) in r.iter().enumerate() {
            let want = std::f64::consts::PI * (k as f64 + 0.5);
            assert!((x - want).abs() < 1e-11);
        }
    }

    #[test]
    fn rejects_non_bracket() {
        assert!(brent(|x: f64| Ok(x * x + 1.0), -1.0, 1.0, 1e-9).is_err());
    }
}
