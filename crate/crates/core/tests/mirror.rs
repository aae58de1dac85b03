use rzeta::mertens::m_z_partials;
use rzeta::mirror::*;
use rzeta::ComplexValue;

const T1: f64 = 14.134_725_141_734_694;

fn max_dev(a: &AmplitudeSequence, b: &AmplitudeSequence) -> f64 {
    a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| (x[0] - y[0]).norm().max((x[1] - y[1]).norm()))
        .fold(0.0, f64::max)
}

#[test]
fn golden_exact_sequence() {
    let text = include_str!("data/mirror_golden.txt");
    let s = propagate_exact(&moebius_mirrors(10_000, 0.1).unwrap(), T1, 10_000).unwrap();
    let mut checked = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let v: Vec<f64> = line.split_whitespace().map(|x| x.parse().unwrap()).collect();
        let a = s.amplitudes[v[0] as usize - 1];
        let got = [a[0].re, a[0].im, a[1].re, a[1].im, s.compact_norm_partials[v[0] as usize - 1]];
        for (g, w) in got.iter().zip(&v[1..]) {
            assert!((g - w).abs() < 1e-10 * w.abs().max(1.0), "n = {}: {g} vs {w}", v[0]);
        }
        checked += 1;
    }
    assert_eq!(checked, 9);
}

#[test]
fn first_order_amplitudes() {
    let eps = 1e-4;
    let n = 500;
    let vt = 0.8;
    let m = moebius_mirrors(n, eps).unwrap().with_boundary_phase(vt).unwrap();
    let s = propagate_exact(&m, 20.0, n).unwrap();
    let p = m_z_partials(n, 20.0);
    let e_vt = ComplexValue::from_polar(1.0, vt);
    for k in [2, 10, 100, 500] {
        let sum = (p[k - 1] - 1.0) * eps;
        let want = [1.0 - sum * e_vt, e_vt - sum.conj()];
        let a = s.amplitudes[k - 1];
        // second order: |sum|^2 is at most ~ 1e-7 here
        assert!((a[0] - want[0]).norm() < 20.0 * eps * eps, "k = {k}");
        assert!((a[1] - want[1]).norm() < 20.0 * eps * eps, "k = {k}");
    }
}

#[test]
fn magnus_error_is_second_order() {
    let n = 2000;
    let dev = |eps: f64| {
        let m = moebius_mirrors(n, eps).unwrap();
        max_dev(&propagate_exact(&m, T1, n).unwrap(), &propagate_magnus(&m, T1, n, MagnusConvention::Strict).unwrap())
    };
    let r = dev(1e-2) / dev(5e-3);
    assert!((r - 4.0).abs() < 0.8, "ratio {r}");
    // the unit term shifts the exponent by epsilon, a first-order change
    let m = moebius_mirrors(n, 1e-2).unwrap();
    let wide = max_dev(&propagate_exact(&m, T1, n).unwrap(), &propagate_magnus(&m, T1, n, MagnusConvention::WithUnitTerm).unwrap());
    assert!(wide > 10.0 * dev(1e-2));
}

#[test]
fn magnus_norm_matches_closed_form() {
    let (eps, vt, n) = (0.1, 1.3, 300);
    let m = moebius_mirrors(n, eps).unwrap().with_boundary_phase(vt).unwrap();
    let s = propagate_magnus(&m, 20.0, n, MagnusConvention::WithUnitTerm).unwrap();
    let p = m_z_partials(n, 20.0);
    let phi = phase_sequence(&p);
    let mut sum = 0.0;
    for k in 1..=n {
        let a = eps * p[k - 1].norm();
        let d = vt - phi[k - 1];
        sum += ((-2.0 * a).exp() * (1.0 + d.cos()) + (2.0 * a).exp() * (1.0 - d.cos())) / k as f64;
        assert!((s.compact_norm_partials[k - 1] - sum).abs() < 1e-10 * sum);
    }
}

#[test]
fn norm_partials_use_log_spacing() {
    let m = moebius_mirrors(20, 0.3).unwrap();
    let s = propagate_exact(&m, 17.0, 20).unwrap();
    assert_eq!(s.norm_partials.len(), 19);
    let mut acc = 0.0;
    for k in 1..20 {
        let a = s.amplitudes[k - 1];
        acc += 0.5 * (1.0 + 1.0 / k as f64).ln() * (a[0].norm_sqr() + a[1].norm_sqr());
        assert!((s.norm_partials[k - 1] - acc).abs() < 1e-13);
    }
}

#[test]
fn wavefunction_falls_like_inverse_sqrt() {
    let a = [ComplexValue::new(0.3, -0.2), ComplexValue::new(1.1, 0.4)];
    let c1 = wavefunction(a, 2.0, 14.0);
    let c2 = wavefunction(a, 8.0, 14.0);
    for k in 0..2 {
        assert!((c1[k].norm() / c2[k].norm() - 2.0).abs() < 1e-13);
        assert!((c1[k].norm() * 2f64.sqrt() - a[k].norm()).abs() < 1e-13);
    }
}

#[test]
fn diagnostic_classes() {
    let vt = tuned_theta(T1).unwrap();
    let tuned = normalizability_diagnostic(T1, 0.1, 20_000, vt);
    assert_eq!(tuned.classification, NormClass::Tuned);
    assert!(tuned.cos_running_min.unwrap() > 0.9);
    let limit = tuned.tuned_norm_prediction.unwrap();
    assert!(*tuned.partials.last().unwrap() < limit);
    let off = normalizability_diagnostic(20.0, 0.1, 20_000, 1.0);
    assert_eq!(off.classification, NormClass::ScatteringLike);
    assert!(off.tuned_norm_prediction.is_none());
    assert!(off.max_growth_factor < 2.0);
    let detuned = normalizability_diagnostic(T1, 0.1, 20_000, (vt + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU));
    assert_eq!(detuned.classification, NormClass::Detuned);
}

#[test]
fn interferometer_matches_mirror_array() {
    let n = 200;
    let arr = moebius_mirrors(n, 1.0).unwrap();
    let layout = interferometer_layout(n as u64, None).unwrap();
    for m in &layout.mirrors {
        let k = m.n as usize;
        assert!((m.position - arr.position(k).ln()).abs() < 1e-15);
        assert!((ComplexValue::new(m.reflection_re, m.reflection_im) - arr.generator(k)).norm() < 1e-15);
    }
    let nonzero = (2..=n).filter(|&k| arr.generator(k).norm() > 0.0).count();
    assert_eq!(nonzero, layout.mirrors.len());
}
