use std::f64::consts::PI;

use proptest::prelude::*;
use rzeta::counting::{classical_period, classical_trajectory, launch_momentum, n_average, ModelScales};
use rzeta::dirac::{phi_kernel, polya_xi_star_parts, riemann_xi_parts, xi_h_parts, SpectralFunctionKind};
use rzeta::landau::{landau_levels, n_landau, quantization_residual, LandauGeometry};
use rzeta::mertens::{m_z_direct, moebius, trivial_zero_term};
use rzeta::mirror::*;
use rzeta::specfun::{bessel_k_complex_order, log_gamma, QuadratureSpec};
use rzeta::zeta::{theta_rs, z_function_parts, zeta};
use rzeta::ComplexValue;

fn cx(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn k(nu: ComplexValue, z: f64) -> ComplexValue {
    bessel_k_complex_order(nu, z, QuadratureSpec::default()).unwrap()
}

#[test]
fn bessel_order_symmetry_grid() {
    for z in [1.0, 2.0 * PI, 10.0] {
        for j in 0..=20 {
            let nu = cx(0.5, 1.25 * j as f64);
            let (a, b) = (k(nu, z), k(-nu, z));
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300), "nu = {nu}, z = {z}");
        }
    }
}

fn envelope_ratio(t: f64) -> f64 {
    let env = (PI / t).sqrt() * (t / (2.0 * PI)).sqrt() * (-PI * t / 4.0).exp();
    k(cx(0.5, 0.5 * t), 2.0 * PI).norm() / env
}

#[test]
fn bessel_envelope_at_large_order() {
    // mpmath besselk(1/2 + 100i, 2 pi) against the leading-order envelope
    assert!((envelope_ratio(200.0) - 1.026_226_381_96).abs() < 1e-9);
    let dev: Vec<f64> = [100.0, 200.0, 800.0].iter().map(|&t| (envelope_ratio(t) - 1.0).abs()).collect();
    assert!(dev[0] > dev[1] && dev[1] > dev[2]);
    assert!(dev[2] < 0.02);
}

#[test]
fn theta_phase_identity_grid() {
    for j in 0..=200 {
        let t = j as f64;
        let lhs = cx(0.0, 2.0 * theta_rs(t)).exp();
        let g = (log_gamma(cx(0.25, 0.5 * t)).unwrap() - log_gamma(cx(0.25, -0.5 * t)).unwrap()).exp();
        let rhs = cx(0.0, -t * PI.ln()).exp() * g;
        assert!((lhs - rhs).norm() < 1e-10, "t = {t}");
    }
}

#[test]
fn spectral_density_of_xi_h() {
    use rzeta::counting::n_dirac_smooth;
    use rzeta::dirac::{find_dirac_zeros, DiracTarget};
    let s = ModelScales::new((2.0 * PI).sqrt(), (2.0 * PI).sqrt()).unwrap();
    let z = find_dirac_zeros(DiracTarget::Kind(SpectralFunctionKind::XiDiracH), 50.0, 150.0).unwrap();
    let want = n_dirac_smooth(150.0, &s).unwrap() - n_dirac_smooth(50.0, &s).unwrap();
    assert!((z.len() as f64 / want - 1.0).abs() < 0.1, "{} vs {want}", z.len());
    for w in z.windows(2) {
        let mid = rzeta::dirac::xi_h(0.5 * (w[0] + w[1])).unwrap();
        let left = rzeta::dirac::xi_h(w[0] - 1e-4).unwrap();
        assert!(mid.signum() != left.signum());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_conjugation(a in -3.0..3.0f64, b in -25.0..25.0f64, z in 0.5..15.0f64) {
        let nu = cx(a, b);
        let (p, q) = (k(nu.conj(), z), k(nu, z).conj());
        prop_assert!((p - q).norm() <= 1e-12 * p.norm().max(1e-300));
    }

    #[test]
    fn log_gamma_recurrence(re in 0.1..30.0f64, im in -50.0..50.0f64) {
        let z = cx(re, im);
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        prop_assert!(d.re.abs() < 1e-11);
        let m = d.im / (2.0 * PI);
        prop_assert!((m - m.round()).abs() < 1e-10);
    }

    #[test]
    fn zeta_conjugation(re in -5.0..5.0f64, im in -60.0..60.0f64) {
        prop_assume!((cx(re, im) - 1.0).norm() > 0.05);
        let s = cx(re, im);
        let (a, b) = (zeta(s.conj()).unwrap(), zeta(s).unwrap().conj());
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn z_is_real_and_even(t in 0.0..300.0f64) {
        let (re, im) = z_function_parts(t);
        let (re2, im2) = z_function_parts(-t);
        prop_assert!(im.abs() < 1e-10 && im2.abs() < 1e-10);
        prop_assert!((re - re2).abs() < 1e-10 * re.abs().max(1.0));
    }

    #[test]
    fn average_count_asymptote(t in 50.0..500.0f64) {
        let x = t / (2.0 * PI);
        prop_assert!((n_average(t).unwrap() - x * (x.ln() - 1.0) - 0.875).abs() < 0.01);
    }

    #[test]
    fn orbit_closes(e in 1.5..200.0f64) {
        let s = ModelScales::new(1.0, 1.0).unwrap();
        let period = classical_period(e, &s).unwrap();
        let p0 = launch_momentum(e, &s).unwrap();
        let (x, p) = classical_trajectory(e, period, p0, &s).unwrap();
        prop_assert!((x - s.l_x).abs() < 1e-8 && (p - p0).abs() < 1e-8 * p0);
        let (x0, _) = classical_trajectory(e, 0.0, p0, &s).unwrap();
        prop_assert!((x0 - s.l_x).abs() < 1e-8);
    }

    #[test]
    fn spectral_functions_real_and_even(t in 0.0..60.0f64) {
        let parts: [fn(f64) -> rzeta::Result<(f64, f64)>; 3] = [xi_h_parts, polya_xi_star_parts, riemann_xi_parts];
        for f in parts {
            let (a, ai) = f(t).unwrap();
            let (b, bi) = f(-t).unwrap();
            let scale = a.abs().max(1e-300);
            prop_assert!(ai.abs() < 1e-10 * scale.max(1.0) && bi.abs() < 1e-10 * scale.max(1.0));
            prop_assert!((a - b).abs() < 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn kernels_are_even(beta in 0.0..4.0f64) {
        for kind in [SpectralFunctionKind::XiDiracH, SpectralFunctionKind::XiPolyaStar, SpectralFunctionKind::XiRiemann] {
            let (a, b) = (phi_kernel(kind, beta), phi_kernel(kind, -beta));
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "{kind:?} {beta}: {a} vs {b}");
        }
    }

    #[test]
    fn half_weight_rule(x in 2u64..3000, e in 0.0..60.0f64) {
        let xf = x as f64;
        let primed = m_z_direct(xf, e, true).unwrap();
        let below = m_z_direct(xf - 0.5, e, false).unwrap();
        let term = cx(-0.5, -e).scale(xf.ln()).exp() * (0.5 * moebius(x) as f64);
        prop_assert!((primed - below - term).norm() < 1e-12 * primed.norm().max(1.0));
    }

    #[test]
    fn trivial_terms_decay(x in 2.0..1000.0f64, e in 0.0..50.0f64) {
        let first = trivial_zero_term(x, e, 1).unwrap().norm();
        let total: f64 = (1..=20).map(|n| trivial_zero_term(x, e, n).unwrap().norm()).sum();
        prop_assert!(total <= 2.0 * first);
    }

    #[test]
    fn transfer_algebra(m in 0.0..0.99f64, ph in 0.0..6.283f64, ell in 1.0..100.0f64, e in 0.0..100.0f64) {
        let rho = ComplexValue::from_polar(m, ph);
        let t = transfer_matrix(rho, ell, e).unwrap();
        prop_assert!((t.det() - 1.0).norm() < 1e-12 * (1.0 + t.0[0][0].norm_sqr()));
        let s = scattering_matrix(rho).unwrap();
        prop_assert!(s.mul(&s.dagger()).max_abs_diff(&TransferMatrix::identity()) < 1e-14);
        prop_assume!(m > 1e-3);
        let l = l_matrix(rho).unwrap();
        let li = l_matrix(1.0 / rho.conj()).unwrap();
        prop_assert!(l.max_abs_diff(&li.scale(cx(-1.0, 0.0))) < 1e-14 * l.0[0][0].norm().max(1.0));
    }

    #[test]
    fn norm_weights_bracket(eps in 0.0..0.5f64, e in 0.0..40.0f64, vt in 0.0..6.28f64) {
        let n = 60;
        let arr = moebius_mirrors(n, eps).unwrap().with_boundary_phase(vt).unwrap();
        let s = propagate_exact(&arr, e, n).unwrap();
        for (k, &p) in s.norm_partials.iter().enumerate() {
            let c = s.compact_norm_partials[k];
            prop_assert!(p <= 0.5 * c * (1.0 + 1e-12) && p >= 0.25 * c * (1.0 - 1e-12));
        }
    }

    #[test]
    fn interferometer_equivalence(n_max in 2usize..400) {
        let arr = moebius_mirrors(n_max, 1.0).unwrap();
        let layout = interferometer_layout(n_max as u64, None).unwrap();
        for m in &layout.mirrors {
            prop_assert!((m.position - arr.position(m.n as usize).ln()).abs() < 1e-15);
            prop_assert!((cx(m.reflection_re, m.reflection_im) - arr.generator(m.n as usize)).norm() < 1e-15);
        }
        prop_assert_eq!(layout.mirrors.len(), (2..=n_max).filter(|&k| moebius(k as u64) != 0).count());
    }

    #[test]
    fn principal_characters_validate(q in 1u64..60) {
        let chi = DirichletCharacter::principal(q).unwrap();
        prop_assert_eq!(chi.value(1), cx(1.0, 0.0));
    }

    #[test]
    fn landau_missing_levels(e in 20.0..300.0f64, ratio in 5.0..500.0f64) {
        let g = LandauGeometry::new(1.0, ratio).unwrap();
        let rest = n_landau(e, &g).unwrap() - e / (2.0 * PI) * g.log_ratio();
        prop_assert!(rest < 0.0);
        prop_assert!((rest + theta_rs(e) / PI).abs() < 1e-9);
    }
}

#[test]
fn landau_roots_increase_and_change_sign() {
    let g = LandauGeometry::new(1.0, 100.0).unwrap();
    let roots = landau_levels(60.0, &g).unwrap();
    assert!(roots.windows(2).all(|w| w[1] > w[0]));
    for r in roots {
        let (a, b) = (quantization_residual(r - 1e-6, &g), quantization_residual(r + 1e-6, &g));
        assert!(a * b < 0.0, "E = {r}");
    }
}
