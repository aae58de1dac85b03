//! End-to-end acceptance checks, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rzeta::counting::{n_dirac_smooth, ModelScales};
use rzeta::dirac::*;
use rzeta::landau::*;
use rzeta::mertens::*;
use rzeta::mirror::*;
use rzeta::specfun::{bessel_k_complex_order, log_gamma, QuadratureSpec};
use rzeta::zeta::*;
use rzeta::ComplexValue;

const TABLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/zeros_1000.txt");
const T1: f64 = 14.134_725_141_734_694;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!("{} #{id:02} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn cx(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, f64::max)
}

#[test]
fn criterion_01_zero_finding() {
    let start = Instant::now();
    let found = find_zeros(0.0, 80.0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let table = ingest_zeros(TABLE).unwrap();
    let reference = table.first(20).unwrap();
    let dev = max_abs(found.iter().zip(reference).map(|(a, b)| (a.t - b.t).abs()));
    let anchors = (found[0].t - 14.13).abs() < 0.005 && (found[1].t - 21.02).abs() < 0.005;
    report(
        1,
        "zero finding",
        found.len() >= 20 && dev < 1e-6 && anchors && elapsed < 10.0,
        format!("max |t - t_ref| over 20 zeros = {dev:.2e}, first two {:.6} {:.6}, {elapsed:.2}s", found[0].t, found[1].t),
    );
}

#[test]
fn criterion_02_exact_count_identity() {
    let ords = ZeroDatabase::compute(200.0).unwrap().ordinates();
    let mut rng = StdRng::seed_from_u64(20_240_607);
    let mut mismatches = Vec::new();
    let mut n = 0;
    while n < 50 {
        let t: f64 = rng.gen_range(0.5..200.0);
        if ords.iter().any(|&z| (z - t).abs() < 1e-3) {
            continue;
        }
        n += 1;
        let formula = zero_count_formula(t).unwrap().round() as usize;
        let counted = ords.partition_point(|&z| z < t);
        if formula != counted {
            mismatches.push((t, formula, counted));
        }
    }
    report(2, "exact count identity", mismatches.is_empty(), format!("50 random t in (0, 200), mismatches {mismatches:?}"));
}

#[test]
fn criterion_03_theta_phase_identity() {
    let dev = max_abs((0..=200).map(|j| {
        let t = j as f64;
        let lhs = cx(0.0, 2.0 * theta_rs(t)).exp();
        let g = (log_gamma(cx(0.25, 0.5 * t)).unwrap() - log_gamma(cx(0.25, -0.5 * t)).unwrap()).exp();
        (lhs - cx(0.0, -t * PI.ln()).exp() * g).norm()
    }));
    report(3, "theta phase identity", dev < 1e-10, format!("max deviation on t = 0..200 step 1: {dev:.2e}"));
}

#[test]
fn criterion_04_xi_h_spectrum() {
    let start = Instant::now();
    let zeros = find_dirac_zeros(DiracTarget::Kind(SpectralFunctionKind::XiDiracH), 0.0, 100.0).unwrap();
    let s = ModelScales::new((2.0 * PI).sqrt(), (2.0 * PI).sqrt()).unwrap();
    let smooth = n_dirac_smooth(100.0, &s).unwrap();
    let sign_changes = zeros.iter().all(|&z| xi_h(z - 1e-6).unwrap() * xi_h(z + 1e-6).unwrap() < 0.0);
    let (mut even, mut imag) = (0.0f64, 0.0f64);
    for j in 0..=200 {
        let t = 0.5 * j as f64;
        let (a, ai) = xi_h_parts(t).unwrap();
        let (b, bi) = xi_h_parts(-t).unwrap();
        even = even.max((a - b).abs());
        imag = imag.max(ai.abs()).max(bi.abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = (zeros.len() as f64 - smooth).abs() <= 2.0 && sign_changes && even < 1e-10 && imag < 1e-10 && elapsed < 60.0;
    report(
        4,
        "xi_H spectrum",
        ok,
        format!(
            "{} zeros in (0, 100) vs smooth count {smooth:.3}, sign changes {sign_changes}, evenness {even:.1e}, imaginary {imag:.1e}, {elapsed:.2}s",
            zeros.len()
        ),
    );
}

#[test]
fn criterion_05_fourier_cross_checks() {
    let q = QuadratureSpec::default();
    let (mut dh, mut ds, mut dx) = (0.0f64, 0.0f64, 0.0f64);
    for j in 0..=100 {
        let t = 0.5 * j as f64;
        dh = dh.max((xi_via_fourier(SpectralFunctionKind::XiDiracH, t, q).unwrap() - xi_h(t).unwrap()).abs());
        ds = ds.max((xi_via_fourier(SpectralFunctionKind::XiPolyaStar, t, q).unwrap() - polya_xi_star(t).unwrap()).abs());
        dx = dx.max((xi_via_fourier(SpectralFunctionKind::XiRiemann, t, q).unwrap() - riemann_xi(t).unwrap()).abs());
    }
    report(
        5,
        "Fourier cross-checks",
        dh < 1e-8 && ds < 1e-8 && dx < 1e-6,
        format!("max |fourier - closed form|: xi_H {dh:.1e}, xi* {ds:.1e}, xi {dx:.1e}"),
    );
}

#[test]
fn criterion_06_polya_asymptote() {
    // the asymptote exactly as printed: 2^{3/4} pi^{-7/4} t^{7/4} e^{-pi t/4}
    let printed = |t: f64| 2f64.powf(0.75) * PI.powf(-1.75) * t.powf(1.75) * (-PI * t / 4.0).exp();
    let zeros = find_dirac_zeros(DiracTarget::Kind(SpectralFunctionKind::XiPolyaStar), 70.0, 90.0).unwrap();
    let mut ratios = Vec::new();
    for w in zeros.windows(2) {
        // extremum of |xi*| between neighbouring zeros, by golden-section search
        let f = |t: f64| -polya_xi_star(t).unwrap().abs();
        let (mut a, mut b) = (w[0], w[1]);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        while b - a > 1e-7 {
            let (c, d) = (b - g * (b - a), a + g * (b - a));
            if f(c) < f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let t = 0.5 * (a + b);
        if (t - 80.0).abs() < 6.0 {
            ratios.push((t, polya_analytic_envelope(t).unwrap() / printed(t), polya_xi_star(t).unwrap().abs() / printed(t)));
        }
    }
    let ok = !ratios.is_empty() && ratios.iter().all(|r| (r.1 - 1.0).abs() < 0.02);
    let detail = ratios
        .iter()
        .map(|(t, env, raw)| format!("t = {t:.3}: envelope/printed = {env:.4}, |xi*|/printed = {raw:.4}"))
        .collect::<Vec<_>>()
        .join("; ");
    report(6, "Polya asymptote", ok, format!("{detail}; envelope/printed / pi^2 = {:.4}", ratios[0].1 / (PI * PI)));
}

#[test]
fn criterion_07_perron_accuracy() {
    let db = ingest_zeros(TABLE).unwrap();
    let dev = |e: f64, n_zeros: usize, at_zero: bool| {
        let cfg = ResidueExpansionConfig::new(&db, n_zeros, 20, at_zero).unwrap();
        max_abs((10..=50).map(|n| {
            let x = n as f64;
            (m_z_perron(x, e, &cfg).unwrap() - m_z_direct(x, e, true).unwrap()).norm()
        }))
    };
    let (off100, off25) = (dev(20.0, 100, false), dev(20.0, 25, false));
    let (at100, at25) = (dev(db.records[0].t, 100, true), dev(db.records[0].t, 25, true));
    report(
        7,
        "Perron accuracy",
        off100 < 0.1 && at100 < 0.1 && off100 < off25 && at100 < at25,
        format!("E = 20: {off100:.4} (100 zeros) vs {off25:.4} (25); E = t_1: {at100:.4} vs {at25:.4}"),
    );
}

#[test]
fn criterion_08_mertens_reconstruction() {
    let db = ingest_zeros(TABLE).unwrap();
    let cfg = ResidueExpansionConfig::new(&db, 1000, 20, false).unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for x in [10.5, 100.5] {
        let m = mertens(x).unwrap();
        let r = mertens_residue(x, &cfg).unwrap();
        ok &= (r.value - m as f64).abs() < 0.5;
        parts.push(format!("x = {x}: residue {:.5}, M = {m}, Im {:.1e}", r.value, r.imaginary_residue));
    }
    ok &= mertens(10.5).unwrap() == -1;
    report(8, "Mertens reconstruction", ok, parts.join("; "));
}

#[test]
fn criterion_09_mirror_algebra() {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut det, mut unit, mut inv) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let rho = ComplexValue::from_polar(rng.gen_range(0.01..0.95), rng.gen_range(0.0..2.0 * PI));
        let (ell, e) = (rng.gen_range(1.0..100.0), rng.gen_range(0.0..100.0));
        det = det.max((transfer_matrix(rho, ell, e).unwrap().det() - 1.0).norm());
        let s = scattering_matrix(rho).unwrap();
        unit = unit.max(s.mul(&s.dagger()).max_abs_diff(&TransferMatrix::identity()));
        let l = l_matrix(rho).unwrap();
        inv = inv.max(l.max_abs_diff(&l_matrix(1.0 / rho.conj()).unwrap().scale(cx(-1.0, 0.0))));
    }
    let n = 2000;
    let dev = |eps: f64| {
        let m = moebius_mirrors(n, eps).unwrap();
        let a = propagate_exact(&m, T1, n).unwrap();
        let b = propagate_magnus(&m, T1, n, MagnusConvention::Strict).unwrap();
        max_abs(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| (x[0] - y[0]).norm().max((x[1] - y[1]).norm())))
    };
    let ratio = dev(1e-2) / dev(5e-3);
    report(
        9,
        "mirror algebra",
        det < 1e-12 && unit < 1e-12 && inv < 1e-12 && (ratio - 4.0).abs() <= 0.8,
        format!("1000 draws: det {det:.1e}, S S^dag {unit:.1e}, L inversion {inv:.1e}; exact-vs-Magnus ratio under halving {ratio:.3}"),
    );
}

#[test]
fn criterion_10_normalizability_dichotomy() {
    let vt = tuned_theta(T1).unwrap();
    let n = 100_000;
    let tuned = normalizability_diagnostic(T1, 0.1, n, vt);
    let cos_min = tuned.cos_running_min.unwrap();
    let tuned_sum = *tuned.partials.last().unwrap();
    let mut ok = cos_min > 0.9 && tuned.classification == NormClass::Tuned;
    let mut parts = vec![format!("tuned: partial {tuned_sum:.3}, min cos {cos_min:.4}, prediction {:.3}", tuned.tuned_norm_prediction.unwrap())];
    for shift in [0.5 * PI, -0.5 * PI] {
        let r = normalizability_diagnostic(T1, 0.1, n, (vt + shift).rem_euclid(2.0 * PI));
        let s = *r.partials.last().unwrap();
        ok &= s > 10.0 * tuned_sum;
        parts.push(format!("detuned {shift:+.3}: ratio {:.2}", s / tuned_sum));
    }
    report(10, "normalizability dichotomy", ok, parts.join("; "));
}

#[test]
fn criterion_11_landau_quantization() {
    let g = LandauGeometry::new(1.0, 100.0).unwrap();
    let roots = landau_levels(20.0, &g).unwrap();
    let n = n_landau(20.0, &g).unwrap();
    let grid = psi_plus_grid(10.0, &g, 8.0, 200).unwrap();
    let (x, y, _) = ridge_argmax(&grid).unwrap();
    let d = hyperbola_distance(x, y, 10.0);
    report(
        11,
        "Landau quantization",
        (roots.len() as f64 - n).abs() <= 1.0 && d < 0.5,
        format!("{} roots below 20 vs n_landau {n:.3}; ridge at ({x:.3}, {y:.3}), distance to xy = 10: {d:.3}", roots.len()),
    );
}

#[test]
fn criterion_12_property_suite() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(12);
    let q = QuadratureSpec::default();
    let k = |nu: ComplexValue, z: f64| bessel_k_complex_order(nu, z, q).unwrap();
    let mut worst = [0.0f64; 7];
    for j in 0..=50 {
        for z in [1.0, 2.0 * PI, 10.0] {
            let nu = cx(0.5, 0.5 * j as f64);
            let a = k(nu, z);
            worst[0] = worst[0].max((a - k(-nu, z)).norm() / a.norm());
        }
    }
    for _ in 0..200 {
        let nu = cx(rng.gen_range(-3.0..3.0), rng.gen_range(-25.0..25.0));
        let z = rng.gen_range(0.5..15.0);
        let a = k(nu.conj(), z);
        worst[1] = worst[1].max((a - k(nu, z).conj()).norm() / a.norm());
        let s = cx(rng.gen_range(-5.0..5.0), rng.gen_range(2.0..60.0));
        let v = zeta(s.conj()).unwrap();
        worst[2] = worst[2].max((v - zeta(s).unwrap().conj()).norm() / v.norm().max(1.0));
        let t = rng.gen_range(0.0..300.0);
        let (re, im) = z_function_parts(t);
        let (re2, im2) = z_function_parts(-t);
        worst[3] = worst[3].max(im.abs()).max(im2.abs()).max((re - re2).abs() / re.abs().max(1.0));
        let beta = rng.gen_range(0.0..4.0);
        let p = phi_kernel(SpectralFunctionKind::XiPolyaStar, beta);
        worst[4] = worst[4].max((p - phi_kernel(SpectralFunctionKind::XiPolyaStar, -beta)).abs() / p);
        let x: u64 = rng.gen_range(2..3000);
        let e = rng.gen_range(0.0..60.0);
        let primed = m_z_direct(x as f64, e, true).unwrap();
        let below = m_z_direct(x as f64 - 0.5, e, false).unwrap();
        let term = cx(-0.5, -e).scale((x as f64).ln()).exp() * (0.5 * moebius(x) as f64);
        worst[5] = worst[5].max((primed - below - term).norm());
    }
    let arr = moebius_mirrors(1000, 1.0).unwrap();
    let layout = interferometer_layout(1000, None).unwrap();
    let mut count_ok = layout.mirrors.len() == (2..=1000u64).filter(|&n| moebius(n) != 0).count();
    for m in &layout.mirrors {
        let kk = m.n as usize;
        worst[6] = worst[6]
            .max((m.position - arr.position(kk).ln()).abs())
            .max((cx(m.reflection_re, m.reflection_im) - arr.generator(kk)).norm());
        count_ok &= kk >= 2;
    }
    let elapsed = start.elapsed().as_secs_f64();
    let ok = worst[0] < 1e-12
        && worst[1] < 1e-12
        && worst[2] < 1e-12
        && worst[3] < 1e-10
        && worst[4] < 1e-12
        && worst[5] < 1e-12
        && worst[6] < 1e-15
        && count_ok
        && elapsed < 300.0;
    report(
        12,
        "property suite",
        ok,
        format!(
            "K symmetry {:.1e}, K conjugation {:.1e}, zeta conjugation {:.1e}, Z real/even {:.1e}, Phi* evenness {:.1e}, half weight {:.1e}, interferometer map {:.1e}, {elapsed:.2}s",
            worst[0], worst[1], worst[2], worst[3], worst[4], worst[5], worst[6]
        ),
    );
}
