//! Cross-checks of the closed-form Fourier data against adaptive quadrature
//! of the defining integrals, plus structural properties of the coefficients.

mod common;

use std::f64::consts::PI;

use blochband::KroneckerPotential;
use common::integrate;
use num_complex::Complex64;
use proptest::prelude::*;

const QUAD_TOL: f64 = 1e-13;

fn cis(t: f64) -> Complex64 {
    Complex64::new(t.cos(), t.sin())
}

/// Step value without the half-open domain restriction of `eval`.
fn step(p: &KroneckerPotential, x: f64) -> f64 {
    if x <= p.c() {
        p.a()
    } else {
        p.b()
    }
}

/// Antiderivative of the step vanishing at the origin.
fn primitive(p: &KroneckerPotential, x: f64) -> f64 {
    if x <= p.c() {
        p.a() * x
    } else {
        p.a() * p.c() + p.b() * (x - p.c())
    }
}

/// Integral of `f` over one period, split at the jump point.
fn over_period(p: &KroneckerPotential, f: &dyn Fn(f64) -> Complex64) -> Complex64 {
    integrate(f, 0.0, p.c(), QUAD_TOL) + integrate(f, p.c(), 1.0, QUAD_TOL)
}

fn check_fourier_data(p: &KroneckerPotential, k: i32) {
    let kf = f64::from(k);

    let q_quad = over_period(p, &|x| step(p, x) * cis(-2.0 * PI * kf * x));
    assert!(
        (q_quad - p.q_fourier(k)).norm() < 1e-10,
        "step coefficient mismatch at k = {k}"
    );

    let qq_quad = over_period(p, &|x| primitive(p, x) * cis(-2.0 * PI * kf * x));
    assert!(
        (qq_quad - p.primitive_fourier(k)).norm() < 1e-10,
        "primitive coefficient mismatch at k = {k}"
    );

    let s_quad = over_period(p, &|x| {
        let qx = primitive(p, x);
        qx * qx * cis(-2.0 * PI * kf * x)
    });
    assert!(
        (s_quad - p.square_fourier(k)).norm() < 1e-10,
        "squared-primitive coefficient mismatch at k = {k}"
    );

    for x in [0.2, 0.7, 1.0] {
        let lead = integrate(&|t| step(p, t) * cis(2.0 * PI * kf * t), 0.0, p.c().min(x), QUAD_TOL)
            + if x > p.c() {
                integrate(&|t| step(p, t) * cis(2.0 * PI * kf * t), p.c(), x, QUAD_TOL)
            } else {
                Complex64::new(0.0, 0.0)
            };
        let twisted_quad = lead - p.q_fourier(-k) * x;
        assert!(
            (twisted_quad - p.twisted_primitive(x, k)).norm() < 1e-10,
            "twisted primitive mismatch at k = {k}, x = {x}"
        );
    }

    let mean_quad = over_period(p, &|x| p.twisted_primitive(x, k));
    assert!(
        (mean_quad - p.twisted_mean(k)).norm() < 1e-10,
        "twisted mean mismatch at k = {k}"
    );

    if k >= 1 {
        let d_quad = over_period(p, &|x| {
            step(p, x) * (p.twisted_primitive(x, k) - p.twisted_mean(k)) * cis(-2.0 * PI * kf * x)
        }) * Complex64::new(0.0, 1.0 / (2.0 * PI * kf));
        assert!(
            (d_quad.re - p.d_term(k)).abs() < 1e-10 && d_quad.im.abs() < 1e-10,
            "diagonal correction mismatch at k = {k}"
        );
    }
}

#[test]
fn closed_forms_match_quadrature_for_the_example() {
    let p = KroneckerPotential::new(-PI * PI, 0.5).unwrap();
    for k in 1..=6 {
        check_fourier_data(&p, k);
        check_fourier_data(&p, -k);
    }
}

#[test]
fn closed_forms_match_quadrature_off_the_symmetric_point() {
    let p = KroneckerPotential::new(-3.0, 0.25).unwrap();
    for k in 1..=6 {
        check_fourier_data(&p, k);
        check_fourier_data(&p, -k);
    }
}

#[test]
fn zero_mode_closed_forms_match_quadrature() {
    for p in [
        KroneckerPotential::new(-PI * PI, 0.5).unwrap(),
        KroneckerPotential::new(-3.0, 0.25).unwrap(),
    ] {
        let q0 = over_period(&p, &|x| Complex64::new(primitive(&p, x), 0.0));
        assert!((q0.re - p.primitive_mean()).abs() < 1e-10 && q0.im.abs() < 1e-12);
        let s0 = over_period(&p, &|x| {
            let qx = primitive(&p, x);
            Complex64::new(qx * qx, 0.0)
        });
        assert!((s0.re - p.square_mean()).abs() < 1e-10 && s0.im.abs() < 1e-12);
    }
}

#[test]
fn centered_primitive_powers_integrate_to_zero_against_the_step() {
    for p in [
        KroneckerPotential::new(-PI * PI, 0.5).unwrap(),
        KroneckerPotential::new(-3.0, 0.25).unwrap(),
        KroneckerPotential::new(-11.0, 0.8).unwrap(),
    ] {
        for pow in 1..=3u32 {
            let val = over_period(&p, &|x| {
                let centered = primitive(&p, x) - p.primitive_mean();
                Complex64::new(step(&p, x) * centered.powi(pow as i32), 0.0)
            });
            assert!(
                val.re.abs() < 1e-9 && val.im.abs() < 1e-12,
                "moment {pow} fails to vanish: {val}"
            );
        }
    }
}

proptest! {
    #[test]
    fn coefficients_obey_conjugate_symmetry(
        a in -30.0f64..-0.1,
        c in 0.05f64..0.95,
        k in 1i32..12,
    ) {
        let p = KroneckerPotential::new(a, c).unwrap();
        let pairs = [
            (p.q_fourier(-k), p.q_fourier(k)),
            (p.primitive_fourier(-k), p.primitive_fourier(k)),
            (p.square_fourier(-k), p.square_fourier(k)),
        ];
        for (minus, plus) in pairs {
            prop_assert!((minus - plus.conj()).norm() < 1e-12 * (1.0 + plus.norm()));
        }
    }

    #[test]
    fn rotated_step_coefficients_are_real(
        a in -30.0f64..-0.1,
        c in 0.05f64..0.95,
        k in 1i32..12,
    ) {
        let p = KroneckerPotential::new(a, c).unwrap();
        let rotated = p.q_fourier(k) * cis(PI * f64::from(k) * c);
        prop_assert!(rotated.im.abs() < 1e-10 * (1.0 + rotated.re.abs()));
        let expected = (p.a() - p.b()) * (PI * f64::from(k) * c).sin() / (PI * f64::from(k));
        prop_assert!((rotated.re - expected).abs() < 1e-10 * (1.0 + expected.abs()));
    }

    #[test]
    fn primitive_coefficient_recovers_the_step_coefficient(
        a in -30.0f64..-0.1,
        c in 0.05f64..0.95,
        k in 1i32..12,
    ) {
        let p = KroneckerPotential::new(a, c).unwrap();
        let lhs = p.primitive_fourier(k) * Complex64::new(0.0, 2.0 * PI * f64::from(k));
        prop_assert!((lhs - p.q_fourier(k)).norm() < 1e-12 * (1.0 + p.q_fourier(k).norm()));
    }

    #[test]
    fn twisted_primitive_vanishes_at_both_ends(
        a in -30.0f64..-0.1,
        c in 0.05f64..0.95,
        k in 1i32..12,
    ) {
        let p = KroneckerPotential::new(a, c).unwrap();
        prop_assert!(p.twisted_primitive(0.0, k).norm() < 1e-12);
        prop_assert!(p.twisted_primitive(1.0, k).norm() < 1e-10 * (1.0 + a.abs()));
    }
}
