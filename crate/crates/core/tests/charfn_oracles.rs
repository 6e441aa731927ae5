mod support;

use cosnufft::charfn::{charfn_eval, cumulants};
use cosnufft::{BlackScholes, CharacteristicFunction, Heston, ModelParams, VarianceGamma};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use support::{Big, BigC};

fn vg_case1() -> VarianceGamma {
    VarianceGamma::new(-0.1436, 0.3, 0.12136).unwrap()
}

fn vg_case4() -> VarianceGamma {
    VarianceGamma::new(1.5, 0.2, 1.0).unwrap()
}

fn heston_paper() -> Heston {
    Heston::new(1.0, 0.1, 1.0, 0.1, -0.9).unwrap()
}

/// `ln φ(z)` of the variance gamma model, evaluated in 256-bit arithmetic
/// directly from the exponent of its closed form.
fn vg_log_charfn_big(big: &mut Big, theta: f64, nu: f64, sigma: f64, t: f64, z: &BigC) -> BigC {
    let (theta, nu, sigma, t) = (big.r(theta), big.r(nu), big.r(sigma), big.r(t));
    let one = big.r(1.0);
    let i = big.c(0.0, 1.0);
    let sigma2 = big.mul(&sigma, &sigma);
    // 1 - i z ν (θ + σ² i z / 2)
    let iz = big.cmul(&i, z);
    let half_sigma2 = big.div(&sigma2, &big.r(2.0));
    let inner = big.cadd(&big.cr(theta.clone()), &big.cscale(&iz, &half_sigma2));
    let base = big.csub(&big.cr(one.clone()), &big.cscale(&big.cmul(&iz, &inner), &nu));
    let log_base = big.cln(&base);
    let t_over_nu = big.div(&t, &nu);
    let first = big.cscale(&log_base, &t_over_nu.neg());
    // i z (T/ν) ln(1 - θν - σ²ν/2)
    let arg = big.sub(&big.sub(&one, &big.mul(&theta, &nu)), &big.mul(&half_sigma2, &nu));
    let log_arg = big.ln(&arg);
    let correction = big.mul(&t_over_nu, &log_arg);
    big.cadd(&first, &big.cscale(&iz, &correction))
}

#[test]
fn variance_gamma_matches_arbitrary_precision() {
    let mut big = Big::new(256);
    for z in [1.0, -1.0, 0.37, 25.0, 400.0] {
        let zb = big.c(z, 0.0);
        let exponent = vg_log_charfn_big(&mut big, -0.1436, 0.3, 0.12136, 1.0, &zb);
        let exact = big.cexp(&exponent);
        let exact = big.to_c64(&exact);
        let got = charfn_eval(&vg_case1(), 1.0, z).unwrap();
        assert!((got - exact).norm() <= 2e-15 * exact.norm(), "z={z}: {got} vs {exact}");
    }
}

/// `E[e^{uX_T}] = exp(A(T) + B(T) v0)` with
/// `B' = (u² - u)/2 + (ρσu - κ)B + σ²B²/2`, `A' = κθB`, integrated by RK4.
fn heston_riccati(m: &Heston, t: f64, z: f64, steps: usize) -> Complex64 {
    let u = Complex64::new(0.0, z);
    let (k, th, s, rho) = (m.kappa(), m.theta(), m.sigma(), m.rho());
    let rhs = |b: Complex64| -> (Complex64, Complex64) {
        let db = 0.5 * (u * u - u) + (rho * s * u - k) * b + 0.5 * s * s * b * b;
        (k * th * b, db)
    };
    let h = t / steps as f64;
    let (mut a, mut b) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for _ in 0..steps {
        let (ka1, kb1) = rhs(b);
        let (ka2, kb2) = rhs(b + 0.5 * h * kb1);
        let (ka3, kb3) = rhs(b + 0.5 * h * kb2);
        let (ka4, kb4) = rhs(b + h * kb3);
        a += h / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        b += h / 6.0 * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
    }
    (a + b * m.v0()).exp()
}

#[test]
fn heston_matches_riccati_integration() {
    let m = heston_paper();
    for z in [2.0, -2.0, 0.5, 7.5] {
        let exact = heston_riccati(&m, 2.0, z, 40_000);
        let got = charfn_eval(&m, 2.0, z).unwrap();
        assert!((got - exact).norm() < 1e-11, "z={z}: {got} vs {exact}");
    }
    // a second parameter set with v0 != theta and positive correlation
    let m = Heston::new(2.5, 0.04, 0.6, 0.09, 0.3).unwrap();
    for z in [1.0, 3.0, -12.0] {
        let exact = heston_riccati(&m, 0.7, z, 40_000);
        let got = charfn_eval(&m, 0.7, z).unwrap();
        assert!((got - exact).norm() < 1e-11, "z={z}: {got} vs {exact}");
    }
}

/// Fourth-order central differences of `ln φ` at zero:
/// `ln φ(z) = i c1 z - c2 z²/2 - i c3 z³/6 + c4 z⁴/24 + …`.
fn fd_cumulants(log_phi: impl Fn(f64) -> Complex64, h: f64) -> (f64, f64) {
    let f = |j: f64| log_phi(j * h);
    let d1 = (f(-2.0) - 8.0 * f(-1.0) + 8.0 * f(1.0) - f(2.0)) / (12.0 * h);
    let d2 = (-f(2.0) + 16.0 * f(1.0) - 30.0 * f(0.0) + 16.0 * f(-1.0) - f(-2.0)) / (12.0 * h * h);
    (d1.im, -d2.re)
}

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs()
}

#[test]
fn variance_gamma_cumulants_match_finite_differences() {
    let mut big = Big::new(256);
    let h = 1e-3;
    for (m, t) in [(vg_case1(), 1.0), (vg_case1(), 0.1), (vg_case4(), 1.0), (vg_case4(), 0.1)] {
        let logs: Vec<BigC> = (-3..=3)
            .map(|j| {
                let z = big.c(j as f64 * h, 0.0);
                vg_log_charfn_big(&mut big, m.theta(), m.nu(), m.sigma(), t, &z)
            })
            .collect();
        let f = |j: i32| &logs[(j + 3) as usize];
        let hh = big.r(h);
        // c1 = Im f'(0)
        let d1 = {
            let num = big.csub(
                &big.cadd(&big.cscale(&big.csub(f(1), f(-1)), &big.r(8.0)), f(-2)),
                f(2),
            );
            big.div(&num.im, &big.mul(&big.r(12.0), &hh))
        };
        // c2 = -Re f''(0)
        let d2 = {
            let mut acc = big.r(0.0);
            for (j, w) in [(-2, -1.0), (-1, 16.0), (0, -30.0), (1, 16.0), (2, -1.0)] {
                acc = big.add(&acc, &big.mul(&f(j).re, &big.r(w)));
            }
            big.div(&acc, &big.mul(&big.r(12.0), &big.mul(&hh, &hh)))
        };
        // c4 = Re f''''(0), seven-point stencil
        let d4 = {
            let mut acc = big.r(0.0);
            for (j, w) in [(-3, -1.0), (-2, 12.0), (-1, -39.0), (0, 56.0), (1, -39.0), (2, 12.0), (3, -1.0)] {
                acc = big.add(&acc, &big.mul(&f(j).re, &big.r(w)));
            }
            let h4 = big.mul(&big.mul(&hh, &hh), &big.mul(&hh, &hh));
            big.div(&acc, &big.mul(&big.r(6.0), &h4))
        };
        let (c1, c2, c4) = (big.to_f64(&d1), -big.to_f64(&d2), big.to_f64(&d4));
        let analytic = cumulants(&m, t).unwrap();
        assert!(rel_close(analytic.c1, c1, 1e-4), "c1 {} vs {c1}", analytic.c1);
        assert!(rel_close(analytic.c2, c2, 1e-4), "c2 {} vs {c2}", analytic.c2);
        assert!(rel_close(analytic.c4, c4, 1e-4), "c4 {} vs {c4}", analytic.c4);
        assert!(analytic.c4 > 0.0);
    }
}

#[test]
fn heston_and_black_scholes_cumulants_match_finite_differences() {
    let cases: [(ModelParams, f64); 4] = [
        (heston_paper().into(), 2.0),
        (Heston::new(2.5, 0.04, 0.6, 0.09, 0.3).unwrap().into(), 0.7),
        (Heston::new(0.5, 0.2, 0.3, 0.05, -0.2).unwrap().into(), 5.0),
        (BlackScholes::new(0.2).unwrap().into(), 1.0),
    ];
    for (m, t) in cases {
        let (c1, c2) = fd_cumulants(|z| m.eval(t, z).ln(), 1e-3);
        let analytic = m.cumulants(t);
        assert!(rel_close(analytic.c1, c1, 1e-4), "{}: c1 {} vs {c1}", m.name(), analytic.c1);
        assert!(rel_close(analytic.c2, c2, 1e-4), "{}: c2 {} vs {c2}", m.name(), analytic.c2);
        assert_eq!(analytic.c4, 0.0);
    }
}

fn all_models() -> Vec<ModelParams> {
    vec![
        BlackScholes::new(0.2).unwrap().into(),
        vg_case1().into(),
        vg_case4().into(),
        heston_paper().into(),
    ]
}

#[test]
fn hermitian_symmetry_on_random_frequencies() {
    let mut rng = StdRng::seed_from_u64(7);
    for m in all_models() {
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let z: f64 = rng.random_range(-100.0..100.0);
            for t in [0.1, 1.0, 2.0] {
                worst = worst.max((m.eval(t, -z) - m.eval(t, z).conj()).norm());
            }
        }
        assert!(worst <= 1e-13, "{}: {worst}", m.name());
    }
}

proptest! {
    #[test]
    fn modulus_never_exceeds_one(z in -1e3f64..1e3, t in 0.01f64..10.0) {
        for m in all_models() {
            prop_assert!(m.eval(t, z).norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn random_valid_models_are_normalized_and_bounded(
        theta in -1.0f64..1.0, nu in 0.01f64..1.0, sigma in 0.05f64..1.0,
        kappa in 0.1f64..5.0, hth in 0.01f64..0.5, hs in 0.05f64..2.0, v0 in 0.0f64..0.5, rho in -0.99f64..0.99,
        t in 0.05f64..5.0, z in -200.0f64..200.0,
    ) {
        let mut models: Vec<ModelParams> = vec![Heston::new(kappa, hth, hs, v0, rho).unwrap().into()];
        if let Ok(vg) = VarianceGamma::new(theta, nu, sigma) {
            models.push(vg.into());
        }
        for m in models {
            prop_assert_eq!(m.eval(t, 0.0), Complex64::new(1.0, 0.0));
            let v = m.eval(t, z);
            prop_assert!(v.re.is_finite() && v.im.is_finite());
            prop_assert!(v.norm() <= 1.0 + 1e-12);
            prop_assert!(m.cumulants(t).c2 >= 0.0);
        }
    }
}
