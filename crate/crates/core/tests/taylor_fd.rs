//! Cross-validation of every closed-form Taylor coefficient and of the
//! eigenbasis cubics psi/phi against finite-difference oracles on the
//! shifted map. The oracle differentiates `shifted_step` numerically and
//! never touches the coefficient formulas it checks.

mod common;

use alleemap::{
    eigenbasis_system, ns_locate, shifted_step, taylor_coefficients, ParamId, Parameters,
};
use common::{baseline, cubic_coeffs_fd, d1, d2, d3};

const FD_STEP: f64 = 4e-3;
const COEFF_TOL: f64 = 1e-6;

fn check_all_coefficients(p: &Parameters, label: &str) {
    let tc = taylor_coefficients(p).unwrap();
    let fu = |u: f64, v: f64| shifted_step(p, u, v).unwrap().0;
    let gv = |u: f64, v: f64| shifted_step(p, u, v).unwrap().1;
    let s_fd = cubic_coeffs_fd(&fu, FD_STEP);
    let t_fd = cubic_coeffs_fd(&gv, FD_STEP);
    let s_closed = [
        tc.s10, tc.s01, tc.s20, tc.s11, tc.s02, tc.s30, tc.s21, tc.s12, tc.s03,
    ];
    let t_closed = [
        tc.t10, tc.t01, tc.t20, tc.t11, tc.t02, tc.t30, tc.t21, tc.t12, tc.t03,
    ];
    let names = ["10", "01", "20", "11", "02", "30", "21", "12", "03"];
    for k in 0..9 {
        assert!(
            (s_closed[k] - s_fd[k]).abs() < COEFF_TOL,
            "{label}: s{} closed {} vs fd {}",
            names[k],
            s_closed[k],
            s_fd[k]
        );
        assert!(
            (t_closed[k] - t_fd[k]).abs() < COEFF_TOL,
            "{label}: t{} closed {} vs fd {}",
            names[k],
            t_closed[k],
            t_fd[k]
        );
    }
}

#[test]
fn coefficients_match_fd_at_baseline() {
    check_all_coefficients(&baseline(), "baseline");
}

#[test]
fn coefficients_match_fd_at_critical_beta() {
    let p = baseline();
    let beta_ns = ns_locate(&p, ParamId::Beta, (1.30, 1.40), 1e-12).unwrap();
    check_all_coefficients(&p.with(ParamId::Beta, beta_ns).unwrap(), "beta_NS");
}

#[test]
fn coefficients_match_fd_off_baseline() {
    let p = Parameters::new(0.05, 0.3, 5.0, 1.1, 0.15).unwrap();
    check_all_coefficients(&p, "off-baseline");
}

#[test]
fn baseline_reference_coefficient_values() {
    // Frozen from the finite-difference oracle at the baseline parameters.
    let tc = taylor_coefficients(&baseline()).unwrap();
    let expected = [
        ("s10", tc.s10, 0.804125),
        ("s01", tc.s01, -0.1),
        ("s20", tc.s20, -0.857617054),
        ("s11", tc.s11, 0.005740),
        ("s02", tc.s02, 0.008),
        ("s30", tc.s30, 0.076458748),
        ("s21", tc.s21, 0.129504169),
        ("s12", tc.s12, -0.011211200),
        ("s03", tc.s03, -0.000426667),
        ("t10", tc.t10, 0.0637),
        ("t20", tc.t20, -0.084552832),
        ("t11", tc.t11, 0.03328),
        ("t30", tc.t30, 0.112226168),
        ("t21", tc.t21, -0.044174541),
    ];
    for (name, got, want) in expected {
        assert!((got - want).abs() < 1e-8, "{name}: {got} vs {want}");
    }
}

#[test]
fn predator_expansion_has_no_pure_v_nonlinearity() {
    // The predator exponent is independent of y, so t01 = 1 and
    // t02 = t12 = t03 = 0 for every admissible parameter set.
    for (s, w, alpha, beta, theta) in [
        (0.0125, 0.125, 8.4, 1.3, 0.13),
        (-0.1, 0.5, 3.0, 1.2, 0.3),
        (0.3, 1.5, 0.0, 0.9, 0.4),
        (0.05, 0.3, 5.0, 1.1, 0.15),
    ] {
        let p = Parameters::new(s, w, alpha, beta, theta).unwrap();
        if let Ok(tc) = taylor_coefficients(&p) {
            assert_eq!(tc.t01, 1.0);
            assert_eq!(tc.t02, 0.0);
            assert_eq!(tc.t12, 0.0);
            assert_eq!(tc.t03, 0.0);
        }
    }
}

#[test]
fn psi_phi_partials_match_fd() {
    // The gamma coefficients consume psi/phi partials extracted from the
    // composed cubic; differentiate the polynomials numerically instead and
    // compare.
    let p = baseline();
    let beta_ns = ns_locate(&p, ParamId::Beta, (1.30, 1.40), 1e-12).unwrap();
    let pc = p.with(ParamId::Beta, beta_ns).unwrap();
    let sys = eigenbasis_system(&pc).unwrap();
    for (poly, label) in [(sys.psi, "psi"), (sys.phi, "phi")] {
        let f = |x: f64, y: f64| poly.eval(x, y);
        let partials = poly.partials_at_origin();
        let h = 1e-2;
        let checks = [
            (partials.xx, d2(&|x| f(x, 0.0), h), "xx"),
            (partials.yy, d2(&|y| f(0.0, y), h), "yy"),
            (partials.xy, d1(&|x| d1(&|y| f(x, y), h), h), "xy"),
            (partials.xxx, d3(&|x| f(x, 0.0), h), "xxx"),
            (partials.yyy, d3(&|y| f(0.0, y), h), "yyy"),
            (partials.xxy, d2(&|x| d1(&|y| f(x, y), h), h), "xxy"),
            (partials.xyy, d1(&|x| d2(&|y| f(x, y), h), h), "xyy"),
        ];
        for (closed, fd, name) in checks {
            assert!(
                (closed - fd).abs() < 1e-6,
                "{label}_{name}: {closed} vs {fd}"
            );
        }
    }
}

#[test]
fn remainder_is_fourth_order() {
    // The cubic model's error at E+ scales as |delta|^4: the normalized
    // constant err/|delta|^4 agrees across three deviation scales.
    let p = baseline();
    let beta_ns = ns_locate(&p, ParamId::Beta, (1.30, 1.40), 1e-12).unwrap();
    for pc in [p, p.with(ParamId::Beta, beta_ns).unwrap()] {
        let tc = taylor_coefficients(&pc).unwrap();
        let mut constants = Vec::new();
        for scale in [1e-2, 1e-3, 1e-4] {
            let mut worst: f64 = 0.0;
            for k in 0..16 {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
                let (u, v) = (scale * angle.cos(), scale * angle.sin());
                let (up, vp) = shifted_step(&pc, u, v).unwrap();
                let (cu, cv) = tc.cubic_model(u, v);
                worst = worst.max((up - cu).abs().max((vp - cv).abs()));
            }
            constants.push(worst / scale.powi(4));
        }
        let max = constants.iter().cloned().fold(f64::MIN, f64::max);
        let min = constants.iter().cloned().fold(f64::MAX, f64::min);
        assert!(
            max / min < 2.0,
            "normalized remainder constants {constants:?} spread beyond factor 2"
        );
    }
}
