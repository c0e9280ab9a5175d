//! Finite-difference oracles shared by the integration suites. All stencils
//! are second-order central differences with one Richardson extrapolation
//! step, giving fourth-order accuracy; they stay independent of the
//! closed-form derivative code they check.

#![allow(dead_code)]

use alleemap::Parameters;

/// First derivative at 0.
pub fn d1<F: Fn(f64) -> f64>(f: &F, h: f64) -> f64 {
    let g = |hh: f64| (f(hh) - f(-hh)) / (2.0 * hh);
    (4.0 * g(h / 2.0) - g(h)) / 3.0
}

/// Second derivative at 0.
pub fn d2<F: Fn(f64) -> f64>(f: &F, h: f64) -> f64 {
    let g = |hh: f64| (f(hh) - 2.0 * f(0.0) + f(-hh)) / (hh * hh);
    (4.0 * g(h / 2.0) - g(h)) / 3.0
}

/// Third derivative at 0.
pub fn d3<F: Fn(f64) -> f64>(f: &F, h: f64) -> f64 {
    let g =
        |hh: f64| (f(2.0 * hh) - 2.0 * f(hh) + 2.0 * f(-hh) - f(-2.0 * hh)) / (2.0 * hh * hh * hh);
    (4.0 * g(h / 2.0) - g(h)) / 3.0
}

/// All nine cubic Taylor coefficients (c10, c01, c20, c11, c02, c30, c21,
/// c12, c03) of a scalar function of two variables at the origin.
pub fn cubic_coeffs_fd<F: Fn(f64, f64) -> f64>(f: &F, h: f64) -> [f64; 9] {
    let c10 = d1(&|u| f(u, 0.0), h);
    let c01 = d1(&|v| f(0.0, v), h);
    let c20 = d2(&|u| f(u, 0.0), h) / 2.0;
    let c02 = d2(&|v| f(0.0, v), h) / 2.0;
    let c11 = d1(&|u| d1(&|v| f(u, v), h), h);
    let c30 = d3(&|u| f(u, 0.0), h) / 6.0;
    let c03 = d3(&|v| f(0.0, v), h) / 6.0;
    let c21 = d2(&|u| d1(&|v| f(u, v), h), h) / 2.0;
    let c12 = d1(&|u| d2(&|v| f(u, v), h), h) / 2.0;
    [c10, c01, c20, c11, c02, c30, c21, c12, c03]
}

pub fn baseline() -> Parameters {
    Parameters::new(0.0125, 0.125, 8.4, 1.3, 0.13).unwrap()
}
