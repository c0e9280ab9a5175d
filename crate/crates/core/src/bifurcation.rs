//! Neimark-Sacker bifurcation machinery at the coexistence point: critical
//! parameter location, nondegeneracy conditions, the third-order Taylor model
//! of the shifted map, and the normal-form coefficient sigma* that decides
//! the direction and stability of the emerging invariant curve.

use crate::error::{Error, Result};
use crate::fixed_points::{coexistence_point, coexistence_trace_det, FixedPointName};
use crate::model::{ParamId, Parameters, State};
use num_complex::Complex64;

/// |det(J) - 1| gate for accepting parameters as critical.
pub const CRITICAL_DET_TOL: f64 = 1e-8;

/// Minimum distance of M1(0) = -tr(J) from {-2, 0, 1, 2} for the critical
/// eigenvalue pair to avoid 1st-4th roots of unity.
pub const RESONANCE_TOL: f64 = 1e-6;

/// |sigma*| below this is reported as degenerate.
pub const SIGMA_DEGENERATE_TOL: f64 = 1e-8;

/// Cubic Taylor coefficients of the shifted map at the coexistence point.
///
/// Writing the deviation map as
///
/// ```text
/// u' = s10 u + s01 v + s20 u^2 + s11 uv + s02 v^2 + s30 u^3 + s21 u^2 v + s12 u v^2 + s03 v^3 + O(4)
/// v' = t10 u + t01 v + t20 u^2 + t11 uv + t02 v^2 + t30 u^3 + t21 u^2 v + t12 u v^2 + t03 v^3 + O(4)
/// ```
///
/// all coefficients come from exact differentiation of the map's closed form.
/// The predator update has no pure-v nonlinearity (its exponent does not
/// depend on y), so t01 = 1 and t02 = t12 = t03 = 0 identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorCoeffs {
    pub s10: f64,
    pub s01: f64,
    pub s20: f64,
    pub s11: f64,
    pub s02: f64,
    pub s30: f64,
    pub s21: f64,
    pub s12: f64,
    pub s03: f64,
    pub t10: f64,
    pub t01: f64,
    pub t20: f64,
    pub t11: f64,
    pub t02: f64,
    pub t30: f64,
    pub t21: f64,
    pub t12: f64,
    pub t03: f64,
    /// z1 = 1 - (1+w)(s+w)/(x+ + w)^2 - alpha y+/(1 + alpha x+)^2, the negated
    /// u-derivative of the prey exponent at the fixed point.
    pub z1: f64,
    /// z2 = beta/(1 + alpha x+)^2, the u-derivative of the predator exponent.
    pub z2: f64,
    /// z3 = (1+w)(s+w)/(x+ + w)^3 + alpha^2 y+/(1 + alpha x+)^3, the negated
    /// half second u-derivative of the prey exponent.
    pub z3: f64,
    /// The expansion point E+.
    pub fixed_point: State,
}

impl TaylorCoeffs {
    /// Evaluates the cubic model at deviation (u, v).
    pub fn cubic_model(&self, u: f64, v: f64) -> (f64, f64) {
        let up = self.s10 * u
            + self.s01 * v
            + self.s20 * u * u
            + self.s11 * u * v
            + self.s02 * v * v
            + self.s30 * u * u * u
            + self.s21 * u * u * v
            + self.s12 * u * v * v
            + self.s03 * v * v * v;
        let vp = self.t10 * u
            + self.t01 * v
            + self.t20 * u * u
            + self.t11 * u * v
            + self.t02 * v * v
            + self.t30 * u * u * u
            + self.t21 * u * u * v
            + self.t12 * u * v * v
            + self.t03 * v * v * v;
        (up, vp)
    }
}

/// Exact shifted map at the coexistence point: maps a deviation (u, v) from
/// E+ to the deviation after one step.
///
/// Evaluated in deviation form, with the prey and predator exponents written
/// as explicitly O(u, v) expressions and the outer exponential handled via
/// `exp_m1`, so that no O(1) cancellation occurs. This keeps the absolute
/// rounding floor near 1e-20 instead of 1e-16, which matters when measuring
/// the cubic model's O(4) remainder at small deviations.
pub fn shifted_step(p: &Parameters, u: f64, v: f64) -> Result<(f64, f64)> {
    let fp = coexistence_point(p).ok_or(Error::AbsentFixedPoint(FixedPointName::Eplus))?;
    let (xp, yp) = (fp.x, fp.y);
    let x_w = xp + p.w;
    let y_ax = 1.0 + p.alpha * xp;
    let p0 = (1.0 - xp) * (xp - p.s);

    // Prey exponent A(x+ + u, y+ + v); A(x+, y+) = 0 by construction of y+.
    let growth_diff = u * (x_w * (1.0 + p.s - 2.0 * xp - u) - p0) / ((x_w + u) * x_w);
    let response_diff = p.alpha * yp * u / (y_ax * (y_ax + p.alpha * u)) - v / (y_ax + p.alpha * u);
    let za = growth_diff + response_diff;

    // Predator exponent B(x+ + u); B(x+) = 0 since beta x+/(1+alpha x+) = theta.
    let zb = p.beta * u / (y_ax * (y_ax + p.alpha * u));

    let up = xp * za.exp_m1() + u * za.exp();
    let vp = yp * zb.exp_m1() + v * zb.exp();
    Ok((up, vp))
}

/// All cubic Taylor coefficients of the shifted map, from exact derivatives
/// of the prey exponent A and predator exponent B at the fixed point.
///
/// With a_ij the (i, j) polynomial coefficient of A's expansion in (u, v) and
/// c_i those of B in u, composing with exp gives, for i + j <= 3,
///
/// ```text
/// u' - linear = x+ [A2 + L^2/2] + u L          (degree 2)
///             + x+ [A3 + L A2 + L^3/6] + u [A2 + L^2/2]   (degree 3)
/// ```
///
/// where L, A2, A3 are the degree-1, 2, 3 parts of A, and similarly for v'.
pub fn taylor_coefficients(p: &Parameters) -> Result<TaylorCoeffs> {
    let fp = coexistence_point(p).ok_or(Error::AbsentFixedPoint(FixedPointName::Eplus))?;
    let (xp, yp) = (fp.x, fp.y);
    let x_w = xp + p.w;
    let y_ax = 1.0 + p.alpha * xp;
    let big_d = (1.0 + p.w) * (p.s + p.w);

    // Polynomial coefficients of A(x+ + u, y+ + v) around (0, 0).
    let a10 = -1.0 + big_d / (x_w * x_w) + p.alpha * yp / (y_ax * y_ax);
    let a01 = -1.0 / y_ax;
    let a20 = -big_d / (x_w * x_w * x_w) - p.alpha * p.alpha * yp / (y_ax * y_ax * y_ax);
    let a11 = p.alpha / (y_ax * y_ax);
    let a30 = big_d / (x_w * x_w * x_w * x_w)
        + p.alpha * p.alpha * p.alpha * yp / (y_ax * y_ax * y_ax * y_ax);
    let a21 = -p.alpha * p.alpha / (y_ax * y_ax * y_ax);

    // Polynomial coefficients of B(x+ + u) around 0.
    let c1 = p.beta / (y_ax * y_ax);
    let c2 = -p.alpha * p.beta / (y_ax * y_ax * y_ax);
    let c3 = p.alpha * p.alpha * p.beta / (y_ax * y_ax * y_ax * y_ax);

    Ok(TaylorCoeffs {
        s10: 1.0 + xp * a10,
        s01: xp * a01,
        s20: xp * (a20 + 0.5 * a10 * a10) + a10,
        s11: xp * (a11 + a10 * a01) + a01,
        s02: 0.5 * xp * a01 * a01,
        s30: xp * (a30 + a10 * a20 + a10 * a10 * a10 / 6.0) + a20 + 0.5 * a10 * a10,
        s21: xp * (a21 + a10 * a11 + a01 * a20 + 0.5 * a10 * a10 * a01) + a11 + a10 * a01,
        s12: xp * (a01 * a11 + 0.5 * a10 * a01 * a01) + 0.5 * a01 * a01,
        s03: xp * a01 * a01 * a01 / 6.0,
        t10: yp * c1,
        t01: 1.0,
        t20: yp * (c2 + 0.5 * c1 * c1),
        t11: c1,
        t02: 0.0,
        t30: yp * (c3 + c1 * c2 + c1 * c1 * c1 / 6.0),
        t21: c2 + 0.5 * c1 * c1,
        t12: 0.0,
        t03: 0.0,
        z1: -a10,
        z2: c1,
        z3: -a20,
        fixed_point: fp,
    })
}

/// Nondegeneracy data at a Neimark-Sacker candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NsConditions {
    /// det(J) at E+ (must be 1 at criticality).
    pub det_j: f64,
    /// tr(J) at E+.
    pub tr_j: f64,
    /// tr^2 - 4 det (must be negative: complex pair).
    pub discriminant: f64,
    /// M1(0) = -tr(J) at the critical point.
    pub m1_0: f64,
    /// d|lambda|/dv at the critical value of the varied parameter.
    pub transversality: f64,
    /// True iff M1(0) stays clear of {-2, 0, 1, 2} by [`RESONANCE_TOL`].
    pub resonance_ok: bool,
}

/// Locates a Neimark-Sacker critical value of parameter `which` inside
/// `bracket` by bisecting g(v) = det(J(E+(v))) - 1, followed by one secant
/// polish step. `tol` is the bracket-width target (1e-12 is typical).
///
/// The coexistence point must exist across the bracket and the root must have
/// tr^2 - 4 det < 0 (a complex pair, not a real crossing).
pub fn ns_locate(p: &Parameters, which: ParamId, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidAxes {
            reason: format!("bracket [{lo}, {hi}] must have lo < hi"),
        });
    }
    let g = |v: f64| -> Result<f64> {
        let pv = p
            .with(which, v)
            .map_err(|_| Error::ExistenceLost { value: v })?;
        let (_, det) = coexistence_trace_det(&pv).ok_or(Error::ExistenceLost { value: v })?;
        Ok(det - 1.0)
    };
    let mut g_lo = g(lo)?;
    let mut g_hi = g(hi)?;
    if g_lo == 0.0 {
        return verify_ns_root(p, which, lo);
    }
    if g_hi == 0.0 {
        return verify_ns_root(p, which, hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, g_lo, g_hi });
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at floating-point resolution
        }
        let g_mid = g(mid)?;
        if g_mid == 0.0 {
            return verify_ns_root(p, which, mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    let g_mid = g(root)?;
    // One secant step usually lands within an ulp of the root.
    if g_hi != g_lo {
        let secant = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        if secant.is_finite() && secant > lo.min(root) && secant < hi.max(root) {
            if let Ok(g_secant) = g(secant) {
                if g_secant.abs() < g_mid.abs() {
                    root = secant;
                }
            }
        }
    }
    verify_ns_root(p, which, root)
}

fn verify_ns_root(p: &Parameters, which: ParamId, root: f64) -> Result<f64> {
    let pv = p
        .with(which, root)
        .map_err(|_| Error::ExistenceLost { value: root })?;
    let (tr, det) = coexistence_trace_det(&pv).ok_or(Error::ExistenceLost { value: root })?;
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        return Err(Error::DiscriminantNonNegative {
            value: root,
            discriminant: disc,
        });
    }
    // Membership in the bifurcation neighborhood: beta > alpha theta and
    // x+ distinct from s and 1 are implied by strict coexistence existence.
    debug_assert!(pv.beta > pv.alpha * pv.theta);
    Ok(root)
}

/// Verifies the transversality and resonance conditions at a critical point.
///
/// Transversality is the centered numeric derivative of |lambda(v)| =
/// sqrt(det(J(E+(v)))) in the varied parameter; resonance excludes critical
/// eigenvalues that are 1st-4th roots of unity via M1(0) = -tr(J).
pub fn ns_nondegeneracy(p_at_critical: &Parameters, which: ParamId) -> Result<NsConditions> {
    let (tr, det) = coexistence_trace_det(p_at_critical).ok_or_else(|| Error::NotCritical {
        reason: "coexistence point does not exist".into(),
    })?;
    if (det - 1.0).abs() > CRITICAL_DET_TOL {
        return Err(Error::NotCritical {
            reason: format!(
                "|det(J) - 1| = {:.3e} exceeds {CRITICAL_DET_TOL:.0e}",
                (det - 1.0).abs()
            ),
        });
    }
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        return Err(Error::NotCritical {
            reason: format!("tr^2 - 4 det = {disc:.3e} is nonnegative (real eigenvalues)"),
        });
    }
    let v0 = p_at_critical.get(which);
    let h = 1e-6 * v0.abs().max(1.0);
    let modulus = |v: f64| -> Result<f64> {
        let pv = p_at_critical
            .with(which, v)
            .map_err(|_| Error::ExistenceLost { value: v })?;
        let (_, d) = coexistence_trace_det(&pv).ok_or(Error::ExistenceLost { value: v })?;
        Ok(d.sqrt())
    };
    let transversality = (modulus(v0 + h)? - modulus(v0 - h)?) / (2.0 * h);
    let m1_0 = -tr;
    let resonance_ok = [-2.0, 0.0, 1.0, 2.0]
        .iter()
        .all(|excluded| (m1_0 - excluded).abs() > RESONANCE_TOL);
    Ok(NsConditions {
        det_j: det,
        tr_j: tr,
        discriminant: disc,
        m1_0,
        transversality,
        resonance_ok,
    })
}

/// Predicted behavior of the invariant curve born at the bifurcation.
/// "Beyond" and "below" are relative to the critical parameter value, on the
/// side where the fixed point is unstable (the sign of the transversality
/// derivative orients that side).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveDirection {
    /// sigma* < 0: an attracting closed invariant curve exists on the
    /// unstable side of the critical value.
    AttractingCurveBeyond,
    /// sigma* > 0: a repelling closed invariant curve exists on the stable side.
    RepellingCurveBelow,
    /// |sigma*| below tolerance; no prediction.
    Degenerate,
}

impl std::fmt::Display for CurveDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CurveDirection::AttractingCurveBeyond => "attracting curve beyond critical value",
            CurveDirection::RepellingCurveBelow => "repelling curve below critical value",
            CurveDirection::Degenerate => "degenerate",
        })
    }
}

/// Output of the normal-form computation at a critical point.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormReport {
    /// The critical value of the varied parameter.
    pub critical_value: f64,
    /// Critical eigenvalue eta1 + i eta2 with eta1^2 + eta2^2 = 1, eta2 > 0.
    pub eigen_pair: Complex64,
    /// gamma20, gamma11, gamma02, gamma21.
    pub gammas: [Complex64; 4],
    /// The normal-form coefficient deciding the curve's stability.
    pub sigma_star: f64,
    pub direction: CurveDirection,
    /// The nondegeneracy data the computation was gated on.
    pub conditions: NsConditions,
}

/// Bivariate cubic polynomial; `c[i][j]` multiplies X^i Y^j.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CubicPoly {
    pub c: [[f64; 4]; 4],
}

impl CubicPoly {
    fn scaled_add(&mut self, other: &CubicPoly, factor: f64) {
        for i in 0..4 {
            for j in 0..4 {
                self.c[i][j] += factor * other.c[i][j];
            }
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i + j <= 3 && self.c[i][j] != 0.0 {
                    acc += self.c[i][j] * x.powi(i as i32) * y.powi(j as i32);
                }
            }
        }
        acc
    }

    /// Second and third partial derivatives at the origin.
    pub fn partials_at_origin(&self) -> PolyPartials {
        PolyPartials {
            xx: 2.0 * self.c[2][0],
            xy: self.c[1][1],
            yy: 2.0 * self.c[0][2],
            xxx: 6.0 * self.c[3][0],
            xxy: 2.0 * self.c[2][1],
            xyy: 2.0 * self.c[1][2],
            yyy: 6.0 * self.c[0][3],
        }
    }
}

/// Origin partials of a [`CubicPoly`], in the order the gamma coefficients use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyPartials {
    pub xx: f64,
    pub xy: f64,
    pub yy: f64,
    pub xxx: f64,
    pub xxy: f64,
    pub xyy: f64,
    pub yyy: f64,
}

/// Substitutes u = m11 X + m12 Y, v = m21 X + m22 Y into a polynomial in
/// (u, v) given as (i, j, coeff) monomials with i + j <= 3.
#[allow(clippy::needless_range_loop)]
fn substitute_linear(monomials: &[(usize, usize, f64)], m: [[f64; 2]; 2]) -> CubicPoly {
    const BINOM: [[f64; 4]; 4] = [
        [1.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0],
        [1.0, 3.0, 3.0, 1.0],
    ];
    let mut out = CubicPoly::default();
    for &(i, j, coeff) in monomials {
        if coeff == 0.0 {
            continue;
        }
        // (m11 X + m12 Y)^i expanded times (m21 X + m22 Y)^j expanded
        for a in 0..=i {
            for b in 0..=j {
                let xs = (i - a) + (j - b);
                let ys = a + b;
                let term = coeff
                    * BINOM[i][a]
                    * m[0][0].powi((i - a) as i32)
                    * m[0][1].powi(a as i32)
                    * BINOM[j][b]
                    * m[1][0].powi((j - b) as i32)
                    * m[1][1].powi(b as i32);
                out.c[xs][ys] += term;
            }
        }
    }
    out
}

/// The (X, Y) system obtained from the deviation map via the eigenbasis
/// translation (u, v) = M (X, Y) with M = [[s01, 0], [eta1 - s10, eta2]]:
/// the linear part becomes the rotation form [[eta1, eta2], [-eta2, eta1]]
/// and the nonlinear parts are the cubics psi (X-equation) and phi
/// (Y-equation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenbasisSystem {
    pub eta1: f64,
    pub eta2: f64,
    pub psi: CubicPoly,
    pub phi: CubicPoly,
}

/// Builds the eigenbasis-translated cubic system at the coexistence point.
/// Requires a complex eigenvalue pair (tr^2 < 4 det); the rotation entries
/// eta come from the unit-circle normalization used at criticality.
pub fn eigenbasis_system(p: &Parameters) -> Result<EigenbasisSystem> {
    let (tr, det) =
        coexistence_trace_det(p).ok_or(Error::AbsentFixedPoint(FixedPointName::Eplus))?;
    if tr * tr - 4.0 * det >= 0.0 {
        return Err(Error::NotCritical {
            reason: "eigenvalues are real; no rotation form".into(),
        });
    }
    let tc = taylor_coefficients(p)?;
    Ok(transformed_system(&tc, tr))
}

fn transformed_system(tc: &TaylorCoeffs, tr: f64) -> EigenbasisSystem {
    let eta1 = 0.5 * tr;
    let eta2 = (1.0 - eta1 * eta1).sqrt();
    // u = s01 X, v = (eta1 - s10) X + eta2 Y
    let m = [[tc.s01, 0.0], [eta1 - tc.s10, eta2]];
    let f_nl = [
        (2, 0, tc.s20),
        (1, 1, tc.s11),
        (0, 2, tc.s02),
        (3, 0, tc.s30),
        (2, 1, tc.s21),
        (1, 2, tc.s12),
        (0, 3, tc.s03),
    ];
    let g_nl = [
        (2, 0, tc.t20),
        (1, 1, tc.t11),
        (0, 2, tc.t02),
        (3, 0, tc.t30),
        (2, 1, tc.t21),
        (1, 2, tc.t12),
        (0, 3, tc.t03),
    ];
    let f_xy = substitute_linear(&f_nl, m);
    let g_xy = substitute_linear(&g_nl, m);
    // (psi, phi) = M^-1 (f, g); M^-1 = [[1/s01, 0], [(s10-eta1)/(s01 eta2), 1/eta2]]
    let mut psi = CubicPoly::default();
    psi.scaled_add(&f_xy, 1.0 / tc.s01);
    let mut phi = CubicPoly::default();
    phi.scaled_add(&f_xy, (tc.s10 - eta1) / (tc.s01 * eta2));
    phi.scaled_add(&g_xy, 1.0 / eta2);
    EigenbasisSystem {
        eta1,
        eta2,
        psi,
        phi,
    }
}

/// Builds the normal form at a critical point of parameter `which` and
/// computes sigma*.
///
/// The eigenbasis translation produces a planar system whose linear part is
/// the rotation [[eta1, eta2], [-eta2, eta1]]; acting on X + iY this
/// multiplies by the conjugate eigenvalue eta1 - i eta2, so sigma* is
/// evaluated with that eigenvalue. The conjugate choice leaves sigma*
/// invariant when applied consistently; mixing the conventions does not.
pub fn normal_form(p_at_critical: &Parameters, which: ParamId) -> Result<NormalFormReport> {
    let conditions = ns_nondegeneracy(p_at_critical, which)?;
    if !conditions.resonance_ok {
        return Err(Error::NotCritical {
            reason: format!(
                "M1(0) = {} is within {RESONANCE_TOL:.0e} of a low-order resonance",
                conditions.m1_0
            ),
        });
    }
    let tc = taylor_coefficients(p_at_critical)?;
    let sys = transformed_system(&tc, conditions.tr_j);
    let psi = sys.psi.partials_at_origin();
    let phi = sys.phi.partials_at_origin();

    let g20 = Complex64::new(
        psi.xx - psi.yy + 2.0 * phi.xy,
        phi.xx - phi.yy - 2.0 * psi.xy,
    ) / 8.0;
    let g11 = Complex64::new(psi.xx + psi.yy, phi.xx + phi.yy) / 4.0;
    let g02 = Complex64::new(
        psi.xx - psi.yy - 2.0 * phi.xy,
        phi.xx - phi.yy + 2.0 * psi.xy,
    ) / 8.0;
    let g21 = Complex64::new(
        psi.xxx + psi.xyy + phi.xxy + phi.yyy,
        phi.xxx + phi.xyy - psi.xxy - psi.yyy,
    ) / 16.0;

    let lambda = Complex64::new(sys.eta1, sys.eta2);
    // Eigenvalue realized by the (X, Y) linear part acting on X + iY.
    let mu = lambda.conj();
    let one = Complex64::new(1.0, 0.0);
    let sigma_star = -((one - 2.0 * mu) * mu.conj() * mu.conj() / (one - mu) * g11 * g20).re
        - 0.5 * g11.norm_sqr()
        - g02.norm_sqr()
        + (mu.conj() * g21).re;

    if sigma_star.abs() <= SIGMA_DEGENERATE_TOL {
        return Err(Error::DegenerateSigma {
            sigma_abs: sigma_star.abs(),
            tol: SIGMA_DEGENERATE_TOL,
        });
    }
    let direction = if sigma_star < 0.0 {
        CurveDirection::AttractingCurveBeyond
    } else {
        CurveDirection::RepellingCurveBelow
    };
    Ok(NormalFormReport {
        critical_value: p_at_critical.get(which),
        eigen_pair: lambda,
        gammas: [g20, g11, g02, g21],
        sigma_star,
        direction,
        conditions,
    })
}
