//! Enumeration and stability classification of the map's fixed points.
//!
//! The map has up to four fixed points: the origin `E0 = (0, 0)`, the
//! strong-Allee point `Es = (s, 0)` (present for s > 0), the prey-capacity
//! point `E1 = (1, 0)`, and the coexistence point `E+ = (x+, y+)` with
//! `x+ = theta/(beta - alpha theta)`.
//!
//! Each point is classified as sink, source, saddle or non-hyperbolic from
//! the moduli of its Jacobian eigenvalues, either numerically (from the
//! Jacobian at a given location) or analytically (from closed forms of the
//! eigenvalues, without evaluating the Jacobian).

use crate::error::{Error, Result};
use crate::model::{eigenvalues_from_trace_det, jacobian_analytic, map_step, Parameters, State};
use num_complex::Complex64;

/// Default hyperbolicity margin: an eigenvalue modulus within this distance
/// of 1 is treated as a boundary case rather than floating-point noise.
pub const DEFAULT_HYPERBOLICITY_MARGIN: f64 = 1e-6;

/// Residual gate for accepting a state as a fixed point.
pub const FIXED_POINT_RESIDUAL_TOL: f64 = 1e-8;

/// Two named points closer than this in x are reported as one.
pub const COINCIDENCE_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPointName {
    E0,
    Es,
    E1,
    Eplus,
}

impl std::fmt::Display for FixedPointName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FixedPointName::E0 => "E0",
            FixedPointName::Es => "Es",
            FixedPointName::E1 => "E1",
            FixedPointName::Eplus => "E+",
        })
    }
}

impl std::str::FromStr for FixedPointName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e0" => Ok(FixedPointName::E0),
            "es" => Ok(FixedPointName::Es),
            "e1" => Ok(FixedPointName::E1),
            "e+" | "eplus" | "ep" => Ok(FixedPointName::Eplus),
            other => Err(Error::InvalidParameter {
                field: "target",
                reason: format!("unknown fixed point {other:?}"),
            }),
        }
    }
}

/// Which eigenvalue condition binds at a non-hyperbolic point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonHyperbolicDetail {
    /// A real eigenvalue with modulus 1 (at +1 up to the margin).
    RealUnit,
    /// A complex-conjugate pair on the unit circle.
    ComplexPair,
    /// A real eigenvalue at -1.
    NegativeOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityKind {
    Sink,
    Source,
    Saddle,
    NonHyperbolic(NonHyperbolicDetail),
}

impl StabilityKind {
    pub fn is_hyperbolic(&self) -> bool {
        !matches!(self, StabilityKind::NonHyperbolic(_))
    }
}

impl std::fmt::Display for StabilityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StabilityKind::Sink => f.write_str("sink"),
            StabilityKind::Source => f.write_str("source"),
            StabilityKind::Saddle => f.write_str("saddle"),
            StabilityKind::NonHyperbolic(NonHyperbolicDetail::RealUnit) => {
                f.write_str("non-hyperbolic(real |lambda|=1)")
            }
            StabilityKind::NonHyperbolic(NonHyperbolicDetail::ComplexPair) => {
                f.write_str("non-hyperbolic(complex pair on unit circle)")
            }
            StabilityKind::NonHyperbolic(NonHyperbolicDetail::NegativeOne) => {
                f.write_str("non-hyperbolic(lambda=-1)")
            }
        }
    }
}

/// A named equilibrium with location, eigenvalues and numeric classification.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub name: FixedPointName,
    pub location: State,
    pub eigenvalues: [Complex64; 2],
    pub kind: StabilityKind,
}

/// The coexistence point, when it exists: beta > alpha theta, y+ > 0 and
/// x+ strictly between s and 1 (in either order).
pub fn coexistence_point(p: &Parameters) -> Option<State> {
    let denom = p.beta - p.alpha * p.theta;
    if denom <= 0.0 {
        return None;
    }
    let xp = p.theta / denom;
    let ordered = (p.s < xp && xp < 1.0) || (1.0 < xp && xp < p.s);
    if !ordered {
        return None;
    }
    // y+ = (1 + alpha x+)(1 - x+)(x+ - s)/(x+ + w); the prefactor equals
    // beta/(beta - alpha theta).
    let yp = (1.0 + p.alpha * xp) * (1.0 - xp) * (xp - p.s) / (xp + p.w);
    if yp > 0.0 {
        Some(State::new(xp, yp))
    } else {
        None
    }
}

/// Trace and determinant of the Jacobian at the coexistence point, from the
/// closed forms
///
/// ```text
/// J11 = 1 - x+ + (s+w+sw+w^2) x+/(x+ + w)^2 + alpha x+ y+/(1 + alpha x+)^2
/// tr  = 1 + J11
/// det = J11 + beta x+ y+/(1 + alpha x+)^3
/// ```
pub fn coexistence_trace_det(p: &Parameters) -> Option<(f64, f64)> {
    let fp = coexistence_point(p)?;
    let (xp, yp) = (fp.x, fp.y);
    let xw = xp + p.w;
    let yax = 1.0 + p.alpha * xp;
    let big_d = p.s + p.w + p.s * p.w + p.w * p.w;
    let j11 = 1.0 - xp + big_d * xp / (xw * xw) + p.alpha * xp * yp / (yax * yax);
    let tr = 1.0 + j11;
    let det = j11 + p.beta * xp * yp / (yax * yax * yax);
    Some((tr, det))
}

/// The s value at which the prey-direction eigenvalue of Es reaches -1,
/// `s+ = (3 + sqrt(8w + 9))/2`, the largest root of s(s-1)/(s+w) = 2.
pub fn es_prey_flip_threshold(w: f64) -> f64 {
    0.5 * (3.0 + (8.0 * w + 9.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Inside,
    Outside,
    Unit,
}

fn modulus_side(m: f64, margin: f64) -> Side {
    if (m - 1.0).abs() <= margin {
        Side::Unit
    } else if m < 1.0 {
        Side::Inside
    } else {
        Side::Outside
    }
}

/// Classifies from two eigenvalues with a hyperbolicity margin on the moduli.
fn classify_eigenvalues(l1: Complex64, l2: Complex64, margin: f64) -> StabilityKind {
    let s1 = modulus_side(l1.norm(), margin);
    let s2 = modulus_side(l2.norm(), margin);
    if s1 == Side::Unit || s2 == Side::Unit {
        let unit = if s1 == Side::Unit { l1 } else { l2 };
        let detail = if unit.im != 0.0 {
            NonHyperbolicDetail::ComplexPair
        } else if unit.re < 0.0 {
            NonHyperbolicDetail::NegativeOne
        } else {
            NonHyperbolicDetail::RealUnit
        };
        return StabilityKind::NonHyperbolic(detail);
    }
    match (s1, s2) {
        (Side::Inside, Side::Inside) => StabilityKind::Sink,
        (Side::Outside, Side::Outside) => StabilityKind::Source,
        _ => StabilityKind::Saddle,
    }
}

/// Eigenvalue-modulus classification at a given fixed-point location.
/// Errors with [`Error::NotAFixedPoint`] if the map-step residual at
/// `location` exceeds [`FIXED_POINT_RESIDUAL_TOL`].
pub fn classify_numeric(p: &Parameters, location: State, margin: f64) -> Result<StabilityKind> {
    let next = map_step(p, location)?;
    let residual = next.dist_inf(location);
    if residual > FIXED_POINT_RESIDUAL_TOL {
        return Err(Error::NotAFixedPoint {
            x: location.x,
            y: location.y,
            residual,
            tol: FIXED_POINT_RESIDUAL_TOL,
        });
    }
    let [l1, l2] = jacobian_analytic(p, location).eigenvalues();
    Ok(classify_eigenvalues(l1, l2, margin))
}

/// Closed-form eigenvalues of the Jacobian at a boundary fixed point.
/// The Jacobian is triangular there, so the eigenvalues are the diagonal:
/// a prey-direction value and the predator growth factor.
pub fn boundary_eigenvalues(p: &Parameters, which: FixedPointName) -> Result<(f64, f64)> {
    match which {
        FixedPointName::E0 => Ok(((-p.s / p.w).exp(), (-p.theta).exp())),
        FixedPointName::Es => {
            if p.s <= 0.0 {
                return Err(Error::AbsentFixedPoint(FixedPointName::Es));
            }
            let l1 = 1.0 - p.s * (p.s - 1.0) / (p.s + p.w);
            let l2 = (p.beta * p.s / (1.0 + p.alpha * p.s) - p.theta).exp();
            Ok((l1, l2))
        }
        // Direct differentiation gives the 1 + w denominator; lambda1 = -1
        // would need s = -2w - 1 < -w, outside the admissible domain.
        FixedPointName::E1 => {
            let l1 = 1.0 + (p.s - 1.0) / (1.0 + p.w);
            let l2 = (p.beta / (1.0 + p.alpha) - p.theta).exp();
            Ok((l1, l2))
        }
        FixedPointName::Eplus => Err(Error::AbsentFixedPoint(FixedPointName::Eplus)),
    }
}

/// Analytic classification of a boundary fixed point (E0, Es or E1) from the
/// closed-form eigenvalues, with the default hyperbolicity margin. For Es the
/// prey eigenvalue changes side at s = 1 and at s+ = [`es_prey_flip_threshold`].
/// Passing Eplus delegates to [`classify_interior_analytic`].
pub fn classify_boundary_analytic(p: &Parameters, which: FixedPointName) -> Result<StabilityKind> {
    if which == FixedPointName::Eplus {
        return classify_interior_analytic(p);
    }
    let (l1, l2) = boundary_eigenvalues(p, which)?;
    Ok(classify_eigenvalues(
        Complex64::new(l1, 0.0),
        Complex64::new(l2, 0.0),
        DEFAULT_HYPERBOLICITY_MARGIN,
    ))
}

/// Analytic classification of the coexistence point from the closed-form
/// trace and determinant. With F(lambda) = lambda^2 - tr lambda + det and
/// F(1) = beta x+ y+/(1+alpha x+)^3 > 0 always, the eigenvalue-modulus split
/// is equivalent to the characteristic-polynomial conditions: sink iff
/// F(-1) > 0 and det < 1, source iff F(-1) > 0 and det > 1, saddle iff
/// F(-1) < 0, non-hyperbolic on the boundaries (complex pair when det = 1
/// with tr^2 < 4 det, real eigenvalue at -1 when F(-1) = 0).
pub fn classify_interior_analytic(p: &Parameters) -> Result<StabilityKind> {
    let (tr, det) =
        coexistence_trace_det(p).ok_or(Error::AbsentFixedPoint(FixedPointName::Eplus))?;
    let [l1, l2] = eigenvalues_from_trace_det(tr, det);
    Ok(classify_eigenvalues(l1, l2, DEFAULT_HYPERBOLICITY_MARGIN))
}

/// All fixed points for the given parameters, in the order E0, Es, E1, E+.
/// Es is present only for s > 0; E+ only when [`coexistence_point`] is.
/// Points closer than [`COINCIDENCE_SEPARATION`] in x to an already-listed
/// point are dropped rather than duplicated.
pub fn enumerate_fixed_points(p: &Parameters) -> Vec<FixedPoint> {
    let mut points: Vec<(FixedPointName, State)> = Vec::with_capacity(4);
    points.push((FixedPointName::E0, State::new(0.0, 0.0)));
    if p.s > 0.0 {
        points.push((FixedPointName::Es, State::new(p.s, 0.0)));
    }
    points.push((FixedPointName::E1, State::new(1.0, 0.0)));
    if let Some(fp) = coexistence_point(p) {
        points.push((FixedPointName::Eplus, fp));
    }

    let mut out: Vec<FixedPoint> = Vec::with_capacity(points.len());
    for (name, location) in points {
        let coincides = out.iter().any(|existing| {
            (existing.location.x - location.x).abs() <= COINCIDENCE_SEPARATION
                && (existing.location.y - location.y).abs() <= COINCIDENCE_SEPARATION
        });
        if coincides {
            continue;
        }
        let eigenvalues = jacobian_analytic(p, location).eigenvalues();
        let kind =
            classify_eigenvalues(eigenvalues[0], eigenvalues[1], DEFAULT_HYPERBOLICITY_MARGIN);
        out.push(FixedPoint {
            name,
            location,
            eigenvalues,
            kind,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baseline() -> Parameters {
        Parameters::new(0.0125, 0.125, 8.4, 1.3, 0.13).unwrap()
    }

    #[test]
    fn coexistence_point_reference() {
        let fp = coexistence_point(&baseline()).unwrap();
        assert!((fp.x - 0.625).abs() < 1e-12);
        assert!((fp.y - 1.9140625).abs() < 1e-12);
    }

    #[test]
    fn coexistence_point_absent_on_degenerate_denominator() {
        // beta = alpha theta makes x+ blow up
        let p = Parameters::new(0.0125, 0.125, 10.0, 1.3, 0.13).unwrap();
        assert!(coexistence_point(&p).is_none());
    }

    #[test]
    fn coexistence_point_absent_outside_ordering() {
        // x+ = 0.13/0.078 = 1.667 is not between s and 1 in either order
        let p = Parameters::new(0.0125, 0.125, 9.4, 1.3, 0.13).unwrap();
        assert!(coexistence_point(&p).is_none());
    }

    #[test]
    fn enumerate_baseline_has_four_points() {
        let pts = enumerate_fixed_points(&baseline());
        let names: Vec<_> = pts.iter().map(|f| f.name).collect();
        assert_eq!(
            names,
            [
                FixedPointName::E0,
                FixedPointName::Es,
                FixedPointName::E1,
                FixedPointName::Eplus
            ]
        );
        assert_eq!(pts[0].location, State::new(0.0, 0.0));
        assert_eq!(pts[1].location, State::new(0.0125, 0.0));
        assert_eq!(pts[2].location, State::new(1.0, 0.0));
        assert!(pts[3].location.dist_inf(State::new(0.625, 1.9140625)) < 1e-12);
        assert_eq!(pts[0].kind, StabilityKind::Sink);
        assert_eq!(pts[2].kind, StabilityKind::Saddle);
        assert_eq!(pts[3].kind, StabilityKind::Sink);
    }

    #[test]
    fn enumerate_weak_allee_drops_es() {
        let p = Parameters::new(-0.1, 0.125, 8.4, 1.3, 0.13).unwrap();
        let names: Vec<_> = enumerate_fixed_points(&p).iter().map(|f| f.name).collect();
        assert_eq!(
            names,
            [
                FixedPointName::E0,
                FixedPointName::E1,
                FixedPointName::Eplus
            ]
        );
    }

    #[test]
    fn enumerate_s_zero_merges_es_into_origin() {
        let p = Parameters::new(0.0, 0.125, 8.4, 1.3, 0.13).unwrap();
        let names: Vec<_> = enumerate_fixed_points(&p).iter().map(|f| f.name).collect();
        assert_eq!(
            names,
            [
                FixedPointName::E0,
                FixedPointName::E1,
                FixedPointName::Eplus
            ]
        );
    }

    #[test]
    fn fixed_point_residuals_are_tiny() {
        let p = baseline();
        for fp in enumerate_fixed_points(&p) {
            let next = map_step(&p, fp.location).unwrap();
            assert!(next.dist_inf(fp.location) <= 1e-12, "{} residual", fp.name);
        }
    }

    #[test]
    fn classify_numeric_reference_cases() {
        let p = baseline();
        let kind = classify_numeric(&p, State::new(0.0, 0.0), 1e-6).unwrap();
        assert_eq!(kind, StabilityKind::Sink);
        let kind = classify_numeric(&p, State::new(1.0, 0.0), 1e-6).unwrap();
        assert_eq!(kind, StabilityKind::Saddle);

        let p135 = Parameters::new(0.0125, 0.125, 8.4, 1.35, 0.13).unwrap();
        let fp = coexistence_point(&p135).unwrap();
        let kind = classify_numeric(&p135, fp, 1e-6).unwrap();
        assert_eq!(kind, StabilityKind::Source);
        let [l1, l2] = jacobian_analytic(&p135, fp).eigenvalues();
        assert!(l1.im != 0.0 && l2.im != 0.0);
        assert!(l1.norm() > 1.0);
    }

    #[test]
    fn classify_numeric_rejects_non_fixed_point() {
        let err = classify_numeric(&baseline(), State::new(0.5, 1.0), 1e-6).unwrap_err();
        assert!(matches!(err, Error::NotAFixedPoint { .. }));
    }

    #[test]
    fn classify_boundary_reference_cases() {
        let p = baseline();
        assert_eq!(
            classify_boundary_analytic(&p, FixedPointName::E0).unwrap(),
            StabilityKind::Sink
        );

        // s = 2, w = 1: prey eigenvalue 1/3, predator factor > 1
        let p2 = Parameters::new(2.0, 1.0, 8.4, 1.3, 0.13).unwrap();
        assert!((es_prey_flip_threshold(1.0) - 0.5 * (3.0 + 17f64.sqrt())).abs() < 1e-15);
        assert_eq!(
            classify_boundary_analytic(&p2, FixedPointName::Es).unwrap(),
            StabilityKind::Saddle
        );
        assert_eq!(
            classify_numeric(&p2, State::new(2.0, 0.0), 1e-6).unwrap(),
            StabilityKind::Saddle
        );

        // beta = alpha theta branch: predator factor always contracts
        let p3 = Parameters::new(2.0, 1.0, 10.0, 1.3, 0.13).unwrap();
        assert_eq!(
            classify_boundary_analytic(&p3, FixedPointName::Es).unwrap(),
            StabilityKind::Sink
        );
    }

    #[test]
    fn classify_boundary_absent_es() {
        let p = Parameters::new(-0.1, 0.125, 8.4, 1.3, 0.13).unwrap();
        let err = classify_boundary_analytic(&p, FixedPointName::Es).unwrap_err();
        assert_eq!(err, Error::AbsentFixedPoint(FixedPointName::Es));
    }

    #[test]
    fn classify_interior_reference_cases() {
        assert_eq!(
            classify_interior_analytic(&baseline()).unwrap(),
            StabilityKind::Sink
        );

        let near_critical = Parameters::new(0.0125, 0.125, 8.4, 1.344995, 0.13).unwrap();
        assert_eq!(
            classify_interior_analytic(&near_critical).unwrap(),
            StabilityKind::NonHyperbolic(NonHyperbolicDetail::ComplexPair)
        );

        let beyond = Parameters::new(0.0125, 0.125, 8.4, 1.35, 0.13).unwrap();
        assert_eq!(
            classify_interior_analytic(&beyond).unwrap(),
            StabilityKind::Source
        );
    }

    #[test]
    fn e0_non_hyperbolic_at_s_zero() {
        let p = Parameters::new(0.0, 0.125, 8.4, 1.3, 0.13).unwrap();
        assert_eq!(
            classify_boundary_analytic(&p, FixedPointName::E0).unwrap(),
            StabilityKind::NonHyperbolic(NonHyperbolicDetail::RealUnit)
        );
    }

    #[test]
    fn es_flip_threshold_puts_eigenvalue_on_unit_circle() {
        for w in [0.125, 0.5, 1.0, 2.0, 3.0] {
            let s = es_prey_flip_threshold(w);
            let p = Parameters::new(s, w, 8.4, 1.3, 0.13).unwrap();
            let (l1, _) = boundary_eigenvalues(&p, FixedPointName::Es).unwrap();
            assert!(
                (l1.abs() - 1.0).abs() < 1e-10,
                "w = {w}: |lambda1| = {}",
                l1.abs()
            );
            assert!(l1 < 0.0);
        }
    }

    #[test]
    fn lemma_standing_hypothesis_holds_at_coexistence() {
        // F(1) = 1 - tr + det > 0 whenever E+ exists
        for beta in [1.25, 1.3, 1.344995, 1.35, 1.4] {
            let p = Parameters::new(0.0125, 0.125, 8.4, beta, 0.13).unwrap();
            if let Some((tr, det)) = coexistence_trace_det(&p) {
                assert!(1.0 - tr + det > 0.0, "beta = {beta}");
            }
        }
    }
}
