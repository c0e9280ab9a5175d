//! The discrete predator-prey map with a double Allee effect on the prey.
//!
//! One step of the map is
//!
//! ```text
//! x' = x * exp[(1 - x) (x - s)/(x + w) - y/(1 + alpha x)]
//! y' = y * exp[beta x/(1 + alpha x) - theta]
//! ```
//!
//! with dimensionless prey density `x`, predator density `y`, strong-Allee
//! threshold `s`, weak-Allee constant `w`, saturation constant `alpha`,
//! conversion rate `beta` and predator death rate `theta`.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Exponent-argument cap just below the f64 `exp` overflow threshold (~709.78).
/// Exceeding it signals a divergent orbit rather than producing infinities.
pub const DEFAULT_EXP_CAP: f64 = 700.0;

/// Raw (dimensional) model constants, before nondimensionalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParameters {
    /// Intrinsic prey growth rate (1/time).
    pub r: f64,
    /// Carrying capacity (density).
    pub k: f64,
    /// Strong-Allee threshold density; may be negative (weak Allee).
    pub p: f64,
    /// Weak-Allee constant (density).
    pub q: f64,
    /// Attack rate (1/(density * time)).
    pub a: f64,
    /// Handling time (time).
    pub h: f64,
    /// Conversion efficiency (dimensionless).
    pub b: f64,
    /// Predator death rate (1/time).
    pub c: f64,
}

impl RawParameters {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("r", self.r),
            ("k", self.k),
            ("q", self.q),
            ("a", self.a),
            ("h", self.h),
            ("b", self.b),
            ("c", self.c),
        ];
        for (field, value) in positive {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be positive and finite, got {value}"),
                });
            }
        }
        if !self.p.is_finite() {
            return Err(Error::InvalidParameter {
                field: "p",
                reason: format!("must be finite, got {}", self.p),
            });
        }
        Ok(())
    }

    /// Applies the scaling x = N/K, y = aP/r, t = rT, yielding the five
    /// dimensionless constants (p/K, q/K, ahK, baK/r, c/r).
    pub fn nondimensionalize(&self) -> Result<Parameters> {
        self.validate()?;
        Parameters::new(
            self.p / self.k,
            self.q / self.k,
            self.a * self.h * self.k,
            self.b * self.a * self.k / self.r,
            self.c / self.r,
        )
    }
}

/// The five dimensionless model constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameters {
    /// Strong-Allee threshold (s = p/K). Negative values model a weak Allee effect.
    pub s: f64,
    /// Weak-Allee constant (w = q/K), strictly positive.
    pub w: f64,
    /// Saturation constant of the functional response (alpha = ahK).
    pub alpha: f64,
    /// Conversion rate (beta = baK/r).
    pub beta: f64,
    /// Predator death rate (theta = c/r).
    pub theta: f64,
}

impl Parameters {
    pub fn new(s: f64, w: f64, alpha: f64, beta: f64, theta: f64) -> Result<Self> {
        let p = Parameters {
            s,
            w,
            alpha,
            beta,
            theta,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks w > 0, alpha >= 0, beta > 0, theta > 0 and s > -w.
    /// s > -w keeps the pole of the growth factor outside the state space x >= 0.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("s", self.s),
            ("w", self.w),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("theta", self.theta),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    reason: format!("must be finite, got {value}"),
                });
            }
        }
        if self.w <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "w",
                reason: format!("must be positive, got {}", self.w),
            });
        }
        if self.alpha < 0.0 {
            return Err(Error::InvalidParameter {
                field: "alpha",
                reason: format!("must be nonnegative, got {}", self.alpha),
            });
        }
        if self.beta <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "beta",
                reason: format!("must be positive, got {}", self.beta),
            });
        }
        if self.theta <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "theta",
                reason: format!("must be positive, got {}", self.theta),
            });
        }
        if self.s <= -self.w {
            return Err(Error::InvalidParameter {
                field: "s",
                reason: format!("must exceed -w = {}, got {}", -self.w, self.s),
            });
        }
        Ok(())
    }

    pub fn get(&self, id: ParamId) -> f64 {
        match id {
            ParamId::S => self.s,
            ParamId::W => self.w,
            ParamId::Alpha => self.alpha,
            ParamId::Beta => self.beta,
            ParamId::Theta => self.theta,
        }
    }

    /// Returns a copy with one coordinate replaced, re-validating the result.
    pub fn with(&self, id: ParamId, value: f64) -> Result<Self> {
        let mut p = *self;
        match id {
            ParamId::S => p.s = value,
            ParamId::W => p.w = value,
            ParamId::Alpha => p.alpha = value,
            ParamId::Beta => p.beta = value,
            ParamId::Theta => p.theta = value,
        }
        p.validate()?;
        Ok(p)
    }
}

/// Selects one coordinate of [`Parameters`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamId {
    S,
    W,
    Alpha,
    Beta,
    Theta,
}

impl ParamId {
    pub const ALL: [ParamId; 5] = [
        ParamId::S,
        ParamId::W,
        ParamId::Alpha,
        ParamId::Beta,
        ParamId::Theta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ParamId::S => "s",
            ParamId::W => "w",
            ParamId::Alpha => "alpha",
            ParamId::Beta => "beta",
            ParamId::Theta => "theta",
        }
    }
}

impl std::fmt::Display for ParamId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ParamId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(ParamId::S),
            "w" => Ok(ParamId::W),
            "alpha" | "a" => Ok(ParamId::Alpha),
            "beta" | "b" => Ok(ParamId::Beta),
            "theta" | "t" => Ok(ParamId::Theta),
            other => Err(Error::InvalidParameter {
                field: "param",
                reason: format!("unknown parameter name {other:?}"),
            }),
        }
    }
}

/// A prey/predator density pair in dimensionless units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x: f64,
    pub y: f64,
}

impl State {
    pub fn new(x: f64, y: f64) -> Self {
        State { x, y }
    }

    /// Max-norm distance to another state.
    pub fn dist_inf(&self, other: State) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl std::fmt::Display for State {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The two exponent arguments of one map step.
#[inline]
pub(crate) fn exponents(p: &Parameters, st: State) -> (f64, f64) {
    let ex = (1.0 - st.x) * (st.x - p.s) / (st.x + p.w) - st.y / (1.0 + p.alpha * st.x);
    let ey = p.beta * st.x / (1.0 + p.alpha * st.x) - p.theta;
    (ex, ey)
}

/// One map application without any overflow check. `exp` of a large positive
/// argument saturates to infinity; of a large negative one underflows to +0.
#[inline]
pub(crate) fn map_raw(p: &Parameters, st: State) -> State {
    let (ex, ey) = exponents(p, st);
    State::new(st.x * ex.exp(), st.y * ey.exp())
}

/// One application of the map. Both axes are forward-invariant: x = 0 maps to
/// x' = 0 and y = 0 to y' = 0, and positive densities stay positive (up to
/// floating-point underflow, which flushes to +0).
pub fn map_step(p: &Parameters, st: State) -> Result<State> {
    map_step_with_cap(p, st, DEFAULT_EXP_CAP)
}

/// [`map_step`] with an explicit overflow cap on the exponent arguments.
pub fn map_step_with_cap(p: &Parameters, st: State, cap: f64) -> Result<State> {
    if st.x.is_nan() || st.x <= -p.w {
        return Err(Error::InvalidParameter {
            field: "x",
            reason: format!("state x = {} must exceed -w = {}", st.x, -p.w),
        });
    }
    let (ex, ey) = exponents(p, st);
    let worst = ex.max(ey);
    if worst > cap {
        return Err(Error::Overflow {
            exponent: worst,
            cap,
        });
    }
    Ok(State::new(st.x * ex.exp(), st.y * ey.exp()))
}

/// Marks the iterate at which an orbit exceeded the overflow cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Divergence {
    /// Global iterate index (counting from the initial state) of the failed step.
    pub iterate: usize,
    /// The offending exponent argument.
    pub exponent: f64,
}

/// A recorded trajectory: `transient_len` discarded iterates followed by the
/// kept states. Consecutive kept states satisfy `states[k+1] = map_step(states[k])`
/// bitwise for identical parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub states: Vec<State>,
    pub transient_len: usize,
    pub divergence: Option<Divergence>,
}

impl Orbit {
    pub fn kept_len(&self) -> usize {
        self.states.len()
    }

    pub fn last(&self) -> Option<State> {
        self.states.last().copied()
    }
}

/// Applies the map `transient` times discarding, then `keep` times recording.
/// Deterministic for fixed inputs; early-terminates with a [`Divergence`]
/// marker if the overflow cap is hit.
pub fn iterate_orbit(p: &Parameters, st0: State, transient: usize, keep: usize) -> Orbit {
    iterate_orbit_with_cap(p, st0, transient, keep, DEFAULT_EXP_CAP)
}

/// [`iterate_orbit`] with an explicit overflow cap.
pub fn iterate_orbit_with_cap(
    p: &Parameters,
    st0: State,
    transient: usize,
    keep: usize,
    cap: f64,
) -> Orbit {
    let mut st = st0;
    for n in 0..transient {
        match map_step_with_cap(p, st, cap) {
            Ok(next) => st = next,
            Err(Error::Overflow { exponent, .. }) => {
                return Orbit {
                    states: Vec::new(),
                    transient_len: n,
                    divergence: Some(Divergence {
                        iterate: n,
                        exponent,
                    }),
                };
            }
            Err(_) => unreachable!("state domain is forward-invariant"),
        }
    }
    let mut states = Vec::with_capacity(keep);
    for n in 0..keep {
        match map_step_with_cap(p, st, cap) {
            Ok(next) => {
                st = next;
                states.push(st);
            }
            Err(Error::Overflow { exponent, .. }) => {
                return Orbit {
                    states,
                    transient_len: transient,
                    divergence: Some(Divergence {
                        iterate: transient + n,
                        exponent,
                    }),
                };
            }
            Err(_) => unreachable!("state domain is forward-invariant"),
        }
    }
    Orbit {
        states,
        transient_len: transient,
        divergence: None,
    }
}

/// A 2x2 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Matrix2 {
    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// tr^2 - 4 det; negative for a complex-conjugate eigenvalue pair.
    pub fn discriminant(&self) -> f64 {
        let tr = self.trace();
        tr * tr - 4.0 * self.det()
    }

    /// Eigenvalues by the quadratic formula on the characteristic polynomial.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        eigenvalues_from_trace_det(self.trace(), self.det())
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (self.m11.abs() + self.m12.abs()).max(self.m21.abs() + self.m22.abs())
    }

    /// Componentwise max absolute difference.
    pub fn dist_inf(&self, other: &Matrix2) -> f64 {
        (self.m11 - other.m11)
            .abs()
            .max((self.m12 - other.m12).abs())
            .max((self.m21 - other.m21).abs())
            .max((self.m22 - other.m22).abs())
    }
}

/// Roots of lambda^2 - tr lambda + det.
pub fn eigenvalues_from_trace_det(tr: f64, det: f64) -> [Complex64; 2] {
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let root = disc.sqrt();
        [
            Complex64::new(0.5 * (tr + root), 0.0),
            Complex64::new(0.5 * (tr - root), 0.0),
        ]
    } else {
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(0.5 * tr, im), Complex64::new(0.5 * tr, -im)]
    }
}

/// Exact derivative of the map at `st`.
///
/// With A = (1-x)(x-s)/(x+w) - y/(1+alpha x) and B = beta x/(1+alpha x) - theta:
///
/// ```text
/// dA/dx = -1 + (s+w)(1+w)/(x+w)^2 + alpha y/(1+alpha x)^2
/// J = [ (1 + x dA/dx) e^A    -x/(1+alpha x) e^A ]
///     [ beta y/(1+alpha x)^2 e^B          e^B   ]
/// ```
pub fn jacobian_analytic(p: &Parameters, st: State) -> Matrix2 {
    let (x, y) = (st.x, st.y);
    let xw = x + p.w;
    let yax = 1.0 + p.alpha * x;
    let big_d = (p.s + p.w) * (1.0 + p.w);
    let a_x = -1.0 + big_d / (xw * xw) + p.alpha * y / (yax * yax);
    let (ea, eb) = {
        let (ex, ey) = exponents(p, st);
        (ex.exp(), ey.exp())
    };
    Matrix2 {
        m11: (1.0 + x * a_x) * ea,
        m12: -x / yax * ea,
        m21: p.beta * y / (yax * yax) * eb,
        m22: eb,
    }
}

/// Central-difference approximation of the map's derivative, componentwise.
/// Second order in `h`: halving `h` shrinks the error about fourfold.
pub fn jacobian_fd(p: &Parameters, st: State, h: f64) -> Matrix2 {
    let fx_p = map_raw(p, State::new(st.x + h, st.y));
    let fx_m = map_raw(p, State::new(st.x - h, st.y));
    let fy_p = map_raw(p, State::new(st.x, st.y + h));
    let fy_m = map_raw(p, State::new(st.x, st.y - h));
    let inv = 0.5 / h;
    Matrix2 {
        m11: (fx_p.x - fx_m.x) * inv,
        m12: (fy_p.x - fy_m.x) * inv,
        m21: (fx_p.y - fx_m.y) * inv,
        m22: (fy_p.y - fy_m.y) * inv,
    }
}
