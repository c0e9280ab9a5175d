//! Error types shared across the crate.

use crate::fixed_points::FixedPointName;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter or state value violates its domain constraints.
    #[error("invalid {field}: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// An exponent argument exceeded the overflow cap; the orbit is divergent.
    #[error("exponent argument {exponent:.3e} exceeds overflow cap {cap:.0}")]
    Overflow { exponent: f64, cap: f64 },

    /// The supplied state is not a fixed point of the map.
    #[error("({x}, {y}) is not a fixed point: residual {residual:.3e} exceeds {tol:.0e}")]
    NotAFixedPoint {
        x: f64,
        y: f64,
        residual: f64,
        tol: f64,
    },

    /// The requested fixed point does not exist for these parameters.
    #[error("fixed point {0} does not exist for these parameters")]
    AbsentFixedPoint(FixedPointName),

    /// det(J) - 1 has the same sign at both bracket ends.
    #[error(
        "det(J)-1 does not change sign over [{lo}, {hi}] (g(lo)={g_lo:.3e}, g(hi)={g_hi:.3e})"
    )]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    /// The coexistence point ceased to exist inside the search bracket.
    #[error("coexistence point lost inside bracket at parameter value {value}")]
    ExistenceLost { value: f64 },

    /// A root of det(J) = 1 was found but the eigenvalues are real there.
    #[error("eigenvalues real at root {value}: tr^2 - 4 det = {discriminant:.3e} >= 0")]
    DiscriminantNonNegative { value: f64, discriminant: f64 },

    /// The supplied parameters do not satisfy the critical-point conditions.
    #[error("not at a Neimark-Sacker point: {reason}")]
    NotCritical { reason: String },

    /// |sigma*| is below tolerance; the curve direction is undetermined.
    #[error("normal form degenerate: |sigma*| = {sigma_abs:.3e} <= {tol:.0e}")]
    DegenerateSigma { sigma_abs: f64, tol: f64 },

    /// Both bracket ends have the same orbit fate.
    #[error("orbit fate does not change over [{lo}, {hi}]")]
    NoFateChange { lo: f64, hi: f64 },

    /// Grid axes are malformed (same parameter twice, n < 2, or lo >= hi).
    #[error("invalid scan axes: {reason}")]
    InvalidAxes { reason: String },
}

impl Error {
    /// True for errors caused by inputs outside the model's domain, as
    /// opposed to numerical failures of a search or construction.
    pub fn is_domain_error(&self) -> bool {
        matches!(self, Error::InvalidParameter { .. })
    }
}
