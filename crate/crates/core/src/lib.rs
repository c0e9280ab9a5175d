//! Discrete predator-prey dynamics with a double Allee effect on the prey.
//!
//! The crate implements the planar map
//!
//! ```text
//! x' = x * exp[(1 - x) (x - s)/(x + w) - y/(1 + alpha x)]
//! y' = y * exp[beta x/(1 + alpha x) - theta]
//! ```
//!
//! and the analysis built on it:
//!
//! - [`model`]: parameterization (including the raw-to-dimensionless
//!   transform), orbit iteration, exact and finite-difference Jacobians;
//! - [`fixed_points`]: enumeration of the up-to-four equilibria and their
//!   sink/source/saddle/non-hyperbolic classification, numeric and analytic;
//! - [`bifurcation`]: Neimark-Sacker critical values, transversality and
//!   resonance checks, the cubic Taylor model at the coexistence point, and
//!   the normal-form coefficient sigma*;
//! - [`scan`]: parameter-plane classification grids, bifurcation diagrams,
//!   orbit fates and extinction thresholds.
//!
//! All operations are pure functions of their inputs; values are immutable
//! and safe to share across threads.

pub mod bifurcation;
pub mod error;
pub mod fixed_points;
pub mod model;
pub mod scan;

pub use bifurcation::{
    eigenbasis_system, normal_form, ns_locate, ns_nondegeneracy, shifted_step, taylor_coefficients,
    CubicPoly, CurveDirection, EigenbasisSystem, NormalFormReport, NsConditions, PolyPartials,
    TaylorCoeffs,
};
pub use error::{Error, Result};
pub use fixed_points::{
    classify_boundary_analytic, classify_interior_analytic, classify_numeric, coexistence_point,
    coexistence_trace_det, enumerate_fixed_points, FixedPoint, FixedPointName, NonHyperbolicDetail,
    StabilityKind,
};
pub use model::{
    iterate_orbit, iterate_orbit_with_cap, jacobian_analytic, jacobian_fd, map_step,
    map_step_with_cap, Divergence, Matrix2, Orbit, ParamId, Parameters, RawParameters, State,
    DEFAULT_EXP_CAP,
};
pub use scan::{
    bifurcation_diagram, extinction_threshold, orbit_fate, plane_scan, standard_seed, AxisSpec,
    BifurcationDiagram, CellClass, ClassificationGrid, DiagramPoint, Fate, FateOptions,
    SweepOptions,
};
