//! Parameter-plane stability grids, one-parameter bifurcation diagrams,
//! orbit-fate classification, and extinction-threshold search.

use crate::error::{Error, Result};
use crate::fixed_points::{
    classify_numeric, coexistence_point, FixedPointName, StabilityKind,
    DEFAULT_HYPERBOLICITY_MARGIN,
};
use crate::model::{iterate_orbit_with_cap, Orbit, ParamId, Parameters, State, DEFAULT_EXP_CAP};
use rayon::prelude::*;

/// One grid axis: parameter, range and cell count. Cells are sampled at
/// their centers: `value_k = lo + (k + 1/2) (hi - lo)/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub id: ParamId,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisSpec {
    pub fn new(id: ParamId, lo: f64, hi: f64, n: usize) -> Self {
        AxisSpec { id, lo, hi, n }
    }

    pub fn cell_center(&self, k: usize) -> f64 {
        self.lo + (k as f64 + 0.5) * (self.hi - self.lo) / self.n as f64
    }
}

/// Stability class of a grid cell; `Absent` marks cells where the target
/// fixed point does not exist (or the cell's parameters are inadmissible).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Sink,
    Source,
    Saddle,
    NonHyperbolic,
    Absent,
}

impl From<StabilityKind> for CellClass {
    fn from(kind: StabilityKind) -> Self {
        match kind {
            StabilityKind::Sink => CellClass::Sink,
            StabilityKind::Source => CellClass::Source,
            StabilityKind::Saddle => CellClass::Saddle,
            StabilityKind::NonHyperbolic(_) => CellClass::NonHyperbolic,
        }
    }
}

impl std::fmt::Display for CellClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CellClass::Sink => "sink",
            CellClass::Source => "source",
            CellClass::Saddle => "saddle",
            CellClass::NonHyperbolic => "non-hyperbolic",
            CellClass::Absent => "absent",
        })
    }
}

/// A two-parameter stability classification of one fixed point.
/// `cells[i][j]` is the class at `(x_axis.cell_center(i), y_axis.cell_center(j))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationGrid {
    pub x_axis: AxisSpec,
    pub y_axis: AxisSpec,
    pub target: FixedPointName,
    pub cells: Vec<Vec<CellClass>>,
}

/// Location of the target fixed point under the given parameters, if it exists.
fn target_location(p: &Parameters, target: FixedPointName) -> Option<State> {
    match target {
        FixedPointName::E0 => Some(State::new(0.0, 0.0)),
        FixedPointName::Es => (p.s > 0.0).then(|| State::new(p.s, 0.0)),
        FixedPointName::E1 => Some(State::new(1.0, 0.0)),
        FixedPointName::Eplus => coexistence_point(p),
    }
}

/// Classifies `target` over a two-parameter grid. Cells whose parameters are
/// inadmissible or where the target does not exist are marked `Absent`.
/// Rows are evaluated in parallel; the result is independent of the schedule.
pub fn plane_scan(
    p: &Parameters,
    x_axis: AxisSpec,
    y_axis: AxisSpec,
    target: FixedPointName,
) -> Result<ClassificationGrid> {
    if x_axis.id == y_axis.id {
        return Err(Error::InvalidAxes {
            reason: format!("axes must be distinct parameters, both are {}", x_axis.id),
        });
    }
    for axis in [&x_axis, &y_axis] {
        if axis.n < 2 {
            return Err(Error::InvalidAxes {
                reason: format!("{} axis needs n >= 2, got {}", axis.id, axis.n),
            });
        }
        if axis.lo.is_nan() || axis.hi.is_nan() || axis.lo >= axis.hi {
            return Err(Error::InvalidAxes {
                reason: format!(
                    "{} axis needs lo < hi, got [{}, {}]",
                    axis.id, axis.lo, axis.hi
                ),
            });
        }
    }
    let cells: Vec<Vec<CellClass>> = (0..x_axis.n)
        .into_par_iter()
        .map(|i| {
            let xv = x_axis.cell_center(i);
            (0..y_axis.n)
                .map(|j| {
                    let yv = y_axis.cell_center(j);
                    let pv = match p.with(x_axis.id, xv).and_then(|q| q.with(y_axis.id, yv)) {
                        Ok(pv) => pv,
                        Err(_) => return CellClass::Absent,
                    };
                    match target_location(&pv, target) {
                        Some(loc) => {
                            match classify_numeric(&pv, loc, DEFAULT_HYPERBOLICITY_MARGIN) {
                                Ok(kind) => kind.into(),
                                Err(_) => CellClass::Absent,
                            }
                        }
                        None => CellClass::Absent,
                    }
                })
                .collect()
        })
        .collect();
    Ok(ClassificationGrid {
        x_axis,
        y_axis,
        target,
        cells,
    })
}

/// Asymptotic classification of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fate {
    SteadyCoexistence,
    InvariantCurveOrCycle,
    PreyOnly,
    Extinction,
    Divergence,
}

impl std::fmt::Display for Fate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Fate::SteadyCoexistence => "steady-coexistence",
            Fate::InvariantCurveOrCycle => "invariant-curve-or-cycle",
            Fate::PreyOnly => "prey-only",
            Fate::Extinction => "extinction",
            Fate::Divergence => "divergence",
        })
    }
}

/// Settings for the orbit-fate decision procedure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FateOptions {
    /// Iterates discarded before inspection.
    pub transient: usize,
    /// Iterates recorded after the transient.
    pub keep: usize,
    /// Number of final kept iterates the decision is made on.
    pub window: usize,
    /// Densities below this for the whole window count as extinct.
    pub extinction_cutoff: f64,
    /// Prey density above this (with predator extinct) counts as prey-only.
    pub prey_floor: f64,
    /// Window max-distance from its mean below this counts as steady.
    pub steady_tol: f64,
    /// Overflow cap forwarded to the iterator.
    pub exp_cap: f64,
}

impl Default for FateOptions {
    fn default() -> Self {
        FateOptions {
            transient: 10_000,
            keep: 200,
            window: 100,
            extinction_cutoff: 1e-12,
            prey_floor: 1e-6,
            steady_tol: 1e-8,
            exp_cap: DEFAULT_EXP_CAP,
        }
    }
}

/// Classifies the tail of a recorded orbit. Decision precedence:
/// Extinction > PreyOnly > SteadyCoexistence > Divergence > InvariantCurveOrCycle.
pub fn classify_orbit(orbit: &Orbit, opts: &FateOptions) -> Fate {
    let window_len = opts.window.min(orbit.states.len());
    let window = &orbit.states[orbit.states.len() - window_len..];
    if window_len > 0 {
        let cutoff = opts.extinction_cutoff;
        if window.iter().all(|st| st.x < cutoff && st.y < cutoff) {
            return Fate::Extinction;
        }
        if window
            .iter()
            .all(|st| st.y < cutoff && st.x > opts.prey_floor)
        {
            return Fate::PreyOnly;
        }
        let n = window_len as f64;
        let mean = State::new(
            window.iter().map(|st| st.x).sum::<f64>() / n,
            window.iter().map(|st| st.y).sum::<f64>() / n,
        );
        if window.iter().all(|st| st.dist_inf(mean) <= opts.steady_tol) {
            return Fate::SteadyCoexistence;
        }
    }
    if orbit.divergence.is_some() {
        return Fate::Divergence;
    }
    Fate::InvariantCurveOrCycle
}

/// Runs an orbit from `st0` and classifies its fate.
pub fn orbit_fate(p: &Parameters, st0: State, opts: &FateOptions) -> Fate {
    let orbit = iterate_orbit_with_cap(p, st0, opts.transient, opts.keep, opts.exp_cap);
    classify_orbit(&orbit, opts)
}

/// The seed used when nothing better is known: a small offset from the
/// coexistence point when it exists, else (0.5, 0.5).
pub fn standard_seed(p: &Parameters) -> State {
    match coexistence_point(p) {
        Some(fp) => State::new(fp.x + 1e-2, fp.y + 1e-2),
        None => State::new(0.5, 0.5),
    }
}

/// Sweep settings for [`bifurcation_diagram`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub n: usize,
    /// Seed each sweep point from the previous point's final state (true, the
    /// default) or independently from the standard seed (false).
    pub warm_start: bool,
    pub fate: FateOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            n: 600,
            warm_start: true,
            fate: FateOptions::default(),
        }
    }
}

/// One sweep point: parameter value, kept post-transient samples, fate.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramPoint {
    pub value: f64,
    pub samples: Vec<State>,
    pub fate: Fate,
}

/// A one-parameter bifurcation diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationDiagram {
    pub param: ParamId,
    pub points: Vec<DiagramPoint>,
}

/// Sweeps `which` over `n` equally spaced values in [lo, hi], recording the
/// post-transient samples and fate at each. Warm-start sweeps run
/// sequentially by definition; cold-start sweeps run in parallel and merge
/// in index order.
pub fn bifurcation_diagram(
    p: &Parameters,
    which: ParamId,
    lo: f64,
    hi: f64,
    opts: &SweepOptions,
) -> Result<BifurcationDiagram> {
    if opts.n < 2 || lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::InvalidAxes {
            reason: format!(
                "sweep needs n >= 2 and lo < hi, got n = {}, [{lo}, {hi}]",
                opts.n
            ),
        });
    }
    p.with(which, lo)?;
    p.with(which, hi)?;
    let values: Vec<f64> = (0..opts.n)
        .map(|k| lo + k as f64 * (hi - lo) / (opts.n - 1) as f64)
        .collect();

    let run_point = |pv: &Parameters, seed: State| -> DiagramPoint {
        let orbit = iterate_orbit_with_cap(
            pv,
            seed,
            opts.fate.transient,
            opts.fate.keep,
            opts.fate.exp_cap,
        );
        let fate = classify_orbit(&orbit, &opts.fate);
        DiagramPoint {
            value: pv.get(which),
            samples: orbit.states,
            fate,
        }
    };

    let points = if opts.warm_start {
        let mut points = Vec::with_capacity(opts.n);
        let mut seed: Option<State> = None;
        for &v in &values {
            let pv = p.with(which, v)?;
            let st0 = seed.unwrap_or_else(|| standard_seed(&pv));
            let point = run_point(&pv, st0);
            seed = point.samples.last().copied().or(seed);
            points.push(point);
        }
        points
    } else {
        values
            .par_iter()
            .map(|&v| {
                let pv = p.with(which, v).expect("endpoints validated");
                run_point(&pv, standard_seed(&pv))
            })
            .collect()
    };
    Ok(BifurcationDiagram {
        param: which,
        points,
    })
}

/// Bisects parameter `which` on the extinction/non-extinction fate boundary,
/// probing each candidate value from the standard seed, until the bracket is
/// narrower than `tol`. Exactly one bracket end must have fate `Extinction`.
pub fn extinction_threshold(
    p: &Parameters,
    which: ParamId,
    bracket: (f64, f64),
    tol: f64,
    opts: &FateOptions,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let probe = |v: f64| -> Result<bool> {
        let pv = p.with(which, v)?;
        Ok(orbit_fate(&pv, standard_seed(&pv), opts) == Fate::Extinction)
    };
    let ext_lo = probe(lo)?;
    let ext_hi = probe(hi)?;
    if ext_lo == ext_hi {
        return Err(Error::NoFateChange { lo, hi });
    }
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        if probe(mid)? == ext_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
