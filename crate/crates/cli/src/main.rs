//! Command-line front end: every library operation behind a subcommand, with
//! delimited-text output (plus optional JSON and SVG) and preconfigured
//! figure-reproduction recipes.

mod config;
mod output;
mod recipes;
mod svg;

use alleemap::{
    classify_boundary_analytic, classify_interior_analytic, classify_numeric, coexistence_point,
    enumerate_fixed_points, extinction_threshold, iterate_orbit_with_cap, jacobian_analytic,
    jacobian_fd, normal_form, ns_locate, ns_nondegeneracy, plane_scan, AxisSpec, FateOptions,
    FixedPointName, Matrix2, ParamId, State, SweepOptions, DEFAULT_EXP_CAP,
};
use clap::{Parser, Subcommand, ValueEnum};
use config::{
    resolve_parameters, ConfigError, ParameterFlags, ParameterSource, ResolvedParameters,
};
use output::{Format, Product};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "alleemap",
    version,
    about = "Discrete predator-prey map with a double Allee effect: fixed points, \
             Neimark-Sacker analysis, scans and diagrams"
)]
struct Cli {
    /// Flat key-value config file (default taken from $ALLEEMAP_CONFIG).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Strong-Allee threshold.
    #[arg(long, global = true)]
    s: Option<f64>,
    /// Weak-Allee constant.
    #[arg(long, global = true)]
    w: Option<f64>,
    /// Functional-response saturation constant.
    #[arg(long, global = true)]
    alpha: Option<f64>,
    /// Conversion rate.
    #[arg(long, global = true)]
    beta: Option<f64>,
    /// Predator death rate.
    #[arg(long, global = true)]
    theta: Option<f64>,
    /// Raw parameters r,K,p,q,a,h,b,c (nondimensionalized internally).
    #[arg(
        long,
        global = true,
        value_delimiter = ',',
        value_name = "r,K,p,q,a,h,b,c"
    )]
    raw: Option<Vec<f64>>,
    /// Output format for data files.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the data product here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Write an SVG rendering here (simulate, scan and diagram only).
    #[arg(long, global = true, value_name = "PATH")]
    plot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    E0,
    Es,
    E1,
    #[value(name = "e+", alias = "eplus")]
    Eplus,
}

impl From<TargetArg> for FixedPointName {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::E0 => FixedPointName::E0,
            TargetArg::Es => FixedPointName::Es,
            TargetArg::E1 => FixedPointName::E1,
            TargetArg::Eplus => FixedPointName::Eplus,
        }
    }
}

fn target_arg_name(name: FixedPointName) -> &'static str {
    match name {
        FixedPointName::E0 => "e0",
        FixedPointName::Es => "es",
        FixedPointName::E1 => "e1",
        FixedPointName::Eplus => "e+",
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    S,
    W,
    Alpha,
    Beta,
    Theta,
}

impl From<ParamArg> for ParamId {
    fn from(p: ParamArg) -> Self {
        match p {
            ParamArg::S => ParamId::S,
            ParamArg::W => ParamId::W,
            ParamArg::Alpha => ParamId::Alpha,
            ParamArg::Beta => ParamId::Beta,
            ParamArg::Theta => ParamId::Theta,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all fixed points with eigenvalues and stability classes.
    FixedPoints,
    /// Classify one fixed point, numerically and analytically.
    Classify {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Hyperbolicity margin on eigenvalue moduli.
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
    },
    /// Iterate an orbit and record the kept states.
    Simulate {
        #[arg(long)]
        x0: f64,
        #[arg(long)]
        y0: f64,
        /// Iterates discarded before recording.
        #[arg(long, default_value_t = 0)]
        transient: usize,
        /// Iterates recorded.
        #[arg(long)]
        steps: usize,
        /// Overflow cap on the exponent arguments.
        #[arg(long, default_value_t = DEFAULT_EXP_CAP)]
        cap: f64,
    },
    /// Exact and central-difference Jacobians at a state.
    Jacobian {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        /// Central-difference step.
        #[arg(long, default_value_t = 1e-6)]
        step: f64,
    },
    /// Locate a Neimark-Sacker critical parameter value.
    Ns {
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        bracket: Vec<f64>,
        /// Bracket-width target of the bisection.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Normal form and sigma* at a critical point.
    NormalForm {
        #[arg(long, value_enum)]
        param: ParamArg,
        /// Search bracket; the critical value is located first.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        bracket: Option<Vec<f64>>,
        /// Use this value as the critical point directly.
        #[arg(long)]
        at: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Two-parameter stability classification grid of one fixed point.
    Scan {
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, value_enum)]
        x_param: ParamArg,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        x_range: Vec<f64>,
        #[arg(long, value_enum)]
        y_param: ParamArg,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        y_range: Vec<f64>,
        /// Cells per axis.
        #[arg(long, default_value_t = 400)]
        n: usize,
    },
    /// One-parameter bifurcation diagram.
    Diagram {
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Vec<f64>,
        /// Sweep points.
        #[arg(long, default_value_t = 600)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        transient: usize,
        #[arg(long, default_value_t = 200)]
        keep: usize,
        /// Seed every sweep point from the standard seed instead of the
        /// previous point's final state.
        #[arg(long)]
        cold_start: bool,
    },
    /// Bisect the extinction threshold of a parameter.
    Threshold {
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        bracket: Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 10_000)]
        transient: usize,
        #[arg(long, default_value_t = 200)]
        keep: usize,
    },
    /// Reproduce the data behind one of the reference figures (fig1..fig9).
    Repro {
        /// Figure id: fig1..fig9.
        figure: String,
        #[arg(long, value_name = "DIR", default_value = ".")]
        out_dir: PathBuf,
        /// Override the grid resolution (figures 1-4).
        #[arg(long)]
        grid_n: Option<usize>,
        /// Override the sweep resolution (figures 5-9).
        #[arg(long)]
        sweep_n: Option<usize>,
        #[arg(long)]
        transient: Option<usize>,
        #[arg(long)]
        keep: Option<usize>,
    },
}

pub(crate) enum CliError {
    Usage(String),
    Domain(String),
    Numerical(String),
}

impl From<alleemap::Error> for CliError {
    fn from(e: alleemap::Error) -> Self {
        if e.is_domain_error() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Usage(msg) => CliError::Usage(msg),
            ConfigError::Domain(err) => CliError::Domain(err.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("i/o failure: {e}"))
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(64);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(64);
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("domain error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    }
}

/// The canonical global-flag prefix every echoed command starts with.
fn echo_prefix(resolved: &ResolvedParameters, format: Format) -> String {
    let fmt = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    match &resolved.source {
        ParameterSource::Raw(raw) => format!(
            "--raw {},{},{},{},{},{},{},{} --format {fmt}",
            raw.r, raw.k, raw.p, raw.q, raw.a, raw.h, raw.b, raw.c
        ),
        _ => {
            let p = resolved.parameters;
            format!(
                "--s {} --w {} --alpha {} --beta {} --theta {} --format {fmt}",
                p.s, p.w, p.alpha, p.beta, p.theta
            )
        }
    }
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn require_positive_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config_path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(config::CONFIG_ENV_VAR).map(PathBuf::from));
    let flags = ParameterFlags {
        s: cli.s,
        w: cli.w,
        alpha: cli.alpha,
        beta: cli.beta,
        theta: cli.theta,
        raw: cli.raw.clone(),
    };
    let resolved = resolve_parameters(config_path.as_deref(), &flags)?;
    let format = match cli.format {
        Some(FormatArg::Json) => Format::Json,
        _ => Format::Csv,
    };
    let p = resolved.parameters;
    let prefix = echo_prefix(&resolved, format);

    if cli.plot.is_some()
        && !matches!(
            cli.command,
            Command::Simulate { .. } | Command::Scan { .. } | Command::Diagram { .. }
        )
    {
        return Err(CliError::Usage(
            "--plot is only supported for simulate, scan and diagram".into(),
        ));
    }

    match cli.command {
        Command::FixedPoints => {
            let rows = enumerate_fixed_points(&p)
                .into_iter()
                .map(|fp| {
                    vec![
                        fp.name.to_string(),
                        format!("{}", fp.location.x),
                        format!("{}", fp.location.y),
                        format!("{}", fp.eigenvalues[0].re),
                        format!("{}", fp.eigenvalues[0].im),
                        format!("{}", fp.eigenvalues[0].norm()),
                        format!("{}", fp.eigenvalues[1].re),
                        format!("{}", fp.eigenvalues[1].im),
                        format!("{}", fp.eigenvalues[1].norm()),
                        fp.kind.to_string(),
                    ]
                })
                .collect();
            let product = Product {
                command_echo: format!("{prefix} fixed-points"),
                resolved,
                extra: vec![],
                columns: vec![
                    "name", "x", "y", "eig1_re", "eig1_im", "eig1_mod", "eig2_re", "eig2_im",
                    "eig2_mod", "class",
                ],
                rows,
            };
            write_or_print(&product.render(format), cli.out.as_deref())?;
        }

        Command::Classify { target, margin } => {
            let name: FixedPointName = target.into();
            let location = match name {
                FixedPointName::E0 => State::new(0.0, 0.0),
                FixedPointName::E1 => State::new(1.0, 0.0),
                FixedPointName::Es => {
                    if p.s > 0.0 {
                        State::new(p.s, 0.0)
                    } else {
                        return Err(alleemap::Error::AbsentFixedPoint(name).into());
                    }
                }
                FixedPointName::Eplus => {
                    coexistence_point(&p).ok_or(alleemap::Error::AbsentFixedPoint(name))?
                }
            };
            let numeric = classify_numeric(&p, location, margin)?;
            let analytic = if name == FixedPointName::Eplus {
                classify_interior_analytic(&p)?
            } else {
                classify_boundary_analytic(&p, name)?
            };
            let product = Product {
                command_echo: format!(
                    "{prefix} classify --target {} --margin {margin}",
                    target_arg_name(name)
                ),
                resolved,
                extra: vec![("target".into(), name.to_string())],
                columns: vec!["method", "x", "y", "class"],
                rows: vec![
                    vec![
                        "numeric".into(),
                        format!("{}", location.x),
                        format!("{}", location.y),
                        numeric.to_string(),
                    ],
                    vec![
                        "analytic".into(),
                        format!("{}", location.x),
                        format!("{}", location.y),
                        analytic.to_string(),
                    ],
                ],
            };
            write_or_print(&product.render(format), cli.out.as_deref())?;
        }

        Command::Simulate {
            x0,
            y0,
            transient,
            steps,
            cap,
        } => {
            if steps == 0 {
                return Err(CliError::Usage("--steps must be at least 1".into()));
            }
            let orbit = iterate_orbit_with_cap(&p, State::new(x0, y0), transient, steps, cap);
            let divergence_note = match orbit.divergence {
                Some(d) => format!("at iterate {} (exponent {})", d.iterate, d.exponent),
                None => "none".into(),
            };
            let rows = orbit
                .states
                .iter()
                .enumerate()
                .map(|(k, st)| {
                    vec![
                        (transient + k + 1).to_string(),
                        format!("{}", st.x),
                        format!("{}", st.y),
                    ]
                })
                .collect();
            let product = Product {
                command_echo: format!(
                    "{prefix} simulate --x0 {x0} --y0 {y0} --transient {transient} \
                     --steps {steps} --cap {cap}"
                ),
                resolved,
                extra: vec![("divergence".into(), divergence_note)],
                columns: vec!["iterate", "x", "y"],
                rows,
            };
            write_or_print(&product.render(format), cli.out.as_deref())?;
            if let Some(plot) = &cli.plot {
                let points: Vec<(f64, f64)> = orbit.states.iter().map(|st| (st.x, st.y)).collect();
                let marks: Vec<(f64, f64)> = coexistence_point(&p)
                    .map(|fp| (fp.x, fp.y))
                    .into_iter()
                    .collect();
                let svg_text = svg::scatter(
                    &format!("orbit from ({x0}, {y0})"),
                    "x",
                    "y",
                    &[svg::Series {
                        points: &points,
                        color: "#202020",
                        radius: 1.5,
                        label: "",
                    }],
                    &marks,
                );
                std::fs::write(plot, svg_text)?;
            }
        }

        Command::Jacobian { x, y, step } => {
            if step.is_nan() || step <= 0.0 {
                return Err(CliError::Usage("--step must be positive".into()));
            }
            let st = State::new(x, y);
            let analytic = jacobian_analytic(&p, st);
            let fd = jacobian_fd(&p, st, step);
            let matrix_row = |label: &str, m: &Matrix2| {
                let eig = m.eigenvalues();
                vec![
                    label.to_string(),
                    format!("{}", m.m11),
                    format!("{}", m.m12),
                    format!("{}", m.m21),
                    format!("{}", m.m22),
                    format!("{}", m.trace()),
                    format!("{}", m.det()),
                    format!("{}", eig[0].re),
                    format!("{}", eig[0].im),
                    format!("{}", eig[1].re),
                    format!("{}", eig[1].im),
                ]
            };
            let product = Product {
                command_echo: format!("{prefix} jacobian --x {x} --y {y} --step {step}"),
                resolved,
                extra: vec![],
                columns: vec![
                    "method", "m11", "m12", "m21", "m22", "trace", "det", "eig1_re", "eig1_im",
                    "eig2_re", "eig2_im",
                ],
                rows: vec![matrix_row("analytic", &analytic), matrix_row("fd", &fd)],
            };
            write_or_print(&product.render(format), cli.out.as_deref())?;
        }

        Command::Ns {
            param,
            bracket,
            tol,
        } => {
            require_positive_tol(tol)?;
            let which: ParamId = param.into();
            let root = ns_locate(&p, which, (bracket[0], bracket[1]), tol)?;
            let pc = p.with(which, root)?;
            let conds = ns_nondegeneracy(&pc, which)?;
            println!("{which}_NS = {root:.6}");
            if let Some(out) = &cli.out {
                let product = Product {
                    command_echo: format!(
                        "{prefix} ns --param {which} --bracket {} {} --tol {tol}",
                        bracket[0], bracket[1]
                    ),
                    resolved,
                    extra: vec![],
                    columns: vec![
                        "param",
                        "critical_value",
                        "det_j",
                        "tr_j",
                        "discriminant",
                        "m1_0",
                        "transversality",
                        "resonance_ok",
                    ],
                    rows: vec![vec![
                        which.to_string(),
                        format!("{root}"),
                        format!("{}", conds.det_j),
                        format!("{}", conds.tr_j),
                        format!("{}", conds.discriminant),
                        format!("{}", conds.m1_0),
                        format!("{}", conds.transversality),
                        conds.resonance_ok.to_string(),
                    ]],
                };
                write_or_print(&product.render(format), Some(out))?;
            }
        }

        Command::NormalForm {
            param,
            bracket,
            at,
            tol,
        } => {
            require_positive_tol(tol)?;
            let which: ParamId = param.into();
            let critical = match (at, &bracket) {
                (Some(v), None) => v,
                (None, Some(b)) => ns_locate(&p, which, (b[0], b[1]), tol)?,
                _ => {
                    return Err(CliError::Usage(
                        "normal-form needs exactly one of --at or --bracket".into(),
                    ))
                }
            };
            let pc = p.with(which, critical)?;
            let report = normal_form(&pc, which)?;
            println!("{which}_NS = {critical:.6}");
            println!(
                "eigenvalue = {:.6} {:+.6}i  (modulus {:.12})",
                report.eigen_pair.re,
                report.eigen_pair.im,
                report.eigen_pair.norm()
            );
            println!(
                "transversality d|lambda|/d{which} = {:.6}",
                report.conditions.transversality
            );
            println!(
                "M1(0) = {:.6}  resonance_ok = {}",
                report.conditions.m1_0, report.conditions.resonance_ok
            );
            for (name, g) in ["gamma20", "gamma11", "gamma02", "gamma21"]
                .iter()
                .zip(report.gammas.iter())
            {
                println!("{name} = {:.6} {:+.6}i", g.re, g.im);
            }
            println!("sigma* = {:.6}", report.sigma_star);
            println!("direction: {}", report.direction);
            if let Some(out) = &cli.out {
                let echo_loc = match (at, &bracket) {
                    (Some(v), _) => format!("--at {v}"),
                    (None, Some(b)) => format!("--bracket {} {}", b[0], b[1]),
                    _ => unreachable!(),
                };
                let mut rows = vec![
                    vec![
                        "critical_value".into(),
                        format!("{critical}"),
                        String::new(),
                    ],
                    vec![
                        "eigenvalue".into(),
                        format!("{}", report.eigen_pair.re),
                        format!("{}", report.eigen_pair.im),
                    ],
                    vec![
                        "transversality".into(),
                        format!("{}", report.conditions.transversality),
                        String::new(),
                    ],
                    vec![
                        "m1_0".into(),
                        format!("{}", report.conditions.m1_0),
                        String::new(),
                    ],
                    vec![
                        "resonance_ok".into(),
                        report.conditions.resonance_ok.to_string(),
                        String::new(),
                    ],
                ];
                for (name, g) in ["gamma20", "gamma11", "gamma02", "gamma21"]
                    .iter()
                    .zip(report.gammas.iter())
                {
                    rows.push(vec![
                        name.to_string(),
                        format!("{}", g.re),
                        format!("{}", g.im),
                    ]);
                }
                rows.push(vec![
                    "sigma_star".into(),
                    format!("{}", report.sigma_star),
                    String::new(),
                ]);
                rows.push(vec![
                    "direction".into(),
                    report.direction.to_string(),
                    String::new(),
                ]);
                let product = Product {
                    command_echo: format!(
                        "{prefix} normal-form --param {which} {echo_loc} --tol {tol}"
                    ),
                    resolved,
                    extra: vec![],
                    columns: vec!["quantity", "value_re", "value_im"],
                    rows,
                };
                write_or_print(&product.render(format), Some(out))?;
            }
        }

        Command::Scan {
            target,
            x_param,
            x_range,
            y_param,
            y_range,
            n,
        } => {
            let name: FixedPointName = target.into();
            let x_axis = AxisSpec::new(x_param.into(), x_range[0], x_range[1], n);
            let y_axis = AxisSpec::new(y_param.into(), y_range[0], y_range[1], n);
            let grid = plane_scan(&p, x_axis, y_axis, name)?;
            let (product, svg_text) = render_grid(&grid, &resolved, &prefix, n);
            write_or_print(&product.render(format), cli.out.as_deref())?;
            if let Some(plot) = &cli.plot {
                std::fs::write(plot, svg_text)?;
            }
        }

        Command::Diagram {
            param,
            range,
            n,
            transient,
            keep,
            cold_start,
        } => {
            let which: ParamId = param.into();
            let opts = SweepOptions {
                n,
                warm_start: !cold_start,
                fate: FateOptions {
                    transient,
                    keep,
                    ..Default::default()
                },
            };
            let diagram = alleemap::bifurcation_diagram(&p, which, range[0], range[1], &opts)?;
            let (product, svg_text) =
                render_diagram(&diagram, &resolved, &prefix, range[0], range[1], &opts);
            write_or_print(&product.render(format), cli.out.as_deref())?;
            if let Some(plot) = &cli.plot {
                std::fs::write(plot, svg_text)?;
            }
        }

        Command::Threshold {
            param,
            bracket,
            tol,
            transient,
            keep,
        } => {
            require_positive_tol(tol)?;
            let which: ParamId = param.into();
            let opts = FateOptions {
                transient,
                keep,
                ..Default::default()
            };
            let threshold = extinction_threshold(&p, which, (bracket[0], bracket[1]), tol, &opts)?;
            println!("{which}_th = {threshold:.6}");
            if let Some(out) = &cli.out {
                let product = Product {
                    command_echo: format!(
                        "{prefix} threshold --param {which} --bracket {} {} --tol {tol} \
                         --transient {transient} --keep {keep}",
                        bracket[0], bracket[1]
                    ),
                    resolved,
                    extra: vec![],
                    columns: vec!["param", "threshold", "bracket_lo", "bracket_hi", "tol"],
                    rows: vec![vec![
                        which.to_string(),
                        format!("{threshold}"),
                        format!("{}", bracket[0]),
                        format!("{}", bracket[1]),
                        format!("{tol}"),
                    ]],
                };
                write_or_print(&product.render(format), Some(out))?;
            }
        }

        Command::Repro {
            figure,
            out_dir,
            grid_n,
            sweep_n,
            transient,
            keep,
        } => {
            let overrides = recipes::Overrides {
                grid_n,
                sweep_n,
                transient,
                keep,
            };
            recipes::run(&figure, &resolved, format, &out_dir, &overrides)?;
        }
    }
    Ok(())
}

pub(crate) fn render_grid(
    grid: &alleemap::ClassificationGrid,
    resolved: &ResolvedParameters,
    prefix: &str,
    n: usize,
) -> (Product, String) {
    let mut rows = Vec::with_capacity(grid.x_axis.n * grid.y_axis.n);
    for i in 0..grid.x_axis.n {
        let xv = grid.x_axis.cell_center(i);
        for (j, class) in grid.cells[i].iter().enumerate() {
            let yv = grid.y_axis.cell_center(j);
            rows.push(vec![format!("{xv}"), format!("{yv}"), class.to_string()]);
        }
    }
    let product = Product {
        command_echo: format!(
            "{prefix} scan --target {} --x-param {} --x-range {} {} \
             --y-param {} --y-range {} {} --n {n}",
            target_arg_name(grid.target),
            grid.x_axis.id,
            grid.x_axis.lo,
            grid.x_axis.hi,
            grid.y_axis.id,
            grid.y_axis.lo,
            grid.y_axis.hi
        ),
        resolved: resolved.clone(),
        extra: vec![("target".into(), grid.target.to_string())],
        columns: vec!["x_value", "y_value", "class"],
        rows,
    };
    let svg_text = svg::heatmap(
        &format!("classification of {}", grid.target),
        grid.x_axis.id.name(),
        grid.y_axis.id.name(),
        (grid.x_axis.lo, grid.x_axis.hi),
        (grid.y_axis.lo, grid.y_axis.hi),
        &grid.cells,
    );
    (product, svg_text)
}

pub(crate) fn render_diagram(
    diagram: &alleemap::BifurcationDiagram,
    resolved: &ResolvedParameters,
    prefix: &str,
    lo: f64,
    hi: f64,
    opts: &SweepOptions,
) -> (Product, String) {
    let mut rows = Vec::new();
    let mut x_points = Vec::new();
    let mut y_points = Vec::new();
    for point in &diagram.points {
        for st in &point.samples {
            rows.push(vec![
                format!("{}", point.value),
                format!("{}", st.x),
                format!("{}", st.y),
                point.fate.to_string(),
            ]);
            x_points.push((point.value, st.x));
            y_points.push((point.value, st.y));
        }
        if point.samples.is_empty() {
            rows.push(vec![
                format!("{}", point.value),
                String::new(),
                String::new(),
                point.fate.to_string(),
            ]);
        }
    }
    let cold_flag = if opts.warm_start { "" } else { " --cold-start" };
    let product = Product {
        command_echo: format!(
            "{prefix} diagram --param {} --range {lo} {hi} --n {} --transient {} \
             --keep {}{cold_flag}",
            diagram.param, opts.n, opts.fate.transient, opts.fate.keep
        ),
        resolved: resolved.clone(),
        extra: vec![],
        columns: vec!["value", "x", "y", "fate"],
        rows,
    };
    let svg_text = svg::scatter(
        &format!("bifurcation diagram in {}", diagram.param),
        diagram.param.name(),
        "density",
        &[
            svg::Series {
                points: &x_points,
                color: "#202020",
                radius: 0.8,
                label: "x",
            },
            svg::Series {
                points: &y_points,
                color: "#8888cc",
                radius: 0.8,
                label: "y",
            },
        ],
        &[],
    );
    (product, svg_text)
}
