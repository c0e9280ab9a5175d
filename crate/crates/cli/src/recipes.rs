//! Preconfigured reproduction recipes for the nine reference figures.
//!
//! Grids (fig1-fig4) classify E1 or Es over the (s, w) plane at beta = 1.3,
//! theta = 0.13 and alpha in {8.4, 9.4, 10}; diagrams (fig5-fig9) sweep one
//! parameter across its bifurcation, locate the critical value, compute the
//! normal form where the sweep parameter crosses it, and bisect the
//! extinction threshold where one exists. Phase portraits accompany each
//! diagram at the parameter values its caption singles out.

use crate::config::{ParameterSource, ResolvedParameters};
use crate::output::Format;
use crate::svg;
use crate::{echo_prefix, render_diagram, render_grid, CliError};
use alleemap::{
    bifurcation_diagram, coexistence_point, extinction_threshold, iterate_orbit, normal_form,
    ns_locate, plane_scan, standard_seed, AxisSpec, FateOptions, FixedPointName, ParamId,
    Parameters, SweepOptions,
};
use std::path::Path;

#[derive(Debug, Default, Clone, Copy)]
pub struct Overrides {
    pub grid_n: Option<usize>,
    pub sweep_n: Option<usize>,
    pub transient: Option<usize>,
    pub keep: Option<usize>,
}

struct GridRecipe {
    label: &'static str,
    target: FixedPointName,
    alpha: f64,
}

struct DiagramRecipe {
    which: ParamId,
    sweep: (f64, f64),
    ns_bracket: (f64, f64),
    /// Extinction-threshold bracket, when the figure reports a collapse.
    threshold_bracket: Option<(f64, f64)>,
    /// Portrait parameter values; the critical value is appended at runtime.
    portraits: &'static [f64],
    /// Compute the normal form at the critical point (the beta figure).
    with_normal_form: bool,
}

fn grid_recipes(figure: &str) -> Option<Vec<GridRecipe>> {
    match figure {
        "fig1" => Some(vec![
            GridRecipe {
                label: "fig1a",
                target: FixedPointName::E1,
                alpha: 8.4,
            },
            GridRecipe {
                label: "fig1b",
                target: FixedPointName::E1,
                alpha: 9.4,
            },
        ]),
        "fig2" => Some(vec![GridRecipe {
            label: "fig2",
            target: FixedPointName::E1,
            alpha: 10.0,
        }]),
        "fig3" => Some(vec![
            GridRecipe {
                label: "fig3a",
                target: FixedPointName::Es,
                alpha: 8.4,
            },
            GridRecipe {
                label: "fig3b",
                target: FixedPointName::Es,
                alpha: 9.4,
            },
        ]),
        "fig4" => Some(vec![GridRecipe {
            label: "fig4",
            target: FixedPointName::Es,
            alpha: 10.0,
        }]),
        _ => None,
    }
}

fn diagram_recipe(figure: &str) -> Option<DiagramRecipe> {
    match figure {
        "fig5" => Some(DiagramRecipe {
            which: ParamId::S,
            sweep: (0.2, 0.27),
            ns_bracket: (0.20, 0.26),
            threshold_bracket: Some((0.25, 0.27)),
            portraits: &[0.23, 0.25, 0.262],
            with_normal_form: false,
        }),
        "fig6" => Some(DiagramRecipe {
            which: ParamId::W,
            sweep: (2.0, 2.5),
            ns_bracket: (2.0, 2.5),
            threshold_bracket: None,
            portraits: &[2.2, 2.35],
            with_normal_form: false,
        }),
        "fig7" => Some(DiagramRecipe {
            which: ParamId::Beta,
            sweep: (1.30, 1.40),
            ns_bracket: (1.30, 1.40),
            threshold_bracket: Some((1.35, 1.45)),
            portraits: &[1.34, 1.35, 1.36],
            with_normal_form: true,
        }),
        "fig8" => Some(DiagramRecipe {
            which: ParamId::Alpha,
            sweep: (7.75, 8.15),
            ns_bracket: (8.0, 8.1),
            threshold_bracket: Some((7.8, 8.03)),
            portraits: &[7.8, 8.03, 8.06],
            with_normal_form: false,
        }),
        "fig9" => Some(DiagramRecipe {
            which: ParamId::Theta,
            sweep: (0.118, 0.130),
            ns_bracket: (0.120, 0.130),
            threshold_bracket: Some((0.120, 0.1253)),
            portraits: &[0.124, 0.1253, 0.126],
            with_normal_form: false,
        }),
        _ => None,
    }
}

pub fn run(
    figure: &str,
    resolved: &ResolvedParameters,
    format: Format,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)?;
    if let Some(grids) = grid_recipes(figure) {
        return run_grids(&grids, resolved, format, out_dir, overrides);
    }
    if let Some(recipe) = diagram_recipe(figure) {
        return run_diagram(figure, &recipe, resolved, format, out_dir, overrides);
    }
    Err(CliError::Usage(format!(
        "unknown figure {figure:?}; expected fig1..fig9"
    )))
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn run_grids(
    grids: &[GridRecipe],
    resolved: &ResolvedParameters,
    format: Format,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<(), CliError> {
    let n = overrides.grid_n.unwrap_or(400);
    for recipe in grids {
        // The grid sweeps s and w; alpha comes from the recipe, beta and
        // theta from the resolved configuration.
        let base = Parameters::new(
            resolved.parameters.s,
            resolved.parameters.w,
            recipe.alpha,
            resolved.parameters.beta,
            resolved.parameters.theta,
        )?;
        let grid_resolved = ResolvedParameters {
            parameters: base,
            source: match &resolved.source {
                ParameterSource::Raw(raw) => ParameterSource::Raw(*raw),
                _ => ParameterSource::Dimensionless,
            },
        };
        let x_axis = AxisSpec::new(ParamId::S, 0.0, 4.0, n);
        let y_axis = AxisSpec::new(ParamId::W, 0.0, 3.0, n);
        let grid = plane_scan(&base, x_axis, y_axis, recipe.target)?;
        let prefix = echo_prefix(&grid_resolved, format);
        let (product, svg_text) = render_grid(&grid, &grid_resolved, &prefix, n);
        let data_path = out_dir.join(format!("{}_grid.{}", recipe.label, ext(format)));
        std::fs::write(&data_path, product.render(format))?;
        let plot_path = out_dir.join(format!("{}_grid.svg", recipe.label));
        std::fs::write(&plot_path, svg_text)?;

        let mut counts = std::collections::BTreeMap::new();
        for class in grid.cells.iter().flatten() {
            *counts.entry(class.to_string()).or_insert(0_usize) += 1;
        }
        let summary: Vec<String> = counts
            .iter()
            .map(|(class, count)| format!("{class}: {count}"))
            .collect();
        println!(
            "{}: {} grid at alpha = {} -> {} ({})",
            recipe.label,
            grid.target,
            recipe.alpha,
            data_path.display(),
            summary.join(", ")
        );
    }
    Ok(())
}

fn run_diagram(
    figure: &str,
    recipe: &DiagramRecipe,
    resolved: &ResolvedParameters,
    format: Format,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<(), CliError> {
    let p = resolved.parameters;
    let which = recipe.which;
    let fate = FateOptions {
        transient: overrides.transient.unwrap_or(10_000),
        keep: overrides.keep.unwrap_or(200),
        ..Default::default()
    };
    let opts = SweepOptions {
        n: overrides.sweep_n.unwrap_or(600),
        warm_start: true,
        fate,
    };

    let diagram = bifurcation_diagram(&p, which, recipe.sweep.0, recipe.sweep.1, &opts)?;
    let prefix = echo_prefix(resolved, format);
    let (product, svg_text) = render_diagram(
        &diagram,
        resolved,
        &prefix,
        recipe.sweep.0,
        recipe.sweep.1,
        &opts,
    );
    let data_path = out_dir.join(format!("{figure}_diagram.{}", ext(format)));
    std::fs::write(&data_path, product.render(format))?;
    std::fs::write(out_dir.join(format!("{figure}_diagram.svg")), svg_text)?;

    let critical = ns_locate(&p, which, recipe.ns_bracket, 1e-12)?;
    let mut summary = format!("{which}_NS = {critical:.6}");

    if recipe.with_normal_form {
        let pc = p.with(which, critical)?;
        let report = normal_form(&pc, which)?;
        summary.push_str(&format!(
            ", sigma* = {:.6} ({})",
            report.sigma_star, report.direction
        ));
    }
    if let Some(bracket) = recipe.threshold_bracket {
        let threshold = extinction_threshold(&p, which, bracket, 1e-4, &fate)?;
        summary.push_str(&format!(", {which}_th = {threshold:.6}"));
    }

    // Phase portraits at the caption values plus the critical point itself.
    let mut portrait_values: Vec<f64> = recipe.portraits.to_vec();
    portrait_values.push(critical);
    portrait_values.sort_by(f64::total_cmp);
    for (index, value) in portrait_values.iter().enumerate() {
        let pv = p.with(which, *value)?;
        let seed = standard_seed(&pv);
        let orbit = iterate_orbit(&pv, seed, fate.transient, fate.keep.max(400));
        let points: Vec<(f64, f64)> = orbit.states.iter().map(|st| (st.x, st.y)).collect();
        let marks: Vec<(f64, f64)> = coexistence_point(&pv)
            .map(|fp| (fp.x, fp.y))
            .into_iter()
            .collect();
        let portrait = svg::scatter(
            &format!("phase portrait at {which} = {value}"),
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
        let path = out_dir.join(format!("{figure}_portrait_{}.svg", index + 1));
        std::fs::write(&path, portrait)?;
    }

    println!(
        "{figure}: {} ({} portraits) -> {}",
        summary,
        portrait_values.len(),
        data_path.display()
    );
    Ok(())
}
