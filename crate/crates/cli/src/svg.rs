//! Minimal standalone SVG rendering: scatter plots and class heatmaps.
//! Inspection aids only; the delimited data files are the real product.

use alleemap::CellClass;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;

/// Cell colors fixed to match the classification legend:
/// sink green, source red, saddle blue, non-hyperbolic black, absent white.
pub fn class_color(class: CellClass) -> &'static str {
    match class {
        CellClass::Sink => "#00a000",
        CellClass::Source => "#d00000",
        CellClass::Saddle => "#0040d0",
        CellClass::NonHyperbolic => "#000000",
        CellClass::Absent => "#ffffff",
    }
}

struct Frame {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn from_bounds(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Self {
        let pad = |lo: f64, hi: f64| {
            let span = (hi - lo).abs();
            let pad = if span > 0.0 {
                0.05 * span
            } else {
                0.5 * lo.abs().max(1.0)
            };
            (lo - pad, hi + pad)
        };
        let (x_lo, x_hi) = pad(x_lo, x_hi);
        let (y_lo, y_hi) = pad(y_lo, y_hi);
        Frame {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_L + (x - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT
            - MARGIN_B
            - (y - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

fn open_svg(title: &str) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn axes(frame: &Frame, x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    let (x0, y0) = (MARGIN_L, HEIGHT - MARGIN_B);
    let (x1, y1) = (WIDTH - MARGIN_R, MARGIN_T);
    out.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let xv = frame.x_lo + t * (frame.x_hi - frame.x_lo);
        let yv = frame.y_lo + t * (frame.y_hi - frame.y_lo);
        let px = frame.px(xv);
        let py = frame.py(yv);
        out.push_str(&format!(
            "<line x1=\"{px}\" y1=\"{y0}\" x2=\"{px}\" y2=\"{}\" stroke=\"black\"/>\n\
             <text x=\"{px}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{:.4}</text>\n",
            y0 + 5.0,
            y0 + 18.0,
            xv
        ));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{py}\" x2=\"{x0}\" y2=\"{py}\" stroke=\"black\"/>\n\
             <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{:.4}</text>\n",
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0,
            yv
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>\n",
        (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
        escape(y_label)
    ));
    out
}

/// One scatter series: points plus a color and marker radius.
pub struct Series<'a> {
    pub points: &'a [(f64, f64)],
    pub color: &'static str,
    pub radius: f64,
    pub label: &'static str,
}

/// Renders scatter series over shared axes. Marked points (if any) are drawn
/// as larger red dots on top.
pub fn scatter(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series<'_>],
    marks: &[(f64, f64)],
) -> String {
    let all = series
        .iter()
        .flat_map(|s| s.points.iter())
        .chain(marks.iter())
        .collect::<Vec<_>>();
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in &all {
        x_lo = x_lo.min(*x);
        x_hi = x_hi.max(*x);
        y_lo = y_lo.min(*y);
        y_hi = y_hi.max(*y);
    }
    if all.is_empty() {
        (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
    }
    let frame = Frame::from_bounds(x_lo, x_hi, y_lo, y_hi);
    let mut out = open_svg(title);
    out.push_str(&axes(&frame, x_label, y_label));
    for s in series {
        for (x, y) in s.points {
            out.push_str(&format!(
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{}\" fill=\"{}\" fill-opacity=\"0.7\"/>\n",
                frame.px(*x),
                frame.py(*y),
                s.radius,
                s.color
            ));
        }
    }
    for (x, y) in marks {
        out.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"red\"/>\n",
            frame.px(*x),
            frame.py(*y)
        ));
    }
    let mut legend_y = MARGIN_T + 8.0;
    for s in series {
        if s.label.is_empty() {
            continue;
        }
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{legend_y}\" r=\"4\" fill=\"{}\"/>\n\
             <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            WIDTH - 130.0,
            s.color,
            WIDTH - 120.0,
            legend_y + 4.0,
            escape(s.label)
        ));
        legend_y += 18.0;
    }
    out.push_str("</svg>\n");
    out
}

/// Renders a classification grid. `cells[i][j]` colors the cell centered at
/// the i-th x and j-th y cell centers; horizontal runs of equal class merge
/// into single rectangles.
#[allow(clippy::needless_range_loop)]
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    x_range: (f64, f64),
    y_range: (f64, f64),
    cells: &[Vec<CellClass>],
) -> String {
    let nx = cells.len();
    let ny = if nx > 0 { cells[0].len() } else { 0 };
    let frame = Frame {
        x_lo: x_range.0,
        x_hi: x_range.1,
        y_lo: y_range.0,
        y_hi: y_range.1,
    };
    let mut out = open_svg(title);
    let cell_w = (WIDTH - MARGIN_L - MARGIN_R) / nx.max(1) as f64;
    let cell_h = (HEIGHT - MARGIN_T - MARGIN_B) / ny.max(1) as f64;
    for j in 0..ny {
        let py = MARGIN_T + (ny - 1 - j) as f64 * cell_h;
        let mut i = 0;
        while i < nx {
            let class = cells[i][j];
            let mut run = 1;
            while i + run < nx && cells[i + run][j] == class {
                run += 1;
            }
            if class != CellClass::Absent {
                let px = MARGIN_L + i as f64 * cell_w;
                out.push_str(&format!(
                    "<rect x=\"{px:.2}\" y=\"{py:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
                    cell_w * run as f64 + 0.1,
                    cell_h + 0.1,
                    class_color(class)
                ));
            }
            i += run;
        }
    }
    out.push_str(&axes(&frame, x_label, y_label));
    let legend = [
        CellClass::Sink,
        CellClass::Source,
        CellClass::Saddle,
        CellClass::NonHyperbolic,
        CellClass::Absent,
    ];
    let mut legend_y = MARGIN_T + 8.0;
    for class in legend {
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\" stroke=\"black\" \
             stroke-width=\"0.5\"/>\n\
             <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            WIDTH - 150.0,
            legend_y,
            class_color(class),
            WIDTH - 135.0,
            legend_y + 9.0,
            class
        ));
        legend_y += 16.0;
    }
    out.push_str("</svg>\n");
    out
}
