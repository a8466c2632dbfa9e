//! Text renderers: CSV series, SVG line charts and plain-text tables.
//!
//! All output is built from fixed-precision formatting so identical inputs
//! give byte-identical results.

use std::fmt::Write as _;

use crate::config::RunConfig;
use crate::engine::{SeparationCell, SweepSeries};
use crate::linkbudget::{es_eirp_density_dbm_per_ghz, EsClass, Lobe};

/// A sweep series with the label used in the `series` column and legend.
#[derive(Debug, Clone)]
pub struct LabeledSeries {
    pub label: String,
    pub series: SweepSeries,
}

pub fn series_label(count: u32) -> String {
    format!("n{count}")
}

/// One-line summary of the parameters that determine every result.
pub fn assumptions_line(config: &RunConfig) -> String {
    let counts = config
        .series_counts()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "rsrp_dbm={:.3} noise_figure_db={:.3} temperature_k={:.3} frequency_hz={:.0} bandwidth_hz={:.0} count={} threshold_db={:.3}",
        config.rsrp_dbm,
        config.noise_figure_db,
        config.temperature_k,
        config.frequency_hz,
        config.bandwidth_hz,
        counts,
        config.threshold_db,
    )
}

const ASSUMPTION_NOTES: [&str; 2] = [
    "noise figure is a free parameter; 0 dB is used unless overridden",
    "reference separations of 100/500/2500 m for classes 1/2/3 were published without lobe, \
     transmitter count or noise figure; the distances here follow only from the parameters above",
];

/// CSV with header `distance_m,sinr_db` (single series) or
/// `distance_m,sinr_db,series` (multiple), values at 6 decimal places.
pub fn render_csv(series: &[LabeledSeries], multi: bool) -> String {
    let rows: usize = series.iter().map(|s| s.series.len()).sum();
    let mut out = String::with_capacity(32 * (rows + 1));
    out.push_str(if multi { "distance_m,sinr_db,series\n" } else { "distance_m,sinr_db\n" });
    for s in series {
        for p in &s.series.samples {
            if multi {
                let _ = writeln!(out, "{:.6},{:.6},{}", p.distance_m, p.sinr.value(), s.label);
            } else {
                let _ = writeln!(out, "{:.6},{:.6}", p.distance_m, p.sinr.value());
            }
        }
    }
    out
}

/// Parse CSV produced by [`render_csv`] back into `(distance, sinr, series)` rows.
pub fn parse_csv(text: &str) -> Result<Vec<(f64, f64, Option<String>)>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    let multi = match header {
        "distance_m,sinr_db" => false,
        "distance_m,sinr_db,series" => true,
        other => return Err(format!("unexpected header {other:?}")),
    };
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            let expected = if multi { 3 } else { 2 };
            if fields.len() != expected {
                return Err(format!("row {}: expected {expected} fields", i + 1));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1));
            Ok((num(fields[0])?, num(fields[1])?, multi.then(|| fields[2].to_string())))
        })
        .collect()
}

fn nice_step(span: f64, target_ticks: usize) -> f64 {
    let raw = span / target_ticks as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64, step: f64) -> String {
    if step >= 1.0 {
        format!("{v:.0}")
    } else {
        let decimals = (-step.log10()).ceil() as usize;
        format!("{v:.decimals$}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Static SVG line chart of SINR against distance, one polyline per series.
pub fn render_svg(series: &[LabeledSeries], config: &RunConfig) -> String {
    const W: f64 = 800.0;
    const H: f64 = 500.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 60.0;
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;

    let all = series.iter().flat_map(|s| s.series.samples.iter());
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in all {
        x_lo = x_lo.min(p.distance_m);
        x_hi = x_hi.max(p.distance_m);
        y_lo = y_lo.min(p.sinr.value());
        y_hi = y_hi.max(p.sinr.value());
    }
    if !x_lo.is_finite() {
        (x_lo, x_hi, y_lo, y_hi) = (config.d_start, config.d_stop, -1.0, 1.0);
    }
    let y_step = nice_step((y_hi - y_lo).max(1.0), 8);
    let (y_lo, y_hi) = ((y_lo / y_step).floor() * y_step, (y_hi / y_step).ceil() * y_step);
    let y_hi = if y_hi <= y_lo { y_lo + y_step } else { y_hi };
    let x_step = nice_step(x_hi - x_lo, 8);

    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let first = series.first().map(|s| &s.series.scenario);
    let title = match first {
        Some(s) => format!("{} ES {} to 5G UE: SINR vs distance", s.emitter.class, s.emitter.lobe),
        None => "SINR vs distance".to_string(),
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W:.0}" height="{H:.0}" viewBox="0 0 {W:.0} {H:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(&title));
    let _ = writeln!(svg, "<desc>{}", escape(&assumptions_line(config)));
    for note in ASSUMPTION_NOTES {
        let _ = writeln!(svg, "{}", escape(note));
    }
    svg.push_str("</desc>\n");
    let _ = writeln!(svg, r##"<rect x="0" y="0" width="{W:.0}" height="{H:.0}" fill="#ffffff"/>"##);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        W / 2.0,
        escape(&title)
    );

    // grid and tick labels
    svg.push_str(r##"<g stroke="#dddddd" stroke-width="1">"##);
    svg.push('\n');
    for x in ticks(x_lo, x_hi, x_step) {
        let _ = writeln!(svg, r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"#, sx(x), TOP, TOP + plot_h);
    }
    for y in ticks(y_lo, y_hi, y_step) {
        let _ = writeln!(svg, r#"<line x1="{1:.2}" y1="{0:.2}" x2="{2:.2}" y2="{0:.2}"/>"#, sy(y), LEFT, LEFT + plot_w);
    }
    svg.push_str("</g>\n");
    for x in ticks(x_lo, x_hi, x_step) {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            sx(x),
            TOP + plot_h + 18.0,
            tick_label(x, x_step)
        );
    }
    for y in ticks(y_lo, y_hi, y_step) {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            sy(y) + 4.0,
            tick_label(y, y_step)
        );
    }
    let _ = writeln!(
        svg,
        r##"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#000000"/>"##
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Distance (m)</text>"#,
        LEFT + plot_w / 2.0,
        H - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{0:.2}" text-anchor="middle" transform="rotate(-90 18 {0:.2})">SINR (dB)</text>"#,
        TOP + plot_h / 2.0
    );

    if (y_lo..=y_hi).contains(&config.threshold_db) {
        let y = sy(config.threshold_db);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#555555" stroke-dasharray="6 4"/>"##,
            LEFT + plot_w
        );
    }

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::with_capacity(16 * s.series.len());
        for (j, p) in s.series.samples.iter().enumerate() {
            if j > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{:.2},{:.2}", sx(p.distance_m), sy(p.sinr.value()));
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>"#
        );
    }

    // legend
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = TOP + 16.0 + 18.0 * i as f64;
        let x = LEFT + plot_w - 150.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/>"#,
            x + 24.0
        );
        let n = s.series.scenario.emitter.count.get();
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}">{} ({} Tx)</text>"#,
            x + 30.0,
            y + 4.0,
            escape(&s.label),
            n
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_distance(cell: &SeparationCell) -> String {
    match cell.result.distance() {
        Some(d) => format!("{d:.2}"),
        None => "unattainable".to_string(),
    }
}

/// Class × lobe separation-distance table with an assumptions header.
pub fn render_separation_table(cells: &[SeparationCell], config: &RunConfig) -> String {
    let mut out = String::new();
    out.push_str("# minimum ES-to-UE separation distance (m)\n");
    let _ = writeln!(out, "# {}", assumptions_line(config));
    for note in ASSUMPTION_NOTES {
        let _ = writeln!(out, "# {note}");
    }
    out.push_str("class | mainlobe_m | sidelobe_m\n");
    for class in EsClass::ALL {
        let find = |lobe: Lobe| {
            cells
                .iter()
                .find(|c| c.class == class && c.lobe == lobe)
                .map(format_distance)
                .unwrap_or_else(|| "-".to_string())
        };
        let _ = writeln!(out, "{class} | {} | {}", find(Lobe::Mainlobe), find(Lobe::Sidelobe));
    }
    out
}

/// The ES EIRP density table in dBm/GHz.
pub fn render_eirp_table() -> String {
    let mut out = String::from("# ES EIRP density (dBm/GHz)\nclass | mainlobe | sidelobe\n");
    for class in EsClass::ALL {
        let _ = writeln!(
            out,
            "{class} | {:.1} | {:.1}",
            es_eirp_density_dbm_per_ghz(class, Lobe::Mainlobe),
            es_eirp_density_dbm_per_ghz(class, Lobe::Sidelobe)
        );
    }
    out
}
