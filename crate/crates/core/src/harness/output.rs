//! CSV and SVG emitters. Every file is written atomically.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fsio::write_atomic;
use crate::harness::run::LearningCurve;
use crate::harness::sweep::{CellKey, ResultGrid};
use crate::learners::Algorithm;

pub const RESULTS_HEADER: &str = "algorithm,alpha,lambda,lambda_replay,episodes,trials,mean_rmse,stderr_rmse";
pub const CURVE_HEADER: &str = "algorithm,alpha,lambda,lambda_replay,trial,episode,rmse";

pub fn results_csv_string(grid: &ResultGrid) -> String {
    let mut out = format!("{RESULTS_HEADER}\n");
    for cell in &grid.cells {
        let k = &cell.key;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            k.algorithm,
            k.alpha,
            k.lambda,
            k.lambda_replay,
            cell.episodes,
            cell.trials,
            cell.mean_rmse(),
            cell.stderr_rmse()
        )
        .expect("writing to a String");
    }
    out
}

pub fn write_results_csv(grid: &ResultGrid, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), results_csv_string(grid).as_bytes())
}

/// Trials are numbered from 0, episodes from 1.
pub fn curves_csv_string(curves: &[LearningCurve]) -> String {
    let mut out = format!("{CURVE_HEADER}\n");
    for curve in curves {
        let h = &curve.hyper;
        for (trial, rmses) in curve.per_trial.iter().enumerate() {
            for (episode, rmse) in rmses.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    curve.algorithm,
                    h.alpha,
                    h.lambda,
                    h.lambda_replay,
                    trial,
                    episode + 1,
                    rmse
                )
                .expect("writing to a String");
            }
        }
    }
    out
}

pub fn write_curve_csv(curves: &[LearningCurve], path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), curves_csv_string(curves).as_bytes())
}

/// One parsed row of a results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub key: CellKey,
    pub episodes: usize,
    pub trials: usize,
    pub mean_rmse: f64,
    pub stderr_rmse: f64,
}

pub fn read_results_csv(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let path = path.as_ref();
    let parse_err = |line: u64, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => parse_err(0, format!("{other:?}")),
    })?;
    let header = reader.headers().map_err(|e| parse_err(1, e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != RESULTS_HEADER {
        return Err(parse_err(1, format!("expected header `{RESULTS_HEADER}`")));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let num = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| parse_err(line, format!("bad number `{}`", &record[i])))
        };
        let count = |i: usize| -> Result<usize> {
            record[i]
                .parse()
                .map_err(|_| parse_err(line, format!("bad count `{}`", &record[i])))
        };
        let algorithm: Algorithm = record[0].parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
        rows.push(ResultRow {
            key: CellKey {
                algorithm,
                alpha: num(1)?,
                lambda: num(2)?,
                lambda_replay: num(3)?,
            },
            episodes: count(4)?,
            trials: count(5)?,
            mean_rmse: num(6)?,
            stderr_rmse: num(7)?,
        });
    }
    Ok(rows)
}

/// A named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotLabels {
    pub title: String,
    pub x: String,
    pub y: String,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders a standalone SVG 1.1 line chart, one polyline per series.
/// Non-finite points break the line.
pub fn svg_string(series: &[Series], labels: &PlotLabels) -> String {
    let finite = || series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x_min, mut x_max, mut y_min, mut y_max) = finite().fold(
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
        |(a, b, c, d), &(x, y)| (a.min(x), b.max(x), c.min(y), d.max(y)),
    );
    if x_min > x_max {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    y_min = y_min.min(0.0);
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| TOP + plot_h - (y - y_min) / (y_max - y_min) * plot_h;

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(&labels.title)
    );
    let _ = writeln!(
        w,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let (x, y) = (x_min + f * (x_max - x_min), y_min + f * (y_max - y_min));
        let _ = writeln!(
            w,
            r#"<line x1="{0:.1}" y1="{1:.1}" x2="{0:.1}" y2="{2:.1}" stroke="black"/><text x="{0:.1}" y="{3:.1}" text-anchor="middle">{4}</text>"#,
            sx(x),
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 19.0,
            tick(x)
        );
        let _ = writeln!(
            w,
            r#"<line x1="{0:.1}" y1="{1:.1}" x2="{2:.1}" y2="{1:.1}" stroke="black"/><text x="{3:.1}" y="{4:.1}" text-anchor="end">{5}</text>"#,
            LEFT - 5.0,
            sy(y),
            LEFT,
            LEFT - 8.0,
            sy(y) + 4.0,
            tick(y)
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 18.0,
        escape(&labels.x)
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{0:.1}" text-anchor="middle" transform="rotate(-90 18 {0:.1})">{1}</text>"#,
        TOP + plot_h / 2.0,
        escape(&labels.y)
    );

    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        for run in s.points.split(|(x, y)| !(x.is_finite() && y.is_finite())) {
            if run.is_empty() {
                continue;
            }
            let pts: Vec<String> = run.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            let _ = writeln!(
                w,
                r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{colour}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    let _ = writeln!(w, "</svg>");
    out
}

fn tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

pub fn emit_svg_curves(series: &[Series], labels: &PlotLabels, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), svg_string(series, labels).as_bytes())
}

/// Mean RMSE per episode, one series per curve.
pub fn learning_curve_series(curves: &[LearningCurve]) -> Vec<Series> {
    curves
        .iter()
        .map(|c| Series {
            label: series_label(c.algorithm, c.hyper.lambda, c.hyper.lambda_replay),
            points: c.mean().into_iter().enumerate().map(|(e, m)| ((e + 1) as f64, m)).collect(),
        })
        .collect()
}

/// Mean RMSE against α, one series per (algorithm, λ, λ́).
pub fn sweep_series(grid: &ResultGrid) -> Vec<Series> {
    let mut series: Vec<Series> = Vec::new();
    let mut current: Option<(Algorithm, f64, f64)> = None;
    for cell in &grid.cells {
        let k = &cell.key;
        let id = (k.algorithm, k.lambda, k.lambda_replay);
        if current != Some(id) {
            series.push(Series {
                label: series_label(k.algorithm, k.lambda, k.lambda_replay),
                points: Vec::new(),
            });
            current = Some(id);
        }
        series.last_mut().expect("pushed above").points.push((k.alpha, cell.mean_rmse()));
    }
    series
}

fn series_label(algorithm: Algorithm, lambda: f64, lambda_replay: f64) -> String {
    match algorithm {
        Algorithm::Replan => format!("replan λ={lambda}"),
        Algorithm::ReplanInterp => format!("replan λ={lambda} λ́={lambda_replay}"),
        Algorithm::TrueOnlineTd => format!("true online TD λ={lambda}"),
        Algorithm::Td0 => "TD(0)".to_string(),
        Algorithm::Dyna => "Dyna".to_string(),
    }
}
