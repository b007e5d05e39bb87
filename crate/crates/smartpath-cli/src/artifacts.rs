//! Files written by `plan`: path.json, cert.json, samples.csv and plot.svg.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use smartpath::geometry::ConvexPolyhedron;
use smartpath::planner::{CertReport, PlanResult};
use smartpath::poly::{BernsteinPolynomial, PolynomialPath};

use crate::scene::SCHEMA;

/// Polynomial path as Bernstein control values on its domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathFile {
    pub schema: String,
    pub basis: String,
    pub degree: usize,
    pub domain: (f64, f64),
    /// `components[c][k]` multiplies `C(ν,k) u^k (1−u)^{ν−k}`, `u` the rescaled time.
    pub components: Vec<Vec<f64>>,
}

impl PathFile {
    pub fn new(path: &PolynomialPath<BernsteinPolynomial>) -> Self {
        Self {
            schema: SCHEMA.into(),
            basis: "bernstein".into(),
            degree: path.degree(),
            domain: path.domain(),
            components: path
                .components()
                .iter()
                .map(|c| c.ctrl().to_vec())
                .collect(),
        }
    }

    pub fn to_path(&self) -> PolynomialPath<BernsteinPolynomial> {
        let (a, b) = self.domain;
        PolynomialPath::new(
            self.components
                .iter()
                .map(|c| BernsteinPolynomial::new(c.clone(), a, b))
                .collect(),
            self.domain,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertFile {
    pub schema: String,
    pub all_pass: bool,
    pub nu: usize,
    pub tried: Vec<usize>,
    pub seed: u64,
    pub eps: f64,
    pub eps_prime: f64,
    pub waypoint_times: Vec<f64>,
    pub bridge_times: Vec<f64>,
    pub report: CertReport,
}

impl CertFile {
    pub fn new(result: &PlanResult, seed: u64) -> Self {
        Self {
            schema: SCHEMA.into(),
            all_pass: result.cert.all_pass,
            nu: result.nu,
            tried: result.tried.clone(),
            seed,
            eps: result.budget.eps,
            eps_prime: result.budget.eps_prime,
            waypoint_times: result.schedule.waypoint_times.clone(),
            bridge_times: result.schedule.bridge_times.clone(),
            report: result.cert.clone(),
        }
    }
}

/// 17 significant digits, so values survive a text round trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn samples_csv(path: &PolynomialPath<BernsteinPolynomial>, rows: usize) -> String {
    let rows = rows.max(2);
    let mut out = String::from("t");
    for c in 1..=path.dim() {
        write!(out, ",x{c}").unwrap();
    }
    out.push('\n');
    for k in 0..rows {
        let t = k as f64 / (rows - 1) as f64;
        out.push_str(&fmt_f64(t));
        for x in path.eval(t) {
            out.push(',');
            out.push_str(&fmt_f64(x));
        }
        out.push('\n');
    }
    out
}

/// Parses `samples.csv` back into `(t, x)` rows.
pub fn parse_samples_csv(text: &str) -> Result<Vec<(f64, Vec<f64>)>, String> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|line| {
            let values = line
                .split(',')
                .map(|v| v.parse::<f64>().map_err(|e| format!("{v}: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            let (t, x) = values.split_first().ok_or("empty row")?;
            Ok((*t, x.to_vec()))
        })
        .collect()
}

const PLOT_SAMPLES: usize = 1000;
const PLOT_SIZE: f64 = 640.0;
const PLOT_MARGIN: f64 = 20.0;
const FILLS: [&str; 6] = [
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860",
];

/// Regions, guide path, smoothed path and waypoints in the plane.
pub fn plot_svg(regions: &[ConvexPolyhedron], result: &PlanResult) -> String {
    let polygons: Vec<Vec<[f64; 2]>> = regions.iter().map(|r| r.polygon_vertices()).collect();
    let ts = (0..PLOT_SAMPLES).map(|k| k as f64 / (PLOT_SAMPLES - 1) as f64);
    let alpha: Vec<[f64; 2]> = ts.clone().map(|t| to2(&result.path.eval(t))).collect();
    let guide: Vec<[f64; 2]> = ts.map(|t| to2(&result.guide.eval(t))).collect();
    let waypoints: Vec<[f64; 2]> = result.schedule.waypoints.iter().map(|p| to2(p)).collect();

    let all = polygons.iter().flatten().chain(&alpha).chain(&guide);
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in all {
        for c in 0..2 {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (PLOT_SIZE - 2.0 * PLOT_MARGIN) / span;
    let map = |p: &[f64; 2]| {
        (
            PLOT_MARGIN + (p[0] - lo[0]) * scale,
            PLOT_SIZE - PLOT_MARGIN - (p[1] - lo[1]) * scale,
        )
    };
    let points = |ps: &[[f64; 2]]| {
        ps.iter()
            .map(|p| {
                let (x, y) = map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PLOT_SIZE}" height="{PLOT_SIZE}" viewBox="0 0 {PLOT_SIZE} {PLOT_SIZE}">"#
    )
    .unwrap();
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, poly) in polygons.iter().enumerate() {
        if poly.len() >= 3 {
            writeln!(
                svg,
                r#"<polygon points="{}" fill="{}" fill-opacity="0.25" stroke="{}" stroke-width="1"/>"#,
                points(poly),
                FILLS[i % FILLS.len()],
                FILLS[i % FILLS.len()]
            )
            .unwrap();
        }
    }
    writeln!(svg, r#"<polyline points="{}" fill="none" stroke="gray" stroke-width="1" stroke-dasharray="4 3"/>"#, points(&guide))
        .unwrap();
    writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        points(&alpha)
    )
    .unwrap();
    for p in &waypoints {
        let (x, y) = map(p);
        writeln!(
            svg,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="crimson"/>"#
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

fn to2(x: &[f64]) -> [f64; 2] {
    [x[0], x[1]]
}

/// Writes every artifact of a plan into `dir`.
pub fn write_all(
    dir: &Path,
    regions: &[ConvexPolyhedron],
    result: &PlanResult,
    csv_rows: usize,
    seed: u64,
) -> io::Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: &str, body: String| -> io::Result<()> {
        std::fs::write(dir.join(name), body)?;
        written.push(name.to_string());
        Ok(())
    };
    put(
        "path.json",
        serde_json::to_string_pretty(&PathFile::new(&result.path))? + "\n",
    )?;
    put(
        "cert.json",
        serde_json::to_string_pretty(&CertFile::new(result, seed))? + "\n",
    )?;
    put("samples.csv", samples_csv(&result.path, csv_rows))?;
    if result.path.dim() == 2 {
        put("plot.svg", plot_svg(regions, result))?;
    }
    Ok(written)
}
