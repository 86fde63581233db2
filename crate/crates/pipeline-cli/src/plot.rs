use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{PipelineError, Result};
use crate::experiment::ReportEntry;

const WIDTH: f64 = 900.0;
const PANEL_HEIGHT: f64 = 110.0;
const MARGIN: f64 = 46.0;
const PAD: f64 = 12.0;

fn polyline(values: &[f64], top: f64, height: f64) -> String {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if max > min { max - min } else { 1.0 };
    let step = if values.len() > 1 {
        (WIDTH - 2.0 * MARGIN) / (values.len() - 1) as f64
    } else {
        0.0
    };
    let points: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(t, v)| {
            let x = MARGIN + t as f64 * step;
            let norm = (v - min) / span;
            let y = top + PAD + (1.0 - norm) * (height - 2.0 * PAD);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    points.join(" ")
}

fn panel(label: &str, values: &[f64], index: usize, color: &str) -> String {
    let top = index as f64 * PANEL_HEIGHT;
    format!(
        concat!(
            "  <g class=\"panel\">\n",
            "    <rect x=\"{margin}\" y=\"{top:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" ",
            "fill=\"none\" stroke=\"#ccc\"/>\n",
            "    <text x=\"{tx}\" y=\"{ty:.2}\" font-size=\"12\" font-family=\"monospace\">{label}</text>\n",
            "    <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" points=\"{points}\"/>\n",
            "  </g>\n"
        ),
        margin = MARGIN,
        top = top + 4.0,
        w = WIDTH - 2.0 * MARGIN,
        h = PANEL_HEIGHT - 8.0,
        tx = MARGIN + 6.0,
        ty = top + 18.0,
        label = label,
        points = polyline(values, top + 4.0, PANEL_HEIGHT - 8.0),
        color = color,
    )
}

/// Stacked mode panels for one channel: the original series on top, then the
/// IMFs from highest to lowest frequency, then the residue.
pub fn decomposition_svg(channel: &str, imfs: &[Vec<f64>], residue: &[f64]) -> String {
    let mut original = residue.to_vec();
    for imf in imfs {
        for (o, v) in original.iter_mut().zip(imf) {
            *o += v;
        }
    }
    let panels = imfs.len() + 2;
    let height = panels as f64 * PANEL_HEIGHT;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\">\n"
    );
    svg.push_str(&panel(&format!("{channel} (original)"), &original, 0, "#1f5fa8"));
    for (j, imf) in imfs.iter().enumerate() {
        svg.push_str(&panel(&format!("imf_{}", j + 1), imf, j + 1, "#2e7d32"));
    }
    svg.push_str(&panel("residue", residue, panels - 1, "#b34700"));
    svg.push_str("</svg>\n");
    svg
}

/// Actual-versus-forecast overlay for one report entry.
pub fn overlay_svg(title: &str, actuals: &[f64], forecasts: &[f64]) -> String {
    let height = 3.0 * PANEL_HEIGHT;
    let all: Vec<f64> = actuals.iter().chain(forecasts).cloned().collect();
    let min = all.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = all.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if max > min { max - min } else { 1.0 };
    let step = if actuals.len() > 1 {
        (WIDTH - 2.0 * MARGIN) / (actuals.len() - 1) as f64
    } else {
        0.0
    };
    let line = |values: &[f64]| -> String {
        values
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let x = MARGIN + t as f64 * step;
                let y = PAD + 30.0 + (1.0 - (v - min) / span) * (height - 2.0 * PAD - 60.0);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
            "  <text x=\"{tx}\" y=\"20\" font-size=\"14\" font-family=\"monospace\">{title}</text>\n",
            "  <text x=\"{tx}\" y=\"38\" font-size=\"12\" font-family=\"monospace\" fill=\"#1f5fa8\">actual</text>\n",
            "  <text x=\"{tx2}\" y=\"38\" font-size=\"12\" font-family=\"monospace\" fill=\"#b32d00\">forecast</text>\n",
            "  <polyline class=\"actual\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"{actual}\"/>\n",
            "  <polyline class=\"forecast\" fill=\"none\" stroke=\"#b32d00\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\" points=\"{forecast}\"/>\n",
            "</svg>\n"
        ),
        w = WIDTH,
        h = height,
        tx = MARGIN,
        tx2 = MARGIN + 60.0,
        title = title,
        actual = line(actuals),
        forecast = line(forecasts),
    )
}

/// Renders plots from a directory previously produced by the pipeline: one
/// stacked-modes SVG per `imfs_<channel>.csv`, one overlay SVG per entry in
/// `report.json`.
pub fn emit_plots(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();

    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|source| PipelineError::Io { path: dir.display().to_string(), source })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    entries.sort();

    for path in &entries {
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        let Some(channel) = name.strip_prefix("imfs_").and_then(|n| n.strip_suffix(".csv"))
        else {
            continue;
        };
        let text = fs::read_to_string(path).map_err(|source| PipelineError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let (imfs, residue) = parse_imfs_csv(&text, path)?;
        let svg_path = dir.join(format!("modes_{channel}.svg"));
        fs::write(&svg_path, decomposition_svg(channel, &imfs, &residue)).map_err(|source| {
            PipelineError::Io { path: svg_path.display().to_string(), source }
        })?;
        written.push(svg_path);
    }

    let report_path = dir.join("report.json");
    if report_path.exists() {
        let text = fs::read_to_string(&report_path).map_err(|source| PipelineError::Io {
            path: report_path.display().to_string(),
            source,
        })?;
        let reports: Vec<ReportEntry> =
            serde_json::from_str(&text).map_err(|e| PipelineError::Config {
                line: None,
                message: format!("report.json: {e}"),
            })?;
        for entry in &reports {
            let title = format!(
                "{} {} h{} (MAPE {:.4})",
                entry.model,
                entry.variant.label(),
                entry.horizon,
                entry.mape
            );
            let svg_path = dir.join(format!(
                "forecast_{}_{}_h{}.svg",
                crate::artifacts::sanitize(&entry.model),
                entry.variant.label(),
                entry.horizon
            ));
            fs::write(&svg_path, overlay_svg(&title, &entry.actuals, &entry.forecasts))
                .map_err(|source| PipelineError::Io {
                    path: svg_path.display().to_string(),
                    source,
                })?;
            written.push(svg_path);
        }
    }
    Ok(written)
}

fn parse_imfs_csv(text: &str, path: &Path) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let bad = |message: String| PipelineError::Config { line: None, message };
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad(format!("{}: empty file", path.display())))?;
    let columns = header.split(',').count();
    if columns < 2 {
        return Err(bad(format!("{}: expected date,imf…,residue columns", path.display())));
    }
    let imf_count = columns - 2;
    let mut imfs = vec![Vec::new(); imf_count];
    let mut residue = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns {
            return Err(bad(format!("{}: ragged row", path.display())));
        }
        for (j, field) in fields[1..columns - 1].iter().enumerate() {
            imfs[j].push(field.parse().map_err(|_| {
                bad(format!("{}: bad number `{field}`", path.display()))
            })?);
        }
        residue.push(fields[columns - 1].parse().map_err(|_| {
            bad(format!("{}: bad number in residue", path.display()))
        })?);
    }
    Ok((imfs, residue))
}
