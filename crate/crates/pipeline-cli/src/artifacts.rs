use std::fs;
use std::path::{Path, PathBuf};

use na_memd::{decomposition_diagnostics, DiagnosticsRow};

use crate::config::LeakageMode;
use crate::error::{PipelineError, Result};
use crate::experiment::{Experiment, RunArtifacts};

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| PipelineError::Io {
        path: dir.display().to_string(),
        source,
    })
}

/// `imfs_<channel>.csv` for every channel plus `diagnostics.csv`.
pub fn write_decomposition(experiment: &Experiment, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let decomp = experiment.decomposition();
    let mut written = Vec::new();
    for (idx, name) in decomp.channel_names().iter().enumerate() {
        let path = dir.join(format!("imfs_{}.csv", sanitize(name)));
        write(&path, &decomp.channel_csv(idx))?;
        written.push(path);
    }
    let original = match experiment.config().leakage_mode {
        LeakageMode::WholeSeries => experiment.series().clone(),
        LeakageMode::TrainOnly => experiment.series().prefix(experiment.n_train())?,
    };
    let rows = decomposition_diagnostics(decomp, &original)?;
    let path = dir.join("diagnostics.csv");
    write(&path, &diagnostics_table(&rows))?;
    written.push(path);
    Ok(written)
}

/// `report.json`: one object per model/variant/horizon, plus
/// `report_table.csv` with rows horizon×variant and columns models×criteria.
pub fn write_forecast_reports(artifacts: &RunArtifacts, dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let report_json = dir.join("report.json");
    write(
        &report_json,
        &serde_json::to_string_pretty(&artifacts.reports).expect("reports serialize"),
    )?;
    let table = dir.join("report_table.csv");
    write(&table, &report_table(artifacts))?;
    Ok(vec![report_json, table])
}

/// `dm_tests.json`: pooled decomposed-vs-single comparison per model.
pub fn write_dm_tests(artifacts: &RunArtifacts, dir: &Path) -> Result<PathBuf> {
    ensure_dir(dir)?;
    let dm_json = dir.join("dm_tests.json");
    write(
        &dm_json,
        &serde_json::to_string_pretty(&artifacts.dm_tests).expect("dm tests serialize"),
    )?;
    Ok(dm_json)
}

fn report_table(artifacts: &RunArtifacts) -> String {
    // Preserve first-seen model order and ascending horizons.
    let mut models: Vec<&str> = Vec::new();
    let mut horizons: Vec<usize> = Vec::new();
    for entry in &artifacts.reports {
        if !models.contains(&entry.model.as_str()) {
            models.push(&entry.model);
        }
        if !horizons.contains(&entry.horizon) {
            horizons.push(entry.horizon);
        }
    }
    horizons.sort_unstable();

    let mut out = String::from("horizon,variant");
    for model in &models {
        for criterion in ["mape", "rmse", "dstat"] {
            out.push_str(&format!(",{model}_{criterion}"));
        }
    }
    out.push('\n');
    for &horizon in &horizons {
        for variant in ["single", "decomposed"] {
            out.push_str(&format!("{horizon},{variant}"));
            for model in &models {
                let entry = artifacts.reports.iter().find(|e| {
                    e.model == *model && e.horizon == horizon && e.variant.label() == variant
                });
                match entry {
                    Some(e) => out.push_str(&format!(",{},{},{}", e.mape, e.rmse, e.dstat)),
                    None => out.push_str(",,,"),
                }
            }
            out.push('\n');
        }
    }
    out
}

fn diagnostics_table(rows: &[DiagnosticsRow]) -> String {
    let mut out = String::from("channel,component,mean_period,pearson_correlation\n");
    for row in rows {
        let period = row.mean_period.map(|p| p.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.channel, row.component, period, row.correlation
        ));
    }
    out
}

pub(crate) fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect()
}
