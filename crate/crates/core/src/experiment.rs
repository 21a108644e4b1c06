//! Threshold × band-count sweeps and the batch experiment runner.
//!
//! For each threshold the selection loop runs once with the largest band
//! budget; every requested band count then classifies the corresponding
//! prefix of the retained list. Cells whose band count exceeds the retained
//! list stay blank.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_bands, ClassificationReport, SvmParams};
use crate::dataset::{
    encode_pgm, load_cube, load_ground_truth, split_train_test, GroundTruth, HyperCube, SplitMask,
};
use crate::error::{Error, Result};
use crate::glcm::{Feature, GlcmConfig};
use crate::mi::MaskMode;
use crate::published;
use crate::selection::{rank_bands, select_from_ranking, Algorithm, Ordering, SelectionConfig, SelectionResult};
use crate::util::fmt_percent;

/// Overall accuracy per `(band count, threshold)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub thresholds: Vec<f64>,
    pub x_values: Vec<usize>,
    /// `cells[row][col]` for `x_values[row]`, `thresholds[col]`.
    pub cells: Vec<Vec<Option<f64>>>,
}

impl SweepTable {
    /// First column `X`, then one column per threshold; blank cells are
    /// empty strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("X");
        for t in &self.thresholds {
            out.push_str(&format!(",{t}"));
        }
        out.push('\n');
        for (x, row) in self.x_values.iter().zip(&self.cells) {
            out.push_str(&x.to_string());
            for cell in row {
                out.push(',');
                if let Some(v) = cell {
                    out.push_str(&fmt_percent(*v));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Highest cell; ties keep the first in row-major order.
    pub fn best_cell(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, usize, f64)> = None;
        for (r, row) in self.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if let Some(v) = *cell {
                    if best.is_none_or(|(_, _, b)| v > b) {
                        best = Some((r, c, v));
                    }
                }
            }
        }
        best
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub table: SweepTable,
    /// One selection per threshold, run with the largest band count.
    pub selections: Vec<SelectionResult>,
    /// Reports in the same layout as `table.cells`.
    pub reports: Vec<Vec<Option<ClassificationReport>>>,
    pub warnings: Vec<String>,
}

/// One threshold's selection and its per-band-count reports with warnings.
type Column = (SelectionResult, Vec<Option<(ClassificationReport, Vec<String>)>>);

/// Runs the sweep. `base.max_bands` and `base.threshold` are overridden per
/// cell; the ranking is computed once.
pub fn sweep_experiment(
    cube: &HyperCube,
    gt: &GroundTruth,
    base: &SelectionConfig,
    thresholds: &[f64],
    x_values: &[usize],
    split: &SplitMask,
    svm: &SvmParams,
) -> Result<SweepOutcome> {
    if thresholds.is_empty() || x_values.is_empty() {
        return Err(Error::InvalidParam("sweep needs thresholds and band counts".into()));
    }
    let max_x = *x_values.iter().max().unwrap();
    let ranking = rank_bands(cube, gt, base)?;

    let columns: Vec<Column> = thresholds
        .par_iter()
        .map(|&th| {
            let cfg = SelectionConfig {
                max_bands: max_x,
                threshold: th,
                ..base.clone()
            };
            let selection = select_from_ranking(cube, gt, &ranking, &cfg)?;
            let cells = x_values
                .iter()
                .map(|&x| {
                    if selection.retained.len() < x {
                        return Ok(None);
                    }
                    let (report, model) =
                        classify_bands(cube, gt, &selection.retained[..x], split, svm)?;
                    let warnings = model
                        .warnings
                        .into_iter()
                        .map(|w| format!("th={th} X={x}: {w}"))
                        .collect();
                    Ok(Some((report, warnings)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((selection, cells))
        })
        .collect::<Result<_>>()?;

    let mut selections = Vec::with_capacity(thresholds.len());
    let mut reports = vec![vec![None; thresholds.len()]; x_values.len()];
    let mut cells = vec![vec![None; thresholds.len()]; x_values.len()];
    let mut warnings = Vec::new();
    for (col, (selection, column)) in columns.into_iter().enumerate() {
        selections.push(selection);
        for (row, entry) in column.into_iter().enumerate() {
            if let Some((report, w)) = entry {
                cells[row][col] = Some(report.overall_accuracy);
                reports[row][col] = Some(report);
                warnings.extend(w);
            }
        }
    }
    Ok(SweepOutcome {
        table: SweepTable {
            thresholds: thresholds.to_vec(),
            x_values: x_values.to_vec(),
            cells,
        },
        selections,
        reports,
        warnings,
    })
}

/// One selection filter to sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub algorithm: Algorithm,
    #[serde(default = "default_feature")]
    pub feature: Feature,
    #[serde(default)]
    pub ordering: Ordering,
}

fn default_feature() -> Feature {
    Feature::Homogeneity
}

impl RunSpec {
    /// File-name tag, e.g. `spectral` or `texture_energy_feature-argmax`.
    pub fn tag(&self) -> String {
        match self.algorithm {
            Algorithm::Spectral => "spectral".to_string(),
            Algorithm::Texture => format!("texture_{}_{}", self.feature, self.ordering),
        }
    }
}

/// Everything needed to reproduce an experiment run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub cube: PathBuf,
    pub gt: PathBuf,
    pub runs: Vec<RunSpec>,
    pub thresholds: Vec<f64>,
    pub x_values: Vec<usize>,
    pub glcm: GlcmConfig,
    pub mi_levels: usize,
    pub mask_mode: MaskMode,
    pub split_fraction: f64,
    pub split_seed: u64,
    pub svm: SvmParams,
    pub out_dir: PathBuf,
    /// Emit side-by-side diffs against the published Indian Pines tables.
    #[serde(default)]
    pub compare_published: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.runs.is_empty() {
            return Err(Error::InvalidParam("experiment has no runs".into()));
        }
        if self.thresholds.is_empty() || self.x_values.is_empty() {
            return Err(Error::InvalidParam("threshold and band-count lists must be non-empty".into()));
        }
        if self.x_values.contains(&0) {
            return Err(Error::InvalidParam("band counts must be at least 1".into()));
        }
        for path in [&self.cube, &self.gt] {
            if !path.exists() {
                return Err(Error::io(
                    path,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "input file not found"),
                ));
            }
        }
        self.svm.validate()
    }

    fn selection_config(&self, run: &RunSpec) -> SelectionConfig {
        SelectionConfig {
            algorithm: run.algorithm,
            feature: run.feature,
            ordering: run.ordering,
            max_bands: 1,
            threshold: 0.0,
            mi_levels: self.mi_levels,
            glcm: self.glcm.clone(),
            mask_mode: self.mask_mode,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    spec: &'a ExperimentSpec,
    cube_dims: [usize; 3],
    n_classes: usize,
    split_train: usize,
    split_test: usize,
    outputs: Vec<String>,
    warnings: Vec<String>,
}

/// In-memory result of [`run_experiment`], keyed by run tag.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub sweeps: Vec<(String, SweepOutcome)>,
    pub files: Vec<PathBuf>,
}

/// Side-by-side comparison rows: `X,threshold,ours,published,delta,flag`.
pub fn published_diff_csv(algorithm: Algorithm, table: &SweepTable) -> String {
    let mut out = String::from("X,threshold,ours,published,delta,flag\n");
    for (x, row) in table.x_values.iter().zip(&table.cells) {
        for (th, cell) in table.thresholds.iter().zip(row) {
            let reference = published::lookup(algorithm, *x, *th);
            if reference.is_none() && cell.is_none() {
                continue;
            }
            let ours = cell.map(fmt_percent).unwrap_or_default();
            let publ = reference.map(fmt_percent).unwrap_or_default();
            let (delta, flag) = match (cell, reference) {
                (Some(a), Some(b)) => {
                    let d = a - b;
                    let flag = if d.abs() > published::FLAG_TOLERANCE_PP { "DEVIATES" } else { "ok" };
                    (format!("{d:.2}"), flag)
                }
                (Some(_), None) => (String::new(), "blank-in-published"),
                (None, Some(_)) => (String::new(), "blank-here"),
                (None, None) => unreachable!(),
            };
            out.push_str(&format!("{x},{th},{ours},{publ},{delta},{flag}\n"));
        }
    }
    out
}

/// Writes `files` into `dir` only after every one of them has been staged
/// successfully.
pub fn commit_outputs(dir: &Path, files: Vec<(String, Vec<u8>)>) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let staging = tempfile::Builder::new()
        .prefix(".staging-")
        .tempdir_in(dir)
        .map_err(|e| Error::io(dir, e))?;
    for (name, bytes) in &files {
        let p = staging.path().join(name);
        fs::write(&p, bytes).map_err(|e| Error::io(&p, e))?;
    }
    let mut written = Vec::with_capacity(files.len());
    for (name, _) in &files {
        let target = dir.join(name);
        fs::rename(staging.path().join(name), &target).map_err(|e| Error::io(&target, e))?;
        written.push(target);
    }
    Ok(written)
}

fn threshold_tag(th: f64) -> String {
    format!("{th}").replace('-', "m")
}

/// Loads the inputs, runs every sweep and writes sweep CSVs, per-threshold
/// selection JSON, per-class CSV and report JSON at the best cell, the
/// predicted map at the best cell, optional published-table diffs, and a
/// manifest. Nothing is written unless every stage succeeds.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    spec.validate()?;
    let cube = load_cube(&spec.cube)?;
    let gt = load_ground_truth(&spec.gt)?;
    gt.check_matches(&cube)?;
    let split = split_train_test(&gt, spec.split_fraction, spec.split_seed)?;
    let totals = gt.class_counts();

    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut sweeps = Vec::new();
    let mut warnings = split.warnings.clone();
    for run in &spec.runs {
        let tag = run.tag();
        let base = spec.selection_config(run);
        let outcome = sweep_experiment(
            &cube,
            &gt,
            &base,
            &spec.thresholds,
            &spec.x_values,
            &split,
            &spec.svm,
        )?;
        files.push((format!("sweep_{tag}.csv"), outcome.table.to_csv().into_bytes()));
        for (th, sel) in spec.thresholds.iter().zip(&outcome.selections) {
            files.push((
                format!("selection_{tag}_th{}.json", threshold_tag(*th)),
                sel.to_json()?.into_bytes(),
            ));
        }
        if let Some((r, c, _)) = outcome.table.best_cell() {
            let report = outcome.reports[r][c].as_ref().expect("filled cell has a report");
            files.push((
                format!("per_class_{tag}.csv"),
                report.per_class_csv(&totals).into_bytes(),
            ));
            files.push((format!("overall_{tag}.csv"), report.overall_csv().into_bytes()));
            files.push((format!("report_{tag}.json"), report.to_json()?.into_bytes()));
            if let Some(map) = &report.predicted_map {
                files.push((
                    format!("map_{tag}.pgm"),
                    encode_pgm(gt.width(), gt.height(), map),
                ));
            }
        }
        if spec.compare_published {
            files.push((
                format!("published_diff_{tag}.csv"),
                published_diff_csv(run.algorithm, &outcome.table).into_bytes(),
            ));
        }
        warnings.extend(outcome.warnings.iter().map(|w| format!("{tag}: {w}")));
        sweeps.push((tag, outcome));
    }
    files.push((
        "ground_truth.pgm".to_string(),
        encode_pgm(gt.width(), gt.height(), gt.labels()),
    ));

    let mut outputs: Vec<String> = files.iter().map(|(n, _)| n.clone()).collect();
    outputs.push("manifest.json".to_string());
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        spec,
        cube_dims: [cube.width(), cube.height(), cube.n_bands()],
        n_classes: gt.n_classes(),
        split_train: split.n_train(),
        split_test: split.n_test(),
        outputs,
        warnings,
    };
    files.push((
        "manifest.json".to_string(),
        (serde_json::to_string_pretty(&manifest)? + "\n").into_bytes(),
    ));
    let written = commit_outputs(&spec.out_dir, files)?;
    Ok(ExperimentOutcome {
        sweeps,
        files: written,
    })
}
