//! Batch command-line front end.
//!
//! Exit codes: 0 success, 2 bad flags, 3 I/O error, 4 numeric or
//! validation failure. Every command stages its outputs and only moves
//! them into place once all of them have been produced.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{classify_bands, Kernel, SvmParams};
use crate::dataset::{
    encode_pgm, load_cube, load_ground_truth, read_label_image, split_train_test, synth_dataset,
    write_cube, SynthSpec,
};
use crate::error::{Error, Result};
use crate::experiment::{commit_outputs, run_experiment, ExperimentSpec, RunSpec};
use crate::glcm::{ground_truth_features, texture_features, Aggregation, Direction, Feature, GlcmConfig};
use crate::mi::{band_mi, MaskMode};
use crate::selection::{select_bands, Algorithm, Ordering, SelectionConfig, SelectionResult};

#[derive(Debug, Parser)]
#[command(name = "bandsel", version, about = "GLCM and mutual-information band selection for hyperspectral cubes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-band GLCM texture features as CSV.
    Features(FeaturesArgs),
    /// Per-band MI with the ground truth as CSV.
    MiScan(MiScanArgs),
    /// Run one selection filter and write its trace.
    Select(SelectArgs),
    /// Train and evaluate the SVM on a band subset.
    Classify(ClassifyArgs),
    /// Threshold x band-count sweeps with reports, maps and a manifest.
    Experiment(ExperimentArgs),
    /// Render a label map as PGM, or as a palette PPM.
    RenderMap(RenderMapArgs),
    /// Generate a synthetic labeled cube.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MaskArg {
    All,
    LabeledOnly,
}

impl From<MaskArg> for MaskMode {
    fn from(m: MaskArg) -> Self {
        match m {
            MaskArg::All => MaskMode::All,
            MaskArg::LabeledOnly => MaskMode::LabeledOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AggregationArg {
    Average,
    PerDirection,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelArg {
    Linear,
    Rbf,
}

#[derive(Debug, Clone, Args)]
pub struct GlcmArgs {
    /// Gray levels for texture features.
    #[arg(long, default_value_t = 16)]
    pub levels: usize,
    #[arg(long, default_value_t = 1)]
    pub distance: usize,
    /// Comma-separated subset of 0,45,90,135.
    #[arg(long, default_value = "0,45,90,135")]
    pub directions: String,
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long, value_enum, default_value = "average")]
    pub aggregation: AggregationArg,
}

impl GlcmArgs {
    fn config(&self) -> Result<GlcmConfig> {
        let directions = self
            .directions
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse::<Direction>)
            .collect::<Result<Vec<_>>>()?;
        let cfg = GlcmConfig {
            levels: self.levels,
            distance: self.distance,
            directions,
            symmetric: self.symmetric,
            aggregation: match self.aggregation {
                AggregationArg::Average => Aggregation::Average,
                AggregationArg::PerDirection => Aggregation::PerDirection,
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SelectionArgs {
    #[arg(long, default_value = "spectral")]
    pub algorithm: String,
    #[arg(long, default_value = "homogeneity")]
    pub feature: String,
    #[arg(long, default_value = "feature-argmax")]
    pub ordering: String,
    /// Gray levels for MI quantization.
    #[arg(long, default_value_t = 256)]
    pub mi_levels: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub mask_mode: MaskArg,
}

#[derive(Debug, Clone, Args)]
pub struct SvmArgs {
    #[arg(long, default_value_t = 0.5)]
    pub split_fraction: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub svm_c: f64,
    #[arg(long, value_enum, default_value = "linear")]
    pub kernel: KernelArg,
    /// RBF width; ignored for the linear kernel.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}

impl SvmArgs {
    fn params(&self) -> SvmParams {
        SvmParams {
            c: self.svm_c,
            kernel: match self.kernel {
                KernelArg::Linear => Kernel::Linear,
                KernelArg::Rbf => Kernel::Rbf { gamma: self.gamma },
            },
            seed: self.seed,
            ..SvmParams::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[arg(long)]
    pub cube: PathBuf,
    /// Also emit a `gt` row computed on this ground-truth map.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    #[command(flatten)]
    pub glcm: GlcmArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MiScanArgs {
    #[arg(long)]
    pub cube: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub mi_levels: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub mask_mode: MaskArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    #[arg(long)]
    pub cube: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    #[command(flatten)]
    pub selection: SelectionArgs,
    #[command(flatten)]
    pub glcm: GlcmArgs,
    /// Maximum number of retained bands.
    #[arg(long, default_value_t = 10)]
    pub x: usize,
    #[arg(long, default_value_t = -0.01, allow_hyphen_values = true)]
    pub th: f64,
    /// Accepted for interface uniformity; selection has no random state.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub cube: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    /// Comma-separated band indices.
    #[arg(long, conflicts_with = "selection")]
    pub bands: Option<String>,
    /// Selection JSON whose retained bands are used.
    #[arg(long)]
    pub selection: Option<PathBuf>,
    #[command(flatten)]
    pub svm: SvmArgs,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Experiment spec (or a previous run's manifest `spec`); flags below are
    /// ignored when given.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, required_unless_present = "spec")]
    pub cube: Option<PathBuf>,
    #[arg(long, required_unless_present = "spec")]
    pub gt: Option<PathBuf>,
    /// Comma-separated: spectral, texture.
    #[arg(long, default_value = "spectral,texture")]
    pub algorithm: String,
    /// Comma-separated texture features for texture runs.
    #[arg(long, default_value = "contrast,correlation,energy,homogeneity")]
    pub feature: String,
    /// Comma-separated texture orderings.
    #[arg(long, default_value = "feature-argmax")]
    pub ordering: String,
    #[arg(long, default_value = "-0.02,-0.01,-0.005,-0.004,0", allow_hyphen_values = true)]
    pub th_list: String,
    #[arg(long, default_value = "2,3,4,12,14,18,20,25,35,36,40,45,50,53,60,70,75,80")]
    pub x_list: String,
    #[command(flatten)]
    pub glcm: GlcmArgs,
    #[arg(long, default_value_t = 256)]
    pub mi_levels: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub mask_mode: MaskArg,
    #[command(flatten)]
    pub svm: SvmArgs,
    /// Emit side-by-side diffs against the published Indian Pines tables.
    #[arg(long)]
    pub compare_published: bool,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderMapArgs {
    /// Label map (PGM or CSV).
    #[arg(long)]
    pub labels: PathBuf,
    /// Use the fixed 17-color palette and write binary PPM.
    #[arg(long)]
    pub palette: bool,
    /// Fail unless the map is exactly WIDTHxHEIGHT.
    #[arg(long)]
    pub expect_dims: Option<String>,
    /// Fail unless the map matches this ground truth's dimensions.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 32)]
    pub width: usize,
    #[arg(long, default_value_t = 32)]
    pub height: usize,
    #[arg(long, default_value_t = 4)]
    pub classes: usize,
    #[arg(long, default_value_t = 5)]
    pub informative: usize,
    #[arg(long, default_value_t = 0)]
    pub redundant: usize,
    #[arg(long, default_value_t = 20)]
    pub noise: usize,
    /// Equal class means, per-class periodic textures.
    #[arg(long)]
    pub texture: bool,
    #[arg(long, default_value_t = 0.3)]
    pub noise_sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Base name of the emitted files.
    #[arg(long, default_value = "synth")]
    pub name: String,
    #[arg(long)]
    pub out_dir: PathBuf,
}

/// Fixed label palette: index 0 (background) is black.
pub const PALETTE: [[u8; 3]; 17] = [
    [0, 0, 0],
    [230, 25, 75],
    [60, 180, 75],
    [255, 225, 25],
    [0, 130, 200],
    [245, 130, 48],
    [145, 30, 180],
    [70, 240, 240],
    [240, 50, 230],
    [210, 245, 60],
    [250, 190, 212],
    [0, 128, 128],
    [220, 190, 255],
    [170, 110, 40],
    [255, 250, 200],
    [128, 0, 0],
    [170, 255, 195],
];

/// Palette color of `label`; labels past 16 wrap around, skipping black.
pub fn palette_color(label: u16) -> [u8; 3] {
    if label == 0 {
        PALETTE[0]
    } else {
        PALETTE[1 + (label as usize - 1) % 16]
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidParam(format!("bad {what} {t:?}")))
        })
        .collect()
}

fn file_name(path: &Path) -> Result<(PathBuf, String)> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParam(format!("{} is not a file path", path.display())))?
        .to_string_lossy()
        .into_owned();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    Ok((dir, name))
}

fn commit_single(path: &Path, bytes: Vec<u8>) -> Result<()> {
    let (dir, name) = file_name(path)?;
    commit_outputs(&dir, vec![(name, bytes)]).map(|_| ())
}

fn cmd_features(a: &FeaturesArgs) -> Result<()> {
    let cfg = a.glcm.config()?;
    let cube = load_cube(&a.cube)?;
    let mut table = texture_features(&cube, &cfg)?;
    if let Some(gt_path) = &a.gt {
        let gt = load_ground_truth(gt_path)?;
        table.rows.extend(ground_truth_features(&gt, &cfg)?);
    }
    commit_single(&a.out, table.to_csv().into_bytes())
}

fn cmd_mi_scan(a: &MiScanArgs) -> Result<()> {
    let cube = load_cube(&a.cube)?;
    let gt = load_ground_truth(&a.gt)?;
    gt.check_matches(&cube)?;
    let mut csv = String::from("band,mi_bits\n");
    for b in 0..cube.n_bands() {
        let mi = band_mi(&gt, cube.band(b), a.mi_levels, a.mask_mode.into())?;
        csv.push_str(&format!("{b},{mi}\n"));
    }
    commit_single(&a.out, csv.into_bytes())
}

fn selection_config(s: &SelectionArgs, g: &GlcmArgs, x: usize, th: f64) -> Result<SelectionConfig> {
    let cfg = SelectionConfig {
        algorithm: s.algorithm.parse()?,
        feature: s.feature.parse()?,
        ordering: s.ordering.parse()?,
        max_bands: x,
        threshold: th,
        mi_levels: s.mi_levels,
        glcm: g.config()?,
        mask_mode: s.mask_mode.into(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_select(a: &SelectArgs) -> Result<()> {
    let cfg = selection_config(&a.selection, &a.glcm, a.x, a.th)?;
    let cube = load_cube(&a.cube)?;
    let gt = load_ground_truth(&a.gt)?;
    let result = select_bands(&cube, &gt, &cfg)?;
    commit_outputs(
        &a.out_dir,
        vec![
            ("selection.json".into(), result.to_json()?.into_bytes()),
            ("selection.csv".into(), result.trace_csv().into_bytes()),
            (
                "selection_config.json".into(),
                (serde_json::to_string_pretty(&cfg)? + "\n").into_bytes(),
            ),
        ],
    )?;
    Ok(())
}

fn cmd_classify(a: &ClassifyArgs) -> Result<()> {
    let bands: Vec<usize> = match (&a.bands, &a.selection) {
        (Some(list), _) => parse_list(list, "band index")?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            SelectionResult::from_json(&text)?.retained
        }
        (None, None) => return Err(Error::InvalidParam("give --bands or --selection".into())),
    };
    let cube = load_cube(&a.cube)?;
    let gt = load_ground_truth(&a.gt)?;
    gt.check_matches(&cube)?;
    let split = split_train_test(&gt, a.svm.split_fraction, a.svm.seed)?;
    for w in &split.warnings {
        log::warn!("{w}");
    }
    let (report, model) = classify_bands(&cube, &gt, &bands, &split, &a.svm.params())?;
    for w in &model.warnings {
        log::warn!("{w}");
    }
    let map = report.predicted_map.clone().unwrap_or_default();
    commit_outputs(
        &a.out_dir,
        vec![
            ("report.json".into(), report.to_json()?.into_bytes()),
            ("overall.csv".into(), report.overall_csv().into_bytes()),
            (
                "per_class.csv".into(),
                report.per_class_csv(&gt.class_counts()).into_bytes(),
            ),
            ("predicted_map.pgm".into(), encode_pgm(gt.width(), gt.height(), &map)),
        ],
    )?;
    println!("overall accuracy: {:.2}%", report.overall_accuracy);
    Ok(())
}

fn experiment_spec(a: &ExperimentArgs) -> Result<ExperimentSpec> {
    if let Some(path) = &a.spec {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        // a run manifest nests the spec under "spec"
        let spec_value = match value.get("spec") {
            Some(inner) => inner.clone(),
            None => value,
        };
        let mut spec: ExperimentSpec = serde_json::from_value(spec_value)?;
        if let Some(out) = &a.out_dir {
            spec.out_dir = out.clone();
        }
        return Ok(spec);
    }
    let algorithms: Vec<Algorithm> = parse_csv_items(&a.algorithm)?;
    let features: Vec<Feature> = parse_csv_items(&a.feature)?;
    let orderings: Vec<Ordering> = parse_csv_items(&a.ordering)?;
    let mut runs = Vec::new();
    for alg in algorithms {
        match alg {
            Algorithm::Spectral => runs.push(RunSpec {
                algorithm: alg,
                feature: Feature::Homogeneity,
                ordering: Ordering::FeatureArgmax,
            }),
            Algorithm::Texture => {
                for &feature in &features {
                    for &ordering in &orderings {
                        runs.push(RunSpec {
                            algorithm: alg,
                            feature,
                            ordering,
                        });
                    }
                }
            }
        }
    }
    Ok(ExperimentSpec {
        cube: a.cube.clone().expect("clap enforces --cube"),
        gt: a.gt.clone().expect("clap enforces --gt"),
        runs,
        thresholds: parse_list(&a.th_list, "threshold")?,
        x_values: parse_list(&a.x_list, "band count")?,
        glcm: a.glcm.config()?,
        mi_levels: a.mi_levels,
        mask_mode: a.mask_mode.into(),
        split_fraction: a.svm.split_fraction,
        split_seed: a.svm.seed,
        svm: a.svm.params(),
        out_dir: a
            .out_dir
            .clone()
            .ok_or_else(|| Error::InvalidParam("--out-dir is required".into()))?,
        compare_published: a.compare_published,
    })
}

fn parse_csv_items<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

fn cmd_experiment(a: &ExperimentArgs) -> Result<()> {
    let spec = experiment_spec(a)?;
    let outcome = run_experiment(&spec)?;
    for (tag, sweep) in &outcome.sweeps {
        if let Some((r, c, v)) = sweep.table.best_cell() {
            println!(
                "{tag}: best {v:.2}% at X={} th={}",
                sweep.table.x_values[r], sweep.table.thresholds[c]
            );
        }
    }
    Ok(())
}

fn parse_dims(s: &str) -> Result<(usize, usize)> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| Error::InvalidParam(format!("dimensions {s:?}, expected WxH")))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidParam(format!("dimensions {s:?}")))
    };
    Ok((parse(w)?, parse(h)?))
}

/// Binary PPM of `labels` under [`PALETTE`].
pub fn encode_palette_ppm(width: usize, height: usize, labels: &[u16]) -> Vec<u8> {
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    for &l in labels {
        out.extend_from_slice(&palette_color(l));
    }
    out
}

fn cmd_render_map(a: &RenderMapArgs) -> Result<()> {
    let img = read_label_image(&a.labels)?;
    let mut expected = Vec::new();
    if let Some(d) = &a.expect_dims {
        expected.push(parse_dims(d)?);
    }
    if let Some(gt_path) = &a.gt {
        let gt = load_ground_truth(gt_path)?;
        expected.push((gt.width(), gt.height()));
    }
    for (w, h) in expected {
        if (w, h) != (img.width, img.height) {
            return Err(Error::Dimension(format!(
                "map is {}x{}, expected {w}x{h}",
                img.width, img.height
            )));
        }
    }
    let bytes = if a.palette {
        encode_palette_ppm(img.width, img.height, &img.labels)
    } else {
        encode_pgm(img.width, img.height, &img.labels)
    };
    commit_single(&a.out, bytes)
}

fn cmd_synth(a: &SynthArgs) -> Result<()> {
    let spec = SynthSpec {
        width: a.width,
        height: a.height,
        n_classes: a.classes,
        n_informative_bands: a.informative,
        n_redundant_bands: a.redundant,
        n_noise_bands: a.noise,
        texture_mode: a.texture,
        noise_sigma: a.noise_sigma,
        seed: a.seed,
    };
    let ds = synth_dataset(&spec)?;
    let staging = tempfile::tempdir().map_err(|e| Error::io(std::env::temp_dir(), e))?;
    let header = staging.path().join(format!("{}.hdr.json", a.name));
    write_cube(&ds.cube, &header)?;
    let read = |name: String| -> Result<(String, Vec<u8>)> {
        let p = staging.path().join(&name);
        let bytes = fs::read(&p).map_err(|e| Error::io(&p, e))?;
        Ok((name, bytes))
    };
    let manifest = serde_json::json!({
        "spec": spec,
        "informative_bands": ds.informative_bands(),
        "noise_bands": ds.noise_bands(),
        "roles": ds.roles,
    });
    commit_outputs(
        &a.out_dir,
        vec![
            read(format!("{}.hdr.json", a.name))?,
            read(format!("{}.raw", a.name))?,
            (
                format!("{}_gt.pgm", a.name),
                encode_pgm(ds.gt.width(), ds.gt.height(), ds.gt.labels()),
            ),
            (
                format!("{}_manifest.json", a.name),
                (serde_json::to_string_pretty(&manifest)? + "\n").into_bytes(),
            ),
        ],
    )?;
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Features(a) => cmd_features(a),
        Command::MiScan(a) => cmd_mi_scan(a),
        Command::Select(a) => cmd_select(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::RenderMap(a) => cmd_render_map(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
