//! Hyperspectral cubes, ground-truth maps, the synthetic generator and the
//! stratified train/test split.
//!
//! Cubes live on disk as a small JSON sidecar (`<name>.hdr.json`) next to a
//! band-sequential little-endian raw file. Ground truth is read from PGM
//! (P2 or P5) or from a CSV grid of non-negative integers.

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The seeded generator used by every stochastic operation in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A `width × height × n_bands` reflectance cube stored band-major: all
/// pixels of band 0 in row-major order, then band 1, and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperCube {
    width: usize,
    height: usize,
    n_bands: usize,
    values: Vec<f32>,
}

impl HyperCube {
    pub fn new(width: usize, height: usize, n_bands: usize, values: Vec<f32>) -> Result<Self> {
        if width == 0 || height == 0 || n_bands == 0 {
            return Err(Error::Empty(format!(
                "cube dimensions {width}x{height}x{n_bands}"
            )));
        }
        if values.len() != width * height * n_bands {
            return Err(Error::Dimension(format!(
                "{} values for a {width}x{height}x{n_bands} cube",
                values.len()
            )));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(HyperCube {
            width,
            height,
            n_bands,
            values,
        })
    }

    /// Builds a cube from per-band planes.
    pub fn from_bands(width: usize, height: usize, bands: Vec<Vec<f32>>) -> Result<Self> {
        let n_bands = bands.len();
        let mut values = Vec::with_capacity(width * height * n_bands);
        for (b, band) in bands.into_iter().enumerate() {
            if band.len() != width * height {
                return Err(Error::Dimension(format!(
                    "band {b} has {} pixels, expected {}",
                    band.len(),
                    width * height
                )));
            }
            values.extend(band);
        }
        HyperCube::new(width, height, n_bands, values)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn n_bands(&self) -> usize {
        self.n_bands
    }

    pub fn n_pixels(&self) -> usize {
        self.width * self.height
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// The raw plane of band `b`, row-major.
    pub fn band(&self, b: usize) -> &[f32] {
        let n = self.n_pixels();
        &self.values[b * n..(b + 1) * n]
    }

    pub fn value(&self, band: usize, pixel: usize) -> f32 {
        self.values[band * self.n_pixels() + pixel]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DType {
    F32,
    U16,
}

impl DType {
    fn size(self) -> u64 {
        match self {
            DType::F32 => 4,
            DType::U16 => 2,
        }
    }
}

/// Contents of a `<name>.hdr.json` sidecar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeHeader {
    pub width: usize,
    pub height: usize,
    pub bands: usize,
    pub dtype: String,
    #[serde(default = "default_interleave")]
    pub interleave: String,
    #[serde(default = "default_byte_order")]
    pub byte_order: String,
    pub raw: String,
}

fn default_interleave() -> String {
    "bsq".to_string()
}

fn default_byte_order() -> String {
    "little".to_string()
}

impl CubeHeader {
    fn dtype(&self) -> Result<DType> {
        match self.dtype.as_str() {
            "f32" => Ok(DType::F32),
            "u16" => Ok(DType::U16),
            other => Err(Error::Unsupported {
                what: "dtype",
                value: other.to_string(),
            }),
        }
    }
}

/// Loads a cube from its JSON sidecar. The raw path is resolved relative to
/// the header's directory. Integer samples are converted without scaling.
pub fn load_cube(header_path: impl AsRef<Path>) -> Result<HyperCube> {
    let header_path = header_path.as_ref();
    let text = fs::read_to_string(header_path).map_err(|e| Error::io(header_path, e))?;
    let header: CubeHeader = serde_json::from_str(&text)?;
    let dtype = header.dtype()?;
    if !header.interleave.eq_ignore_ascii_case("bsq") {
        return Err(Error::Unsupported {
            what: "interleave",
            value: header.interleave.clone(),
        });
    }
    if !header.byte_order.eq_ignore_ascii_case("little") {
        return Err(Error::Unsupported {
            what: "byte order",
            value: header.byte_order.clone(),
        });
    }
    let raw_path = header_path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join(&header.raw);
    let bytes = fs::read(&raw_path).map_err(|e| Error::io(&raw_path, e))?;

    let n = (header.width * header.height * header.bands) as u64;
    let expected = n * dtype.size();
    if bytes.len() as u64 != expected {
        return Err(Error::SizeMismatch {
            expected,
            actual: bytes.len() as u64,
        });
    }
    let values: Vec<f32> = match dtype {
        DType::F32 => bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect(),
        DType::U16 => bytes
            .chunks_exact(2)
            .map(|c| f32::from(u16::from_le_bytes([c[0], c[1]])))
            .collect(),
    };
    HyperCube::new(header.width, header.height, header.bands, values)
}

/// Path of the raw file that [`write_cube`] pairs with `header_path`.
pub fn raw_path_for(header_path: &Path) -> PathBuf {
    let name = header_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "cube".to_string());
    let stem = name
        .strip_suffix(".hdr.json")
        .or_else(|| name.strip_suffix(".json"))
        .unwrap_or(&name);
    header_path.with_file_name(format!("{stem}.raw"))
}

/// Writes `cube` as f32 BSQ plus its sidecar header.
pub fn write_cube(cube: &HyperCube, header_path: impl AsRef<Path>) -> Result<()> {
    let header_path = header_path.as_ref();
    let raw_path = raw_path_for(header_path);
    let mut bytes = Vec::with_capacity(cube.values.len() * 4);
    for v in &cube.values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(&raw_path, bytes).map_err(|e| Error::io(&raw_path, e))?;
    let header = CubeHeader {
        width: cube.width,
        height: cube.height,
        bands: cube.n_bands,
        dtype: "f32".to_string(),
        interleave: "bsq".to_string(),
        byte_order: "little".to_string(),
        raw: raw_path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
    };
    let json = serde_json::to_string_pretty(&header)?;
    fs::write(header_path, json + "\n").map_err(|e| Error::io(header_path, e))
}

/// Per-pixel class labels; 0 is unlabeled background, `1..=n_classes` are
/// classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    width: usize,
    height: usize,
    labels: Vec<u16>,
    n_classes: usize,
}

impl GroundTruth {
    /// `n_classes` is taken as the largest label; every class below it must
    /// be present.
    pub fn new(width: usize, height: usize, labels: Vec<u16>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Empty("ground-truth grid".to_string()));
        }
        if labels.len() != width * height {
            return Err(Error::Dimension(format!(
                "{} labels for a {width}x{height} grid",
                labels.len()
            )));
        }
        let n_classes = labels.iter().copied().max().unwrap_or(0) as usize;
        let mut seen = vec![false; n_classes + 1];
        for &l in &labels {
            seen[l as usize] = true;
        }
        if let Some(missing) = (1..=n_classes).find(|&c| !seen[c]) {
            return Err(Error::InvalidParam(format!(
                "class {missing} has no pixels but labels go up to {n_classes}"
            )));
        }
        Ok(GroundTruth {
            width,
            height,
            labels,
            n_classes,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    /// Pixel count per label, indexed `0..=n_classes`.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes + 1];
        for &l in &self.labels {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn labeled_mask(&self) -> Vec<bool> {
        self.labels.iter().map(|&l| l != 0).collect()
    }

    pub fn check_matches(&self, cube: &HyperCube) -> Result<()> {
        if self.width != cube.width() || self.height != cube.height() {
            return Err(Error::Dimension(format!(
                "ground truth is {}x{}, cube is {}x{}",
                self.width,
                self.height,
                cube.width(),
                cube.height()
            )));
        }
        Ok(())
    }
}

/// A decoded label image, before any ground-truth validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub labels: Vec<u16>,
}

/// Loads a ground-truth map from PGM (P2/P5) or a CSV integer grid.
pub fn load_ground_truth(path: impl AsRef<Path>) -> Result<GroundTruth> {
    let img = read_label_image(path)?;
    GroundTruth::new(img.width, img.height, img.labels)
}

/// Decodes PGM or CSV into a raw label grid. CSV input reports its largest
/// label as `maxval`.
pub fn read_label_image(path: impl AsRef<Path>) -> Result<LabelImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        parse_pgm(&bytes)
    } else {
        let text = String::from_utf8(bytes).map_err(|_| Error::parse("CSV", "not UTF-8"))?;
        parse_csv_grid(&text)
    }
}

fn parse_csv_grid(text: &str) -> Result<LabelImage> {
    let mut labels = Vec::new();
    let mut width = None;
    let mut height = 0;
    for (row, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut n = 0;
        for field in line.split(',') {
            let field = field.trim();
            let v: i64 = field
                .parse()
                .map_err(|_| Error::parse("CSV", format!("row {row}: bad integer {field:?}")))?;
            if v < 0 {
                return Err(Error::parse("CSV", format!("row {row}: negative label {v}")));
            }
            if v > i64::from(u16::MAX) {
                return Err(Error::parse("CSV", format!("row {row}: label {v} too large")));
            }
            labels.push(v as u16);
            n += 1;
        }
        match width {
            None => width = Some(n),
            Some(w) if w != n => {
                return Err(Error::parse(
                    "CSV",
                    format!("row {row} has {n} columns, expected {w}"),
                ))
            }
            _ => {}
        }
        height += 1;
    }
    let width = width.ok_or_else(|| Error::Empty("CSV grid".to_string()))?;
    let maxval = labels.iter().copied().max().unwrap_or(0);
    Ok(LabelImage {
        width,
        height,
        maxval,
        labels,
    })
}

struct PgmTokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PgmTokens<'_> {
    fn next_token(&mut self) -> Result<&str> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse("PGM", "unexpected end of file"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| Error::parse("PGM", "non-ASCII header"))
    }

    fn next_int(&mut self) -> Result<i64> {
        let tok = self.next_token()?;
        tok.parse()
            .map_err(|_| Error::parse("PGM", format!("bad integer {tok:?}")))
    }
}

fn parse_pgm(bytes: &[u8]) -> Result<LabelImage> {
    let mut tok = PgmTokens { bytes, pos: 0 };
    let magic = tok.next_token()?.to_string();
    let width = tok.next_int()?;
    let height = tok.next_int()?;
    let maxval = tok.next_int()?;
    if width <= 0 || height <= 0 {
        return Err(Error::Empty("PGM image".to_string()));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(Error::parse("PGM", format!("maxval {maxval} out of range")));
    }
    let (width, height, maxval) = (width as usize, height as usize, maxval as u16);
    let n = width * height;
    let mut labels = Vec::with_capacity(n);
    if magic == "P2" {
        for _ in 0..n {
            let v = tok.next_int()?;
            if v < 0 {
                return Err(Error::parse("PGM", format!("negative label {v}")));
            }
            if v > i64::from(maxval) {
                return Err(Error::parse("PGM", format!("label {v} exceeds maxval")));
            }
            labels.push(v as u16);
        }
    } else {
        // exactly one whitespace byte separates the header from the raster
        let start = tok.pos + 1;
        let sample = if maxval > 255 { 2 } else { 1 };
        let data = bytes
            .get(start..start + n * sample)
            .ok_or_else(|| Error::parse("PGM", "raster shorter than header declares"))?;
        if sample == 1 {
            labels.extend(data.iter().map(|&b| u16::from(b)));
        } else {
            labels.extend(data.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])));
        }
        if let Some(v) = labels.iter().find(|&&v| v > maxval) {
            return Err(Error::parse("PGM", format!("label {v} exceeds maxval")));
        }
    }
    Ok(LabelImage {
        width,
        height,
        maxval,
        labels,
    })
}

/// Encodes a label grid as binary PGM (P5) with label value = gray value.
pub fn encode_pgm(width: usize, height: usize, labels: &[u16]) -> Vec<u8> {
    let maxval = labels.iter().copied().max().unwrap_or(0).max(1);
    let mut out = format!("P5\n{width} {height}\n{maxval}\n").into_bytes();
    if maxval > 255 {
        for &l in labels {
            out.extend_from_slice(&l.to_be_bytes());
        }
    } else {
        out.extend(labels.iter().map(|&l| l as u8));
    }
    out
}

pub fn write_pgm(path: impl AsRef<Path>, width: usize, height: usize, labels: &[u16]) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_pgm(width, height, labels)).map_err(|e| Error::io(path, e))
}

/// Parameters of the synthetic labeled-cube generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub width: usize,
    pub height: usize,
    pub n_classes: usize,
    pub n_informative_bands: usize,
    /// Noisy affine copies of informative bands.
    #[serde(default)]
    pub n_redundant_bands: usize,
    pub n_noise_bands: usize,
    pub texture_mode: bool,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            width: 32,
            height: 32,
            n_classes: 4,
            n_informative_bands: 5,
            n_redundant_bands: 0,
            n_noise_bands: 20,
            texture_mode: false,
            noise_sigma: 0.3,
            seed: 0,
        }
    }
}

/// Role of each generated band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandRole {
    Informative,
    Redundant { source: usize },
    Noise,
}

#[derive(Debug, Clone)]
pub struct SynthDataset {
    pub cube: HyperCube,
    pub gt: GroundTruth,
    pub roles: Vec<BandRole>,
}

impl SynthDataset {
    pub fn informative_bands(&self) -> Vec<usize> {
        self.bands_with(|r| matches!(r, BandRole::Informative))
    }

    pub fn noise_bands(&self) -> Vec<usize> {
        self.bands_with(|r| matches!(r, BandRole::Noise))
    }

    fn bands_with(&self, pred: impl Fn(&BandRole) -> bool) -> Vec<usize> {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| pred(r))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Zero-mean ±1 texture motifs assigned to class regions in texture mode.
fn texture_motif(id: usize, x: usize, y: usize) -> f64 {
    let s = match id % 8 {
        0 => return 0.0,
        1 => (x / 2) % 2,
        2 => (y / 2) % 2,
        3 => (x / 2 + y / 2) % 2,
        4 => ((x + y) / 2) % 2,
        5 => (x / 4) % 2,
        6 => (y / 4) % 2,
        _ => (x / 4 + y / 4) % 2,
    };
    if s == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Generates a labeled cube whose ground truth is a grid of rectangular
/// class tiles (tiles beyond `n_classes` stay unlabeled).
///
/// Spectral mode gives every informative band per-class means spaced at
/// least `max(1, 3σ)` apart, with one class ordering shared by all bands.
/// Texture mode gives every class the same mean but a distinct periodic
/// block motif (or a flat patch); class regions are re-centred so their
/// sample means coincide. Band positions are shuffled and recorded in `roles`.
pub fn synth_dataset(spec: &SynthSpec) -> Result<SynthDataset> {
    let SynthSpec {
        width,
        height,
        n_classes,
        n_informative_bands,
        n_redundant_bands,
        n_noise_bands,
        texture_mode,
        noise_sigma,
        seed,
    } = *spec;
    if n_classes < 2 {
        return Err(Error::InvalidParam("synthetic data needs at least 2 classes".into()));
    }
    if width == 0 || height == 0 || n_informative_bands == 0 || n_noise_bands == 0 {
        return Err(Error::InvalidParam("all synthetic counts must be at least 1".into()));
    }
    if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
        return Err(Error::InvalidParam(format!("noise_sigma {noise_sigma}")));
    }
    let tile_cols = (n_classes as f64).sqrt().ceil() as usize;
    let tile_rows = n_classes.div_ceil(tile_cols);
    if tile_cols > width || tile_rows > height {
        return Err(Error::InvalidParam(format!(
            "{n_classes} classes do not fit a {width}x{height} grid"
        )));
    }

    let n = width * height;
    let mut labels = vec![0u16; n];
    for y in 0..height {
        let tr = y * tile_rows / height;
        for x in 0..width {
            let tc = x * tile_cols / width;
            let t = tr * tile_cols + tc;
            if t < n_classes {
                labels[y * width + x] = (t + 1) as u16;
            }
        }
    }
    let gt = GroundTruth::new(width, height, labels.clone())?;

    let mut rng = seeded_rng(seed);
    let step = (3.0 * noise_sigma).max(1.0);
    let n_labels = n_classes + 1;
    let normal = |rng: &mut SeededRng| -> f64 { rng.sample(StandardNormal) };

    // one class ordering shared by every spectral band, like a class signature
    let mut signature: Vec<usize> = (0..n_labels).collect();
    signature.shuffle(&mut rng);
    let mut informative: Vec<Vec<f64>> = Vec::with_capacity(n_informative_bands);
    for _ in 0..n_informative_bands {
        let base: f64 = rng.random_range(0.0..10.0);
        let gain: f64 = rng.random_range(1.0..1.5);
        let mut perm: Vec<usize> = (0..n_labels).collect();
        perm.shuffle(&mut rng);
        let mut band = vec![0.0; n];
        if texture_mode {
            for y in 0..height {
                for x in 0..width {
                    let p = y * width + x;
                    let motif = texture_motif(perm[labels[p] as usize], x, y);
                    band[p] = step * motif + noise_sigma * normal(&mut rng);
                }
            }
            // equalize per-label sample means
            let mut sums = vec![0.0; n_labels];
            let mut counts = vec![0usize; n_labels];
            for p in 0..n {
                sums[labels[p] as usize] += band[p];
                counts[labels[p] as usize] += 1;
            }
            for p in 0..n {
                let l = labels[p] as usize;
                band[p] += base - sums[l] / counts[l] as f64;
            }
        } else {
            for p in 0..n {
                let mean = base + gain * step * signature[labels[p] as usize] as f64;
                band[p] = mean + noise_sigma * normal(&mut rng);
            }
        }
        informative.push(band);
    }

    let mut generated: Vec<(BandRole, Vec<f64>)> = Vec::new();
    for band in &informative {
        generated.push((BandRole::Informative, band.clone()));
    }
    for r in 0..n_redundant_bands {
        let source = r % n_informative_bands;
        let gain: f64 = rng.random_range(0.5..1.5);
        let offset: f64 = rng.random_range(-1.0..1.0);
        let band = informative[source]
            .iter()
            .map(|&v| gain * v + offset + 0.1 * noise_sigma * normal(&mut rng))
            .collect();
        generated.push((BandRole::Redundant { source }, band));
    }
    let noise_scale = step * n_labels as f64 / 4.0;
    for _ in 0..n_noise_bands {
        let base: f64 = rng.random_range(0.0..10.0);
        let band = (0..n)
            .map(|_| base + noise_scale * normal(&mut rng))
            .collect();
        generated.push((BandRole::Noise, band));
    }

    // shuffle band positions; remap redundant sources to final indices
    let mut order: Vec<usize> = (0..generated.len()).collect();
    order.shuffle(&mut rng);
    let mut final_index = vec![0; generated.len()];
    for (pos, &g) in order.iter().enumerate() {
        final_index[g] = pos;
    }
    let mut roles = Vec::with_capacity(order.len());
    let mut bands = Vec::with_capacity(order.len());
    for &g in &order {
        let (role, ref band) = generated[g];
        roles.push(match role {
            BandRole::Redundant { source } => BandRole::Redundant {
                source: final_index[source],
            },
            other => other,
        });
        bands.push(band.iter().map(|&v| v as f32).collect());
    }
    let cube = HyperCube::from_bands(width, height, bands)?;
    Ok(SynthDataset { cube, gt, roles })
}

/// Disjoint train/test membership over the labeled pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMask {
    pub train: Vec<bool>,
    pub test: Vec<bool>,
    pub warnings: Vec<String>,
}

impl SplitMask {
    pub fn n_train(&self) -> usize {
        self.train.iter().filter(|&&t| t).count()
    }

    pub fn n_test(&self) -> usize {
        self.test.iter().filter(|&&t| t).count()
    }
}

/// Number of training pixels for a class of `size` pixels: `fraction × size`
/// rounded half-up, kept within `[1, size − 1]` when the class has two or
/// more pixels.
pub fn train_count(size: usize, fraction: f64) -> usize {
    let n = (fraction * size as f64 + 0.5).floor() as usize;
    if size >= 2 {
        n.clamp(1, size - 1)
    } else {
        size
    }
}

/// Stratified split: each class is shuffled independently with the seeded
/// generator and its first [`train_count`] pixels go to training.
pub fn split_train_test(gt: &GroundTruth, fraction: f64, seed: u64) -> Result<SplitMask> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidParam(format!(
            "split fraction {fraction} outside (0, 1)"
        )));
    }
    let n = gt.labels().len();
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); gt.n_classes() + 1];
    for (p, &l) in gt.labels().iter().enumerate() {
        if l != 0 {
            per_class[l as usize].push(p);
        }
    }
    let mut rng = seeded_rng(seed);
    let mut train = vec![false; n];
    let mut test = vec![false; n];
    let mut warnings = Vec::new();
    for (class, pixels) in per_class.iter_mut().enumerate().skip(1) {
        if pixels.is_empty() {
            return Err(Error::InvalidParam(format!("class {class} has no pixels")));
        }
        if pixels.len() == 1 {
            warnings.push(format!(
                "class {class} has a single pixel; it is used for training only"
            ));
        }
        pixels.shuffle(&mut rng);
        let k = train_count(pixels.len(), fraction);
        for (i, &p) in pixels.iter().enumerate() {
            if i < k {
                train[p] = true;
            } else {
                test[p] = true;
            }
        }
    }
    Ok(SplitMask {
        train,
        test,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_raw(dir: &Path, name: &str, header: &str, raw: &[u8]) -> PathBuf {
        fs::write(dir.join(format!("{name}.raw")), raw).unwrap();
        let hp = dir.join(format!("{name}.hdr.json"));
        fs::write(&hp, header).unwrap();
        hp
    }

    #[test]
    fn loads_f32_cube() {
        let dir = tempfile::tempdir().unwrap();
        let raw: Vec<u8> = [1.0f32, 2.0, 3.0, 4.0]
            .iter()
            .flat_map(|v| v.to_le_bytes())
            .collect();
        let hp = write_raw(
            dir.path(),
            "c",
            r#"{"width":2,"height":2,"bands":1,"dtype":"f32","interleave":"bsq","byte_order":"little","raw":"c.raw"}"#,
            &raw,
        );
        let cube = load_cube(hp).unwrap();
        assert_eq!(cube.band(0), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn header_band_count_larger_than_raw_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let raw = vec![0u8; 16];
        let hp = write_raw(
            dir.path(),
            "c",
            r#"{"width":2,"height":2,"bands":2,"dtype":"f32","interleave":"bsq","byte_order":"little","raw":"c.raw"}"#,
            &raw,
        );
        assert!(matches!(
            load_cube(hp),
            Err(Error::SizeMismatch {
                expected: 32,
                actual: 16
            })
        ));
    }

    #[test]
    fn u16_values_are_not_scaled() {
        let dir = tempfile::tempdir().unwrap();
        let raw: Vec<u8> = [0u16, 65535].iter().flat_map(|v| v.to_le_bytes()).collect();
        let hp = write_raw(
            dir.path(),
            "c",
            r#"{"width":2,"height":1,"bands":1,"dtype":"u16","interleave":"bsq","byte_order":"little","raw":"c.raw"}"#,
            &raw,
        );
        assert_eq!(load_cube(hp).unwrap().band(0), &[0.0, 65535.0]);
    }

    #[test]
    fn unsupported_layouts_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let hp = write_raw(
            dir.path(),
            "c",
            r#"{"width":1,"height":1,"bands":1,"dtype":"f32","interleave":"bil","byte_order":"little","raw":"c.raw"}"#,
            &[0; 4],
        );
        assert!(matches!(load_cube(&hp), Err(Error::Unsupported { .. })));
        let hp = write_raw(
            dir.path(),
            "d",
            r#"{"width":1,"height":1,"bands":1,"dtype":"i8","raw":"d.raw"}"#,
            &[0; 1],
        );
        assert!(matches!(load_cube(&hp), Err(Error::Unsupported { .. })));
        assert!(matches!(
            load_cube(dir.path().join("nope.hdr.json")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn non_finite_raw_value_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let raw: Vec<u8> = [1.0f32, f32::NAN].iter().flat_map(|v| v.to_le_bytes()).collect();
        let hp = write_raw(
            dir.path(),
            "c",
            r#"{"width":2,"height":1,"bands":1,"dtype":"f32","raw":"c.raw"}"#,
            &raw,
        );
        assert!(matches!(load_cube(hp), Err(Error::NonFinite { index: 1 })));
    }

    #[test]
    fn write_then_load_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let vals = vec![0.1f32, -3.5e-7, 1e30, 7.0, f32::MIN_POSITIVE, 2.0];
        let cube = HyperCube::new(3, 1, 2, vals.clone()).unwrap();
        let hp = dir.path().join("x.hdr.json");
        write_cube(&cube, &hp).unwrap();
        let raw1 = fs::read(dir.path().join("x.raw")).unwrap();
        let back = load_cube(&hp).unwrap();
        assert_eq!(back, cube);
        write_cube(&back, &hp).unwrap();
        assert_eq!(fs::read(dir.path().join("x.raw")).unwrap(), raw1);
    }

    #[test]
    fn ground_truth_formats() {
        let dir = tempfile::tempdir().unwrap();
        let p2 = dir.path().join("a.pgm");
        fs::write(&p2, "P2\n# comment\n2 2\n2\n0 1\n2 2\n").unwrap();
        let gt = load_ground_truth(&p2).unwrap();
        assert_eq!((gt.width(), gt.height(), gt.n_classes()), (2, 2, 2));
        assert_eq!(gt.labels(), &[0, 1, 2, 2]);

        let csv = dir.path().join("b.csv");
        fs::write(&csv, "0,0\n0,0\n").unwrap();
        let gt = load_ground_truth(&csv).unwrap();
        assert_eq!(gt.n_classes(), 0);
        assert_eq!(gt.labels().len(), 4);

        let p5 = dir.path().join("c.pgm");
        let labels: Vec<u16> = (0..=16).collect();
        let mut bytes = b"P5\n17 1\n16\n".to_vec();
        bytes.extend(labels.iter().map(|&l| l as u8));
        fs::write(&p5, bytes).unwrap();
        assert_eq!(load_ground_truth(&p5).unwrap().n_classes(), 16);
    }

    #[test]
    fn malformed_ground_truth() {
        let dir = tempfile::tempdir().unwrap();
        let cases: [(&str, &str); 4] = [
            ("neg.csv", "0,-1\n1,1\n"),
            ("ragged.csv", "0,1\n1\n"),
            ("empty.csv", "\n"),
            ("short.pgm", "P2\n2 2\n3\n0 1 2\n"),
        ];
        for (name, body) in cases {
            let p = dir.path().join(name);
            fs::write(&p, body).unwrap();
            assert!(load_ground_truth(&p).is_err(), "{name} should fail");
        }
    }

    #[test]
    fn pgm_encode_decode() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.pgm");
        let labels = vec![0u16, 3, 1, 2, 300, 0];
        write_pgm(&p, 3, 2, &labels).unwrap();
        let img = read_label_image(&p).unwrap();
        assert_eq!(img.labels, labels);
        assert_eq!(img.maxval, 300);
    }

    #[test]
    fn split_counts_follow_rounding_rule() {
        assert_eq!(train_count(10, 0.5), 5);
        assert_eq!(train_count(54, 0.5), 27);
        assert_eq!(train_count(7, 0.5), 4);
        assert_eq!(train_count(2, 0.9), 1);
        assert_eq!(train_count(3, 0.01), 1);
        assert_eq!(train_count(1, 0.5), 1);
    }

    #[test]
    fn split_single_pixel_class_goes_to_train_with_warning() {
        let gt = GroundTruth::new(4, 1, vec![1, 1, 2, 0]).unwrap();
        let split = split_train_test(&gt, 0.5, 3).unwrap();
        assert!(split.train[2] && !split.test[2]);
        assert_eq!(split.warnings.len(), 1);
        assert!(!split.train[3] && !split.test[3]);
    }

    #[test]
    fn split_seeds_change_membership_not_counts() {
        let labels: Vec<u16> = (0..200).map(|i| (i % 4) as u16).collect();
        let gt = GroundTruth::new(20, 10, labels).unwrap();
        let a = split_train_test(&gt, 0.5, 1).unwrap();
        let b = split_train_test(&gt, 0.5, 2).unwrap();
        assert_eq!(a.n_train(), b.n_train());
        assert_ne!(a.train, b.train);
        assert_eq!(a, split_train_test(&gt, 0.5, 1).unwrap());
    }

    #[test]
    fn synth_rejects_bad_specs() {
        let mut spec = SynthSpec {
            n_classes: 1,
            ..SynthSpec::default()
        };
        assert!(synth_dataset(&spec).is_err());
        spec.n_classes = 10;
        spec.width = 2;
        spec.height = 2;
        assert!(synth_dataset(&spec).is_err());
    }

    #[test]
    fn synth_records_roles() {
        let spec = SynthSpec {
            n_informative_bands: 3,
            n_redundant_bands: 2,
            n_noise_bands: 4,
            ..SynthSpec::default()
        };
        let ds = synth_dataset(&spec).unwrap();
        assert_eq!(ds.cube.n_bands(), 9);
        assert_eq!(ds.informative_bands().len(), 3);
        assert_eq!(ds.noise_bands().len(), 4);
        for role in &ds.roles {
            if let BandRole::Redundant { source } = role {
                assert_eq!(ds.roles[*source], BandRole::Informative);
            }
        }
        assert_eq!(ds.gt.n_classes(), 4);
    }
}
