//! Gray-level quantization, co-occurrence matrices and the four Haralick
//! texture features used for band ranking: contrast, correlation, energy
//! and homogeneity.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{GroundTruth, HyperCube};
use crate::error::{Error, Result};

/// A band mapped onto `levels` gray levels, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantizedBand {
    pub width: usize,
    pub height: usize,
    pub levels: usize,
    pub q: Vec<u16>,
}

impl QuantizedBand {
    /// Wraps an already-quantized grid, checking that every value is below
    /// `levels`.
    pub fn from_levels(width: usize, height: usize, levels: usize, q: Vec<u16>) -> Result<Self> {
        if q.len() != width * height {
            return Err(Error::Dimension(format!(
                "{} gray values for a {width}x{height} grid",
                q.len()
            )));
        }
        if let Some(v) = q.iter().find(|&&v| v as usize >= levels) {
            return Err(Error::InvalidParam(format!(
                "gray value {v} not below {levels} levels"
            )));
        }
        Ok(QuantizedBand {
            width,
            height,
            levels,
            q,
        })
    }

    fn at(&self, x: usize, y: usize) -> u16 {
        self.q[y * self.width + x]
    }
}

/// Min-max quantization to `levels` gray levels with round-half-up:
/// `q = floor((v − min) / (max − min) × (levels − 1) + 0.5)`. A constant
/// input maps to all zeros.
pub fn quantize_values<T: Copy + Into<f64>>(values: &[T], levels: usize) -> Result<Vec<u16>> {
    if !(2..=65536).contains(&levels) {
        return Err(Error::InvalidParam(format!("{levels} gray levels")));
    }
    if values.is_empty() {
        return Err(Error::Empty("band".to_string()));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (index, &v) in values.iter().enumerate() {
        let v: f64 = v.into();
        if !v.is_finite() {
            return Err(Error::NonFinite { index });
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi == lo {
        return Ok(vec![0; values.len()]);
    }
    let range = hi - lo;
    let top = (levels - 1) as f64;
    Ok(values
        .iter()
        .map(|&v| {
            let x = (v.into() - lo) / range * top;
            (x + 0.5).floor().min(top) as u16
        })
        .collect())
}

pub fn quantize_band<T: Copy + Into<f64>>(
    band: &[T],
    width: usize,
    height: usize,
    levels: usize,
) -> Result<QuantizedBand> {
    if band.len() != width * height {
        return Err(Error::Dimension(format!(
            "{} values for a {width}x{height} band",
            band.len()
        )));
    }
    Ok(QuantizedBand {
        width,
        height,
        levels,
        q: quantize_values(band, levels)?,
    })
}

/// Pixel-pair direction. With `y` growing downward: 0° = (d, 0),
/// 45° = (d, −d), 90° = (0, −d), 135° = (−d, −d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "0")]
    Deg0,
    #[serde(rename = "45")]
    Deg45,
    #[serde(rename = "90")]
    Deg90,
    #[serde(rename = "135")]
    Deg135,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Deg0,
        Direction::Deg45,
        Direction::Deg90,
        Direction::Deg135,
    ];

    pub fn offset(self, distance: usize) -> (isize, isize) {
        let d = distance as isize;
        match self {
            Direction::Deg0 => (d, 0),
            Direction::Deg45 => (d, -d),
            Direction::Deg90 => (0, -d),
            Direction::Deg135 => (-d, -d),
        }
    }

    pub fn degrees(self) -> u32 {
        match self {
            Direction::Deg0 => 0,
            Direction::Deg45 => 45,
            Direction::Deg90 => 90,
            Direction::Deg135 => 135,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.degrees())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Direction::Deg0),
            "45" => Ok(Direction::Deg45),
            "90" => Ok(Direction::Deg90),
            "135" => Ok(Direction::Deg135),
            other => Err(Error::InvalidParam(format!("direction {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregation {
    #[default]
    Average,
    PerDirection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlcmConfig {
    pub levels: usize,
    pub distance: usize,
    pub directions: Vec<Direction>,
    pub symmetric: bool,
    pub aggregation: Aggregation,
}

impl Default for GlcmConfig {
    fn default() -> Self {
        GlcmConfig {
            levels: 16,
            distance: 1,
            directions: Direction::ALL.to_vec(),
            symmetric: false,
            aggregation: Aggregation::Average,
        }
    }
}

impl GlcmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.levels < 2 {
            return Err(Error::InvalidParam(format!("GLCM levels {}", self.levels)));
        }
        if self.distance < 1 {
            return Err(Error::InvalidParam("GLCM distance must be at least 1".into()));
        }
        if self.directions.is_empty() {
            return Err(Error::InvalidParam("no GLCM directions".into()));
        }
        Ok(())
    }
}

/// Co-occurrence counts and their normalized probabilities, both stored
/// row-major as `levels × levels`.
#[derive(Debug, Clone, PartialEq)]
pub struct Glcm {
    pub levels: usize,
    pub counts: Vec<u64>,
    pub probs: Vec<f64>,
}

impl Glcm {
    /// Builds a matrix from raw counts, normalizing when the total is
    /// non-zero.
    pub fn from_counts(levels: usize, counts: Vec<u64>) -> Self {
        let total: u64 = counts.iter().sum();
        let probs = if total > 0 {
            counts.iter().map(|&c| c as f64 / total as f64).collect()
        } else {
            vec![0.0; counts.len()]
        };
        Glcm {
            levels,
            counts,
            probs,
        }
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.levels + j]
    }

    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.probs[i * self.levels + j]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn require_pairs(&self) -> Result<()> {
        if self.total() == 0 {
            Err(Error::Empty("GLCM has no valid pixel pairs".to_string()))
        } else {
            Ok(())
        }
    }

    fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let g = self.levels;
        self.probs
            .iter()
            .enumerate()
            .map(move |(k, &p)| ((k / g) as f64, (k % g) as f64, p))
    }
}

/// Counts gray-level pairs `(q[p], q[p + offset])` over every pixel whose
/// neighbour is in bounds. Symmetric mode also counts each reversed pair.
pub fn compute_glcm(qb: &QuantizedBand, offset: (isize, isize), symmetric: bool) -> Result<Glcm> {
    let (dx, dy) = offset;
    if dx == 0 && dy == 0 {
        return Err(Error::InvalidParam("GLCM offset (0, 0)".into()));
    }
    let (w, h) = (qb.width as isize, qb.height as isize);
    if dx.abs() >= w || dy.abs() >= h {
        return Err(Error::InvalidParam(format!(
            "offset ({dx}, {dy}) out of range for a {w}x{h} grid"
        )));
    }
    let g = qb.levels;
    let mut counts = vec![0u64; g * g];
    let x_range = (0.max(-dx))..(w.min(w - dx));
    let y_range = (0.max(-dy))..(h.min(h - dy));
    for y in y_range {
        for x in x_range.clone() {
            let a = qb.at(x as usize, y as usize) as usize;
            let b = qb.at((x + dx) as usize, (y + dy) as usize) as usize;
            counts[a * g + b] += 1;
            if symmetric {
                counts[b * g + a] += 1;
            }
        }
    }
    Ok(Glcm::from_counts(g, counts))
}

/// Σ (i − j)² P(i, j)
pub fn glcm_contrast(g: &Glcm) -> Result<f64> {
    g.require_pairs()?;
    Ok(g.cells().map(|(i, j, p)| (i - j) * (i - j) * p).sum())
}

/// Σ (i − μᵢ)(j − μⱼ) P(i, j) / (σᵢ σⱼ), with row and column marginal
/// statistics taken from P itself. NaN when either marginal is degenerate.
pub fn glcm_correlation(g: &Glcm) -> Result<f64> {
    g.require_pairs()?;
    let (mut mu_i, mut mu_j) = (0.0, 0.0);
    for (i, j, p) in g.cells() {
        mu_i += i * p;
        mu_j += j * p;
    }
    let (mut var_i, mut var_j, mut cov) = (0.0, 0.0, 0.0);
    for (i, j, p) in g.cells() {
        var_i += (i - mu_i) * (i - mu_i) * p;
        var_j += (j - mu_j) * (j - mu_j) * p;
        cov += (i - mu_i) * (j - mu_j) * p;
    }
    let denom = var_i.sqrt() * var_j.sqrt();
    if denom == 0.0 {
        return Ok(f64::NAN);
    }
    Ok(cov / denom)
}

/// Σ P(i, j)²
pub fn glcm_energy(g: &Glcm) -> Result<f64> {
    g.require_pairs()?;
    Ok(g.probs.iter().map(|p| p * p).sum())
}

/// Σ P(i, j) / (1 + (i − j)²)
pub fn glcm_homogeneity(g: &Glcm) -> Result<f64> {
    g.require_pairs()?;
    Ok(g.cells().map(|(i, j, p)| p / (1.0 + (i - j) * (i - j))).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Feature {
    Contrast,
    Correlation,
    Energy,
    Homogeneity,
}

impl Feature {
    pub const ALL: [Feature; 4] = [
        Feature::Contrast,
        Feature::Correlation,
        Feature::Energy,
        Feature::Homogeneity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::Contrast => "contrast",
            Feature::Correlation => "correlation",
            Feature::Energy => "energy",
            Feature::Homogeneity => "homogeneity",
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidParam(format!("texture feature {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextureFeatures {
    pub contrast: f64,
    pub correlation: f64,
    pub energy: f64,
    pub homogeneity: f64,
}

impl TextureFeatures {
    pub fn from_glcm(g: &Glcm) -> Result<Self> {
        Ok(TextureFeatures {
            contrast: glcm_contrast(g)?,
            correlation: glcm_correlation(g)?,
            energy: glcm_energy(g)?,
            homogeneity: glcm_homogeneity(g)?,
        })
    }

    pub fn get(&self, feature: Feature) -> f64 {
        match feature {
            Feature::Contrast => self.contrast,
            Feature::Correlation => self.correlation,
            Feature::Energy => self.energy,
            Feature::Homogeneity => self.homogeneity,
        }
    }

    /// Mean over directions. Correlation ignores NaN entries and is NaN only
    /// when every entry is.
    pub fn average(items: &[TextureFeatures]) -> TextureFeatures {
        let n = items.len() as f64;
        let mean = |f: fn(&TextureFeatures) -> f64| items.iter().map(f).sum::<f64>() / n;
        let defined: Vec<f64> = items
            .iter()
            .map(|t| t.correlation)
            .filter(|c| !c.is_nan())
            .collect();
        let correlation = if defined.is_empty() {
            f64::NAN
        } else {
            defined.iter().sum::<f64>() / defined.len() as f64
        };
        TextureFeatures {
            contrast: mean(|t| t.contrast),
            correlation,
            energy: mean(|t| t.energy),
            homogeneity: mean(|t| t.homogeneity),
        }
    }
}

/// What a feature row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSource {
    Band(usize),
    GroundTruth,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub source: RowSource,
    /// `None` for direction-averaged rows.
    pub direction: Option<Direction>,
    pub features: TextureFeatures,
}

/// Per-band texture features, one row per band (averaged) or one row per
/// band and direction.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub aggregation: Aggregation,
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    pub fn n_bands(&self) -> usize {
        self.rows
            .iter()
            .filter_map(|r| match r.source {
                RowSource::Band(b) => Some(b + 1),
                RowSource::GroundTruth => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// One score per band for `feature`. Per-direction rows are folded with
    /// the same NaN-aware mean used for averaged tables.
    pub fn band_scores(&self, feature: Feature) -> Vec<f64> {
        let mut per_band: Vec<Vec<TextureFeatures>> = vec![Vec::new(); self.n_bands()];
        for row in &self.rows {
            if let RowSource::Band(b) = row.source {
                per_band[b].push(row.features);
            }
        }
        per_band
            .iter()
            .map(|items| {
                if items.is_empty() {
                    f64::NAN
                } else {
                    TextureFeatures::average(items).get(feature)
                }
            })
            .collect()
    }

    pub fn ground_truth_row(&self) -> Option<TextureFeatures> {
        let items: Vec<TextureFeatures> = self
            .rows
            .iter()
            .filter(|r| r.source == RowSource::GroundTruth)
            .map(|r| r.features)
            .collect();
        (!items.is_empty()).then(|| TextureFeatures::average(&items))
    }

    /// CSV with header `band,contrast,correlation,energy,homogeneity`
    /// (a `direction` column follows `band` in per-direction tables).
    /// Undefined correlation is written as `NaN`; the ground-truth row, if
    /// present, uses `gt` as its band label.
    pub fn to_csv(&self) -> String {
        let per_dir = self.aggregation == Aggregation::PerDirection;
        let mut out = String::from(if per_dir {
            "band,direction,contrast,correlation,energy,homogeneity\n"
        } else {
            "band,contrast,correlation,energy,homogeneity\n"
        });
        for row in &self.rows {
            match row.source {
                RowSource::Band(b) => out.push_str(&b.to_string()),
                RowSource::GroundTruth => out.push_str("gt"),
            }
            if per_dir {
                out.push(',');
                if let Some(d) = row.direction {
                    out.push_str(&d.to_string());
                }
            }
            let f = &row.features;
            out.push_str(&format!(
                ",{},{},{},{}\n",
                f.contrast, f.correlation, f.energy, f.homogeneity
            ));
        }
        out
    }
}

/// Features of one quantized grid for every configured direction. Directions
/// whose offset does not fit the grid, or that yield no pairs, are skipped.
pub fn directional_features(
    qb: &QuantizedBand,
    cfg: &GlcmConfig,
) -> Result<Vec<(Direction, TextureFeatures)>> {
    let mut out = Vec::with_capacity(cfg.directions.len());
    for &dir in &cfg.directions {
        let glcm = match compute_glcm(qb, dir.offset(cfg.distance), cfg.symmetric) {
            Ok(g) => g,
            Err(Error::InvalidParam(_)) => continue,
            Err(e) => return Err(e),
        };
        if glcm.total() == 0 {
            continue;
        }
        out.push((dir, TextureFeatures::from_glcm(&glcm)?));
    }
    if out.is_empty() {
        return Err(Error::Empty(format!(
            "no valid pixel pairs at distance {} in any direction",
            cfg.distance
        )));
    }
    Ok(out)
}

fn rows_for(
    source: RowSource,
    qb: &QuantizedBand,
    cfg: &GlcmConfig,
) -> Result<Vec<FeatureRow>> {
    let per_dir = directional_features(qb, cfg)?;
    Ok(match cfg.aggregation {
        Aggregation::Average => {
            let items: Vec<TextureFeatures> = per_dir.iter().map(|(_, f)| *f).collect();
            vec![FeatureRow {
                source,
                direction: None,
                features: TextureFeatures::average(&items),
            }]
        }
        Aggregation::PerDirection => per_dir
            .into_iter()
            .map(|(d, features)| FeatureRow {
                source,
                direction: Some(d),
                features,
            })
            .collect(),
    })
}

/// Quantizes every band to `cfg.levels` and extracts its texture features.
/// Bands are processed in parallel; row order follows band order.
pub fn texture_features(cube: &HyperCube, cfg: &GlcmConfig) -> Result<FeatureTable> {
    cfg.validate()?;
    let per_band: Vec<Vec<FeatureRow>> = (0..cube.n_bands())
        .into_par_iter()
        .map(|b| {
            let qb = quantize_band(cube.band(b), cube.width(), cube.height(), cfg.levels)?;
            rows_for(RowSource::Band(b), &qb, cfg).map_err(|e| match e {
                Error::Empty(msg) => Error::Empty(format!("band {b}: {msg}")),
                other => other,
            })
        })
        .collect::<Result<_>>()?;
    Ok(FeatureTable {
        aggregation: cfg.aggregation,
        rows: per_band.into_iter().flatten().collect(),
    })
}

/// Feature rows of the ground-truth map itself, using the labels directly as
/// gray levels (`K + 1` levels, at least 2).
pub fn ground_truth_features(gt: &GroundTruth, cfg: &GlcmConfig) -> Result<Vec<FeatureRow>> {
    cfg.validate()?;
    let levels = (gt.n_classes() + 1).max(2);
    let qb = QuantizedBand::from_levels(gt.width(), gt.height(), levels, gt.labels().to_vec())?;
    rows_for(RowSource::GroundTruth, &qb, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qb(width: usize, levels: usize, q: &[u16]) -> QuantizedBand {
        QuantizedBand::from_levels(width, q.len() / width, levels, q.to_vec()).unwrap()
    }

    fn glcm_with(levels: usize, cells: &[((usize, usize), u64)]) -> Glcm {
        let mut counts = vec![0; levels * levels];
        for &((i, j), c) in cells {
            counts[i * levels + j] = c;
        }
        Glcm::from_counts(levels, counts)
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize_values(&[0.0f64, 0.5, 1.0], 3).unwrap(), vec![0, 1, 2]);
        assert_eq!(quantize_values(&[4.2f64; 5], 16).unwrap(), vec![0; 5]);
        // 0.4 * 4 = 1.6 -> 2
        assert_eq!(quantize_values(&[0.0f64, 0.4, 1.0], 5).unwrap()[1], 2);
        // half rounds up: 0.125 * 4 = 0.5 -> 1
        assert_eq!(quantize_values(&[0.0f64, 0.125, 1.0], 5).unwrap()[1], 1);
        assert!(matches!(
            quantize_values(&[0.0f64, f64::INFINITY], 4),
            Err(Error::NonFinite { index: 1 })
        ));
        assert!(quantize_values(&[0.0f64], 1).is_err());
    }

    #[test]
    fn glcm_small_examples() {
        let g = compute_glcm(&qb(2, 2, &[0, 1, 0, 1]), (1, 0), false).unwrap();
        assert_eq!(g.counts, vec![0, 2, 0, 0]);
        assert_eq!(g.prob(0, 1), 1.0);

        let g = compute_glcm(&qb(2, 2, &[0, 1, 0, 1]), (1, 0), true).unwrap();
        assert_eq!((g.count(0, 1), g.count(1, 0)), (2, 2));

        let g = compute_glcm(&qb(3, 2, &[0; 9]), (1, 0), false).unwrap();
        assert_eq!(g.count(0, 0), 6);
        assert_eq!(g.prob(0, 0), 1.0);
    }

    #[test]
    fn glcm_offset_errors() {
        let band = qb(2, 2, &[0, 1, 0, 1]);
        assert!(compute_glcm(&band, (0, 0), false).is_err());
        assert!(compute_glcm(&band, (2, 0), false).is_err());
        assert!(compute_glcm(&band, (0, -2), false).is_err());
    }

    #[test]
    fn contrast_examples() {
        assert_eq!(glcm_contrast(&glcm_with(2, &[((0, 1), 5)])).unwrap(), 1.0);
        assert_eq!(glcm_contrast(&glcm_with(3, &[((0, 0), 2), ((2, 2), 1)])).unwrap(), 0.0);
        assert!(glcm_contrast(&glcm_with(2, &[])).is_err());
    }

    #[test]
    fn correlation_examples() {
        let aligned = glcm_with(2, &[((0, 0), 1), ((1, 1), 1)]);
        assert!((glcm_correlation(&aligned).unwrap() - 1.0).abs() < 1e-12);
        let anti = glcm_with(2, &[((0, 1), 1), ((1, 0), 1)]);
        assert!((glcm_correlation(&anti).unwrap() + 1.0).abs() < 1e-12);
        assert!(glcm_correlation(&glcm_with(2, &[((0, 0), 4)])).unwrap().is_nan());
    }

    #[test]
    fn energy_and_homogeneity_examples() {
        assert_eq!(glcm_energy(&glcm_with(4, &[((2, 3), 7)])).unwrap(), 1.0);
        let uniform = glcm_with(2, &[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
        assert_eq!(glcm_energy(&uniform).unwrap(), 0.25);
        assert_eq!(
            glcm_homogeneity(&glcm_with(3, &[((0, 0), 1), ((1, 1), 3)])).unwrap(),
            1.0
        );
        assert_eq!(
            glcm_homogeneity(&glcm_with(3, &[((0, 1), 1), ((2, 1), 1)])).unwrap(),
            0.5
        );
    }

    #[test]
    fn constant_cube_feature_row() {
        let cube = HyperCube::new(5, 5, 1, vec![3.0; 25]).unwrap();
        let table = texture_features(&cube, &GlcmConfig::default()).unwrap();
        let f = table.rows[0].features;
        assert_eq!(f.contrast, 0.0);
        assert!(f.correlation.is_nan());
        assert_eq!(f.energy, 1.0);
        assert_eq!(f.homogeneity, 1.0);
        assert_eq!(table.to_csv(), "band,contrast,correlation,energy,homogeneity\n0,0,NaN,1,1\n");
    }

    #[test]
    fn striped_band_features() {
        let band: Vec<f32> = (0..64).map(|i| (i % 8 % 2) as f32).collect();
        let cube = HyperCube::new(8, 8, 1, band).unwrap();
        let cfg = GlcmConfig {
            levels: 2,
            directions: vec![Direction::Deg0],
            ..GlcmConfig::default()
        };
        // each row holds four (0,1) pairs and three (1,0) pairs
        let f = texture_features(&cube, &cfg).unwrap().rows[0].features;
        assert_eq!(f.contrast, 1.0);
        assert!((f.energy - 25.0 / 49.0).abs() < 1e-15);
        assert_eq!(f.homogeneity, 0.5);

        let sym = GlcmConfig {
            symmetric: true,
            ..cfg
        };
        let f = texture_features(&cube, &sym).unwrap().rows[0].features;
        assert_eq!(f.contrast, 1.0);
        assert_eq!(f.energy, 0.5);
        assert_eq!(f.homogeneity, 0.5);
    }

    #[test]
    fn identical_bands_give_identical_rows() {
        let band: Vec<f32> = (0..36).map(|i| ((i * 7) % 11) as f32).collect();
        let mut values = band.clone();
        values.extend(&band);
        let cube = HyperCube::new(6, 6, 2, values).unwrap();
        let table = texture_features(&cube, &GlcmConfig::default()).unwrap();
        assert_eq!(table.rows[0].features, table.rows[1].features);
    }

    #[test]
    fn nan_correlation_is_excluded_from_average() {
        let items = [
            TextureFeatures {
                contrast: 1.0,
                correlation: f64::NAN,
                energy: 0.5,
                homogeneity: 0.5,
            },
            TextureFeatures {
                contrast: 3.0,
                correlation: 0.4,
                energy: 0.3,
                homogeneity: 0.7,
            },
        ];
        let avg = TextureFeatures::average(&items);
        assert_eq!(avg.contrast, 2.0);
        assert_eq!(avg.correlation, 0.4);
    }

    #[test]
    fn per_direction_table_and_gt_row() {
        let labels: Vec<u16> = (0..16).map(|i| if i % 4 < 2 { 1 } else { 2 }).collect();
        let gt = GroundTruth::new(4, 4, labels).unwrap();
        let cfg = GlcmConfig {
            aggregation: Aggregation::PerDirection,
            ..GlcmConfig::default()
        };
        let rows = ground_truth_features(&gt, &cfg).unwrap();
        assert_eq!(rows.len(), 4);
        let v = rows.iter().find(|r| r.direction == Some(Direction::Deg90)).unwrap();
        // vertical neighbours always share a label
        assert_eq!(v.features.contrast, 0.0);
        let table = FeatureTable {
            aggregation: cfg.aggregation,
            rows,
        };
        assert!(table.to_csv().starts_with("band,direction,contrast"));
        assert!(table.ground_truth_row().is_some());
    }

    #[test]
    fn one_pixel_band_has_no_pairs() {
        let cube = HyperCube::new(1, 1, 1, vec![1.0]).unwrap();
        assert!(matches!(
            texture_features(&cube, &GlcmConfig::default()),
            Err(Error::Empty(_))
        ));
    }
}
