//! Greedy band selection filters.
//!
//! Candidates are visited once, in ranking order. The top-ranked band seeds
//! the running estimate `C_est0`; every later candidate is averaged into a
//! trial estimate `(C_est0 + band) / 2` and kept only when the MI of the
//! quantized trial estimate against the ground truth beats the best MI so
//! far plus the threshold. The two filters differ only in the ranking:
//! spectral MI per band, or one GLCM texture feature per band.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{GroundTruth, HyperCube};
use crate::error::{Error, Result};
use crate::glcm::{ground_truth_features, texture_features, Feature, FeatureTable, GlcmConfig, TextureFeatures};
use crate::mi::{band_mi, MaskMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Rank bands by their own MI with the ground truth.
    Spectral,
    /// Rank bands by a GLCM texture feature.
    Texture,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Spectral => "spectral",
            Algorithm::Texture => "texture",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spectral" => Ok(Algorithm::Spectral),
            "texture" => Ok(Algorithm::Texture),
            other => Err(Error::InvalidParam(format!("algorithm {other:?}"))),
        }
    }
}

/// How texture features order the candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    /// Feature value, descending.
    #[default]
    FeatureArgmax,
    /// Distance to the ground-truth map's own feature value, ascending.
    GtFeatureSimilarity,
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::FeatureArgmax => "feature-argmax",
            Ordering::GtFeatureSimilarity => "gt-feature-similarity",
        })
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "feature-argmax" => Ok(Ordering::FeatureArgmax),
            "gt-feature-similarity" => Ok(Ordering::GtFeatureSimilarity),
            other => Err(Error::InvalidParam(format!("ordering {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    pub algorithm: Algorithm,
    pub feature: Feature,
    pub ordering: Ordering,
    /// Maximum number of retained bands.
    pub max_bands: usize,
    /// Additive slack on the acceptance test; negative values tolerate
    /// some redundancy.
    pub threshold: f64,
    /// Gray levels used when quantizing bands and estimates for MI.
    pub mi_levels: usize,
    pub glcm: GlcmConfig,
    pub mask_mode: MaskMode,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            algorithm: Algorithm::Spectral,
            feature: Feature::Homogeneity,
            ordering: Ordering::FeatureArgmax,
            max_bands: 10,
            threshold: -0.01,
            mi_levels: 256,
            glcm: GlcmConfig::default(),
            mask_mode: MaskMode::All,
        }
    }
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_bands < 1 {
            return Err(Error::InvalidParam("at least one band must be retained".into()));
        }
        if !self.threshold.is_finite() {
            return Err(Error::InvalidParam(format!("threshold {}", self.threshold)));
        }
        if self.mi_levels < 2 {
            return Err(Error::InvalidParam(format!("MI levels {}", self.mi_levels)));
        }
        self.glcm.validate()
    }
}

/// A candidate band and the score it was ranked by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedBand {
    pub band: usize,
    pub score: f64,
}

/// Sorts by `key` with NaN keys last and ties broken by band index.
fn sort_ranked(ranked: &mut [RankedBand], descending: bool, key: impl Fn(&RankedBand) -> f64) {
    ranked.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        let ord = match (ka.is_nan(), kb.is_nan()) {
            (true, true) => CmpOrdering::Equal,
            (true, false) => CmpOrdering::Greater,
            (false, true) => CmpOrdering::Less,
            (false, false) if descending => kb.partial_cmp(&ka).unwrap(),
            (false, false) => ka.partial_cmp(&kb).unwrap(),
        };
        ord.then(a.band.cmp(&b.band))
    });
}

/// Bands ordered by MI with the ground truth, highest first.
pub fn rank_bands_spectral(
    cube: &HyperCube,
    gt: &GroundTruth,
    cfg: &SelectionConfig,
) -> Result<Vec<RankedBand>> {
    gt.check_matches(cube)?;
    let mut ranked: Vec<RankedBand> = (0..cube.n_bands())
        .into_par_iter()
        .map(|b| {
            band_mi(gt, cube.band(b), cfg.mi_levels, cfg.mask_mode)
                .map(|score| RankedBand { band: b, score })
        })
        .collect::<Result<_>>()?;
    sort_ranked(&mut ranked, true, |r| r.score);
    Ok(ranked)
}

/// Bands ordered by `cfg.feature`. Under `FeatureArgmax` the score is the
/// feature value (descending); under `GtFeatureSimilarity` it is
/// `|feature(band) − feature(GT)|` (ascending). NaN scores rank last.
pub fn rank_bands_texture(
    features: &FeatureTable,
    gt_features: Option<&TextureFeatures>,
    cfg: &SelectionConfig,
) -> Result<Vec<RankedBand>> {
    let values = features.band_scores(cfg.feature);
    if values.iter().all(|v| v.is_nan()) {
        return Err(Error::InvalidParam(format!(
            "every band has an undefined {} value",
            cfg.feature
        )));
    }
    let mut ranked: Vec<RankedBand> = match cfg.ordering {
        Ordering::FeatureArgmax => values
            .iter()
            .enumerate()
            .map(|(band, &score)| RankedBand { band, score })
            .collect(),
        Ordering::GtFeatureSimilarity => {
            let target = gt_features
                .ok_or_else(|| {
                    Error::InvalidParam("gt-feature-similarity needs ground-truth features".into())
                })?
                .get(cfg.feature);
            values
                .iter()
                .enumerate()
                .map(|(band, &v)| RankedBand {
                    band,
                    score: (v - target).abs(),
                })
                .collect()
        }
    };
    sort_ranked(
        &mut ranked,
        cfg.ordering == Ordering::FeatureArgmax,
        |r| r.score,
    );
    Ok(ranked)
}

/// Ranking according to `cfg.algorithm`, computing texture features when
/// needed.
pub fn rank_bands(cube: &HyperCube, gt: &GroundTruth, cfg: &SelectionConfig) -> Result<Vec<RankedBand>> {
    cfg.validate()?;
    match cfg.algorithm {
        Algorithm::Spectral => rank_bands_spectral(cube, gt, cfg),
        Algorithm::Texture => {
            gt.check_matches(cube)?;
            let table = texture_features(cube, &cfg.glcm)?;
            let gt_row = match cfg.ordering {
                Ordering::FeatureArgmax => None,
                Ordering::GtFeatureSimilarity => {
                    let rows = ground_truth_features(gt, &cfg.glcm)?;
                    let items: Vec<TextureFeatures> = rows.iter().map(|r| r.features).collect();
                    Some(TextureFeatures::average(&items))
                }
            };
            rank_bands_texture(&table, gt_row.as_ref(), cfg)
        }
    }
}

/// One visited candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub band: usize,
    /// Ranking score; `null` in JSON when undefined.
    #[serde(with = "crate::util::nan_as_null")]
    pub score: f64,
    /// MI of the trial estimate (for the first band, of the band itself).
    pub mi: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub retained: Vec<usize>,
    pub exhausted: bool,
    pub trace: Vec<TraceEntry>,
}

impl SelectionResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Trace as CSV: `band,score,mi,accepted`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("band,score,mi,accepted\n");
        for e in &self.trace {
            out.push_str(&format!("{},{},{},{}\n", e.band, e.score, e.mi, e.accepted));
        }
        out
    }

    /// The best-MI value after each accepted band.
    pub fn accepted_mi(&self) -> Vec<f64> {
        self.trace.iter().filter(|e| e.accepted).map(|e| e.mi).collect()
    }

    /// Re-derives every accept/reject decision from the trace alone and
    /// checks it against the recorded flags and the retained list.
    pub fn replay(&self, threshold: f64) -> std::result::Result<(), String> {
        let Some(first) = self.trace.first() else {
            return Err("empty trace".into());
        };
        if !first.accepted {
            return Err("first candidate must be accepted".into());
        }
        let mut best = first.mi;
        let mut kept = vec![first.band];
        for (i, e) in self.trace.iter().enumerate().skip(1) {
            let should = e.mi > best + threshold;
            if should != e.accepted {
                return Err(format!(
                    "entry {i} (band {}): mi {} vs best {best} + {threshold} but accepted = {}",
                    e.band, e.mi, e.accepted
                ));
            }
            if should {
                best = e.mi;
                kept.push(e.band);
            }
        }
        if kept != self.retained {
            return Err(format!("retained {:?} but trace accepts {kept:?}", self.retained));
        }
        Ok(())
    }
}

/// Runs the greedy loop over an existing ranking.
pub fn select_from_ranking(
    cube: &HyperCube,
    gt: &GroundTruth,
    ranking: &[RankedBand],
    cfg: &SelectionConfig,
) -> Result<SelectionResult> {
    cfg.validate()?;
    gt.check_matches(cube)?;
    let (first, rest) = ranking
        .split_first()
        .ok_or_else(|| Error::Empty("no candidate bands".into()))?;

    let mut estimate: Vec<f64> = cube.band(first.band).iter().map(|&v| f64::from(v)).collect();
    let mut best = band_mi(gt, &estimate, cfg.mi_levels, cfg.mask_mode)?;
    let mut retained = vec![first.band];
    let mut trace = vec![TraceEntry {
        band: first.band,
        score: first.score,
        mi: best,
        accepted: true,
    }];

    let mut remaining = rest.iter();
    let mut trial = vec![0.0; estimate.len()];
    while retained.len() < cfg.max_bands {
        let Some(candidate) = remaining.next() else {
            break;
        };
        for ((t, &e), &v) in trial.iter_mut().zip(&estimate).zip(cube.band(candidate.band)) {
            *t = (e + f64::from(v)) / 2.0;
        }
        let mi = band_mi(gt, &trial, cfg.mi_levels, cfg.mask_mode)?;
        let accepted = mi > best + cfg.threshold;
        if accepted {
            best = mi;
            std::mem::swap(&mut estimate, &mut trial);
            retained.push(candidate.band);
        }
        trace.push(TraceEntry {
            band: candidate.band,
            score: candidate.score,
            mi,
            accepted,
        });
    }
    let exhausted = retained.len() < cfg.max_bands;
    Ok(SelectionResult {
        retained,
        exhausted,
        trace,
    })
}

pub fn select_bands(cube: &HyperCube, gt: &GroundTruth, cfg: &SelectionConfig) -> Result<SelectionResult> {
    let ranking = rank_bands(cube, gt, cfg)?;
    select_from_ranking(cube, gt, &ranking, cfg)
}
