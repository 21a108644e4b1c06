//! Reference multiclass SVM and evaluation.
//!
//! Binary machines are trained with SMO (error cache, max-|E_i − E_j|
//! second-multiplier choice with a seeded random fallback) and combined
//! one-vs-one with majority voting.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{seeded_rng, GroundTruth, HyperCube, SplitMask};
use crate::error::{Error, Result};
use crate::util::{fmt_percent, vec_nan_as_null};

/// Labeled pixel samples, features row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub n_features: usize,
    pub x: Vec<f64>,
    pub y: Vec<u16>,
    pub pixel_index: Vec<usize>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.n_features..(i + 1) * self.n_features]
    }
}

/// One sample per labeled pixel inside `mask`, with the raw values of
/// `bands` (in that order) as features.
pub fn extract_samples(
    cube: &HyperCube,
    gt: &GroundTruth,
    bands: &[usize],
    mask: &[bool],
) -> Result<SampleSet> {
    gt.check_matches(cube)?;
    if bands.is_empty() {
        return Err(Error::InvalidParam("no bands to extract".into()));
    }
    if let Some(&b) = bands.iter().find(|&&b| b >= cube.n_bands()) {
        return Err(Error::InvalidParam(format!(
            "band {b} out of range for {} bands",
            cube.n_bands()
        )));
    }
    if mask.len() != gt.labels().len() {
        return Err(Error::Dimension(format!(
            "mask of {} pixels for a {}-pixel image",
            mask.len(),
            gt.labels().len()
        )));
    }
    let mut set = SampleSet {
        n_features: bands.len(),
        x: Vec::new(),
        y: Vec::new(),
        pixel_index: Vec::new(),
    };
    for (p, (&label, &m)) in gt.labels().iter().zip(mask).enumerate() {
        if label == 0 || !m {
            continue;
        }
        set.x.extend(bands.iter().map(|&b| f64::from(cube.value(b, p))));
        set.y.push(label);
        set.pixel_index.push(p);
    }
    if set.is_empty() {
        return Err(Error::Empty("no labeled pixels inside the mask".into()));
    }
    Ok(set)
}

/// Per-feature z-score parameters fitted on training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl Scaler {
    pub fn fit(set: &SampleSet) -> Scaler {
        let n = set.len().max(1) as f64;
        let d = set.n_features;
        let mut mean = vec![0.0; d];
        for i in 0..set.len() {
            for (m, v) in mean.iter_mut().zip(set.row(i)) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; d];
        for i in 0..set.len() {
            for ((s, v), m) in var.iter_mut().zip(set.row(i)).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let std = var.into_iter().map(|s| (s / n).sqrt()).collect();
        Scaler { mean, std }
    }

    /// Zero-variance features map to 0.
    pub fn transform(&self, set: &SampleSet) -> SampleSet {
        let d = set.n_features;
        let x = set
            .x
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let f = k % d;
                if self.std[f] > 0.0 {
                    (v - self.mean[f]) / self.std[f]
                } else {
                    0.0
                }
            })
            .collect();
        SampleSet { x, ..set.clone() }
    }
}

pub fn standardize(train: &SampleSet) -> (Scaler, SampleSet) {
    let scaler = Scaler::fit(train);
    let transformed = scaler.transform(train);
    (scaler, transformed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "type")]
pub enum Kernel {
    Linear,
    Rbf { gamma: f64 },
}

impl Kernel {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Kernel::Linear => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            Kernel::Rbf { gamma } => {
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-gamma * d2).exp()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    pub c: f64,
    pub kernel: Kernel,
    /// KKT violation tolerance.
    pub tol: f64,
    /// Consecutive sweeps without any multiplier change before stopping.
    pub max_passes: usize,
    /// Hard cap on sweeps over the training set.
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            c: 1.0,
            kernel: Kernel::Linear,
            tol: 1e-3,
            max_passes: 3,
            max_iter: 500,
            seed: 0,
        }
    }
}

impl SvmParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidParam(format!("SVM C = {}", self.c)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParam(format!("SVM tol = {}", self.tol)));
        }
        if let Kernel::Rbf { gamma } = self.kernel {
            if !(gamma > 0.0 && gamma.is_finite()) {
                return Err(Error::InvalidParam(format!("RBF gamma = {gamma}")));
            }
        }
        Ok(())
    }
}

/// A trained two-class machine. `decision > 0` votes for the positive
/// class.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySvm {
    pub kernel: Kernel,
    pub n_features: usize,
    /// Support vectors, row-major.
    pub support: Vec<f64>,
    /// `α_i y_i` for each support vector.
    pub coef: Vec<f64>,
    pub bias: f64,
    /// Multipliers for every training sample, in input order.
    pub alpha: Vec<f64>,
    /// Primal weights, linear kernel only.
    pub weights: Option<Vec<f64>>,
    pub sweeps: usize,
    pub converged: bool,
}

impl BinarySvm {
    /// Σ α_i y_i k(x_i, x) + b over the support vectors.
    pub fn decision_dual(&self, x: &[f64]) -> f64 {
        let d = self.n_features;
        self.coef
            .iter()
            .enumerate()
            .map(|(s, c)| c * self.kernel.eval(&self.support[s * d..(s + 1) * d], x))
            .sum::<f64>()
            + self.bias
    }

    /// Decision value; the linear kernel uses the collapsed weight vector.
    pub fn decision(&self, x: &[f64]) -> f64 {
        match &self.weights {
            Some(w) => w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + self.bias,
            None => self.decision_dual(x),
        }
    }
}

struct Smo<'a> {
    x: &'a [f64],
    y: &'a [f64],
    d: usize,
    kernel: Kernel,
    c: f64,
    alpha: Vec<f64>,
    bias: f64,
    errors: Vec<f64>,
    diag: Vec<f64>,
}

impl Smo<'_> {
    fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }

    fn k(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else {
            self.kernel.eval(self.row(i), self.row(j))
        }
    }

    fn violates_kkt(&self, i: usize, tol: f64) -> bool {
        let r = self.y[i] * self.errors[i];
        (r < -tol && self.alpha[i] < self.c) || (r > tol && self.alpha[i] > 0.0)
    }

    fn take_step(&mut self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (ai, aj) = (self.alpha[i], self.alpha[j]);
        let (yi, yj) = (self.y[i], self.y[j]);
        let (ei, ej) = (self.errors[i], self.errors[j]);
        let (lo, hi) = if yi != yj {
            ((aj - ai).max(0.0), (self.c + aj - ai).min(self.c))
        } else {
            ((ai + aj - self.c).max(0.0), (ai + aj).min(self.c))
        };
        if hi - lo < 1e-12 {
            return false;
        }
        let kii = self.diag[i];
        let kjj = self.diag[j];
        let kij = self.k(i, j);
        let eta = 2.0 * kij - kii - kjj;
        if eta >= -1e-12 {
            return false;
        }
        let aj_new = (aj - yj * (ei - ej) / eta).clamp(lo, hi);
        if (aj_new - aj).abs() < 1e-8 * (aj_new + aj + 1e-8) {
            return false;
        }
        // rounding can push the paired update a hair outside the box
        let ai_new = (ai + yi * yj * (aj - aj_new)).clamp(0.0, self.c);
        let (dai, daj) = (ai_new - ai, aj_new - aj);

        let b1 = self.bias - ei - yi * dai * kii - yj * daj * kij;
        let b2 = self.bias - ej - yi * dai * kij - yj * daj * kjj;
        let b_new = if ai_new > 0.0 && ai_new < self.c {
            b1
        } else if aj_new > 0.0 && aj_new < self.c {
            b2
        } else {
            (b1 + b2) / 2.0
        };
        let db = b_new - self.bias;

        for k in 0..self.y.len() {
            let delta = yi * dai * self.k(i, k) + yj * daj * self.k(j, k) + db;
            self.errors[k] += delta;
        }
        self.alpha[i] = ai_new;
        self.alpha[j] = aj_new;
        self.bias = b_new;
        true
    }
}

/// Trains one binary machine on labels `y ∈ {−1, +1}`.
pub fn train_binary(x: &[f64], y: &[f64], n_features: usize, params: &SvmParams) -> Result<BinarySvm> {
    params.validate()?;
    let n = y.len();
    if x.len() != n * n_features {
        return Err(Error::Dimension(format!(
            "{} feature values for {n} samples of {n_features}",
            x.len()
        )));
    }
    if !(y.iter().any(|&v| v > 0.0) && y.iter().any(|&v| v < 0.0)) {
        return Err(Error::InvalidParam("binary SVM needs both classes".into()));
    }
    let mut smo = Smo {
        x,
        y,
        d: n_features,
        kernel: params.kernel,
        c: params.c,
        alpha: vec![0.0; n],
        bias: 0.0,
        errors: y.iter().map(|&v| -v).collect(),
        diag: Vec::new(),
    };
    smo.diag = (0..n).map(|i| params.kernel.eval(smo.row(i), smo.row(i))).collect();
    let mut rng = seeded_rng(params.seed);

    let mut quiet_passes = 0;
    let mut sweeps = 0;
    while quiet_passes < params.max_passes && sweeps < params.max_iter {
        let mut changed = 0;
        for i in 0..n {
            if !smo.violates_kkt(i, params.tol) {
                continue;
            }
            let ei = smo.errors[i];
            let mut best = i;
            let mut gap = -1.0;
            for (j, &ej) in smo.errors.iter().enumerate() {
                if j != i && (ei - ej).abs() > gap {
                    gap = (ei - ej).abs();
                    best = j;
                }
            }
            if smo.take_step(i, best) {
                changed += 1;
                continue;
            }
            let j = rng.random_range(0..n - 1);
            let j = if j >= i { j + 1 } else { j };
            if smo.take_step(i, j) {
                changed += 1;
            }
        }
        sweeps += 1;
        if changed == 0 {
            quiet_passes += 1;
        } else {
            quiet_passes = 0;
        }
    }
    let converged = quiet_passes >= params.max_passes;

    let mut support = Vec::new();
    let mut coef = Vec::new();
    for i in 0..n {
        if smo.alpha[i] > 0.0 {
            support.extend_from_slice(smo.row(i));
            coef.push(smo.alpha[i] * y[i]);
        }
    }
    let weights = matches!(params.kernel, Kernel::Linear).then(|| {
        let mut w = vec![0.0; n_features];
        for (s, c) in coef.iter().enumerate() {
            for (wf, v) in w.iter_mut().zip(&support[s * n_features..(s + 1) * n_features]) {
                *wf += c * v;
            }
        }
        w
    });
    Ok(BinarySvm {
        kernel: params.kernel,
        n_features,
        support,
        coef,
        bias: smo.bias,
        alpha: smo.alpha,
        weights,
        sweeps,
        converged,
    })
}

/// One-vs-one ensemble. `machines[k]` separates `pairs[k].0` (positive)
/// from `pairs[k].1`.
#[derive(Debug, Clone)]
pub struct SvmModel {
    pub classes: Vec<u16>,
    pub pairs: Vec<(u16, u16)>,
    pub machines: Vec<BinarySvm>,
    pub n_features: usize,
    pub warnings: Vec<String>,
}

pub fn train_svm(train: &SampleSet, params: &SvmParams) -> Result<SvmModel> {
    params.validate()?;
    let mut classes: Vec<u16> = train.y.clone();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::InvalidParam(format!(
            "SVM training needs at least 2 classes, got {}",
            classes.len()
        )));
    }
    let mut pairs = Vec::new();
    for (a_idx, &a) in classes.iter().enumerate() {
        for &b in &classes[a_idx + 1..] {
            pairs.push((a, b));
        }
    }
    let d = train.n_features;
    let machines: Vec<BinarySvm> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let mut x = Vec::new();
            let mut y = Vec::new();
            for i in 0..train.len() {
                let label = train.y[i];
                if label == a || label == b {
                    x.extend_from_slice(train.row(i));
                    y.push(if label == a { 1.0 } else { -1.0 });
                }
            }
            let p = SvmParams {
                seed: params.seed.wrapping_add(k as u64),
                ..params.clone()
            };
            train_binary(&x, &y, d, &p)
        })
        .collect::<Result<_>>()?;
    let warnings = pairs
        .iter()
        .zip(&machines)
        .filter(|(_, m)| !m.converged)
        .map(|((a, b), m)| {
            format!(
                "SMO for classes {a} vs {b} stopped at the sweep cap ({}) before converging",
                m.sweeps
            )
        })
        .collect();
    Ok(SvmModel {
        classes,
        pairs,
        machines,
        n_features: d,
        warnings,
    })
}

/// Labels plus a flag per sample marking vote ties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predictions {
    pub labels: Vec<u16>,
    pub ties: Vec<bool>,
}

impl Predictions {
    pub fn n_ties(&self) -> usize {
        self.ties.iter().filter(|&&t| t).count()
    }
}

impl SvmModel {
    /// Majority vote over all pairwise machines; ties go to the smallest
    /// class label.
    pub fn predict_one(&self, x: &[f64]) -> (u16, bool) {
        let max_class = *self.classes.last().unwrap() as usize;
        let mut votes = vec![0usize; max_class + 1];
        for (&(a, b), m) in self.pairs.iter().zip(&self.machines) {
            if m.decision(x) > 0.0 {
                votes[a as usize] += 1;
            } else {
                votes[b as usize] += 1;
            }
        }
        let top = *votes.iter().max().unwrap();
        let mut winners = self.classes.iter().filter(|&&c| votes[c as usize] == top);
        let winner = *winners.next().unwrap();
        (winner, winners.next().is_some())
    }
}

pub fn predict(model: &SvmModel, samples: &SampleSet) -> Result<Predictions> {
    if samples.n_features != model.n_features {
        return Err(Error::Dimension(format!(
            "model expects {} features, samples have {}",
            model.n_features, samples.n_features
        )));
    }
    let (labels, ties) = (0..samples.len())
        .into_par_iter()
        .map(|i| model.predict_one(samples.row(i)))
        .unzip();
    Ok(Predictions { labels, ties })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub overall_accuracy: f64,
    #[serde(with = "vec_nan_as_null")]
    pub per_class_accuracy: Vec<f64>,
    /// `confusion[t][p]`: test samples of class `t + 1` predicted as `p + 1`.
    pub confusion: Vec<Vec<u64>>,
    pub n_test: usize,
    pub tie_votes: usize,
    /// Predicted label for every labeled pixel, 0 elsewhere.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub predicted_map: Option<Vec<u16>>,
}

pub fn evaluate(pred: &[u16], truth: &[u16], n_classes: usize) -> Result<ClassificationReport> {
    if pred.len() != truth.len() {
        return Err(Error::Dimension(format!(
            "{} predictions for {} labels",
            pred.len(),
            truth.len()
        )));
    }
    if pred.is_empty() {
        return Err(Error::Empty("nothing to evaluate".into()));
    }
    let mut confusion = vec![vec![0u64; n_classes]; n_classes];
    for (&p, &t) in pred.iter().zip(truth) {
        let ok = |l: u16| l >= 1 && l as usize <= n_classes;
        if !ok(p) || !ok(t) {
            return Err(Error::InvalidParam(format!(
                "label pair ({t}, {p}) outside 1..={n_classes}"
            )));
        }
        confusion[t as usize - 1][p as usize - 1] += 1;
    }
    let correct: u64 = (0..n_classes).map(|c| confusion[c][c]).sum();
    let per_class_accuracy = confusion
        .iter()
        .enumerate()
        .map(|(c, row)| {
            let total: u64 = row.iter().sum();
            if total == 0 {
                f64::NAN
            } else {
                100.0 * row[c] as f64 / total as f64
            }
        })
        .collect();
    Ok(ClassificationReport {
        overall_accuracy: 100.0 * correct as f64 / pred.len() as f64,
        per_class_accuracy,
        confusion,
        n_test: pred.len(),
        tie_votes: 0,
        predicted_map: None,
    })
}

impl ClassificationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn overall_csv(&self) -> String {
        let correct: u64 = (0..self.confusion.len()).map(|c| self.confusion[c][c]).sum();
        format!(
            "overall_accuracy_percent,n_test,n_correct,tie_votes\n{},{},{},{}\n",
            fmt_percent(self.overall_accuracy),
            self.n_test,
            correct,
            self.tie_votes
        )
    }

    /// `class,total_pixels,accuracy_percent`, where `class_totals[c]` is the
    /// number of labeled pixels of class `c` in the whole map.
    pub fn per_class_csv(&self, class_totals: &[usize]) -> String {
        let mut out = String::from("class,total_pixels,accuracy_percent\n");
        for (c, acc) in self.per_class_accuracy.iter().enumerate() {
            let total = class_totals.get(c + 1).copied().unwrap_or(0);
            out.push_str(&format!("{},{},{}\n", c + 1, total, fmt_percent(*acc)));
        }
        out
    }
}

/// Full pipeline for one band subset: extract, standardize with training
/// statistics, train, score the test side, and predict a map over every
/// labeled pixel.
pub fn classify_bands(
    cube: &HyperCube,
    gt: &GroundTruth,
    bands: &[usize],
    split: &SplitMask,
    params: &SvmParams,
) -> Result<(ClassificationReport, SvmModel)> {
    let train = extract_samples(cube, gt, bands, &split.train)?;
    let test = extract_samples(cube, gt, bands, &split.test)?;
    let (scaler, train) = standardize(&train);
    let test = scaler.transform(&test);
    let model = train_svm(&train, params)?;
    let pred = predict(&model, &test)?;
    let mut report = evaluate(&pred.labels, &test.y, gt.n_classes())?;
    report.tie_votes = pred.n_ties();

    let all = scaler.transform(&extract_samples(cube, gt, bands, &gt.labeled_mask())?);
    let all_pred = predict(&model, &all)?;
    let mut map = vec![0u16; gt.labels().len()];
    for (&p, &label) in all.pixel_index.iter().zip(&all_pred.labels) {
        map[p] = label;
    }
    report.predicted_map = Some(map);
    Ok((report, model))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(x: Vec<f64>, y: Vec<u16>, d: usize) -> SampleSet {
        let n = y.len();
        SampleSet {
            n_features: d,
            x,
            y,
            pixel_index: (0..n).collect(),
        }
    }

    #[test]
    fn extraction_skips_unlabeled_and_keeps_band_order() {
        let cube = HyperCube::new(2, 2, 1, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let gt = GroundTruth::new(2, 2, vec![1, 1, 2, 0]).unwrap();
        let s = extract_samples(&cube, &gt, &[0], &[true; 4]).unwrap();
        assert_eq!((s.len(), s.n_features), (3, 1));

        let bands: Vec<Vec<f32>> = (0..6).map(|b| vec![b as f32; 4]).collect();
        let cube = HyperCube::from_bands(2, 2, bands).unwrap();
        let s = extract_samples(&cube, &gt, &[5, 2], &[true; 4]).unwrap();
        assert_eq!(s.row(0), &[5.0, 2.0]);
        assert!(extract_samples(&cube, &gt, &[6], &[true; 4]).is_err());
        assert!(extract_samples(&cube, &gt, &[0], &[false, false, false, true]).is_err());
    }

    #[test]
    fn standardize_examples() {
        let train = set(vec![1.0, 5.0, 3.0, 5.0], vec![1, 2], 2);
        let (scaler, t) = standardize(&train);
        assert_eq!(scaler.mean, vec![2.0, 5.0]);
        assert_eq!(scaler.std, vec![1.0, 0.0]);
        assert_eq!(t.x, vec![-1.0, 0.0, 1.0, 0.0]);

        let test = set(vec![10.0, 7.0], vec![1], 2);
        assert_eq!(scaler.transform(&test).x, vec![8.0, 0.0]);
    }

    #[test]
    fn evaluate_examples() {
        let r = evaluate(&[1, 2, 2, 2], &[1, 1, 2, 2], 2).unwrap();
        assert_eq!(r.overall_accuracy, 75.0);
        assert_eq!(r.per_class_accuracy, vec![50.0, 100.0]);
        assert_eq!(r.confusion, vec![vec![1, 1], vec![0, 2]]);

        let r = evaluate(&[1, 2, 3], &[1, 2, 3], 3).unwrap();
        assert_eq!(r.overall_accuracy, 100.0);
        assert_eq!(r.confusion, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);

        let r = evaluate(&[1], &[1], 2).unwrap();
        assert!(r.per_class_accuracy[1].is_nan());
        assert!(evaluate(&[1, 2], &[1], 2).is_err());
        assert!(evaluate(&[0], &[1], 2).is_err());
    }

    #[test]
    fn per_class_csv_layout() {
        let mut truth = vec![9u16; 5];
        truth.push(1);
        let mut pred = truth.clone();
        pred[5] = 2;
        let r = evaluate(&pred, &truth, 16).unwrap();
        let mut totals = vec![0usize; 17];
        totals[9] = 20;
        let csv = r.per_class_csv(&totals);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "class,total_pixels,accuracy_percent");
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[9], "9,20,100.00");
        assert_eq!(lines[1], "1,0,0.00");
        assert_eq!(lines[2], "2,0,NaN");
    }

    #[test]
    fn single_class_training_fails() {
        let s = set(vec![0.0, 1.0], vec![3, 3], 1);
        assert!(train_svm(&s, &SvmParams::default()).is_err());
    }

    #[test]
    fn three_way_tie_goes_to_smallest_class() {
        // machines vote 1 over 2, 2 over 3, 3 over 1
        let constant = |bias: f64| BinarySvm {
            kernel: Kernel::Linear,
            n_features: 1,
            support: vec![],
            coef: vec![],
            bias,
            alpha: vec![],
            weights: Some(vec![0.0]),
            sweeps: 0,
            converged: true,
        };
        let model = SvmModel {
            classes: vec![1, 2, 3],
            pairs: vec![(1, 2), (1, 3), (2, 3)],
            machines: vec![constant(1.0), constant(-1.0), constant(1.0)],
            n_features: 1,
            warnings: vec![],
        };
        assert_eq!(model.predict_one(&[0.0]), (1, true));
        let p = predict(&model, &set(vec![0.0, 1.0], vec![1, 1], 1)).unwrap();
        assert_eq!(p.n_ties(), 2);
        assert!(predict(&model, &set(vec![0.0, 1.0], vec![1], 2)).is_err());
    }

    #[test]
    fn params_validation() {
        let bad = SvmParams {
            c: 0.0,
            ..SvmParams::default()
        };
        assert!(bad.validate().is_err());
        let bad = SvmParams {
            kernel: Kernel::Rbf { gamma: -1.0 },
            ..SvmParams::default()
        };
        assert!(bad.validate().is_err());
    }
}
