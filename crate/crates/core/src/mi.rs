//! Plug-in histogram estimates of entropy and mutual information, in bits.

use serde::{Deserialize, Serialize};

use crate::dataset::GroundTruth;
use crate::error::{Error, Result};
use crate::glcm::quantize_values;

/// Which pixels take part in an MI estimate against the ground truth.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MaskMode {
    /// Every pixel; unlabeled background counts as its own category.
    #[default]
    All,
    LabeledOnly,
}

/// Counts of `(a, b)` value pairs, row-major `n_a × n_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointHistogram {
    pub n_a: usize,
    pub n_b: usize,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl JointHistogram {
    pub fn from_counts(n_a: usize, n_b: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n_a * n_b {
            return Err(Error::Dimension(format!(
                "{} cells for a {n_a}x{n_b} histogram",
                counts.len()
            )));
        }
        let total = counts.iter().sum();
        if total == 0 {
            return Err(Error::Empty("joint histogram".into()));
        }
        Ok(JointHistogram {
            n_a,
            n_b,
            counts,
            total,
        })
    }

    pub fn count(&self, x: usize, y: usize) -> u64 {
        self.counts[x * self.n_b + y]
    }

    pub fn marginal_a(&self) -> Vec<u64> {
        self.counts.chunks_exact(self.n_b).map(|r| r.iter().sum()).collect()
    }

    pub fn marginal_b(&self) -> Vec<u64> {
        let mut m = vec![0; self.n_b];
        for row in self.counts.chunks_exact(self.n_b) {
            for (acc, &c) in m.iter_mut().zip(row) {
                *acc += c;
            }
        }
        m
    }

    pub fn transpose(&self) -> JointHistogram {
        let mut counts = vec![0; self.counts.len()];
        for x in 0..self.n_a {
            for y in 0..self.n_b {
                counts[y * self.n_a + x] = self.count(x, y);
            }
        }
        JointHistogram {
            n_a: self.n_b,
            n_b: self.n_a,
            counts,
            total: self.total,
        }
    }

    /// H(A) + H(B) − H(A, B), clamped at zero.
    pub fn mutual_information(&self) -> f64 {
        let h_a = entropy(&self.marginal_a()).unwrap_or(0.0);
        let h_b = entropy(&self.marginal_b()).unwrap_or(0.0);
        let h_ab = entropy(&self.counts).unwrap_or(0.0);
        (h_a + h_b - h_ab).max(0.0)
    }

    /// Direct plug-in sum Σ p(a,b) log₂(p(a,b) / (p(a) p(b))).
    pub fn mutual_information_plugin(&self) -> f64 {
        let n = self.total as f64;
        let ma = self.marginal_a();
        let mb = self.marginal_b();
        let mut mi = 0.0;
        for x in 0..self.n_a {
            for y in 0..self.n_b {
                let c = self.count(x, y);
                if c == 0 {
                    continue;
                }
                let p = c as f64 / n;
                let pa = ma[x] as f64 / n;
                let pb = mb[y] as f64 / n;
                mi += p * (p / (pa * pb)).log2();
            }
        }
        mi
    }
}

/// Builds the joint histogram of two equally sized integer grids,
/// optionally restricted to `mask`. Bin counts are `max + 1` of the counted
/// values on each side.
pub fn joint_histogram(a: &[u16], b: &[u16], mask: Option<&[bool]>) -> Result<JointHistogram> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "grids of {} and {} pixels",
            a.len(),
            b.len()
        )));
    }
    if let Some(m) = mask {
        if m.len() != a.len() {
            return Err(Error::Dimension(format!(
                "mask of {} pixels for grids of {}",
                m.len(),
                a.len()
            )));
        }
    }
    let counted = |p: usize| mask.is_none_or(|m| m[p]);
    let mut n_a = 0;
    let mut n_b = 0;
    let mut any = false;
    for p in (0..a.len()).filter(|&p| counted(p)) {
        n_a = n_a.max(a[p] as usize + 1);
        n_b = n_b.max(b[p] as usize + 1);
        any = true;
    }
    if !any {
        return Err(Error::Empty("no pixels selected for the joint histogram".into()));
    }
    let mut counts = vec![0u64; n_a * n_b];
    for p in (0..a.len()).filter(|&p| counted(p)) {
        counts[a[p] as usize * n_b + b[p] as usize] += 1;
    }
    JointHistogram::from_counts(n_a, n_b, counts)
}

/// Shannon entropy, in bits, of a histogram given as raw counts.
pub fn entropy(counts: &[u64]) -> Result<f64> {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::Empty("distribution".into()));
    }
    let n = total as f64;
    Ok(-counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.log2()
        })
        .sum::<f64>())
}

/// Entropy of a probability vector. Entries need not be normalized exactly;
/// zeros contribute nothing.
pub fn entropy_of_probs(probs: &[f64]) -> Result<f64> {
    if probs.iter().all(|&p| p <= 0.0) {
        return Err(Error::Empty("distribution".into()));
    }
    Ok(-probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>())
}

pub fn mutual_information(a: &[u16], b: &[u16], mask: Option<&[bool]>) -> Result<f64> {
    Ok(joint_histogram(a, b, mask)?.mutual_information())
}

/// MI between the ground-truth labels and a real-valued band quantized to
/// `levels` gray levels.
pub fn band_mi<T: Copy + Into<f64>>(
    gt: &GroundTruth,
    band: &[T],
    levels: usize,
    mask_mode: MaskMode,
) -> Result<f64> {
    if band.len() != gt.labels().len() {
        return Err(Error::Dimension(format!(
            "band of {} pixels against a ground truth of {}",
            band.len(),
            gt.labels().len()
        )));
    }
    let q = quantize_values(band, levels)?;
    match mask_mode {
        MaskMode::All => mutual_information(gt.labels(), &q, None),
        MaskMode::LabeledOnly => mutual_information(gt.labels(), &q, Some(&gt.labeled_mask())),
    }
}
