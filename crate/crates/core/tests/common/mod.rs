//! Reference implementations used as test oracles. Nothing here calls into
//! the library's GLCM, MI or selection code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use bandsel::dataset::{GroundTruth, HyperCube};

/// Min-max quantization with round-half-up, written out longhand.
pub fn quantize(values: &[f64], levels: usize) -> Vec<u16> {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let top = (levels - 1) as f64;
    values
        .iter()
        .map(|&v| {
            if hi == lo {
                return 0;
            }
            let level = ((v - lo) / (hi - lo) * top + 0.5).floor();
            if level > top {
                top as u16
            } else {
                level as u16
            }
        })
        .collect()
}

/// Co-occurrence counts by enumerating every ordered pixel pair and keeping
/// those whose displacement equals `(dx, dy)`.
pub fn brute_glcm(
    width: usize,
    q: &[u16],
    levels: usize,
    (dx, dy): (isize, isize),
    symmetric: bool,
) -> Vec<u64> {
    let mut counts = vec![0u64; levels * levels];
    let pos = |p: usize| ((p % width) as isize, (p / width) as isize);
    for p1 in 0..q.len() {
        for p2 in 0..q.len() {
            let (x1, y1) = pos(p1);
            let (x2, y2) = pos(p2);
            if x2 - x1 == dx && y2 - y1 == dy {
                let (a, b) = (q[p1] as usize, q[p2] as usize);
                counts[a * levels + b] += 1;
                if symmetric {
                    counts[b * levels + a] += 1;
                }
            }
        }
    }
    counts
}

/// Offsets for 0°, 45°, 90° and 135° with y pointing down.
pub fn offsets(d: isize) -> [(isize, isize); 4] {
    [(d, 0), (d, -d), (0, -d), (-d, -d)]
}

fn entropy_bits<K>(counts: &BTreeMap<K, u64>, n: f64) -> f64 {
    let mut h = 0.0;
    for &c in counts.values() {
        let p = c as f64 / n;
        h -= p * p.log2();
    }
    h
}

/// Plug-in MI from sparse counts: H(A) + H(B) − H(A, B), floored at zero.
pub fn mutual_information(a: &[u16], b: &[u16]) -> f64 {
    let mut ca = BTreeMap::new();
    let mut cb = BTreeMap::new();
    let mut cab = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *ca.entry(x).or_insert(0u64) += 1;
        *cb.entry(y).or_insert(0u64) += 1;
        *cab.entry((x, y)).or_insert(0u64) += 1;
    }
    let n = a.len() as f64;
    let mi = entropy_bits(&ca, n) + entropy_bits(&cb, n) - entropy_bits(&cab, n);
    mi.max(0.0)
}

pub fn band_f64(cube: &HyperCube, b: usize) -> Vec<f64> {
    cube.band(b).iter().map(|&v| v as f64).collect()
}

/// Whole-image MI of the ground truth with a quantized real grid.
pub fn gt_mi(gt: &GroundTruth, values: &[f64], levels: usize) -> f64 {
    mutual_information(gt.labels(), &quantize(values, levels))
}

/// Mean homogeneity over the four directions at distance 1 (asymmetric).
pub fn homogeneity(width: usize, values: &[f64], levels: usize) -> f64 {
    let q = quantize(values, levels);
    let mut sum = 0.0;
    for off in offsets(1) {
        let counts = brute_glcm(width, &q, levels, off, false);
        let total: u64 = counts.iter().sum();
        let mut h = 0.0;
        for (k, &c) in counts.iter().enumerate() {
            let (i, j) = ((k / levels) as f64, (k % levels) as f64);
            h += (c as f64 / total as f64) / (1.0 + (i - j) * (i - j));
        }
        sum += h;
    }
    sum / 4.0
}

/// How the oracle orders candidate bands.
#[derive(Clone, Copy, Debug)]
pub enum OracleRanking {
    /// Descending MI with the ground truth.
    Spectral,
    /// Descending mean homogeneity at 16 gray levels.
    Homogeneity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub retained: Vec<usize>,
    /// (band, mi, accepted) for every visited band.
    pub steps: Vec<(usize, f64, bool)>,
}

/// Band indices ordered by descending score, ties to the lower index.
pub fn rank(cube: &HyperCube, gt: &GroundTruth, ranking: OracleRanking, mi_levels: usize) -> Vec<usize> {
    let mut scored: Vec<(f64, usize)> = (0..cube.n_bands())
        .map(|b| {
            let v = band_f64(cube, b);
            let s = match ranking {
                OracleRanking::Spectral => gt_mi(gt, &v, mi_levels),
                OracleRanking::Homogeneity => homogeneity(cube.width(), &v, 16),
            };
            (s, b)
        })
        .collect();
    scored.sort_by(|l, r| r.0.partial_cmp(&l.0).unwrap().then(l.1.cmp(&r.1)));
    scored.into_iter().map(|(_, b)| b).collect()
}

/// Straight-line greedy filter: keep the top band, then visit the rest in
/// rank order, averaging each into the running estimate and keeping it when
/// the estimate's MI beats the best so far plus `th`.
pub fn greedy(
    cube: &HyperCube,
    gt: &GroundTruth,
    order: &[usize],
    x: usize,
    th: f64,
    mi_levels: usize,
) -> OracleRun {
    let mut r: std::collections::VecDeque<usize> = order.iter().copied().collect();
    let first = r.pop_front().unwrap();
    let mut c_est0 = band_f64(cube, first);
    let mut mi_star = gt_mi(gt, &c_est0, mi_levels);
    let mut ss = vec![first];
    let mut steps = vec![(first, mi_star, true)];
    while ss.len() < x {
        let Some(s) = r.pop_front() else { break };
        let band = band_f64(cube, s);
        let c_est: Vec<f64> = c_est0.iter().zip(&band).map(|(a, b)| (a + b) / 2.0).collect();
        let mi = gt_mi(gt, &c_est, mi_levels);
        let keep = mi > mi_star + th;
        if keep {
            ss.push(s);
            mi_star = mi;
            c_est0 = c_est;
        }
        steps.push((s, mi, keep));
    }
    OracleRun { retained: ss, steps }
}

pub fn select(
    cube: &HyperCube,
    gt: &GroundTruth,
    ranking: OracleRanking,
    x: usize,
    th: f64,
    mi_levels: usize,
) -> OracleRun {
    greedy(cube, gt, &rank(cube, gt, ranking, mi_levels), x, th, mi_levels)
}
