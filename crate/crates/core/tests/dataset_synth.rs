use bandsel::dataset::{
    load_cube, load_ground_truth, split_train_test, synth_dataset, write_cube, write_pgm, BandRole,
    GroundTruth, SynthSpec,
};
use bandsel::glcm::{compute_glcm, glcm_contrast, quantize_values, Direction, QuantizedBand};
use proptest::prelude::*;

#[test]
fn same_seed_same_dataset() {
    let spec = SynthSpec {
        width: 4,
        height: 4,
        n_classes: 2,
        n_informative_bands: 1,
        n_noise_bands: 1,
        seed: 7,
        ..SynthSpec::default()
    };
    let a = synth_dataset(&spec).unwrap();
    let b = synth_dataset(&spec).unwrap();
    assert_eq!(a.cube.values(), b.cube.values());
    assert_eq!(a.gt.labels(), b.gt.labels());
    assert_eq!(a.roles, b.roles);
    let c = synth_dataset(&SynthSpec { seed: 8, ..spec }).unwrap();
    assert_ne!(a.cube.values(), c.cube.values());
}

#[test]
fn roles_cover_every_band() {
    let ds = synth_dataset(&SynthSpec {
        n_informative_bands: 3,
        n_redundant_bands: 4,
        n_noise_bands: 5,
        ..SynthSpec::default()
    })
    .unwrap();
    assert_eq!(ds.cube.n_bands(), 12);
    assert_eq!(ds.informative_bands().len(), 3);
    assert_eq!(ds.noise_bands().len(), 5);
    for role in &ds.roles {
        if let BandRole::Redundant { source } = role {
            assert_eq!(ds.roles[*source], BandRole::Informative);
        }
    }
}

#[test]
fn spectral_class_means_are_separated() {
    let sigma = 0.3;
    let ds = synth_dataset(&SynthSpec {
        noise_sigma: sigma,
        ..SynthSpec::default()
    })
    .unwrap();
    for b in ds.informative_bands() {
        let mut means = class_means(&ds.gt, ds.cube.band(b));
        means.sort_by(f64::total_cmp);
        for w in means.windows(2) {
            // generator spacing is at least 3σ; sample means wander by ~σ/16
            assert!(w[1] - w[0] > 3.0 * sigma - 0.2, "band {b}: {means:?}");
        }
    }
}

fn class_means(gt: &GroundTruth, band: &[f32]) -> Vec<f64> {
    let k = gt.n_classes();
    let mut sums = vec![0.0; k + 1];
    let mut counts = vec![0usize; k + 1];
    for (&l, &v) in gt.labels().iter().zip(band) {
        sums[l as usize] += v as f64;
        counts[l as usize] += 1;
    }
    (1..=k).map(|c| sums[c] / counts[c] as f64).collect()
}

/// Per-direction GLCM contrast of one class tile, quantized with the whole
/// band's range.
fn tile_contrast(gt: &GroundTruth, q: &[u16], class: u16) -> Vec<f64> {
    let w = gt.width();
    let pixels: Vec<usize> = (0..q.len()).filter(|&p| gt.labels()[p] == class).collect();
    let x0 = pixels.iter().map(|p| p % w).min().unwrap();
    let x1 = pixels.iter().map(|p| p % w).max().unwrap();
    let y0 = pixels.iter().map(|p| p / w).min().unwrap();
    let y1 = pixels.iter().map(|p| p / w).max().unwrap();
    let mut tile = Vec::new();
    for y in y0..=y1 {
        for x in x0..=x1 {
            tile.push(q[y * w + x]);
        }
    }
    let qb = QuantizedBand::from_levels(x1 - x0 + 1, y1 - y0 + 1, 16, tile).unwrap();
    Direction::ALL
        .iter()
        .map(|d| glcm_contrast(&compute_glcm(&qb, d.offset(1), false).unwrap()).unwrap())
        .collect()
}

#[test]
fn texture_mode_shares_means_but_not_contrast() {
    let sigma = 0.3;
    for seed in 0..10 {
        let ds = synth_dataset(&SynthSpec {
            texture_mode: true,
            noise_sigma: sigma,
            seed,
            ..SynthSpec::default()
        })
        .unwrap();
        for b in ds.informative_bands() {
            let means = class_means(&ds.gt, ds.cube.band(b));
            let spread = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - means.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread <= 0.1 * sigma, "seed {seed} band {b}: means {means:?}");

            let q = quantize_values(ds.cube.band(b), 16).unwrap();
            let k = ds.gt.n_classes() as u16;
            let contrasts: Vec<Vec<f64>> = (1..=k).map(|c| tile_contrast(&ds.gt, &q, c)).collect();
            for a in 0..contrasts.len() {
                for c in a + 1..contrasts.len() {
                    let gap = contrasts[a]
                        .iter()
                        .zip(&contrasts[c])
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max);
                    assert!(gap > 5.0, "seed {seed} band {b}: {contrasts:?}");
                }
            }
        }
    }
}

#[test]
fn synthetic_files_round_trip() {
    let ds = synth_dataset(&SynthSpec::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let header = dir.path().join("cube.hdr.json");
    write_cube(&ds.cube, &header).unwrap();
    let gt_path = dir.path().join("gt.pgm");
    write_pgm(&gt_path, ds.gt.width(), ds.gt.height(), ds.gt.labels()).unwrap();
    let cube = load_cube(&header).unwrap();
    assert_eq!(cube.values(), ds.cube.values());
    assert_eq!(load_ground_truth(&gt_path).unwrap(), ds.gt);
}

proptest! {
    #[test]
    fn split_partitions_labeled_pixels(
        labels in proptest::collection::vec(0u16..4, 4..120),
        fraction in 0.05f64..0.95,
        seed: u64,
    ) {
        // make every class 1..=max present
        let k = *labels.iter().max().unwrap();
        let mut labels = labels;
        for c in 1..=k {
            if !labels.contains(&c) {
                labels.push(c);
            }
        }
        let n = labels.len();
        let gt = GroundTruth::new(n, 1, labels.clone()).unwrap();
        let split = split_train_test(&gt, fraction, seed).unwrap();
        for p in 0..n {
            let labeled = labels[p] != 0;
            prop_assert!(!(split.train[p] && split.test[p]));
            prop_assert_eq!(split.train[p] || split.test[p], labeled);
        }
        for c in 1..=k {
            let members: Vec<usize> = (0..n).filter(|&p| labels[p] == c).collect();
            let train = members.iter().filter(|&&p| split.train[p]).count();
            prop_assert!(train >= 1);
            if members.len() >= 2 {
                prop_assert!(train < members.len());
            }
        }
        prop_assert_eq!(split_train_test(&gt, fraction, seed).unwrap(), split);
    }
}
