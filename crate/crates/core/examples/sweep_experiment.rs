// Threshold x band-count sweep, then a full experiment run with files and
// a comparison against the published table layout.

use bandsel::classify::SvmParams;
use bandsel::dataset::{split_train_test, synth_dataset, write_cube, write_pgm, SynthSpec};
use bandsel::experiment::{run_experiment, sweep_experiment, ExperimentSpec, RunSpec};
use bandsel::glcm::{Feature, GlcmConfig};
use bandsel::mi::MaskMode;
use bandsel::selection::{Algorithm, Ordering, SelectionConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = synth_dataset(&SynthSpec {
        n_redundant_bands: 10,
        seed: 5,
        ..SynthSpec::default()
    })?;
    let split = split_train_test(&ds.gt, 0.5, 0)?;
    let sweep = sweep_experiment(
        &ds.cube,
        &ds.gt,
        &SelectionConfig::default(),
        &[-0.02, -0.01, 0.0],
        &[1, 2, 4, 8],
        &split,
        &SvmParams::default(),
    )?;
    print!("{}", sweep.table.to_csv());

    let dir = tempfile::tempdir()?;
    let cube = dir.path().join("scene.hdr.json");
    let gt = dir.path().join("scene_gt.pgm");
    write_cube(&ds.cube, &cube)?;
    write_pgm(&gt, ds.gt.width(), ds.gt.height(), ds.gt.labels())?;
    let spec = ExperimentSpec {
        cube,
        gt,
        runs: vec![
            RunSpec {
                algorithm: Algorithm::Spectral,
                feature: Feature::Homogeneity,
                ordering: Ordering::FeatureArgmax,
            },
            RunSpec {
                algorithm: Algorithm::Texture,
                feature: Feature::Energy,
                ordering: Ordering::FeatureArgmax,
            },
        ],
        thresholds: vec![-0.02, -0.004, 0.0],
        x_values: vec![2, 3, 4, 12],
        glcm: GlcmConfig::default(),
        mi_levels: 256,
        mask_mode: MaskMode::All,
        split_fraction: 0.5,
        split_seed: 0,
        svm: SvmParams::default(),
        out_dir: dir.path().join("out"),
        compare_published: true,
    };
    let outcome = run_experiment(&spec)?;
    for f in &outcome.files {
        println!("wrote {}", f.file_name().unwrap().to_string_lossy());
    }
    print!("{}", std::fs::read_to_string(spec.out_dir.join("published_diff_spectral.csv"))?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
