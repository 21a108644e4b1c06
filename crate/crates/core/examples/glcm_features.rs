// Texture features of a few hand-made bands and of a synthetic scene.

use bandsel::dataset::{synth_dataset, HyperCube, SynthSpec};
use bandsel::glcm::{
    compute_glcm, quantize_band, texture_features, Aggregation, Direction, GlcmConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // flat, vertical stripes, and a ramp
    let (w, h) = (8, 8);
    let flat = vec![5.0f32; w * h];
    let stripes: Vec<f32> = (0..w * h).map(|p| (p % w % 2) as f32).collect();
    let ramp: Vec<f32> = (0..w * h).map(|p| (p % w + p / w) as f32).collect();
    let cube = HyperCube::from_bands(w, h, vec![flat, stripes.clone(), ramp])?;

    print!("{}", texture_features(&cube, &GlcmConfig::default())?.to_csv());

    let per_direction = GlcmConfig {
        aggregation: Aggregation::PerDirection,
        ..GlcmConfig::default()
    };
    print!("{}", texture_features(&cube, &per_direction)?.to_csv());

    // raw co-occurrence counts of the stripes at 0°, two gray levels
    let qb = quantize_band(&stripes, w, h, 2)?;
    let m = compute_glcm(&qb, Direction::Deg0.offset(1), false)?;
    println!("stripes 0°: counts {:?}", m.counts);

    let ds = synth_dataset(&SynthSpec {
        texture_mode: true,
        n_noise_bands: 3,
        n_informative_bands: 2,
        ..SynthSpec::default()
    })?;
    println!("texture-mode scene, informative {:?}", ds.informative_bands());
    print!("{}", texture_features(&ds.cube, &GlcmConfig::default())?.to_csv());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
