// Texture-ordered selection under both ordering modes and every feature.

use bandsel::dataset::{synth_dataset, SynthSpec};
use bandsel::glcm::Feature;
use bandsel::selection::{select_bands, Algorithm, Ordering, SelectionConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = synth_dataset(&SynthSpec {
        texture_mode: true,
        seed: 2,
        ..SynthSpec::default()
    })?;
    println!("informative bands: {:?}", ds.informative_bands());
    let spectral = select_bands(&ds.cube, &ds.gt, &SelectionConfig::default())?;
    println!("spectral ordering: {:?}", spectral.retained);
    for ordering in [Ordering::FeatureArgmax, Ordering::GtFeatureSimilarity] {
        for feature in Feature::ALL {
            let cfg = SelectionConfig {
                algorithm: Algorithm::Texture,
                feature,
                ordering,
                ..SelectionConfig::default()
            };
            let result = select_bands(&ds.cube, &ds.gt, &cfg)?;
            println!("{ordering} {feature}: {:?}", result.retained);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
