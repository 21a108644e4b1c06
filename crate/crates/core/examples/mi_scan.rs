// Mutual information between the ground truth and every band.

use bandsel::dataset::{synth_dataset, SynthSpec};
use bandsel::mi::{band_mi, joint_histogram, MaskMode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let h = joint_histogram(&[0, 0, 1, 1], &[0, 1, 0, 1], None)?;
    println!("independent pair: {:.6} bits", h.mutual_information());
    let h = joint_histogram(&[0, 0, 1, 1], &[0, 0, 1, 1], None)?;
    println!("identical pair:   {:.6} bits", h.mutual_information());

    let ds = synth_dataset(&SynthSpec {
        n_informative_bands: 3,
        n_noise_bands: 5,
        seed: 1,
        ..SynthSpec::default()
    })?;
    let informative = ds.informative_bands();
    println!("band,mi_bits,mi_labeled_only,informative");
    for b in 0..ds.cube.n_bands() {
        let all = band_mi(&ds.gt, ds.cube.band(b), 256, MaskMode::All)?;
        let labeled = band_mi(&ds.gt, ds.cube.band(b), 256, MaskMode::LabeledOnly)?;
        println!("{b},{all:.4},{labeled:.4},{}", informative.contains(&b));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
