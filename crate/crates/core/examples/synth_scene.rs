// Generates a synthetic labeled cube, writes it to disk and reads it back.

use bandsel::dataset::{load_cube, load_ground_truth, synth_dataset, write_cube, write_pgm, SynthSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SynthSpec {
        n_informative_bands: 4,
        n_redundant_bands: 2,
        n_noise_bands: 6,
        seed: 42,
        ..SynthSpec::default()
    };
    let ds = synth_dataset(&spec)?;
    println!(
        "{}x{} pixels, {} bands, {} classes",
        ds.cube.width(),
        ds.cube.height(),
        ds.cube.n_bands(),
        ds.gt.n_classes()
    );
    println!("informative bands: {:?}", ds.informative_bands());
    println!("noise bands:       {:?}", ds.noise_bands());

    let dir = tempfile::tempdir()?;
    let header = dir.path().join("scene.hdr.json");
    write_cube(&ds.cube, &header)?;
    write_pgm(dir.path().join("scene_gt.pgm"), ds.gt.width(), ds.gt.height(), ds.gt.labels())?;
    let cube = load_cube(&header)?;
    let gt = load_ground_truth(dir.path().join("scene_gt.pgm"))?;
    assert_eq!(cube, ds.cube);
    assert_eq!(gt, ds.gt);
    println!("round trip through {} ok", header.display());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
