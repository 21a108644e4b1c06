// Train the one-vs-one SVM on selected bands and print the per-class table.

use bandsel::classify::{classify_bands, Kernel, SvmParams};
use bandsel::dataset::{split_train_test, synth_dataset, SynthSpec};
use bandsel::selection::{select_bands, SelectionConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = synth_dataset(&SynthSpec {
        n_classes: 6,
        seed: 3,
        ..SynthSpec::default()
    })?;
    let split = split_train_test(&ds.gt, 0.5, 3)?;
    println!("train {} / test {} pixels", split.n_train(), split.n_test());

    let bands = select_bands(&ds.cube, &ds.gt, &SelectionConfig::default())?.retained;
    for (name, kernel) in [("linear", Kernel::Linear), ("rbf", Kernel::Rbf { gamma: 0.5 })] {
        let params = SvmParams {
            kernel,
            seed: 3,
            ..SvmParams::default()
        };
        let (report, model) = classify_bands(&ds.cube, &ds.gt, &bands, &split, &params)?;
        println!(
            "{name}: bands {bands:?}, overall {:.2}%, {} machines, {} tie votes",
            report.overall_accuracy,
            model.machines.len(),
            report.tie_votes
        );
        print!("{}", report.per_class_csv(&ds.gt.class_counts()));
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
