// Spectral-MI band selection on a scene with redundant copies, with the
// accept/reject trace.

use bandsel::dataset::{synth_dataset, BandRole, SynthSpec};
use bandsel::selection::{select_bands, SelectionConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ds = synth_dataset(&SynthSpec {
        n_informative_bands: 5,
        n_redundant_bands: 10,
        n_noise_bands: 10,
        seed: 11,
        ..SynthSpec::default()
    })?;
    for th in [-0.02, 0.0] {
        let cfg = SelectionConfig {
            max_bands: 8,
            threshold: th,
            ..SelectionConfig::default()
        };
        let result = select_bands(&ds.cube, &ds.gt, &cfg)?;
        println!("th={th}: retained {:?} (exhausted: {})", result.retained, result.exhausted);
        for e in &result.trace {
            let role = match ds.roles[e.band] {
                BandRole::Informative => "informative".to_string(),
                BandRole::Redundant { source } => format!("copy of {source}"),
                BandRole::Noise => "noise".to_string(),
            };
            println!(
                "  band {:>2} {:<14} score {:.4} mi {:.4} {}",
                e.band,
                role,
                e.score,
                e.mi,
                if e.accepted { "kept" } else { "rejected" }
            );
        }
        result.replay(th).map_err(|e| format!("replay: {e}"))?;
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
