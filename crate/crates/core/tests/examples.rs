macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(synth_scene, "synth_scene.rs");
example!(glcm_features, "glcm_features.rs");
example!(mi_scan, "mi_scan.rs");
example!(spectral_selection, "spectral_selection.rs");
example!(texture_selection, "texture_selection.rs");
example!(svm_classify, "svm_classify.rs");
example!(sweep_experiment, "sweep_experiment.rs");

#[test]
fn synth_scene_runs() {
    synth_scene::run_example().unwrap();
}

#[test]
fn glcm_features_runs() {
    glcm_features::run_example().unwrap();
}

#[test]
fn mi_scan_runs() {
    mi_scan::run_example().unwrap();
}

#[test]
fn spectral_selection_runs() {
    spectral_selection::run_example().unwrap();
}

#[test]
fn texture_selection_runs() {
    texture_selection::run_example().unwrap();
}

#[test]
fn svm_classify_runs() {
    svm_classify::run_example().unwrap();
}

#[test]
fn sweep_experiment_runs() {
    sweep_experiment::run_example().unwrap();
}
