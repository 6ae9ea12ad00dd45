//! Inputs shared by the throughput benchmarks in `benches/`.

use longform_core::guidance::GuidanceConfig;
use longform_core::toy::{run_generation, FailureMode, ToyConfig, ToyVocab};
use longform_core::TokenId;

/// Guidance config and a recorded guided toy stream for replaying through the controller.
pub fn recorded_session(sections: usize, budget: usize) -> (GuidanceConfig, Vec<TokenId>) {
    let config = ToyVocab::new().guidance_config(sections, budget);
    let toy = ToyConfig::default().with_mode(FailureMode::EosRamp).with_target_sections(sections);
    let generation = run_generation(&toy, Some(&config), sections * budget * 3 + 1000).expect("toy generation");
    (config, generation.generated().to_vec())
}

/// A long unguided toy document with chapter headers.
pub fn toy_document(seed: u64, steps: usize) -> String {
    let toy = ToyConfig::default().with_seed(seed).with_target_sections(1000);
    run_generation(&toy, None, steps).expect("toy generation").text
}
