use std::time::Instant;

use super::engine::{Engine, GenerationRequest, GuidancePlan};
use super::matrix::PromptSpec;
use super::prompts::render_prompt;
use super::record::RunRecord;
use super::store::{RunStore, StoreEntry};
use super::BenchError;
use crate::sections::TaskProfile;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    /// Samples per spec.
    pub n: usize,
    pub base_seed: u64,
    pub guided: bool,
    /// Overrides the engine's words-to-tokens factor.
    pub words_to_tokens: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { n: 5, base_seed: 0, guided: true, words_to_tokens: None }
    }
}

/// Parsing profile for an engine's output on `spec`.
pub fn engine_profile(engine: &dyn Engine, spec: &PromptSpec) -> TaskProfile {
    let mut profile = spec.profile();
    if let Some(family) = engine.header_family() {
        profile.family = family;
    }
    profile
}

/// Runs `n` samples of one spec with seeds `base_seed..base_seed + n`.
///
/// Each record is appended to `store` as soon as it exists. Engine failures are
/// recorded as failed runs and the batch goes on; store failures abort.
pub fn execute(
    spec: &PromptSpec,
    engine: &dyn Engine,
    options: &RunOptions,
    store: Option<&RunStore>,
) -> Result<Vec<RunRecord>, BenchError> {
    if options.n == 0 {
        return Err(BenchError::InvalidConfig("n must be at least 1".into()));
    }
    let prompt = render_prompt(spec)?;
    let factor = options.words_to_tokens.unwrap_or_else(|| engine.words_to_tokens());
    if !(factor.is_finite() && factor > 0.0) {
        return Err(BenchError::InvalidConfig(format!("words_to_tokens must be positive, got {factor}")));
    }
    let plan = options.guided.then(|| GuidancePlan::for_spec(spec, factor));
    let profile = engine_profile(engine, spec);
    let name = engine.name();
    let mut records = Vec::with_capacity(options.n);
    for i in 0..options.n {
        let seed = options.base_seed + i as u64;
        let started = Instant::now();
        let result = engine.generate(&GenerationRequest { spec, prompt: &prompt, seed, plan });
        let ms = started.elapsed().as_millis() as u64;
        let record = match result {
            Ok(output) => RunRecord::analyze(spec, profile, &name, options.guided, i + 1, seed, output, ms),
            Err(e) => RunRecord::failed(spec, profile, &name, options.guided, i + 1, seed, e.to_string(), ms),
        };
        if let Some(store) = store {
            store.append(&StoreEntry::Run(record.clone()))?;
        }
        records.push(record);
    }
    Ok(records)
}
