use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::model::{ToyConfig, ToyModel};
use super::sample::{sample, Temperature};
use super::vocab::EOS;
use super::ToyError;
use crate::guidance::{Boundary, Event, GuidanceConfig, GuidanceSession, LogitAdjustment};
use crate::TokenId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Eos,
    MaxSteps,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepEvents {
    pub step: usize,
    pub events: Vec<Event>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generation {
    /// Header of section 1 (given, like a prompt seed) followed by generated tokens, EOS included.
    pub tokens: Vec<TokenId>,
    pub prefix_len: usize,
    pub text: String,
    /// Controller boundaries; empty when unguided.
    pub boundaries: Vec<Boundary>,
    pub stop_reason: StopReason,
    /// Steps whose adjustment carried events.
    pub events: Vec<StepEvents>,
}

impl Generation {
    pub fn generated(&self) -> &[TokenId] {
        &self.tokens[self.prefix_len..]
    }
}

/// Decodes up to `max_steps` tokens, optionally under guidance.
pub fn run_generation(
    config: &ToyConfig,
    guidance: Option<&GuidanceConfig>,
    max_steps: usize,
) -> Result<Generation, ToyError> {
    if max_steps == 0 {
        return Err(ToyError::InvalidConfig { field: "max_steps" });
    }
    let model = ToyModel::new(config.clone())?;
    let vocab = model.vocab().clone();
    let mut session = guidance.cloned().map(GuidanceSession::new).transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let temperature = Temperature::from_config(config.base_temperature);

    let prefix = vocab.title(1);
    let mut state = model.new_state();
    state.prime(&prefix);
    let mut tokens = prefix.clone();
    let mut events = Vec::new();
    let mut last = None;
    let mut stop_reason = StopReason::MaxSteps;

    for step in 0..max_steps {
        let adjustment = match session.as_mut() {
            Some(s) => s.step(last)?,
            None => LogitAdjustment::default(),
        };
        if !adjustment.events.is_empty() {
            events.push(StepEvents { step, events: adjustment.events.clone() });
        }
        let token = sample(&model.logits(&state), &adjustment, temperature, &mut rng)?;
        state.push(token);
        tokens.push(token);
        last = Some(token);
        if token == EOS {
            if let Some(s) = session.as_mut() {
                s.observe(token)?;
            }
            stop_reason = StopReason::Eos;
            break;
        }
    }

    let boundaries = session.map(|s| s.state().boundaries.clone()).unwrap_or_default();
    Ok(Generation {
        text: vocab.detokenize(&tokens),
        prefix_len: prefix.len(),
        tokens,
        boundaries,
        stop_reason,
        events,
    })
}
