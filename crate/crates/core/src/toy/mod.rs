//! A seedable toy language model with switchable failure modes: early EOS,
//! repetition loops, header skipping, and conversational filler.

mod generate;
mod model;
mod sample;
pub mod vocab;

pub use generate::{run_generation, Generation, StepEvents, StopReason};
pub use model::{FailureMode, ToyConfig, ToyModel, ToyState, BASE_EOS_LOGIT};
pub use sample::{probabilities, sample, Temperature};
pub use vocab::ToyVocab;

use crate::guidance::GuidanceError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToyError {
    #[error("invalid toy config field `{field}`")]
    InvalidConfig { field: &'static str },
    #[error("every token is masked; nothing can be sampled")]
    ImpossibleDistribution,
    #[error("text cannot be tokenized past byte {byte_offset}")]
    Untokenizable { byte_offset: usize },
    #[error(transparent)]
    Guidance(#[from] GuidanceError),
}
