use serde::{Deserialize, Serialize};

use crate::TokenId;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bias {
    Add(f32),
    /// Post-softmax probability exactly zero.
    Mask,
}

impl Bias {
    pub fn as_f32(self) -> f32 {
        match self {
            Bias::Add(b) => b,
            Bias::Mask => f32::NEG_INFINITY,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Event {
    SoftTrigger,
    HardTrigger,
    SectionAdvanced,
    EosUnbanned,
    TitleInProgress,
}

/// Sparse logit delta for one decode step; entries are sorted by token id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LogitAdjustment {
    pub entries: Vec<(TokenId, Bias)>,
    pub events: Vec<Event>,
}

impl LogitAdjustment {
    pub fn get(&self, token: TokenId) -> Option<Bias> {
        self.entries.binary_search_by_key(&token, |&(id, _)| id).ok().map(|i| self.entries[i].1)
    }

    pub fn is_masked(&self, token: TokenId) -> bool {
        self.get(token) == Some(Bias::Mask)
    }

    pub fn boosted(&self) -> impl Iterator<Item = TokenId> + '_ {
        self.entries.iter().filter(|(_, b)| matches!(b, Bias::Add(x) if *x > 0.0)).map(|&(id, _)| id)
    }

    pub fn has_event(&self, event: Event) -> bool {
        self.events.contains(&event)
    }

    /// Adds each bias in place. Ids outside `logits` are ignored.
    pub fn apply(&self, logits: &mut [f32]) {
        for &(id, bias) in &self.entries {
            if let Some(slot) = logits.get_mut(id as usize) {
                match bias {
                    Bias::Add(b) => *slot += b,
                    Bias::Mask => *slot = f32::NEG_INFINITY,
                }
            }
        }
    }
}
