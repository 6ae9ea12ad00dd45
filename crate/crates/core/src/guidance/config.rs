use serde::{Deserialize, Serialize};

use super::GuidanceError;
use crate::TokenId;

/// Produces the header token sequence for a given 1-based section index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TitleTemplate {
    /// `titles[p - 1]` is the header of section `p`.
    Table { titles: Vec<Vec<TokenId>> },
    /// `prefix`, then the decimal digits of `p`, then `suffix`.
    Numbered { prefix: Vec<TokenId>, digits: [TokenId; 10], suffix: Vec<TokenId> },
}

impl TitleTemplate {
    pub fn title(&self, section: usize) -> Option<Vec<TokenId>> {
        match self {
            TitleTemplate::Table { titles } => section.checked_sub(1).and_then(|i| titles.get(i)).cloned(),
            TitleTemplate::Numbered { prefix, digits, suffix } => {
                let mut out = prefix.clone();
                out.extend(section.to_string().bytes().map(|b| digits[(b - b'0') as usize]));
                out.extend_from_slice(suffix);
                Some(out)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GuidanceMode {
    Sectioned,
    FreeForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckpointBounds {
    pub low: usize,
    pub high: usize,
}

impl Default for CheckpointBounds {
    fn default() -> Self {
        CheckpointBounds { low: 300, high: 500 }
    }
}

pub const DEFAULT_GRACE: usize = 100;
pub const DEFAULT_BOOST: f32 = 15.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuidanceConfig {
    pub total_sections: usize,
    /// Tokens per section before the controller starts looking for a break.
    pub section_token_budget: usize,
    /// Extra tokens allowed after the budget before the header is forced.
    pub grace: usize,
    pub boost: f32,
    pub interruption_tokens: Vec<TokenId>,
    pub banned_phrases: Vec<Vec<TokenId>>,
    pub title_template: TitleTemplate,
    pub eos_token: TokenId,
    pub end_marker: Vec<TokenId>,
    pub mode: GuidanceMode,
    pub freeform_target_tokens: Option<usize>,
    pub checkpoint_bounds: CheckpointBounds,
}

impl GuidanceConfig {
    /// Sectioned configuration with default grace, boost, and bounds and no banned phrases.
    pub fn sectioned(
        total_sections: usize,
        section_token_budget: usize,
        eos_token: TokenId,
        interruption_tokens: Vec<TokenId>,
        title_template: TitleTemplate,
        end_marker: Vec<TokenId>,
    ) -> Self {
        GuidanceConfig {
            total_sections,
            section_token_budget,
            grace: DEFAULT_GRACE,
            boost: DEFAULT_BOOST,
            interruption_tokens,
            banned_phrases: Vec::new(),
            title_template,
            eos_token,
            end_marker,
            mode: GuidanceMode::Sectioned,
            freeform_target_tokens: None,
            checkpoint_bounds: CheckpointBounds::default(),
        }
    }

    /// Free-form configuration: milestones every few hundred tokens and EOS held until `target_tokens`.
    pub fn free_form(target_tokens: usize, eos_token: TokenId, interruption_tokens: Vec<TokenId>) -> Self {
        GuidanceConfig {
            total_sections: 1,
            section_token_budget: 1,
            grace: DEFAULT_GRACE,
            boost: DEFAULT_BOOST,
            interruption_tokens,
            banned_phrases: Vec::new(),
            title_template: TitleTemplate::Table { titles: Vec::new() },
            eos_token,
            end_marker: Vec::new(),
            mode: GuidanceMode::FreeForm,
            freeform_target_tokens: Some(target_tokens),
            checkpoint_bounds: CheckpointBounds::default(),
        }
    }

    pub fn with_banned_phrases(mut self, phrases: Vec<Vec<TokenId>>) -> Self {
        self.banned_phrases = phrases;
        self
    }

    pub fn with_grace(mut self, grace: usize) -> Self {
        self.grace = grace;
        self
    }

    pub fn with_boost(mut self, boost: f32) -> Self {
        self.boost = boost;
        self
    }

    pub fn validate(&self) -> Result<(), GuidanceError> {
        fn bad(field: &'static str, reason: impl Into<String>) -> Result<(), GuidanceError> {
            Err(GuidanceError::InvalidConfig { field, reason: reason.into() })
        }
        if self.total_sections == 0 {
            return bad("total_sections", "must be at least 1");
        }
        if self.section_token_budget == 0 {
            return bad("section_token_budget", "must be at least 1");
        }
        if !(self.boost.is_finite() && self.boost > 0.0) {
            return bad("boost", "must be a positive finite number");
        }
        if self.interruption_tokens.is_empty() {
            return bad("interruption_tokens", "must not be empty");
        }
        if self.banned_phrases.iter().any(|p| p.is_empty()) {
            return bad("banned_phrases", "phrases must not be empty");
        }
        let CheckpointBounds { low, high } = self.checkpoint_bounds;
        if low == 0 || low > high {
            return bad("checkpoint_bounds", format!("need 1 <= low <= high, got [{low}, {high}]"));
        }
        match self.mode {
            GuidanceMode::FreeForm => {
                if !matches!(self.freeform_target_tokens, Some(n) if n > 0) {
                    return bad("freeform_target_tokens", "free-form mode needs a positive target");
                }
            }
            GuidanceMode::Sectioned => {
                for p in 2..=self.total_sections {
                    match self.title_template.title(p) {
                        Some(t) if !t.is_empty() => {}
                        _ => return bad("title_template", format!("no header for section {p}")),
                    }
                }
            }
        }
        Ok(())
    }
}

/// Cumulative milestone positions for free-form generation.
///
/// Splits `target_tokens` into `max(1, round(target / midpoint))` near-equal
/// intervals, giving the remainder to the earliest ones.
pub fn freeform_checkpoints(target_tokens: usize, bounds: CheckpointBounds) -> Vec<usize> {
    if target_tokens < bounds.low {
        return vec![target_tokens];
    }
    let midpoint = (bounds.low + bounds.high) as f64 / 2.0;
    let k = ((target_tokens as f64 / midpoint).round() as usize).clamp(1, target_tokens);
    let (width, rem) = (target_tokens / k, target_tokens % k);
    let mut pos = 0;
    (0..k)
        .map(|i| {
            pos += width + usize::from(i < rem);
            pos
        })
        .collect()
}
