use serde::de::{self, Deserializer};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::guidance::{Bias, Event, GuidanceConfig, LogitAdjustment, TitleTemplate};
use crate::TokenId;

/// Literal used on the wire for a masked token.
pub const MASK_SENTINEL: &str = "-inf";

/// Client-side tokenizations that replace the matching config fields at init.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TokenTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title_template: Option<TitleTemplate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_marker: Option<Vec<TokenId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub banned_phrases: Option<Vec<Vec<TokenId>>>,
}

impl TokenTable {
    pub fn apply(&self, config: &mut GuidanceConfig) {
        if let Some(t) = &self.title_template {
            config.title_template = t.clone();
        }
        if let Some(m) = &self.end_marker {
            config.end_marker = m.clone();
        }
        if let Some(b) = &self.banned_phrases {
            config.banned_phrases = b.clone();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Request {
    Init {
        config: Box<GuidanceConfig>,
        #[serde(default)]
        tokens: TokenTable,
    },
    Step {
        /// Null on the first step.
        last_token_id: Option<TokenId>,
    },
    Close,
}

/// One sparse entry: an additive bias or the mask sentinel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WireEntry(pub TokenId, pub Bias);

impl Serialize for WireEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.0)?;
        match self.1 {
            Bias::Add(b) => t.serialize_element(&b)?,
            Bias::Mask => t.serialize_element(MASK_SENTINEL)?,
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for WireEntry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum RawBias {
            Num(f32),
            Text(String),
        }
        let (id, raw): (TokenId, RawBias) = Deserialize::deserialize(d)?;
        let bias = match raw {
            RawBias::Num(b) => Bias::Add(b),
            RawBias::Text(t) if t == MASK_SENTINEL => Bias::Mask,
            RawBias::Text(t) => return Err(de::Error::custom(format!("unknown bias `{t}`"))),
        };
        Ok(WireEntry(id, bias))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    Malformed,
    NotInitialized,
    AlreadyInitialized,
    InvalidConfig,
    Controller,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Response {
    Ready { session_id: u64 },
    Adjust { entries: Vec<WireEntry>, events: Vec<Event> },
    Error { code: ErrorCode, detail: String },
    Done,
}

impl Response {
    pub fn adjust(adjustment: &LogitAdjustment) -> Self {
        Response::Adjust {
            entries: adjustment.entries.iter().map(|&(id, b)| WireEntry(id, b)).collect(),
            events: adjustment.events.clone(),
        }
    }

    /// The adjustment carried by an `adjust` response.
    pub fn into_adjustment(self) -> Option<LogitAdjustment> {
        match self {
            Response::Adjust { entries, events } => {
                Some(LogitAdjustment { entries: entries.into_iter().map(|WireEntry(id, b)| (id, b)).collect(), events })
            }
            _ => None,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("responses always serialize")
    }
}
