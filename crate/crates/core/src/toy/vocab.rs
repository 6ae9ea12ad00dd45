use std::collections::HashMap;

use super::ToyError;
use crate::guidance::{GuidanceConfig, TitleTemplate};
use crate::TokenId;

pub const EOS: TokenId = 0;
pub const PERIOD: TokenId = 1;
pub const NEWLINE: TokenId = 2;
pub const PARAGRAPH: TokenId = 3;
pub const HEADER_MARK: TokenId = 4;
pub const CHAPTER: TokenId = 5;
pub const SPACE: TokenId = 6;
pub const DIGIT_0: TokenId = 7;
pub const COLON: TokenId = 17;
pub const STARS: TokenId = 18;
pub const FINISHED: TokenId = 19;
pub const CLOSING_STARS: TokenId = 20;
pub const FILLER_I: TokenId = 21;
pub const FILLER_HOPE: TokenId = 22;
pub const FILLER_THESE: TokenId = 23;
pub const FIRST_CONTENT: TokenId = 24;

const STRUCTURAL: [&str; 24] = [
    "",
    ".",
    "\n",
    "\n\n",
    "#*#",
    " Chapter",
    " ",
    "0",
    "1",
    "2",
    "3",
    "4",
    "5",
    "6",
    "7",
    "8",
    "9",
    ":",
    "***",
    " finished",
    " ***",
    " I",
    " hope",
    " these",
];

const CONTENT: [&str; 40] = [
    " storm",
    " river",
    " lantern",
    " harvest",
    " orchard",
    " cider",
    " night",
    " morning",
    " city",
    " garden",
    " road",
    " window",
    " letter",
    " friend",
    " stone",
    " bridge",
    " forest",
    " candle",
    " market",
    " song",
    " winter",
    " summer",
    " tower",
    " ship",
    " mountain",
    " village",
    " dream",
    " shadow",
    " light",
    " voice",
    " door",
    " field",
    " rain",
    " fire",
    " silver",
    " quiet",
    " old",
    " bright",
    " walked",
    " found",
];

pub const CONTENT_COUNT: usize = CONTENT.len();

pub fn digit(d: u8) -> TokenId {
    DIGIT_0 + TokenId::from(d)
}

pub fn is_content(id: TokenId) -> bool {
    (FIRST_CONTENT..FIRST_CONTENT + CONTENT_COUNT as TokenId).contains(&id)
}

pub fn is_digit(id: TokenId) -> bool {
    (DIGIT_0..DIGIT_0 + 10).contains(&id)
}

/// Fixed symbolic vocabulary of the toy model.
#[derive(Clone, Debug)]
pub struct ToyVocab {
    texts: Vec<&'static str>,
    by_text: HashMap<&'static str, TokenId>,
    max_piece: usize,
}

impl Default for ToyVocab {
    fn default() -> Self {
        Self::new()
    }
}

impl ToyVocab {
    pub fn new() -> Self {
        let texts: Vec<&'static str> = STRUCTURAL.iter().chain(CONTENT.iter()).copied().collect();
        let by_text =
            texts.iter().enumerate().filter(|(_, t)| !t.is_empty()).map(|(i, t)| (*t, i as TokenId)).collect();
        let max_piece = texts.iter().map(|t| t.len()).max().unwrap_or(0);
        ToyVocab { texts, by_text, max_piece }
    }

    pub fn len(&self) -> usize {
        self.texts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.texts.is_empty()
    }

    pub fn text(&self, id: TokenId) -> &'static str {
        self.texts[id as usize]
    }

    pub fn content_ids(&self) -> impl Iterator<Item = TokenId> {
        FIRST_CONTENT..FIRST_CONTENT + CONTENT_COUNT as TokenId
    }

    pub fn detokenize(&self, tokens: &[TokenId]) -> String {
        tokens.iter().map(|&t| self.text(t)).collect()
    }

    /// Fewest-token segmentation of `text` into vocabulary pieces.
    pub fn tokenize(&self, text: &str) -> Result<Vec<TokenId>, ToyError> {
        let n = text.len();
        // best[i] = (token count, token id ending at i) for the prefix text[..i]
        let mut best: Vec<Option<(usize, TokenId)>> = vec![None; n + 1];
        best[0] = Some((0, EOS));
        for end in 1..=n {
            for start in end.saturating_sub(self.max_piece)..end {
                let (Some((count, _)), Some(piece)) = (best[start], text.get(start..end)) else {
                    continue;
                };
                if let Some(&id) = self.by_text.get(piece) {
                    if best[end].is_none_or(|(c, _)| count + 1 < c) {
                        best[end] = Some((count + 1, id));
                    }
                }
            }
        }
        if best[n].is_none() {
            let pos = (0..=n).rev().find(|&i| best[i].is_some()).unwrap_or(0);
            return Err(ToyError::Untokenizable { byte_offset: pos });
        }
        let mut out = Vec::new();
        let mut end = n;
        while end > 0 {
            let (_, id) = best[end].expect("reachable prefix");
            out.push(id);
            end -= self.text(id).len();
        }
        out.reverse();
        Ok(out)
    }

    pub fn title_template(&self) -> TitleTemplate {
        TitleTemplate::Numbered {
            prefix: vec![NEWLINE, HEADER_MARK, CHAPTER, SPACE],
            digits: std::array::from_fn(|d| digit(d as u8)),
            suffix: vec![COLON],
        }
    }

    /// Header tokens for section `p`: `"\n#*# Chapter {p}:"`.
    pub fn title(&self, p: usize) -> Vec<TokenId> {
        self.title_template().title(p).expect("numbered titles exist for every p")
    }

    pub fn end_marker(&self) -> Vec<TokenId> {
        vec![STARS, FINISHED, CLOSING_STARS]
    }

    pub fn filler_phrase(&self) -> Vec<TokenId> {
        vec![FILLER_I, FILLER_HOPE, FILLER_THESE]
    }

    pub fn interruption_tokens(&self) -> Vec<TokenId> {
        vec![PERIOD, NEWLINE, PARAGRAPH]
    }

    /// Sectioned guidance wired to this vocabulary, banning the filler phrase.
    pub fn guidance_config(&self, total_sections: usize, section_token_budget: usize) -> GuidanceConfig {
        GuidanceConfig::sectioned(
            total_sections,
            section_token_budget,
            EOS,
            self.interruption_tokens(),
            self.title_template(),
            self.end_marker(),
        )
        .with_banned_phrases(vec![self.filler_phrase()])
    }
}
