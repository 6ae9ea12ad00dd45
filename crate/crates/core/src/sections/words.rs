use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Language {
    #[serde(rename = "EN")]
    En,
    #[serde(rename = "CH")]
    Ch,
}

impl std::str::FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "EN" => Ok(Language::En),
            "CH" | "ZH" => Ok(Language::Ch),
            other => Err(format!("unknown language `{other}`")),
        }
    }
}

impl std::fmt::Display for Language {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Language::En => "EN",
            Language::Ch => "CH",
        })
    }
}

pub(crate) fn is_cjk_ideograph(c: char) -> bool {
    matches!(c as u32,
        0x3400..=0x4DBF
        | 0x4E00..=0x9FFF
        | 0xF900..=0xFAFF
        | 0x20000..=0x2A6DF
        | 0x2A700..=0x2EBEF
        | 0x30000..=0x3134F)
}

// CJK symbols and punctuation plus fullwidth forms act as separators.
fn is_cjk_punct(c: char) -> bool {
    matches!(c as u32, 0x3000..=0x303F | 0xFF00..=0xFFEF | 0xFE30..=0xFE4F)
}

/// Word units of `text`. English: maximal non-whitespace runs. Chinese: every
/// ideograph on its own, plus each run of other non-separator characters.
pub fn words(text: &str, language: Language) -> Vec<&str> {
    match language {
        Language::En => text.split_whitespace().collect(),
        Language::Ch => {
            let mut out = Vec::new();
            let mut run_start: Option<usize> = None;
            for (i, c) in text.char_indices() {
                let separator = c.is_whitespace() || is_cjk_punct(c);
                if separator || is_cjk_ideograph(c) {
                    if let Some(s) = run_start.take() {
                        out.push(&text[s..i]);
                    }
                    if !separator {
                        out.push(&text[i..i + c.len_utf8()]);
                    }
                } else if run_start.is_none() {
                    run_start = Some(i);
                }
            }
            if let Some(s) = run_start {
                out.push(&text[s..]);
            }
            out
        }
    }
}

pub fn word_count(text: &str, language: Language) -> usize {
    words(text, language).len()
}
