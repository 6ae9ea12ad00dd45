use serde::{Deserialize, Serialize};

use super::parse::ParsedDocument;
use super::words::is_cjk_ideograph;

pub const DEFAULT_THEME_MIN_MATCHES: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// The section's first word starts with this letter.
    FirstChar { letter: char },
    /// The body contains this word.
    Keyword { word: String },
    /// The body mentions at least `min_matches` distinct keywords of the theme.
    Theme { name: String, keywords: Vec<String>, min_matches: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    /// Section label the requirement applies to.
    pub section_index: u64,
    #[serde(flatten)]
    pub constraint: Constraint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintOutcome {
    Satisfied,
    Violated,
    MissingSection,
}

impl ConstraintOutcome {
    pub fn passed(self) -> bool {
        self == ConstraintOutcome::Satisfied
    }
}

impl ConstraintSpec {
    pub fn validate(&self) -> Result<(), String> {
        match &self.constraint {
            Constraint::FirstChar { letter } if !letter.is_alphabetic() => {
                Err(format!("first_char value `{letter}` is not alphabetical"))
            }
            Constraint::Keyword { word } if word.trim().is_empty() => Err("empty keyword".into()),
            Constraint::Theme { keywords, min_matches, .. } if *min_matches == 0 || keywords.is_empty() => {
                Err("theme needs keywords and a positive threshold".into())
            }
            _ => Ok(()),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Case-insensitive whole-word containment. Keywords with ideographs match as substrings.
pub fn contains_word(haystack: &str, word: &str) -> bool {
    let hay = haystack.to_lowercase();
    let needle = word.trim().to_lowercase();
    if needle.is_empty() {
        return false;
    }
    if needle.chars().any(is_cjk_ideograph) {
        return hay.contains(&needle);
    }
    hay.match_indices(&needle).any(|(i, m)| {
        let before = hay[..i].chars().next_back().is_none_or(|c| !is_word_char(c));
        let after = hay[i + m.len()..].chars().next().is_none_or(|c| !is_word_char(c));
        before && after
    })
}

fn first_letter(body: &str) -> Option<char> {
    body.split_whitespace().next()?.chars().find(|c| c.is_alphabetic())
}

/// Checks one requirement against the section carrying its label.
pub fn verify_constraint(doc: &ParsedDocument, spec: &ConstraintSpec) -> ConstraintOutcome {
    let Some(section) = doc.section(spec.section_index) else {
        return ConstraintOutcome::MissingSection;
    };
    let body = &section.body_text;
    let ok = match &spec.constraint {
        Constraint::FirstChar { letter } => {
            first_letter(body).is_some_and(|c| c.to_lowercase().eq(letter.to_lowercase()))
        }
        Constraint::Keyword { word } => contains_word(body, word),
        Constraint::Theme { keywords, min_matches, .. } => {
            let mut hits: Vec<String> =
                keywords.iter().filter(|k| contains_word(body, k)).map(|k| k.to_lowercase()).collect();
            hits.sort();
            hits.dedup();
            hits.len() >= *min_matches
        }
    };
    if ok {
        ConstraintOutcome::Satisfied
    } else {
        ConstraintOutcome::Violated
    }
}
