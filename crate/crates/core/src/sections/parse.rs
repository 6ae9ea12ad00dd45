use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::words::{word_count, words, Language};

/// Literal that closes a finished document.
pub const END_MARKER: &str = "*** finished ***";

/// How section headers look for a task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeaderFamily {
    /// `#*# Chapter 3: Title`
    Chapter,
    /// `#*# Round 3:`
    Round,
    /// `#*# Date: Day 3:`
    Day,
    /// `#*# Floor 3:`
    Floor,
    /// `# Function 3: description`
    FunctionComment,
    /// `{ "index": 3, ... }` inside a JSON array
    RecordIndex,
    /// `% Formula 3: description`
    FormulaComment,
}

static CHAPTER: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)^#\*#[ \t]*(?i:chapter)[ \t]*(\d+)[ \t]*:?([^\n]*)").unwrap());
static ROUND: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)^#\*#[ \t]*(?i:round)[ \t]*(\d+)[ \t]*:?([^\n]*)").unwrap());
static DAY: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?m)^#\*#[ \t]*(?:(?i:date)[ \t]*:[ \t]*)?(?i:day)[ \t]*(\d+)[ \t]*:?([^\n]*)").unwrap()
});
static FLOOR: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)^#\*#[ \t]*(?i:floor)[ \t]*(\d+)[ \t]*:?([^\n]*)").unwrap());
static FUNCTION: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)^#[ \t]*(?i:function)[ \t]*(\d+)[ \t]*:?([^\n]*)").unwrap());
static RECORD: LazyLock<Regex> = LazyLock::new(|| Regex::new(r#"\{\s*"index"\s*:\s*(\d+)()"#).unwrap());
static FORMULA: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)^%[ \t]*(?i:formula)[ \t]*(\d+)[ \t]*:?([^\n]*)").unwrap());

impl HeaderFamily {
    fn regex(self) -> &'static Regex {
        match self {
            HeaderFamily::Chapter => &CHAPTER,
            HeaderFamily::Round => &ROUND,
            HeaderFamily::Day => &DAY,
            HeaderFamily::Floor => &FLOOR,
            HeaderFamily::FunctionComment => &FUNCTION,
            HeaderFamily::RecordIndex => &RECORD,
            HeaderFamily::FormulaComment => &FORMULA,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionReport {
    /// Number written in the header; saturates on absurdly long digit runs.
    pub index_as_labeled: u64,
    /// 1-based order of appearance.
    pub position: usize,
    /// Matched header, exactly as written.
    pub header_text: String,
    /// Header remainder after the number, trimmed.
    pub title_text: String,
    /// Everything after the header up to the next header or the end marker.
    pub body_text: String,
    pub word_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedDocument {
    pub language: Language,
    /// Text before the first header.
    pub preamble: String,
    pub sections: Vec<SectionReport>,
    pub end_marker_present: bool,
    /// The end marker and anything after it; empty when there is no marker.
    pub trailer: String,
}

impl ParsedDocument {
    /// Labels in order of appearance.
    pub fn labels(&self) -> Vec<u64> {
        self.sections.iter().map(|s| s.index_as_labeled).collect()
    }

    /// Rebuilds the source text byte for byte.
    pub fn reserialize(&self) -> String {
        let mut out = self.preamble.clone();
        for s in &self.sections {
            out.push_str(&s.header_text);
            out.push_str(&s.body_text);
        }
        out.push_str(&self.trailer);
        out
    }

    /// Title and body words of every section, in order.
    pub fn content_words(&self) -> Vec<&str> {
        self.sections
            .iter()
            .flat_map(|s| words(&s.title_text, self.language).into_iter().chain(words(&s.body_text, self.language)))
            .collect()
    }

    pub fn section(&self, label: u64) -> Option<&SectionReport> {
        self.sections.iter().find(|s| s.index_as_labeled == label)
    }

    /// Total words in body text across sections.
    pub fn body_words(&self) -> usize {
        self.sections.iter().map(|s| s.word_count).sum()
    }
}

/// Splits `text` into sections. Headers after the first end marker are ignored.
pub fn parse_sections(text: &str, family: HeaderFamily, language: Language) -> ParsedDocument {
    let marker_at = text.find(END_MARKER);
    let head = &text[..marker_at.unwrap_or(text.len())];
    let trailer = marker_at.map(|m| text[m..].to_string()).unwrap_or_default();

    let headers: Vec<_> = family.regex().captures_iter(head).collect();
    let first = headers.first().map_or(head.len(), |c| c.get(0).unwrap().start());
    let sections = headers
        .iter()
        .enumerate()
        .map(|(i, caps)| {
            let whole = caps.get(0).unwrap();
            let body_end = headers.get(i + 1).map_or(head.len(), |c| c.get(0).unwrap().start());
            let body_text = head[whole.end()..body_end].to_string();
            SectionReport {
                index_as_labeled: caps[1].parse().unwrap_or(u64::MAX),
                position: i + 1,
                header_text: whole.as_str().to_string(),
                title_text: caps.get(2).map_or("", |m| m.as_str()).trim().to_string(),
                word_count: word_count(&body_text, language),
                body_text,
            }
        })
        .collect();

    ParsedDocument {
        language,
        preamble: head[..first].to_string(),
        sections,
        end_marker_present: marker_at.is_some(),
        trailer,
    }
}
