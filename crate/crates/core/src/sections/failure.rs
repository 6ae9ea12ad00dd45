use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::parse::ParsedDocument;
use crate::metrics::ngram_repetition;

/// Share of the document's final words inspected for repetition loops.
pub const TAIL_FRACTION: f64 = 0.2;
/// 3-gram repetition above this marks a loop.
pub const LOOP_THRESHOLD: f64 = 0.6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureTag {
    Incomplete,
    Skipping,
    RepetitionLoop,
    Clean,
}

/// A jump of two or more in the labels with the final label showing up afterwards.
pub fn has_skip(labels: &[u64], target: u64) -> bool {
    labels.windows(2).position(|w| w[1] >= w[0].saturating_add(2)).is_some_and(|i| labels[i + 1..].contains(&target))
}

/// 3-gram repetition over the last fifth of the content words, if there are enough of them.
pub fn tail_repetition(doc: &ParsedDocument) -> Option<f64> {
    let words = doc.content_words();
    let tail = ((words.len() as f64) * TAIL_FRACTION).ceil() as usize;
    ngram_repetition(&words[words.len() - tail..], 3).ok()
}

pub fn classify_failure(doc: &ParsedDocument, target_sections: usize) -> BTreeSet<FailureTag> {
    let mut tags = BTreeSet::new();
    let skipping = has_skip(&doc.labels(), target_sections as u64);
    if skipping {
        tags.insert(FailureTag::Skipping);
    } else if doc.sections.len() < target_sections {
        tags.insert(FailureTag::Incomplete);
    }
    if tail_repetition(doc).is_some_and(|r| r > LOOP_THRESHOLD) {
        tags.insert(FailureTag::RepetitionLoop);
    }
    if tags.is_empty() {
        tags.insert(FailureTag::Clean);
    }
    tags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sections::{parse_sections, HeaderFamily, Language};

    fn document(labels: impl IntoIterator<Item = u64>, body: impl Fn(u64) -> String) -> ParsedDocument {
        let mut text = String::new();
        for p in labels {
            text.push_str(&format!("#*# Chapter {p}: t\n{}\n", body(p)));
        }
        text.push_str("*** finished ***");
        parse_sections(&text, HeaderFamily::Chapter, Language::En)
    }

    fn varied(p: u64) -> String {
        (0..30).map(|i| format!("w{p}x{i}")).collect::<Vec<_>>().join(" ")
    }

    fn tags(list: &[FailureTag]) -> BTreeSet<FailureTag> {
        list.iter().copied().collect()
    }

    #[test]
    fn short_document_is_incomplete() {
        assert_eq!(classify_failure(&document(1..=10, varied), 40), tags(&[FailureTag::Incomplete]));
    }

    #[test]
    fn jump_to_final_is_skipping() {
        let doc = document((1..=10).chain([40]), varied);
        assert_eq!(classify_failure(&doc, 40), tags(&[FailureTag::Skipping]));
        // A gap that never reaches the final label is just an incomplete run.
        let doc = document((1..=10).chain([20]), varied);
        assert_eq!(classify_failure(&doc, 40), tags(&[FailureTag::Incomplete]));
    }

    #[test]
    fn looping_tail_is_flagged() {
        let doc = document(1..=40, |p| if p > 30 { "greatly esteemed highly revered ".repeat(8) } else { varied(p) });
        let rep = tail_repetition(&doc).unwrap();
        assert!(rep > 0.85, "{rep}");
        assert_eq!(classify_failure(&doc, 40), tags(&[FailureTag::RepetitionLoop]));
    }

    #[test]
    fn complete_varied_document_is_clean() {
        assert_eq!(classify_failure(&document(1..=5, varied), 5), tags(&[FailureTag::Clean]));
        assert_eq!(classify_failure(&document([], varied), 0), tags(&[FailureTag::Clean]));
    }

    #[test]
    fn skip_detection_edges() {
        assert!(has_skip(&[1, 2, 5], 5));
        assert!(!has_skip(&[1, 2, 3], 3));
        assert!(!has_skip(&[1, 3], 5));
        assert!(has_skip(&[1, 3, 4, 5], 5));
        assert!(!has_skip(&[u64::MAX], 5));
    }
}
